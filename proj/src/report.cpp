#include "rough_taylor/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace rough {

double slack_ratio(double measured, double bound) {
    if (bound == 0.0) return measured == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return measured / bound;
}

void finalize(BoundReport& report, double tolerance) {
    report.slack_ratio = slack_ratio(report.measured, report.bound);
    report.pass = report.below_solver_floor || report.slack_ratio <= 1.0 + tolerance;
}

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += format_real(v[i]);
    }
    return s;
}

}  // namespace

void write_report_header(std::ostream& os) {
    os << "interval_s,interval_t,order,measured,bound,slack_ratio,pass,box_lo,box_hi\n";
}

void write_report_row(std::ostream& os, const BoundReport& r) {
    os << format_real(r.interval_s) << ',' << format_real(r.interval_t) << ',' << r.order << ','
       << format_real(r.measured) << ',' << format_real(r.bound) << ',' << format_real(r.slack_ratio) << ','
       << (r.pass ? "true" : "false") << ',' << join(r.box_lo) << ',' << join(r.box_hi) << '\n';
}

}  // namespace rough
