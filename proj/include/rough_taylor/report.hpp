#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace rough {

/// One verification record: a measured quantity against a bound.
///
/// pass holds iff slack_ratio <= 1 + tolerance, except for rows whose
/// measurement is below the reference solver's resolution; those are
/// reported with below_solver_floor set and are never asserted against.
struct BoundReport {
    double interval_s = 0.0;
    double interval_t = 0.0;
    int order = 0;
    double measured = 0.0;
    double bound = 0.0;
    double slack_ratio = 0.0;
    bool pass = false;
    bool below_solver_floor = false;
    std::vector<double> box_lo;
    std::vector<double> box_hi;
    std::map<std::string, double> parameters;
};

/// measured / bound with 0/0 := 0 and x/0 := +inf.
[[nodiscard]] double slack_ratio(double measured, double bound);

/// Fills slack_ratio and pass from measured, bound and the relative tolerance.
void finalize(BoundReport& report, double tolerance);

/// Header: interval_s,interval_t,order,measured,bound,slack_ratio,pass,box_lo,box_hi
void write_report_header(std::ostream& os);

/// Box corners are written as ';'-separated coordinates inside one field.
void write_report_row(std::ostream& os, const BoundReport& report);

/// Shortest round-trip representation with 17 significant digits.
[[nodiscard]] std::string format_real(double x);

}  // namespace rough
