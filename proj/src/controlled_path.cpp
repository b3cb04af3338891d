#include "rough_taylor/controlled_path.hpp"

#include "rough_taylor/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace rough {

std::size_t ControlledTuple::index_of(double time) const {
    const auto it = std::lower_bound(grid.begin(), grid.end(), time);
    if (it == grid.end() || *it != time) {
        throw std::invalid_argument("time " + std::to_string(time) + " is not on the tuple grid");
    }
    return static_cast<std::size_t>(it - grid.begin());
}

const Eigen::MatrixXd& ControlledTuple::at(double time, int m) const {
    if (m < 0 || m > order) throw std::out_of_range("tuple level out of range");
    return values[index_of(time)][m];
}

ControlledTuple controlled_tuple(const VectorFieldJet& f, const PiecewiseLinearPath& path, std::span<const double> y0,
                                 double gamma, std::vector<double> grid, double tol) {
    if (!(gamma > 0.0)) throw std::invalid_argument("controlled tuple needs gamma > 0");
    if (grid.empty()) throw std::invalid_argument("controlled tuple needs a non-empty grid");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid[i] < grid[i + 1])) throw std::invalid_argument("tuple grid must be strictly increasing");
    }
    path.require_interval(grid.front(), grid.back());
    ControlledTuple tuple;
    tuple.order = static_cast<int>(std::floor(gamma));
    tuple.e = f.e;
    tuple.d = f.d;
    const auto sol = solve_reference(f, path, y0, tol);
    tuple.solver_accuracy = sol.accuracy();
    const auto hierarchy =
        tuple.order > 0 ? f_circ_hierarchy(f, tuple.order) : std::vector<MultilinearField>{};
    tuple.values.reserve(grid.size());
    for (double g : grid) {
        const Eigen::VectorXd y = sol.at(g);
        std::vector<Eigen::MatrixXd> row;
        row.reserve(static_cast<std::size_t>(tuple.order) + 1);
        row.emplace_back(y);
        for (int m = 1; m <= tuple.order; ++m) {
            row.push_back(hierarchy[m - 1].evaluate({y.data(), static_cast<std::size_t>(y.size())}));
        }
        tuple.values.push_back(std::move(row));
    }
    tuple.grid = std::move(grid);
    return tuple;
}

Eigen::MatrixXd contract_front(const Eigen::MatrixXd& y, std::span<const double> x) {
    const auto cols = static_cast<std::size_t>(y.cols());
    if (x.empty() || cols % x.size() != 0) throw std::invalid_argument("contract_front: incompatible tensor sizes");
    const std::size_t rest = cols / x.size();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(y.rows(), static_cast<Eigen::Index>(rest));
    for (std::size_t u = 0; u < x.size(); ++u) {
        if (x[u] == 0.0) continue;
        out += x[u] * y.middleCols(static_cast<Eigen::Index>(u * rest), static_cast<Eigen::Index>(rest));
    }
    return out;
}

namespace {

// Signatures between tuple grid times, cached per call at the depth needed.
class SignatureCache {
public:
    SignatureCache(const PiecewiseLinearPath& path, int depth) : path_(path), depth_(std::max(depth, 1)) {}

    const TruncatedTensor& get(double s, double t) {
        auto it = cache_.find({s, t});
        if (it == cache_.end()) it = cache_.emplace(std::make_pair(s, t), signature(path_, s, t, depth_)).first;
        return it->second;
    }

private:
    const PiecewiseLinearPath& path_;
    int depth_;
    std::map<std::pair<double, double>, TruncatedTensor> cache_;
};

// sum_{l=0}^{upto} Y^(base+l)_{at} X^l_{from,to}, an e x d^base map.
Eigen::MatrixXd expansion(const ControlledTuple& tuple, SignatureCache& sigs, int base, int upto, double at_time,
                          double to) {
    const auto& row = tuple.values[tuple.index_of(at_time)];
    const auto& sig = sigs.get(at_time, to);
    Eigen::MatrixXd sum = row[base];
    for (int l = 1; l <= upto; ++l) sum += contract_front(row[base + l], sig.level(l));
    return sum;
}

void validate_partition(const ControlledTuple& tuple, std::span<const double> partition) {
    if (partition.size() < 2) throw std::invalid_argument("partition needs at least two points");
    for (std::size_t i = 0; i < partition.size(); ++i) {
        (void)tuple.index_of(partition[i]);
        if (i + 1 < partition.size() && !(partition[i] < partition[i + 1])) {
            throw std::invalid_argument("partition must be strictly increasing");
        }
    }
}

}  // namespace

double tuple_remainder(const ControlledTuple& tuple, const PiecewiseLinearPath& path, int m, double s, double t,
                       ExpansionPoint point) {
    if (m < 0 || m > tuple.order) throw std::out_of_range("tuple_remainder level out of range");
    if (s > t) throw std::invalid_argument("tuple_remainder needs s <= t");
    const double left_time = point == ExpansionPoint::kEndpoint ? t : s;
    SignatureCache sigs(path, tuple.order - m);
    const Eigen::MatrixXd lhs = tuple.at(left_time, m);
    const Eigen::MatrixXd exp = expansion(tuple, sigs, m, tuple.order - m, s, t);
    return operator_norm(lhs - exp);
}

CompensatedSum compensated_riemann_sum(const ControlledTuple& tuple, const PiecewiseLinearPath& path, int k,
                                       std::span<const double> partition, double p) {
    const int top = tuple.order - static_cast<int>(std::floor(p));
    if (k < 0 || k > top) {
        throw std::out_of_range("compensated sum needs 0 <= k <= floor(gamma) - floor(p)");
    }
    validate_partition(tuple, partition);
    const int span = tuple.order - k;
    const double s = partition.front();
    const double t = partition.back();
    SignatureCache sigs(path, span);
    const Eigen::Index rows = tuple.e;
    const auto cols = static_cast<Eigen::Index>(ipow(static_cast<std::size_t>(tuple.d), k));
    CompensatedSum out{Eigen::MatrixXd::Zero(rows, cols), Eigen::MatrixXd::Zero(rows, cols),
                       Eigen::MatrixXd::Zero(rows, cols), Eigen::MatrixXd::Zero(rows, cols)};
    const auto& ys = tuple.values[tuple.index_of(s)];
    for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
        const double ti = partition[i];
        const double tn = partition[i + 1];
        const auto& yi = tuple.values[tuple.index_of(ti)];
        const auto& step = sigs.get(ti, tn);
        for (int l = 1; l <= span; ++l) {
            // Y^(k+l)_s expanded to t_i: sum_{l1} Y^(k+l+l1)_s X^{l1}_{s,t_i}.
            const Eigen::MatrixXd compensator = expansion(tuple, sigs, k + l, span - l, s, ti);
            out.riemann_sum += contract_front(yi[k + l] - compensator, step.level(l));
            out.algebraic_along_partition += contract_front(compensator, step.level(l));
        }
    }
    const auto& whole = sigs.get(s, t);
    for (int r = 1; r <= span; ++r) out.algebraic_closed_form += contract_front(ys[k + r], whole.level(r));
    out.limit = tuple.at(t, k) - ys[k] - out.algebraic_closed_form;
    return out;
}

Eigen::MatrixXd point_removal_delta(const ControlledTuple& tuple, const PiecewiseLinearPath& path, int k,
                                    std::span<const double> partition, std::size_t j) {
    validate_partition(tuple, partition);
    if (j == 0 || j + 1 >= partition.size()) throw std::out_of_range("point removal needs an interior index");
    if (k < 0 || k >= tuple.order) throw std::out_of_range("point removal level out of range");
    const int span = tuple.order - k;
    SignatureCache sigs(path, span);
    const double prev = partition[j - 1];
    const double mid = partition[j];
    const double next = partition[j + 1];
    const auto& ymid = tuple.values[tuple.index_of(mid)];
    const auto& step = sigs.get(mid, next);
    Eigen::MatrixXd delta =
        Eigen::MatrixXd::Zero(tuple.e, static_cast<Eigen::Index>(ipow(static_cast<std::size_t>(tuple.d), k)));
    for (int l = 1; l <= span; ++l) {
        const Eigen::MatrixXd local = ymid[k + l] - expansion(tuple, sigs, k + l, span - l, prev, mid);
        delta += contract_front(local, step.level(l));
    }
    return delta;
}

RemovalChoice choose_removal_point(const ControlTable& omega, std::span<const double> partition) {
    if (partition.size() < 3) throw std::invalid_argument("point removal needs at least one interior point");
    RemovalChoice c;
    c.omega_j = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j + 1 < partition.size(); ++j) {
        const double w = omega(partition[j - 1], partition[j + 1]);
        if (w < c.omega_j) {
            c.omega_j = w;
            c.j = j;
        }
    }
    const double intervals = static_cast<double>(partition.size() - 1);
    c.bound = std::min(2.0 / (intervals - 1.0), 1.0) * omega(partition.front(), partition.back());
    c.holds = c.omega_j <= c.bound * (1.0 + 1e-12) + 1e-300;
    return c;
}

}  // namespace rough
