#include "pmfix/conditions.hpp"

#include <algorithm>
#include <cmath>

#include "pmfix/errors.hpp"

namespace pmfix {

bool ConditionAReport::passes_at(Point x) const {
    for (const auto& w : witnesses)
        if (w.x == x) return false;
    return true;
}

ConditionAReport check_condition_A(const PMetricSpace& space, const SelfMap& map,
                                   const SampleSet& points, double alpha, int Q, double tol,
                                   par::Exec exec) {
    if (Q < 1) throw Error("condition A needs depth Q >= 1");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw Error("alpha must lie in [0, 1)");

    const auto& pts = points.points();
    std::vector<std::vector<CondAWitness>> slots(pts.size());
    par::for_index(
        pts.size(),
        [&](std::size_t i) {
            const Point x = pts[i];
            const Orbit orbit = compute_orbit(map, x, Q + 1);
            const double size0 = space.p(x, x);
            double max_reach = 0;  // max over j <= q+1 of p(x, x_j)
            auto& out = slots[i];
            for (int q = 1; q <= Q; ++q) {
                if (q == 1) max_reach = std::max(space.p(x, orbit.at(1)), space.p(x, orbit.at(2)));
                else max_reach = std::max(max_reach, space.p(x, orbit.at(q + 1)));
                const double lhs = space.p(orbit.at(1), orbit.at(q + 1));
                const double rhs = std::max(alpha * max_reach, size0);
                if (lhs > rhs + tol) out.push_back({x, q, lhs, rhs});
            }
        },
        exec);

    ConditionAReport report;
    report.alpha = alpha;
    report.Q = Q;
    report.tol = tol;
    for (auto& s : slots) report.witnesses.insert(report.witnesses.end(), s.begin(), s.end());
    std::sort(report.witnesses.begin(), report.witnesses.end(), [](const auto& a, const auto& b) {
        return a.x != b.x ? a.x < b.x : a.q < b.q;
    });
    report.pass = report.witnesses.empty();
    return report;
}

AlphaSearch find_alpha(const PMetricSpace& space, const SelfMap& map, const SampleSet& points,
                       int Q, const std::vector<double>& grid, double tol, par::Exec exec) {
    if (grid.empty()) throw Error("find_alpha: empty grid");
    if (!std::is_sorted(grid.begin(), grid.end())) throw Error("find_alpha: grid must ascend");

    AlphaSearch result;
    // Passing is monotone in alpha, so bisect for the first passing index.
    std::size_t lo = 0, hi = grid.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (check_condition_A(space, map, points, grid[mid], Q, tol, exec).pass) hi = mid;
        else lo = mid + 1;
    }
    if (lo < grid.size()) {
        result.alpha = grid[lo];
    } else {
        result.failure_at_max = check_condition_A(space, map, points, grid.back(), Q, tol, exec);
    }
    return result;
}

std::vector<double> pair_orbit_distances(const PMetricSpace& space, const SelfMap& map, Point x,
                                         Point y, int q_cap) {
    const Orbit ox = compute_orbit(map, x, q_cap);
    const Orbit oy = compute_orbit(map, y, q_cap);
    std::vector<double> out(static_cast<std::size_t>(q_cap));
    for (int q = 1; q <= q_cap; ++q)
        out[static_cast<std::size_t>(q - 1)] = space.p(ox.at(q), oy.at(q));
    return out;
}

ConditionBReport check_condition_B(const PMetricSpace& space, const SelfMap& map,
                                   const SampleSet& points, double epsilon1,
                                   const std::vector<double>& eps_grid, int q_cap, double tol,
                                   par::Exec exec) {
    if (!(epsilon1 > 0)) throw Error("condition B needs epsilon1 > 0");
    if (q_cap < 1) throw Error("condition B needs q_cap >= 1");
    if (eps_grid.empty()) throw Error("condition B needs a nonempty epsilon grid");
    for (std::size_t i = 0; i + 1 < eps_grid.size(); ++i)
        if (eps_grid[i] <= eps_grid[i + 1]) throw Error("epsilon grid must be positive descending");
    if (eps_grid.back() <= 0) throw Error("epsilon grid must be positive descending");

    ConditionBReport report;
    report.epsilon1 = epsilon1;
    report.eps_grid = eps_grid;
    report.q_cap = q_cap;
    report.tol = tol;
    if (auto rho = space.rho_known()) {
        report.rho_ref = *rho;
        report.rho_from_known = true;
    } else {
        report.rho_ref = space_summary(space, points, tol).rho_hat;
    }

    const auto& pts = points.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j) {
            const double bigger = std::max(space.p(pts[i], pts[i]), space.p(pts[j], pts[j]));
            if (bigger <= report.rho_ref + epsilon1)
                report.tested_pairs.emplace_back(pts[i], pts[j]);
            else
                report.skipped_pairs.emplace_back(pts[i], pts[j]);
        }

    std::vector<std::vector<PairEpsOutcome>> slots(report.tested_pairs.size());
    par::for_index(
        report.tested_pairs.size(),
        [&](std::size_t k) {
            const auto [x, y] = report.tested_pairs[k];
            const double bound_base = std::max(space.p(x, x), space.p(y, y));
            const auto trace = pair_orbit_distances(space, map, x, y, q_cap);
            for (double eps : eps_grid) {
                PairEpsOutcome res;
                res.x = x;
                res.y = y;
                res.eps = eps;
                res.min_lhs = trace[0];
                res.q_at_min = 1;
                for (int q = 1; q <= q_cap; ++q) {
                    const double lhs = trace[static_cast<std::size_t>(q - 1)];
                    if (lhs < res.min_lhs) {
                        res.min_lhs = lhs;
                        res.q_at_min = q;
                    }
                    if (!res.q_eps && lhs <= bound_base + eps + tol) {
                        res.q_eps = q;
                        res.lhs_at_q = lhs;
                    }
                }
                if (!res.q_eps) res.lhs_at_q = res.min_lhs;
                slots[k].push_back(res);
            }
        },
        exec);

    for (auto& s : slots)
        report.outcomes.insert(report.outcomes.end(), s.begin(), s.end());
    // tested_pairs is built in ascending order and eps grids descend, so the
    // outcome order is already canonical.
    for (const auto& res : report.outcomes)
        if (!res.q_eps) report.pass = false;
    return report;
}

const char* contract_kind_name(ContractKind k) {
    return k == ContractKind::MaxContraction ? "max-contraction" : "ciric";
}

double ciric_unscaled_max(const PMetricSpace& space, const SelfMap& map, Point x, Point y) {
    const Point tx = map.apply(x), ty = map.apply(y);
    return std::max({space.p(x, y), space.p(x, tx), space.p(y, ty), space.p(x, ty), space.p(y, tx)});
}

ContractReport check_contract(const PMetricSpace& space, const SelfMap& map,
                              const SampleSet& points, double alpha, ContractKind which,
                              double tol, par::Exec exec) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw Error("alpha must lie in [0, 1)");

    const auto& pts = points.points();
    const std::size_t n = pts.size();
    std::vector<std::vector<ContractWitness>> slots(n);
    par::for_index(
        n,
        [&](std::size_t i) {
            const Point x = pts[i];
            const Point tx = map.apply(x);
            const double sx = space.p(x, x);
            auto& out = slots[i];
            for (std::size_t j = 0; j < n; ++j) {
                const Point y = pts[j];
                const Point ty = map.apply(y);
                const double sy = space.p(y, y);
                const double lhs = space.p(tx, ty);
                double rhs = std::max({alpha * space.p(x, y), sx, sy});
                if (which == ContractKind::Ciric)
                    rhs = std::max({rhs, alpha * space.p(x, tx), alpha * space.p(y, ty),
                                    0.5 * alpha * (space.p(x, ty) + space.p(y, tx))});
                if (lhs > rhs + tol) out.push_back({x, y, lhs, rhs});
            }
        },
        exec);

    ContractReport report;
    report.which = which;
    report.alpha = alpha;
    report.tol = tol;
    for (auto& s : slots) report.witnesses.insert(report.witnesses.end(), s.begin(), s.end());
    std::sort(report.witnesses.begin(), report.witnesses.end(), [](const auto& a, const auto& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    report.pass = report.witnesses.empty();
    return report;
}

}  // namespace pmfix
