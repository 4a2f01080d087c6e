#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmfix/parallel.hpp"
#include "pmfix/selfmap.hpp"
#include "pmfix/space.hpp"

namespace pmfix {

/// The iterate sequence x_0, T(x_0), T^2(x_0), ... of a self-map.
struct Orbit {
    std::vector<Point> points;  // length steps + 1

    int steps() const { return static_cast<int>(points.size()) - 1; }
    Point at(int q) const { return points[static_cast<std::size_t>(q)]; }
    Point last() const { return points.back(); }
};

/// Exact repeated application; throws DomainError if an iterate leaves the
/// map's domain. Q >= 1.
Orbit compute_orbit(const SelfMap& map, Point x0, int Q);

struct CauchyVerdict {
    bool pass = false;
    double a = 0;
    double max_deviation = 0;
};

/// Checks whether all pairwise distances over the last `tail` orbit indices
/// (diagonal included) sit within tol of a. Always reports the worst
/// deviation, pass or fail.
CauchyVerdict is_a_cauchy(const PMetricSpace& space, const Orbit& orbit, double a, int tail,
                          double tol = kDefaultTol, par::Exec exec = par::Exec::Auto);

/// Tail-window statistics of an orbit: the self-distance ("size") sequence
/// and its limit estimate, the pairwise bound implied by the orbit
/// inequality when a contraction factor is supplied, Cauchy behavior at the
/// estimated limit, and an exact-match cycle detector.
struct OrbitDiagnostics {
    std::vector<double> sizes;
    double limsup_size = 0;  // over the tail window
    double liminf_size = 0;
    std::optional<double> r_x;  // set iff the tail oscillation is within tol
    CauchyVerdict cauchy;       // at a = r_x (or the tail midpoint when r_x is unset)

    std::optional<double> pairwise_bound;  // 2/(1-alpha) * p(x0, x1), when alpha given
    std::optional<bool> pairwise_bound_ok;       // every pairwise distance <= bound + tol
    double max_pairwise = 0;             // over the whole orbit

    std::optional<int> period_hint;  // smallest exact cycle length in the tail, up to 16
    int tail = 0;
};

/// Requires orbit length >= tail + 2. All scans are deterministic
/// regardless of the execution mode.
OrbitDiagnostics orbit_diagnostics(const PMetricSpace& space, const Orbit& orbit,
                                   std::optional<double> alpha, int tail, double tol = kDefaultTol,
                                   par::Exec exec = par::Exec::Auto);

/// Tab-separated dump, one line per step q: q, x_q, p(x_q,x_q),
/// p(x_q,x_{q+1}); 17 significant digits.
std::string orbit_dump(const PMetricSpace& space, const Orbit& orbit);

/// Default tail window for an orbit of Q steps.
int default_tail(int Q);

}  // namespace pmfix
