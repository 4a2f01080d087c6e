#include "pmfix/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "pmfix/errors.hpp"
#include "pmfix/report.hpp"

namespace pmfix {

int default_tail(int Q) { return std::max(20, Q / 4); }

Orbit compute_orbit(const SelfMap& map, Point x0, int Q) {
    if (Q < 1) throw Error("orbit needs at least one step");
    if (!map.in_domain(x0)) throw DomainError("orbit start outside the domain of " + map.name());
    Orbit orbit;
    orbit.points.reserve(static_cast<std::size_t>(Q) + 1);
    orbit.points.push_back(x0);
    for (int q = 0; q < Q; ++q) {
        const Point next = map.apply(orbit.points.back());
        if (!map.in_domain(next))
            throw DomainError("orbit left the domain of " + map.name() + " at step " +
                              std::to_string(q + 1));
        orbit.points.push_back(next);
    }
    return orbit;
}

CauchyVerdict is_a_cauchy(const PMetricSpace& space, const Orbit& orbit, double a, int tail,
                          double tol, par::Exec exec) {
    const int len = static_cast<int>(orbit.points.size());
    if (len < tail + 1) throw Error("orbit shorter than the tail window");
    const int start = len - tail;
    std::vector<double> worst(static_cast<std::size_t>(tail), 0.0);
    par::for_index(
        static_cast<std::size_t>(tail),
        [&](std::size_t row) {
            const int q = start + static_cast<int>(row);
            double w = 0;
            for (int qp = q; qp < len; ++qp)
                w = std::max(w, std::abs(space.p(orbit.points[q], orbit.points[qp]) - a));
            worst[row] = w;
        },
        exec);
    CauchyVerdict verdict;
    verdict.a = a;
    for (double w : worst) verdict.max_deviation = std::max(verdict.max_deviation, w);
    verdict.pass = verdict.max_deviation <= tol;
    return verdict;
}

namespace {

// Smallest L in [1, 16] with x_q == x_{q-L} (bitwise) across the tail.
std::optional<int> detect_period(const std::vector<Point>& pts, int tail) {
    const int len = static_cast<int>(pts.size());
    const int start = len - tail;
    const int max_period = std::min(16, tail - 1);
    for (int L = 1; L <= max_period; ++L) {
        bool ok = true;
        for (int q = start + L; q < len && ok; ++q) ok = pts[q] == pts[q - L];
        if (ok) return L;
    }
    return std::nullopt;
}

}  // namespace

OrbitDiagnostics orbit_diagnostics(const PMetricSpace& space, const Orbit& orbit,
                                   std::optional<double> alpha, int tail, double tol,
                                   par::Exec exec) {
    const int len = static_cast<int>(orbit.points.size());
    if (tail < 1) throw Error("tail window must be positive");
    if (len < tail + 2) throw Error("orbit shorter than tail + 2");

    OrbitDiagnostics d;
    d.tail = tail;
    d.sizes.resize(orbit.points.size());
    for (std::size_t q = 0; q < orbit.points.size(); ++q)
        d.sizes[q] = space.p(orbit.points[q], orbit.points[q]);

    const int start = len - tail;
    d.limsup_size = d.liminf_size = d.sizes[static_cast<std::size_t>(start)];
    for (int q = start; q < len; ++q) {
        d.limsup_size = std::max(d.limsup_size, d.sizes[static_cast<std::size_t>(q)]);
        d.liminf_size = std::min(d.liminf_size, d.sizes[static_cast<std::size_t>(q)]);
    }
    if (d.limsup_size - d.liminf_size <= tol)
        d.r_x = 0.5 * (d.limsup_size + d.liminf_size);

    d.cauchy = is_a_cauchy(space, orbit, d.r_x ? *d.r_x : 0.5 * (d.limsup_size + d.liminf_size),
                           tail, tol, exec);

    // Full pairwise scan; also feeds the orbit-inequality bound check.
    std::vector<double> row_max(orbit.points.size(), 0.0);
    par::for_index(
        orbit.points.size(),
        [&](std::size_t q) {
            double w = 0;
            for (std::size_t qp = q; qp < orbit.points.size(); ++qp)
                w = std::max(w, space.p(orbit.points[q], orbit.points[qp]));
            row_max[q] = w;
        },
        exec);
    for (double w : row_max) d.max_pairwise = std::max(d.max_pairwise, w);

    if (alpha) {
        if (!(*alpha >= 0.0 && *alpha < 1.0)) throw Error("alpha must lie in [0, 1)");
        d.pairwise_bound = 2.0 / (1.0 - *alpha) * space.p(orbit.points[0], orbit.points[1]);
        d.pairwise_bound_ok = d.max_pairwise <= *d.pairwise_bound + tol;
    }

    d.period_hint = detect_period(orbit.points, tail);
    return d;
}

std::string orbit_dump(const PMetricSpace& space, const Orbit& orbit) {
    std::string out;
    for (int q = 0; q < orbit.steps(); ++q) {
        const Point x = orbit.at(q);
        out += std::to_string(q);
        out += '\t';
        out += format_double17(x);
        out += '\t';
        out += format_double17(space.p(x, x));
        out += '\t';
        out += format_double17(space.p(x, orbit.at(q + 1)));
        out += '\n';
    }
    return out;
}

}  // namespace pmfix
