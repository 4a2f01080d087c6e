#include "pmfix/catalog.hpp"

#include <cmath>

#include "pmfix/errors.hpp"

namespace pmfix {

namespace {

// Entries 3-5 live on grids of reals. Decoding snaps a double to the grid
// before applying the written formulas, so orbits stay on exact dyadic
// values as long as doubles can represent them.

bool near_integer(Point x) { return std::abs(x - std::round(x)) <= kPointTol; }

long long to_integer(Point x) { return std::llround(x); }

// x = n + 1/(2k) for integers n >= 0, k >= 1; returns k-integrality.
bool on_half_reciprocal_grid(Point x) {
    if (x < -kPointTol) return false;
    if (near_integer(x)) return true;
    const double n = std::floor(x);
    const double frac = x - n;
    if (frac <= 0 || frac > 0.5 + kPointTol) return false;
    const double k = 1.0 / (2.0 * frac);
    return std::abs(k - std::round(k)) <= 1e-9 * std::max(1.0, k);
}

CatalogEntry make_example1() {
    PMetricSpace space(
        "example1",
        [](Point x, Point y) {
            if (x <= 0.0 && y <= 0.0) return std::abs(x - y);
            return std::abs(x - y) + 1.0;
        },
        nullptr, 0.0);
    SelfMap map("example1", [](Point x) { return x <= 0.0 ? x / 2 : 1.0; });
    auto sample = SampleSet::from_list({-2, -1, -0.5, 0, 0.5, 1, 2});
    return {"example1", space, map, sample,
            "halving map on the reals with a unit penalty off the nonpositive half-line"};
}

CatalogEntry make_example2() {
    CatalogEntry base = make_example1();
    // Identical to example1 except at the exact point 0, which is sent to 1.
    SelfMap map("example2", [](Point x) {
        if (x == 0.0) return 1.0;
        return x <= 0.0 ? x / 2 : 1.0;
    });
    return {"example2", base.space, map, base.default_sample,
            "example1's space with the map redefined at 0"};
}

CatalogEntry make_example3() {
    auto domain = [](Point x) { return same_point(x, 0.0) || same_point(x, 1.0); };
    auto snap = [](Point x) { return same_point(x, 0.0) ? 0.0 : 1.0; };
    PMetricSpace space(
        "example3",
        [snap](Point x, Point y) {
            const double a = snap(x), b = snap(y);
            if (a == 0.0 && b == 0.0) return 0.0;
            return 1.0 + std::abs(a - b);
        },
        domain, 0.0);
    SelfMap map("example3", [snap](Point x) { return snap(x) == 0.0 ? 1.0 : 0.0; }, domain);
    auto sample = SampleSet::from_list({0, 1});
    return {"example3", space, map, sample, "two-point swap with no fixed point"};
}

CatalogEntry make_example4() {
    auto domain = [](Point x) { return x > -0.5 && near_integer(x); };
    PMetricSpace space(
        "example4",
        [](Point x, Point y) {
            const long long m = to_integer(x), n = to_integer(y);
            if (m == n) return 0.0;
            if (m >= 1 && n >= 1) return 1.0 / m + 1.0 / n;
            return 1.0 / std::max(m, n);
        },
        domain, 0.0);
    SelfMap map("example4", [](Point x) { return static_cast<double>(to_integer(x) + 1); }, domain);
    auto sample = SampleSet::from_list({0, 1, 2, 3, 4, 5});
    return {"example4", space, map, sample,
            "successor map on the harmonic-distance integers; compact but fixed-point free"};
}

CatalogEntry make_example5() {
    auto domain = [](Point x) { return on_half_reciprocal_grid(x); };
    PMetricSpace space(
        "example5", [](Point x, Point y) { return std::abs(x - y); }, domain, 0.0);
    SelfMap map(
        "example5",
        [](Point x) {
            if (near_integer(x)) return std::round(x) + 1.5;
            const double n = std::floor(x);
            return n + (x - n) / 2;  // n + 1/(2k) -> n + 1/(4k)
        },
        domain);
    auto sample = SampleSet::from_list({0, 0.5, 1, 1.25, 1.5, 2, 2.25, 3});
    return {"example5", space, map, sample,
            "drifting half-reciprocal grid map: orbit condition holds, proximity condition fails"};
}

CatalogEntry make_euclidean() {
    PMetricSpace space(
        "euclidean", [](Point x, Point y) { return std::abs(x - y); }, nullptr, 0.0);
    SelfMap map("euclidean", [](Point x) { return x / 2; });
    auto sample = SampleSet::from_list({-2, -1, 0, 1, 2});
    return {"euclidean", space, map, sample, "plain metric on the reals with the halving contraction"};
}

}  // namespace

const std::vector<std::string>& catalog_ids() {
    static const std::vector<std::string> ids = {"example1", "example2", "example3",
                                                 "example4", "example5", "euclidean"};
    return ids;
}

bool catalog_has(const std::string& id) {
    for (const auto& s : catalog_ids())
        if (s == id) return true;
    return false;
}

CatalogEntry catalog_entry(const std::string& id) {
    if (id == "example1") return make_example1();
    if (id == "example2") return make_example2();
    if (id == "example3") return make_example3();
    if (id == "example4") return make_example4();
    if (id == "example5") return make_example5();
    if (id == "euclidean") return make_euclidean();
    throw Error("unknown catalog id: " + id);
}

}  // namespace pmfix
