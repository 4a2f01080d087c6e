#include <doctest.h>

#include <cmath>

#include "pmfix/catalog.hpp"
#include "pmfix/conditions.hpp"
#include "pmfix/errors.hpp"
#include "pmfix/random_space.hpp"
#include "pmfix/rng.hpp"

using namespace pmfix;

namespace {

// Independent re-evaluation of a condition-A witness straight from the
// definition, sharing no state with the checker.
bool condition_a_violated(const PMetricSpace& space, const SelfMap& map, Point x, int q,
                          double alpha, double tol) {
    std::vector<Point> orbit{x};
    for (int i = 0; i <= q + 1; ++i) orbit.push_back(map.apply(orbit.back()));
    const double lhs = space.p(orbit[1], orbit[static_cast<std::size_t>(q) + 1]);
    double rhs = space.p(x, x);
    for (int j = 1; j <= q + 1; ++j)
        rhs = std::max(rhs, alpha * space.p(x, orbit[static_cast<std::size_t>(j)]));
    return lhs > rhs + tol;
}

}  // namespace

TEST_CASE("condition A holds on example1 at alpha 3/4") {
    const auto entry = catalog_entry("example1");
    const auto report = check_condition_A(entry.space, entry.map, entry.default_sample, 0.75, 30);
    CHECK(report.pass);
    CHECK(report.witnesses.empty());
}

TEST_CASE("condition A fails on the two-point swap for any alpha") {
    const auto entry = catalog_entry("example3");
    const auto report = check_condition_A(entry.space, entry.map, entry.default_sample, 0.99, 4);
    CHECK_FALSE(report.pass);
    REQUIRE(!report.witnesses.empty());
    const auto& w = report.witnesses.front();
    CHECK(w.x == 0.0);
    CHECK(w.q == 1);
    CHECK(w.lhs == 2.0);          // p(T(0), T^2(0)) = p(1, 0)
    CHECK(w.rhs == 0.99 * 2.0);   // alpha * p(0, T(0))
}

TEST_CASE("condition A fails on the successor map with the documented witness") {
    // p(1, 2) = 1/1 + 1/2 and the best scaled reach from 0 is alpha * p(0, 1).
    const auto entry = catalog_entry("example4");
    const auto report = check_condition_A(entry.space, entry.map, entry.default_sample, 0.99, 4);
    CHECK_FALSE(report.pass);
    REQUIRE(!report.witnesses.empty());
    const auto& w = report.witnesses.front();
    CHECK(w.x == 0.0);
    CHECK(w.q == 1);
    CHECK(w.lhs == 1.5);
    CHECK(w.rhs == 0.99);
}

TEST_CASE("condition A on example2 and example5 at alpha 3/4") {
    const auto e2 = catalog_entry("example2");
    CHECK(check_condition_A(e2.space, e2.map, e2.default_sample, 0.75, 30).pass);
    const auto e5 = catalog_entry("example5");
    CHECK(check_condition_A(e5.space, e5.map, e5.default_sample, 0.75, 20).pass);
}

TEST_CASE("find_alpha: squared swap passes at 1/2 and below") {
    const auto entry = catalog_entry("example3");
    const auto squared = entry.map.power(2);
    const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const auto result = find_alpha(entry.space, squared, entry.default_sample, 8, grid);
    REQUIRE(result.alpha.has_value());
    CHECK(*result.alpha <= 0.5);
    CHECK(check_condition_A(entry.space, squared, entry.default_sample, 0.5, 8).pass);
}

TEST_CASE("find_alpha: identity map satisfies the inequality at every alpha") {
    const auto entry = catalog_entry("example1");
    SelfMap identity("id", [](Point x) { return x; });
    const std::vector<double> grid{0.1, 0.5, 0.9};
    const auto result = find_alpha(entry.space, identity, entry.default_sample, 10, grid);
    REQUIRE(result.alpha.has_value());
    CHECK(*result.alpha == 0.1);
}

TEST_CASE("find_alpha: none on the successor map, with the witness kept") {
    const auto entry = catalog_entry("example4");
    std::vector<double> grid;
    for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
    const auto result = find_alpha(entry.space, entry.map, entry.default_sample, 10, grid);
    CHECK_FALSE(result.alpha.has_value());
    REQUIRE(result.failure_at_max.has_value());
    const auto& w = result.failure_at_max->witnesses.front();
    CHECK(w.x == 0.0);
    CHECK(w.q == 1);
    CHECK(w.lhs == 1.5);
}

TEST_CASE("condition B passes on example1 with the documented parameters") {
    const auto entry = catalog_entry("example1");
    const auto sample = SampleSet::from_list({-2, -1, 0, 0.5});
    const auto report =
        check_condition_B(entry.space, entry.map, sample, 0.5, {0.5, 0.1, 0.01}, 200);
    CHECK(report.pass);
    // 0.5 has size 1 > rho + epsilon1, so every pair touching it is skipped.
    for (const auto& [x, y] : report.tested_pairs) {
        CHECK(x <= 0.0);
        CHECK(y <= 0.0);
    }
    CHECK_FALSE(report.skipped_pairs.empty());
}

TEST_CASE("condition B on example2: the (-1, 0) pair never gets close") {
    const auto entry = catalog_entry("example2");
    const auto report = check_condition_B(entry.space, entry.map, entry.default_sample, 0.5,
                                          {0.5, 0.1, 0.01}, 200);
    CHECK_FALSE(report.pass);
    bool found_pair = false;
    for (const auto& res : report.outcomes) {
        if (res.x == -1.0 && res.y == 0.0 && res.eps == 0.5) {
            found_pair = true;
            CHECK_FALSE(res.q_eps.has_value());
            CHECK(res.min_lhs >= 2.0);  // distances stay at 2 + 2^-q
        }
    }
    CHECK(found_pair);
    // Closed form: p(T1^q(0), T1^q(-1)) = 2 + 2^-q.
    const auto trace = pair_orbit_distances(entry.space, entry.map, 0, -1, 200);
    for (int q = 1; q <= 200; ++q)
        CHECK(std::abs(trace[static_cast<std::size_t>(q - 1)] - (2.0 + std::ldexp(1.0, -q))) <=
              1e-12);
}

TEST_CASE("condition B on example5: the (0, 1) distances sit at exactly 1") {
    const auto entry = catalog_entry("example5");
    const auto report = check_condition_B(entry.space, entry.map, entry.default_sample, 0.5,
                                          {0.5, 0.1, 0.01}, 200);
    CHECK_FALSE(report.pass);
    const auto trace = pair_orbit_distances(entry.space, entry.map, 0, 1, 200);
    for (double v : trace) CHECK(v == 1.0);
    bool found_pair = false;
    for (const auto& res : report.outcomes)
        if (res.x == 0.0 && res.y == 1.0 && !res.q_eps) {
            found_pair = true;
            CHECK(res.min_lhs == 1.0);
        }
    CHECK(found_pair);
}

TEST_CASE("condition B finds the proximity index on example4") {
    const auto entry = catalog_entry("example4");
    const auto report = check_condition_B(entry.space, entry.map, entry.default_sample, 0.5,
                                          {0.5, 0.1, 0.01}, 200);
    CHECK(report.pass);
    for (const auto& res : report.outcomes) REQUIRE(res.q_eps.has_value());
}

TEST_CASE("the plain max contraction fails on example1 with the documented witness") {
    const auto entry = catalog_entry("example1");
    const auto report = check_contract(entry.space, entry.map, entry.default_sample, 0.9,
                                       ContractKind::MaxContraction);
    CHECK_FALSE(report.pass);
    bool found = false;
    for (const auto& w : report.witnesses) {
        if (w.x == 0.0 && w.y == 0.5) {
            found = true;
            CHECK(w.lhs == 2.0);             // p(T(0), T(0.5)) = p(0, 1)
            CHECK(w.rhs == doctest::Approx(1.35));  // max{0.9 * 1.5, 0, 1}
        }
    }
    CHECK(found);
}

TEST_CASE("the unscaled Ciric max at (0, y) is exactly 2 on example1") {
    const auto entry = catalog_entry("example1");
    Rng rng(5150);
    for (int i = 0; i < 100; ++i) {
        const Point y = rng.real_in(1e-6, 1.0 - 1e-6);
        CHECK(ciric_unscaled_max(entry.space, entry.map, 0, y) == 2.0);
    }
}

TEST_CASE("constant map to a size-0 point passes both contract conditions at alpha 0") {
    const auto entry = catalog_entry("euclidean");
    SelfMap to_zero("const0", [](Point) { return 0.0; });
    CHECK(check_contract(entry.space, to_zero, entry.default_sample, 0.0, ContractKind::MaxContraction).pass);
    CHECK(check_contract(entry.space, to_zero, entry.default_sample, 0.0, ContractKind::Ciric).pass);
}

TEST_CASE("property: condition A is monotone in alpha on the catalog") {
    for (const auto& id : catalog_ids()) {
        const auto entry = catalog_entry(id);
        bool seen_pass = false;
        for (double alpha : {0.05, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95}) {
            const bool pass =
                check_condition_A(entry.space, entry.map, entry.default_sample, alpha, 12).pass;
            if (seen_pass) CHECK(pass);  // once passing, stays passing
            seen_pass = seen_pass || pass;
        }
    }
}

TEST_CASE("property: reported witnesses violate their inequality on re-evaluation") {
    const auto e3 = catalog_entry("example3");
    auto report = check_condition_A(e3.space, e3.map, e3.default_sample, 0.9, 6);
    REQUIRE(!report.witnesses.empty());
    for (const auto& w : report.witnesses)
        CHECK(condition_a_violated(e3.space, e3.map, w.x, w.q, 0.9, report.tol));

    const auto e4 = catalog_entry("example4");
    report = check_condition_A(e4.space, e4.map, e4.default_sample, 0.7, 6);
    for (const auto& w : report.witnesses)
        CHECK(condition_a_violated(e4.space, e4.map, w.x, w.q, 0.7, report.tol));

    const auto e1 = catalog_entry("example1");
    for (auto kind : {ContractKind::MaxContraction, ContractKind::Ciric}) {
        const auto contract =
            check_contract(e1.space, e1.map, e1.default_sample, 0.8, kind);
        for (const auto& w : contract.witnesses) {
            // Recompute both sides from the definition.
            const Point tx = e1.map.apply(w.x), ty = e1.map.apply(w.y);
            const double lhs = e1.space.p(tx, ty);
            double rhs = std::max({0.8 * e1.space.p(w.x, w.y), e1.space.p(w.x, w.x),
                                   e1.space.p(w.y, w.y)});
            if (kind == ContractKind::Ciric)
                rhs = std::max({rhs, 0.8 * e1.space.p(w.x, tx), 0.8 * e1.space.p(w.y, ty),
                                0.4 * (e1.space.p(w.x, ty) + e1.space.p(w.y, tx))});
            CHECK(lhs == w.lhs);
            CHECK(rhs == w.rhs);
            CHECK(lhs > rhs + contract.tol);
        }
    }
}

TEST_CASE("property: both contract conditions imply the orbit conditions (small instances)") {
    // Exhaustive maps over 3-point random tables.
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        for (GenKind kind : {GenKind::MaxWeight, GenKind::MetricPlusConstant, GenKind::Rejection}) {
            const auto table = random_finite_table(seed, 3, kind);
            const auto space = table.to_space("t");
            const auto sample = table.full_sample();
            for (int code = 0; code < 27; ++code) {
                int c = code;
                std::vector<Point> img(3);
                for (auto& v : img) {
                    v = c % 3;
                    c /= 3;
                }
                SelfMap map(
                    "m",
                    [img](Point x) { return img[static_cast<std::size_t>(std::llround(x))]; },
                    [](Point x) { return x >= -0.5 && x < 2.5; });
                for (double alpha : {0.3, 0.6, 0.9}) {
                    const bool max_ok =
                        check_contract(space, map, sample, alpha, ContractKind::MaxContraction).pass;
                    const bool ciric =
                        check_contract(space, map, sample, alpha, ContractKind::Ciric).pass;
                    if (max_ok) CHECK(ciric);  // the plain max is a subset of the Ciric max
                    if (ciric)
                        CHECK(check_condition_A(space, map, sample, alpha, 6).pass);
                    if (max_ok)
                        CHECK(check_condition_B(space, map, sample, 1.0, {0.5, 0.1, 0.01, 0.001},
                                                64)
                                  .pass);
                }
            }
        }
    }
}

TEST_CASE("property: found proximity indices satisfy their inequality on re-evaluation") {
    for (const char* id : {"example1", "example3", "example4", "euclidean"}) {
        const auto entry = catalog_entry(id);
        const auto report = check_condition_B(entry.space, entry.map, entry.default_sample, 0.5,
                                              {0.5, 0.1, 0.01}, 200);
        for (const auto& res : report.outcomes) {
            if (!res.q_eps) continue;
            // Fresh orbits, no shared state with the checker.
            const auto ox = compute_orbit(entry.map, res.x, *res.q_eps);
            const auto oy = compute_orbit(entry.map, res.y, *res.q_eps);
            const double lhs = entry.space.p(ox.last(), oy.last());
            const double base =
                std::max(entry.space.p(res.x, res.x), entry.space.p(res.y, res.y));
            CHECK(lhs == res.lhs_at_q);
            CHECK(lhs <= base + res.eps + report.tol);
            // Earlier indices must not satisfy it, q_eps being the first.
            if (*res.q_eps > 1) {
                const auto trace =
                    pair_orbit_distances(entry.space, entry.map, res.x, res.y, *res.q_eps - 1);
                for (double v : trace) CHECK(v > base + res.eps + report.tol);
            }
        }
    }
}

TEST_CASE("parameter validation") {
    const auto entry = catalog_entry("example1");
    CHECK_THROWS_AS(
        check_condition_A(entry.space, entry.map, entry.default_sample, 1.0, 10), Error);
    CHECK_THROWS_AS(
        check_condition_A(entry.space, entry.map, entry.default_sample, 0.5, 0), Error);
    CHECK_THROWS_AS(check_condition_B(entry.space, entry.map, entry.default_sample, 0.0,
                                      {0.5}, 10),
                    Error);
    CHECK_THROWS_AS(check_condition_B(entry.space, entry.map, entry.default_sample, 0.5,
                                      {0.1, 0.5}, 10),
                    Error);
}
