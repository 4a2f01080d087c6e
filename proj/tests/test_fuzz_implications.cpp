#include <doctest.h>

#include "pmfix/errors.hpp"
#include "pmfix/fuzz.hpp"

using namespace pmfix;

TEST_CASE("100 seeded trials: no implication breaches") {
    const auto report = fuzz_implications(1, 100);
    CHECK(report.trials == 100);
    CHECK(report.instances + report.generation_exhausted == 100);
    CHECK(report.implication_breaches == 0);
    CHECK(report.breach_dumps.empty());
    CHECK(report.maps_checked > 0);
}

TEST_CASE("count consistency") {
    const auto report = fuzz_implications(7, 60);
    // The plain max condition is a sub-max of the Ciric condition.
    CHECK(report.max_contract_pass <= report.ciric_pass);
    // The solver consistency check runs exactly on the maps where both
    // hypotheses hold, and with zero breaches it succeeds on all of them.
    CHECK(report.b_pass <= report.a_pass);
    CHECK(report.fixed_point_found + report.implication_breaches >= report.b_pass);
}

TEST_CASE("fixed seed reproduces the report byte for byte") {
    const auto a = fuzz_implications(31337, 50);
    const auto b = fuzz_implications(31337, 50);
    CHECK(fuzz_report_text(a) == fuzz_report_text(b));
}

TEST_CASE("zero trials is a usage error") {
    CHECK_THROWS_AS(fuzz_implications(1, 0), UsageError);
}
