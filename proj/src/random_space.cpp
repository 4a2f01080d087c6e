#include "pmfix/random_space.hpp"

#include <algorithm>
#include <cmath>

#include "pmfix/errors.hpp"
#include "pmfix/rng.hpp"

namespace pmfix {

namespace {

// Exact axiom check on a raw table (integer-valued entries, tol 0). Kept
// independent of PMetricSpace/verify_axioms so rejection sampling does not
// share a code path with the checker the tests validate against.
bool table_axioms_ok(const FiniteTable& t) {
    const int n = t.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (t.at(i, j) < 0) return false;
            if (t.at(i, j) != t.at(j, i)) return false;                       // P3
            if (t.at(i, i) > t.at(i, j)) return false;                        // P2
            if (i != j && t.at(i, i) == t.at(j, j) && t.at(i, i) == t.at(i, j))
                return false;                                                 // P1
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (t.at(i, j) > t.at(i, k) + t.at(k, j) - t.at(k, k)) return false;  // P4
    return true;
}

FiniteTable max_weight_table(Rng& rng, int n) {
    auto weights = rng.distinct_ints(n, 1, 4 * n);
    FiniteTable t;
    t.n = n;
    t.values.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t.at(i, j) = static_cast<double>(std::max(weights[i], weights[j]));
    return t;
}

FiniteTable metric_plus_constant_table(Rng& rng, int n) {
    auto anchors = rng.distinct_ints(n, 0, 8 * n);
    const double c = 0.5 * static_cast<double>(rng.int_in(0, 4));
    FiniteTable t;
    t.n = n;
    t.values.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t.at(i, j) = std::abs(static_cast<double>(anchors[i] - anchors[j])) + c;
    for (int i = 0; i < n; ++i) t.at(i, i) = c;
    return t;
}

FiniteTable rejection_table(Rng& rng, int n, int attempt_cap) {
    for (int attempt = 0; attempt < attempt_cap; ++attempt) {
        FiniteTable t;
        t.n = n;
        t.values.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            t.at(i, i) = static_cast<double>(rng.int_in(0, 2));
            for (int j = i + 1; j < n; ++j) {
                const double v = static_cast<double>(rng.int_in(0, 4));
                t.at(i, j) = v;
                t.at(j, i) = v;
            }
        }
        if (table_axioms_ok(t)) return t;
    }
    throw GenerationExhausted("rejection sampling failed after " + std::to_string(attempt_cap) +
                              " attempts (n=" + std::to_string(n) + ")");
}

}  // namespace

const char* gen_kind_name(GenKind k) {
    switch (k) {
        case GenKind::MaxWeight: return "max-weight";
        case GenKind::MetricPlusConstant: return "metric-plus-constant";
        case GenKind::Rejection: return "rejection";
    }
    return "?";
}

FiniteTable random_finite_table(std::uint64_t seed, int n, GenKind kind, int attempt_cap) {
    if (n < 2 || n > 8) throw Error("random_finite_table: n must be in [2, 8]");
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(kind) * 1000003ULL + n));
    FiniteTable t;
    switch (kind) {
        case GenKind::MaxWeight: t = max_weight_table(rng, n); break;
        case GenKind::MetricPlusConstant: t = metric_plus_constant_table(rng, n); break;
        case GenKind::Rejection: t = rejection_table(rng, n, attempt_cap); break;
    }
    t.seed = seed;
    return t;
}

PMetricSpace random_finite_space(std::uint64_t seed, int n, GenKind kind, int attempt_cap) {
    auto t = random_finite_table(seed, n, kind, attempt_cap);
    return t.to_space(std::string(gen_kind_name(kind)) + "-" + std::to_string(seed) + "-" +
                      std::to_string(n));
}

}  // namespace pmfix
