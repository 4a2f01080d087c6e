#pragma once

#include <cstdint>
#include <string>

#include "pmfix/space.hpp"

namespace pmfix {

/// Generator kinds for random finite spaces.
///  - MaxWeight: p(x,y) = max(w(x), w(y)) with distinct positive weights.
///  - MetricPlusConstant: p(x,y) = |v(x)-v(y)| + c with distinct anchors and
///    a nonnegative constant, so every self-distance equals c.
///  - Rejection: random symmetric nonnegative integer tables resampled until
///    all four axioms hold exactly.
enum class GenKind { MaxWeight, MetricPlusConstant, Rejection };

const char* gen_kind_name(GenKind k);

/// Deterministic for a fixed seed. Entries are small integers (or dyadics),
/// so axiom checks on the result are exact. Throws GenerationExhausted when
/// rejection sampling exceeds attempt_cap.
FiniteTable random_finite_table(std::uint64_t seed, int n, GenKind kind, int attempt_cap = 10000);

PMetricSpace random_finite_space(std::uint64_t seed, int n, GenKind kind, int attempt_cap = 10000);

}  // namespace pmfix
