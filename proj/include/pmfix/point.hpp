#pragma once

#include <cmath>

namespace pmfix {

/// Points are real scalars; every bundled space lives in a subset of the reals.
using Point = double;

/// Two points closer than this are treated as the same point.
inline constexpr double kPointTol = 1e-12;

/// Default numeric tolerance for axiom, condition and solver checks.
inline constexpr double kDefaultTol = 1e-9;

inline bool same_point(Point a, Point b) { return std::abs(a - b) <= kPointTol; }

inline bool finite_point(Point a) { return std::isfinite(a); }

}  // namespace pmfix
