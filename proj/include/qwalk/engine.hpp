#pragma once

// Position-space evolution by the banded stencils of U1 and U2.

#include <span>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk {

// Half-step U1. Each source site (a, b) at x sends
//   (c/2)(a+b) (1, -1) to x-1,   s (b, a) to x,   (c/2)(a-b) (1, 1) to x+1.
// The window widens by one site per side; t is left unchanged.
WalkState apply_u1(const WalkState& state, const WalkParameters& params);

// Half-step U2. Each source site (a, b) at x sends
//   (s b, 0) to x-1,   (c a, -c b) to x,   (0, s a) to x+1.
WalkState apply_u2(const WalkState& state, const WalkParameters& params);

// One full step U2 U1; t is incremented.
WalkState step(const WalkState& state, const WalkParameters& params);

// t steps from the localized coin at the origin.
WalkState evolve(const WalkParameters& params, const InitialCoin& coin, int t);

// Runs to max(times) and records the distribution at each requested time.
// times need not be sorted; duplicates are allowed.
std::vector<ProbabilityDistribution> evolve_snapshots(const WalkParameters& params, const InitialCoin& coin,
                                                      std::span<const int> times);

// |a0(x)|^2 + |a1(x)|^2 on the state's window.
ProbabilityDistribution distribution(const WalkState& state);

}  // namespace qwalk
