#include "qwalk/engine.hpp"

#include <algorithm>

namespace qwalk {

namespace {

// Output buffer for a three-point stencil: source window widened by one per side.
WalkState widened(const WalkState& src) {
    WalkState out;
    out.t = src.t;
    out.offset = src.offset - 1;
    out.amps.assign(src.amps.size() + 2, CoinSpinor{});
    return out;
}

}  // namespace

WalkState apply_u1(const WalkState& state, const WalkParameters& params) {
    const double half_c = 0.5 * params.c();
    const double s = params.s();
    WalkState out = widened(state);
    // Source index i lands at out index i (x-1), i+1 (x), i+2 (x+1).
    for (std::size_t i = 0; i < state.amps.size(); ++i) {
        const complex a = state.amps[i].a0;
        const complex b = state.amps[i].a1;
        const complex plus = half_c * (a + b);
        const complex minus = half_c * (a - b);
        out.amps[i] += {plus, -plus};
        out.amps[i + 1] += {s * b, s * a};
        out.amps[i + 2] += {minus, minus};
    }
    return out;
}

WalkState apply_u2(const WalkState& state, const WalkParameters& params) {
    const double c = params.c();
    const double s = params.s();
    WalkState out = widened(state);
    for (std::size_t i = 0; i < state.amps.size(); ++i) {
        const complex a = state.amps[i].a0;
        const complex b = state.amps[i].a1;
        out.amps[i].a0 += s * b;
        out.amps[i + 1] += {c * a, -c * b};
        out.amps[i + 2].a1 += s * a;
    }
    return out;
}

WalkState step(const WalkState& state, const WalkParameters& params) {
    WalkState next = apply_u2(apply_u1(state, params), params);
    ++next.t;
    return next;
}

WalkState evolve(const WalkParameters& params, const InitialCoin& coin, int t) {
    if (t < 0) throw InvalidParameter("step count must be nonnegative");
    WalkState state = localized_state(coin);
    for (int i = 0; i < t; ++i) state = step(state, params);
    return state;
}

std::vector<ProbabilityDistribution> evolve_snapshots(const WalkParameters& params, const InitialCoin& coin,
                                                      std::span<const int> times) {
    std::vector<ProbabilityDistribution> out(times.size());
    if (times.empty()) return out;
    if (*std::min_element(times.begin(), times.end()) < 0)
        throw InvalidParameter("snapshot times must be nonnegative");
    const int horizon = *std::max_element(times.begin(), times.end());

    WalkState state = localized_state(coin);
    for (int t = 0;; ++t) {
        for (std::size_t i = 0; i < times.size(); ++i)
            if (times[i] == t) out[i] = distribution(state);
        if (t == horizon) break;
        state = step(state, params);
    }
    return out;
}

ProbabilityDistribution distribution(const WalkState& state) {
    ProbabilityDistribution d;
    d.t = state.t;
    d.offset = state.offset;
    d.probs.reserve(state.amps.size());
    for (const auto& a : state.amps) d.probs.push_back(a.norm_sq());
    return d;
}

}  // namespace qwalk
