#include "qwalk/core.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace qwalk {

bool WalkParameters::is_hadamard_angle() const noexcept {
    return std::abs(theta_ - kPi / 4) < kSpecialAngleTolerance ||
           std::abs(theta_ - 3 * kPi / 4) < kSpecialAngleTolerance;
}

WalkParameters make_parameters(double theta) {
    if (!std::isfinite(theta)) throw InvalidParameter("theta must be finite");
    if (!(theta > 0.0 && theta < kPi))
        throw InvalidParameter("theta must lie in (0, pi), got " + std::to_string(theta));
    // cos(theta) sin(theta) = 0 removes either the shift or the stay part of U1.
    if (std::abs(theta - kPi / 2) < kSpecialAngleTolerance)
        throw InvalidParameter("theta = pi/2 is excluded");
    return WalkParameters(theta, std::cos(theta), std::sin(theta));
}

InitialCoin make_initial_coin(complex alpha, complex beta) {
    const double n = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kCoinNormTolerance)
        throw InvalidParameter("initial coin must satisfy |alpha|^2 + |beta|^2 = 1, got " +
                               std::to_string(n));
    return InitialCoin(alpha, beta);
}

InitialCoin symmetric_coin() {
    const double r = 1.0 / std::sqrt(2.0);
    return make_initial_coin({r, 0.0}, {0.0, r});
}

CoinSpinor WalkState::at(int x) const noexcept {
    if (x < first() || x > last()) return {};
    return amps[static_cast<std::size_t>(x - offset)];
}

double WalkState::norm_sq() const noexcept {
    double total = 0.0;
    for (const auto& a : amps) total += a.norm_sq();
    return total;
}

WalkState localized_state(const InitialCoin& coin) {
    return WalkState{0, 0, {coin.spinor()}};
}

double ProbabilityDistribution::at(int x) const noexcept {
    if (x < first() || x > last()) return 0.0;
    return probs[static_cast<std::size_t>(x - offset)];
}

double ProbabilityDistribution::total() const noexcept {
    return std::accumulate(probs.begin(), probs.end(), 0.0);
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QWALK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace qwalk
