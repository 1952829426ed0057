#pragma once

// Shared domain types for the two-operator quantum walk on the integer line.

#include <algorithm>
#include <complex>
#include <exception>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qwalk {

using complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Tolerance used to decide that theta sits on pi/4 or 3pi/4.
inline constexpr double kSpecialAngleTolerance = 1e-12;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-supplied value (theta out of range, unnormalized coin, bad flag).
struct InvalidParameter : Error {
    using Error::Error;
};

// A formula was evaluated outside the set where it is defined.
struct DomainError : Error {
    using Error::Error;
};

// Momentum at which the two eigenvalues coincide (k = 0 or k = pi).
struct DegenerateMomentum : Error {
    using Error::Error;
};

// Operation only defined for one of the two theta regimes.
struct UnsupportedRegime : Error {
    using Error::Error;
};

// Too few Fourier nodes to resolve the light cone.
struct AliasingError : Error {
    using Error::Error;
};

// Adaptive quadrature did not reach its target.
struct NonConvergence : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

class WalkParameters {
public:
    double theta() const noexcept { return theta_; }
    double c() const noexcept { return c_; }
    double s() const noexcept { return s_; }

    // |c| s, the combination that fixes the support of the limit law.
    double abs_cs() const noexcept { return std::abs(c_) * s_; }

    // theta within kSpecialAngleTolerance of pi/4 or 3pi/4.
    bool is_hadamard_angle() const noexcept;

private:
    friend WalkParameters make_parameters(double theta);
    WalkParameters(double theta, double c, double s) : theta_(theta), c_(c), s_(s) {}

    double theta_;
    double c_;
    double s_;
};

// Accepts theta in (0, pi) excluding pi/2; throws InvalidParameter otherwise.
WalkParameters make_parameters(double theta);

// ---------------------------------------------------------------------------
// Coin states
// ---------------------------------------------------------------------------

struct CoinSpinor {
    complex a0{};
    complex a1{};

    double norm_sq() const noexcept { return std::norm(a0) + std::norm(a1); }

    CoinSpinor& operator+=(const CoinSpinor& o) noexcept {
        a0 += o.a0;
        a1 += o.a1;
        return *this;
    }
    friend bool operator==(const CoinSpinor&, const CoinSpinor&) = default;
};

inline constexpr double kCoinNormTolerance = 1e-12;

class InitialCoin {
public:
    complex alpha() const noexcept { return alpha_; }
    complex beta() const noexcept { return beta_; }
    CoinSpinor spinor() const noexcept { return {alpha_, beta_}; }

    // |alpha|^2 - |beta|^2
    double imbalance() const noexcept { return std::norm(alpha_) - std::norm(beta_); }
    // alpha conj(beta) + conj(alpha) beta, always real
    double coherence() const noexcept { return 2.0 * (alpha_ * std::conj(beta_)).real(); }

private:
    friend InitialCoin make_initial_coin(complex alpha, complex beta);
    InitialCoin(complex alpha, complex beta) : alpha_(alpha), beta_(beta) {}

    complex alpha_;
    complex beta_;
};

// Throws InvalidParameter when | |alpha|^2 + |beta|^2 - 1 | > 1e-12.
InitialCoin make_initial_coin(complex alpha, complex beta);

// (1/sqrt2, i/sqrt2), the initial coin used for the reference figures.
InitialCoin symmetric_coin();

// ---------------------------------------------------------------------------
// Lattice data
// ---------------------------------------------------------------------------

// Dense amplitude window [offset, offset + amps.size()). Sites outside the
// window hold zero amplitude.
struct WalkState {
    int t = 0;
    int offset = 0;
    std::vector<CoinSpinor> amps;

    int first() const noexcept { return offset; }
    int last() const noexcept { return offset + static_cast<int>(amps.size()) - 1; }

    // Amplitude at x, zero outside the stored window.
    CoinSpinor at(int x) const noexcept;

    double norm_sq() const noexcept;
};

// Localized state |0> (x) (alpha|0> + beta|1>) at t = 0.
WalkState localized_state(const InitialCoin& coin);

struct ProbabilityDistribution {
    int t = 0;
    int offset = 0;
    std::vector<double> probs;

    int first() const noexcept { return offset; }
    int last() const noexcept { return offset + static_cast<int>(probs.size()) - 1; }

    double at(int x) const noexcept;
    double total() const noexcept;
};

// ---------------------------------------------------------------------------
// Concurrency helper
// ---------------------------------------------------------------------------

// Resolves a requested worker count: 0 means QWALK_THREADS if set, else the
// hardware concurrency.
unsigned resolve_threads(unsigned requested);

// Runs fn(i) for i in [0, n) split into contiguous chunks across workers.
// The first exception thrown by any worker is rethrown on the caller.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            pool.emplace_back([&, w, lo, hi] {
                try {
                    for (std::size_t i = lo; i < hi; ++i) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace qwalk
