#pragma once

// Long-time limit laws of X_t / t.
//
// For theta = pi/4, 3pi/4 the walk reduces to a Hadamard walk and the
// density is
//   chi1(x) = 2 sqrt2 / (pi (4 - x^2) sqrt(2 - x^2)) {1 - C x / 2} on (-sqrt2, sqrt2)
// with C = |alpha|^2 - |beta|^2 + w (alpha conj(beta) + c.c.).
//
// Otherwise the density is supported on -D u D with D = (inner, outer),
// inner = sqrt(1 - 2|c|s), outer = sqrt(1 + 2|c|s), and vanishes on the gap
// (-inner, inner):
//   chi2(x) = f(x)(1 - nu+(x)) 1_D(x) + f(-x)(1 - nu-(x)) 1_D(-x).

#include <functional>

#include "qwalk/core.hpp"
#include "qwalk/quadrature.hpp"

namespace qwalk {

enum class Regime {
    Hadamard,  // theta = pi/4 or 3pi/4; no gap
    Gapped,    // every other admissible theta
};

Regime regime_of(const WalkParameters& params);

// Weight w of the coherence term in the Hadamard-regime density. Single is
// the weight that matches simulation; Doubled is kept for comparison.
enum class HadamardCoefficient {
    Single,
    Doubled,
};

struct SupportGeometry {
    double inner = 0.0;
    double outer = 0.0;

    bool has_gap() const noexcept { return inner > 0.0; }
    // Width of the empty central region of P(X_t = .) at time t.
    double gap_width(int t) const noexcept { return 2.0 * inner * t; }
};

// (sqrt(1 - 2|c|s), sqrt(1 + 2|c|s)); (0, sqrt2) in the Hadamard regime.
SupportGeometry support_geometry(const WalkParameters& params);

// D(x) = 1 - 4c^2 s^2 + c^2 s^2 x^2
double big_d(double x, const WalkParameters& params);

// W+(x) = -2(1 - 2|c|s) + (1 - |c|s) x^2 + x sqrt(D(x)); DomainError if D(x) < 0.
double w_plus(double x, const WalkParameters& params);

// W-(x) = 2(1 + 2|c|s) - (1 + |c|s) x^2 - x sqrt(D(x)); DomainError if D(x) < 0.
double w_minus(double x, const WalkParameters& params);

// f(x) = (x + 2 sqrt D)^2 / (2 pi (4 - x^2) sqrt D sqrt W+ sqrt W-), for x
// strictly inside D. DomainError otherwise.
double f_density_factor(double x, const WalkParameters& params);

enum class NuBranch { Plus, Minus };

// nu+-(x) = {(c^2 x -+ sqrt D)(|alpha|^2 - |beta|^2) - (s^2 x -+ sqrt D)(alpha conj(beta) + c.c.)} / (2c^2 - 1)
// UnsupportedRegime when 2c^2 - 1 = 0.
double nu_pm(double x, const InitialCoin& coin, const WalkParameters& params, NuBranch branch);

// Gapped-regime density; zero outside -D u D. UnsupportedRegime for the
// Hadamard angles.
double density_chi2(double x, const InitialCoin& coin, const WalkParameters& params);

// Hadamard-regime density; zero outside (-sqrt2, sqrt2).
double density_chi1(double x, const InitialCoin& coin, HadamardCoefficient coefficient = HadamardCoefficient::Single);

// Regime-routed limit law for one (theta, coin) pair.
class LimitDensity {
public:
    LimitDensity(const WalkParameters& params, const InitialCoin& coin,
                 HadamardCoefficient coefficient = HadamardCoefficient::Single);

    Regime regime() const noexcept { return regime_; }
    const WalkParameters& params() const noexcept { return params_; }
    const InitialCoin& coin() const noexcept { return coin_; }
    const SupportGeometry& geometry() const noexcept { return geometry_; }

    double density(double x) const;

    // Integral of weight(y) * density(y) over (-inf, upper]. Edge
    // singularities are removed by substitution; throws NonConvergence if the
    // tolerance is not met.
    double integrate(const std::function<double(double)>& weight, double upper,
                     const quad::Tolerance& tol = default_tolerance()) const;

    // P(X <= x) under the limit law.
    double cdf(double x) const;

    // Integral of x^r times the density over the whole line.
    double moment(int r, const quad::Tolerance& tol = default_tolerance()) const;

    static quad::Tolerance default_tolerance() { return {1e-10, 1e-12, 4000}; }

private:
    WalkParameters params_;
    InitialCoin coin_;
    HadamardCoefficient coefficient_;
    Regime regime_;
    SupportGeometry geometry_;
};

// P(X <= x) under the regime-appropriate limit law.
double limit_cdf(double x, const InitialCoin& coin, const WalkParameters& params);

// (1/t) chi(x/t), the large-t estimate of P(X_t = x).
double approximate_pmf(int x, int t, const InitialCoin& coin, const WalkParameters& params);

// Hadamard regime written directly in x and t:
//   2 sqrt2 t^2 / (pi (4t^2 - x^2) sqrt(2t^2 - x^2)) {1 - C x / (2t)} for |x| < sqrt2 t.
double approximate_pmf_hadamard(int x, int t, const InitialCoin& coin,
                                HadamardCoefficient coefficient = HadamardCoefficient::Single);

}  // namespace qwalk
