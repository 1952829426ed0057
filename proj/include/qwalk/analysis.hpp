#pragma once

// Quantitative comparison of simulated distributions with the limit laws.

#include <optional>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/limit.hpp"

namespace qwalk {

// sum_x (x/t)^r P(X_t = x). Requires t >= 1 and r >= 0.
double empirical_moment(const ProbabilityDistribution& dist, int r);

inline constexpr int kDefaultMomentumNodes = 4096;

// sum_j int_{-pi}^{pi} (i lambda_j'/lambda_j)^r |<v_j(k)|phi>|^2 dk / 2pi, by
// Gauss-Legendre on (0, pi) and its mirror image. Never touches k = 0, +-pi.
double limit_moment_momentum(const InitialCoin& coin, const WalkParameters& params, int r,
                             int nodes = kDefaultMomentumNodes);

// int x^r chi(x) dx by adaptive quadrature of the regime's density.
double limit_moment_real(const InitialCoin& coin, const WalkParameters& params, int r);

struct LimitMoment {
    int r = 0;
    double momentum_space = 0.0;
    double real_space = 0.0;

    double discrepancy() const { return std::abs(momentum_space - real_space); }
};

LimitMoment limit_moment(const InitialCoin& coin, const WalkParameters& params, int r,
                         int nodes = kDefaultMomentumNodes);

// sup over lattice points x of |F_emp(x) - F_lim((x + 1/2) / t)|, where F_emp
// is the right-continuous CDF of X_t. CDF evaluations are spread over
// `threads` workers.
double kolmogorov_distance(const ProbabilityDistribution& dist, const LimitDensity& limit, unsigned threads = 1);

double kolmogorov_distance(const ProbabilityDistribution& dist, const InitialCoin& coin, const WalkParameters& params,
                           unsigned threads = 1);

struct GapMass {
    double mass = 0.0;
    double half_width = 0.0;  // lattice half-width of the window that was summed
    bool gap_regime = true;   // false when the fallback window was used
};

inline constexpr double kDefaultGapMargin = 0.8;

// Mass on |x| <= margin * inner * t. In the Hadamard regime (inner = 0) the
// caller must pass a fallback half-width in lattice units.
GapMass gap_mass(const ProbabilityDistribution& dist, const WalkParameters& params,
                 double margin = kDefaultGapMargin, std::optional<double> fallback_half_width = std::nullopt);

struct CoefficientResolution {
    double distance_single = 0.0;
    double distance_doubled = 0.0;

    HadamardCoefficient winner() const {
        return distance_single <= distance_doubled ? HadamardCoefficient::Single : HadamardCoefficient::Doubled;
    }
};

// Kolmogorov distance of the simulated distribution to both candidate
// Hadamard-regime densities. UnsupportedRegime outside the Hadamard angles.
CoefficientResolution resolve_hadamard_coefficient(const ProbabilityDistribution& dist, const InitialCoin& coin,
                                                   const WalkParameters& params, unsigned threads = 1);

struct MomentRow {
    int r = 0;
    double empirical = 0.0;
    double limit = 0.0;            // momentum-space value
    double limit_real_space = 0.0;
    double abs_err = 0.0;          // |empirical - limit|
};

struct OverlayRow {
    int x = 0;
    double simulated = 0.0;
    double approximate = 0.0;
};

struct ComparisonReport {
    int t = 0;
    double theta = 0.0;
    complex alpha;
    complex beta;
    Regime regime = Regime::Gapped;
    SupportGeometry geometry;
    double kolmogorov_distance = 0.0;
    GapMass gap;
    std::vector<MomentRow> moments;
    std::optional<CoefficientResolution> coefficient;  // Hadamard regime only
    std::vector<OverlayRow> overlay;
};

struct CompareOptions {
    int max_moment = 4;
    double gap_margin = kDefaultGapMargin;
    double no_gap_window_fraction = 0.1;  // fallback window |x| <= fraction * t
    int momentum_nodes = kDefaultMomentumNodes;
    unsigned threads = 1;
};

// Simulates to time t and compares against the limit law. t >= 1.
ComparisonReport compare(const WalkParameters& params, const InitialCoin& coin, int t,
                         const CompareOptions& options = {});

}  // namespace qwalk
