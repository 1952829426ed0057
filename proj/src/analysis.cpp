#include "qwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwalk/engine.hpp"
#include "qwalk/quadrature.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

double empirical_moment(const ProbabilityDistribution& dist, int r) {
    if (r < 0) throw InvalidParameter("moment order must be nonnegative");
    if (dist.t < 1) throw InvalidParameter("empirical moments of X_t / t need t >= 1");
    const double t = dist.t;
    double sum = 0.0;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        const double x = (dist.offset + static_cast<int>(i)) / t;
        sum += std::pow(x, r) * dist.probs[i];
    }
    return sum;
}

double limit_moment_momentum(const InitialCoin& coin, const WalkParameters& params, int r, int nodes) {
    if (r < 0) throw InvalidParameter("moment order must be nonnegative");
    const CoinSpinor phi = coin.spinor();
    auto integrand = [&](double k) {
        const auto es = eigensystem(k, params);
        double sum = 0.0;
        for (int j = 1; j <= 2; ++j)
            sum += std::pow(group_velocity(k, params, j), r) * std::norm(inner(es.v(j), phi));
        return sum;
    };
    const auto& rule = quad::gauss_legendre(nodes);
    const double pi = std::numbers::pi;
    const double total = quad::integrate_fixed(integrand, 0.0, pi, rule) + quad::integrate_fixed(integrand, -pi, 0.0, rule);
    return total / (2.0 * pi);
}

double limit_moment_real(const InitialCoin& coin, const WalkParameters& params, int r) {
    return LimitDensity(params, coin).moment(r);
}

LimitMoment limit_moment(const InitialCoin& coin, const WalkParameters& params, int r, int nodes) {
    return {r, limit_moment_momentum(coin, params, r, nodes), limit_moment_real(coin, params, r)};
}

double kolmogorov_distance(const ProbabilityDistribution& dist, const LimitDensity& limit, unsigned threads) {
    if (dist.t < 1) throw InvalidParameter("Kolmogorov distance of X_t / t needs t >= 1");
    const double t = dist.t;
    const std::size_t n = dist.probs.size();
    std::vector<double> empirical(n);
    double running = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        running += dist.probs[i];
        empirical[i] = running;
    }
    std::vector<double> gaps(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const double x = dist.offset + static_cast<int>(i);
        gaps[i] = std::abs(empirical[i] - limit.cdf((x + 0.5) / t));
    });
    // Left of the window the empirical CDF is zero.
    const double before = std::abs(limit.cdf((dist.offset - 0.5) / t));
    return std::max(before, gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end()));
}

double kolmogorov_distance(const ProbabilityDistribution& dist, const InitialCoin& coin, const WalkParameters& params,
                           unsigned threads) {
    return kolmogorov_distance(dist, LimitDensity(params, coin), threads);
}

GapMass gap_mass(const ProbabilityDistribution& dist, const WalkParameters& params, double margin,
                 std::optional<double> fallback_half_width) {
    if (!(margin > 0.0 && margin < 1.0)) throw InvalidParameter("gap margin must lie in (0, 1)");
    const auto geo = support_geometry(params);
    GapMass out;
    if (geo.has_gap()) {
        out.half_width = margin * geo.inner * dist.t;
    } else {
        if (!fallback_half_width)
            throw InvalidParameter("no gap at theta = pi/4, 3pi/4; supply a fallback window half-width");
        out.half_width = *fallback_half_width;
        out.gap_regime = false;
    }
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        const int x = dist.offset + static_cast<int>(i);
        if (std::abs(x) <= out.half_width) out.mass += dist.probs[i];
    }
    return out;
}

CoefficientResolution resolve_hadamard_coefficient(const ProbabilityDistribution& dist, const InitialCoin& coin,
                                                   const WalkParameters& params, unsigned threads) {
    if (regime_of(params) != Regime::Hadamard)
        throw UnsupportedRegime("the coefficient comparison applies to theta = pi/4, 3pi/4 only");
    CoefficientResolution out;
    out.distance_single = kolmogorov_distance(dist, LimitDensity(params, coin, HadamardCoefficient::Single), threads);
    out.distance_doubled = kolmogorov_distance(dist, LimitDensity(params, coin, HadamardCoefficient::Doubled), threads);
    return out;
}

ComparisonReport compare(const WalkParameters& params, const InitialCoin& coin, int t, const CompareOptions& options) {
    if (t < 1) throw InvalidParameter("compare needs t >= 1");
    const auto dist = distribution(evolve(params, coin, t));
    const LimitDensity limit(params, coin);

    ComparisonReport report;
    report.t = t;
    report.theta = params.theta();
    report.alpha = coin.alpha();
    report.beta = coin.beta();
    report.regime = limit.regime();
    report.geometry = limit.geometry();
    report.kolmogorov_distance = kolmogorov_distance(dist, limit, options.threads);
    report.gap = gap_mass(dist, params, options.gap_margin, options.no_gap_window_fraction * t);

    for (int r = 0; r <= options.max_moment; ++r) {
        MomentRow row;
        row.r = r;
        row.empirical = empirical_moment(dist, r);
        row.limit = limit_moment_momentum(coin, params, r, options.momentum_nodes);
        row.limit_real_space = limit.moment(r);
        row.abs_err = std::abs(row.empirical - row.limit);
        report.moments.push_back(row);
    }
    if (report.regime == Regime::Hadamard)
        report.coefficient = resolve_hadamard_coefficient(dist, coin, params, options.threads);

    report.overlay.reserve(dist.probs.size());
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        const int x = dist.offset + static_cast<int>(i);
        report.overlay.push_back({x, dist.probs[i], approximate_pmf(x, t, coin, params)});
    }
    return report;
}

}  // namespace qwalk
