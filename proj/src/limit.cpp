#include "qwalk/limit.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qwalk {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double coherence_weight(HadamardCoefficient coefficient) {
    return coefficient == HadamardCoefficient::Single ? 1.0 : 2.0;
}

double hadamard_bias(const InitialCoin& coin, HadamardCoefficient coefficient) {
    return coin.imbalance() + coherence_weight(coefficient) * coin.coherence();
}

void require_gapped(const WalkParameters& params, const char* what) {
    if (regime_of(params) == Regime::Hadamard)
        throw UnsupportedRegime(std::string(what) +
                                " is undefined for theta = pi/4, 3pi/4 (2c^2 - 1 = 0); use the Hadamard-regime density");
}

}  // namespace

Regime regime_of(const WalkParameters& params) {
    return params.is_hadamard_angle() ? Regime::Hadamard : Regime::Gapped;
}

SupportGeometry support_geometry(const WalkParameters& params) {
    if (regime_of(params) == Regime::Hadamard) return {0.0, kSqrt2};
    const double two_cs = 2.0 * params.abs_cs();
    return {std::sqrt(1.0 - two_cs), std::sqrt(1.0 + two_cs)};
}

double big_d(double x, const WalkParameters& params) {
    const double cs2 = params.c() * params.c() * params.s() * params.s();
    return 1.0 - 4.0 * cs2 + cs2 * x * x;
}

double w_plus(double x, const WalkParameters& params) {
    const double d = big_d(x, params);
    if (d < 0.0) throw DomainError("W+ requires D(x) >= 0");
    const double acs = params.abs_cs();
    return -2.0 * (1.0 - 2.0 * acs) + (1.0 - acs) * x * x + x * std::sqrt(d);
}

double w_minus(double x, const WalkParameters& params) {
    const double d = big_d(x, params);
    if (d < 0.0) throw DomainError("W- requires D(x) >= 0");
    const double acs = params.abs_cs();
    return 2.0 * (1.0 + 2.0 * acs) - (1.0 + acs) * x * x - x * std::sqrt(d);
}

double f_density_factor(double x, const WalkParameters& params) {
    const auto geo = support_geometry(params);
    if (!(x > geo.inner && x < geo.outer))
        throw DomainError("f(x) is defined on the open support interval only, got x = " + std::to_string(x));
    const double root_d = std::sqrt(big_d(x, params));
    const double wp = w_plus(x, params);
    const double wm = w_minus(x, params);
    // Only reachable within rounding of an endpoint, where a single point carries no mass.
    if (wp <= 0.0 || wm <= 0.0) return 0.0;
    const double num = (x + 2.0 * root_d) * (x + 2.0 * root_d);
    return num / (2.0 * std::numbers::pi * (4.0 - x * x) * root_d * std::sqrt(wp) * std::sqrt(wm));
}

double nu_pm(double x, const InitialCoin& coin, const WalkParameters& params, NuBranch branch) {
    require_gapped(params, "nu+-");
    const double c2 = params.c() * params.c();
    const double s2 = params.s() * params.s();
    const double root_d = std::sqrt(big_d(x, params));
    const double signed_root = branch == NuBranch::Plus ? -root_d : root_d;
    return ((c2 * x + signed_root) * coin.imbalance() - (s2 * x + signed_root) * coin.coherence()) / (2.0 * c2 - 1.0);
}

double density_chi2(double x, const InitialCoin& coin, const WalkParameters& params) {
    require_gapped(params, "chi2");
    const auto geo = support_geometry(params);
    double value = 0.0;
    if (x > geo.inner && x < geo.outer)
        value += f_density_factor(x, params) * (1.0 - nu_pm(x, coin, params, NuBranch::Plus));
    if (-x > geo.inner && -x < geo.outer)
        value += f_density_factor(-x, params) * (1.0 - nu_pm(x, coin, params, NuBranch::Minus));
    return value;
}

double density_chi1(double x, const InitialCoin& coin, HadamardCoefficient coefficient) {
    if (!(std::abs(x) < kSqrt2)) return 0.0;
    const double shape = 2.0 * kSqrt2 / (std::numbers::pi * (4.0 - x * x) * std::sqrt(2.0 - x * x));
    return shape * (1.0 - hadamard_bias(coin, coefficient) * x / 2.0);
}

LimitDensity::LimitDensity(const WalkParameters& params, const InitialCoin& coin, HadamardCoefficient coefficient)
    : params_(params),
      coin_(coin),
      coefficient_(coefficient),
      regime_(regime_of(params)),
      geometry_(support_geometry(params)) {}

double LimitDensity::density(double x) const {
    return regime_ == Regime::Hadamard ? density_chi1(x, coin_, coefficient_) : density_chi2(x, coin_, params_);
}

double LimitDensity::integrate(const std::function<double(double)>& weight, double upper,
                               const quad::Tolerance& tol) const {
    auto integrand = [&](double y) { return weight(y) * density(y); };
    if (regime_ == Regime::Hadamard)
        return quad::edge_singular(integrand, -kSqrt2, kSqrt2, -kSqrt2, upper, tol).value;

    const double inner = geometry_.inner;
    const double outer = geometry_.outer;
    double total = quad::edge_singular(integrand, -outer, -inner, -outer, upper, tol).value;
    if (upper > inner) total += quad::edge_singular(integrand, inner, outer, inner, upper, tol).value;
    return total;
}

double LimitDensity::cdf(double x) const {
    if (x <= -geometry_.outer) return 0.0;
    return integrate([](double) { return 1.0; }, x);
}

double LimitDensity::moment(int r, const quad::Tolerance& tol) const {
    if (r < 0) throw InvalidParameter("moment order must be nonnegative");
    return integrate([r](double y) { return std::pow(y, r); }, geometry_.outer, tol);
}

double limit_cdf(double x, const InitialCoin& coin, const WalkParameters& params) {
    return LimitDensity(params, coin).cdf(x);
}

double approximate_pmf(int x, int t, const InitialCoin& coin, const WalkParameters& params) {
    if (t < 1) throw InvalidParameter("approximate_pmf requires t >= 1");
    const double td = t;
    return LimitDensity(params, coin).density(x / td) / td;
}

double approximate_pmf_hadamard(int x, int t, const InitialCoin& coin, HadamardCoefficient coefficient) {
    if (t < 1) throw InvalidParameter("approximate_pmf_hadamard requires t >= 1");
    const double xd = x;
    const double td = t;
    if (!(std::abs(xd) < kSqrt2 * td)) return 0.0;
    const double scale = 2.0 * kSqrt2 * td * td /
                         (std::numbers::pi * (4.0 * td * td - xd * xd) * std::sqrt(2.0 * td * td - xd * xd));
    return scale * (1.0 - hadamard_bias(coin, coefficient) * xd / (2.0 * td));
}

}  // namespace qwalk
