#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwalk/limit.hpp"

namespace qwalk {

namespace {

constexpr complex kI{0.0, 1.0};
constexpr double kDegenerateSin = 1e-12;

void require_nondegenerate(double k, const char* what) {
    if (std::abs(std::sin(k)) <= kDegenerateSin)
        throw DegenerateMomentum(std::string(what) + ": eigenvalues coincide at sin k = 0 (k = " + std::to_string(k) +
                                 ")");
}

void require_branch(int branch) {
    if (branch != 1 && branch != 2) throw InvalidParameter("eigen-branch index must be 1 or 2");
}

Matrix2 power4(const Matrix2& a) {
    const Matrix2 sq = a * a;
    return sq * sq;
}

Matrix2 hadamard() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {{complex{r}, complex{r}, complex{r}, complex{-r}}};
}

Matrix2 hadamard_tilde() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {{complex{-r}, complex{-r}, complex{r}, complex{-r}}};
}

bool near(double a, double b) { return std::abs(a - b) < kSpecialAngleTolerance; }

}  // namespace

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
             a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    Matrix2 out;
    for (std::size_t i = 0; i < 4; ++i) out.m[i] = a.m[i] - b.m[i];
    return out;
}

Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    Matrix2 out;
    for (std::size_t i = 0; i < 4; ++i) out.m[i] = a.m[i] + b.m[i];
    return out;
}

CoinSpinor operator*(const Matrix2& a, const CoinSpinor& v) {
    return {a.m[0] * v.a0 + a.m[1] * v.a1, a.m[2] * v.a0 + a.m[3] * v.a1};
}

double max_abs(const Matrix2& a) {
    double out = 0.0;
    for (const auto& z : a.m) out = std::max(out, std::abs(z));
    return out;
}

double unitarity_defect(const Matrix2& a) { return max_abs(a.adjoint() * a - Matrix2::identity()); }

Matrix2 u1_hat(double k, const WalkParameters& params) {
    const double c = params.c();
    const double s = params.s();
    const double ck = std::cos(k);
    const double sk = std::sin(k);
    return {{complex{c * ck}, complex{s, c * sk}, complex{s, -c * sk}, complex{-c * ck}}};
}

Matrix2 u2_hat(double k, const WalkParameters& params) {
    const double c = params.c();
    const double s = params.s();
    return {{complex{c}, s * std::polar(1.0, k), s * std::polar(1.0, -k), complex{-c}}};
}

Matrix2 one_step_operator(double k, const WalkParameters& params) { return u2_hat(k, params) * u1_hat(k, params); }

double g_of_k(double k, const WalkParameters& params) {
    const double sk = std::sin(k);
    return std::cos(k) + params.c() * params.s() * sk * sk;
}

namespace {

// Cancellation-free pieces of the dispersion, written with half angles so that
// nothing degrades as k approaches 0 or pi.
struct Dispersion {
    double one_minus_2cs_cos;  // 1 - 2 cs cos k
    double r;                  // sqrt(1 - g^2) / |sin k|
};

Dispersion dispersion(double k, const WalkParameters& params) {
    const double c = params.c();
    const double s = params.s();
    const double cs = c * s;
    const double sh = std::sin(0.5 * k);
    const double ch = std::cos(0.5 * k);
    const double sh2 = sh * sh;
    const double ch2 = ch * ch;
    const double dm = (c - s) * (c - s);
    const double dp = (c + s) * (c + s);
    Dispersion d;
    double lower;  // 1 - 2 cs cos^2(k/2)
    double upper;  // 1 + 2 cs sin^2(k/2)
    if (cs > 0.0) {
        d.one_minus_2cs_cos = dm + 4.0 * cs * sh2;
        lower = dm + 2.0 * cs * sh2;
        upper = 1.0 + 2.0 * cs * sh2;
    } else {
        d.one_minus_2cs_cos = dp - 4.0 * cs * ch2;
        lower = 1.0 - 2.0 * cs * ch2;
        upper = dp - 2.0 * cs * ch2;
    }
    d.r = std::sqrt(lower * upper);
    return d;
}

}  // namespace

EigenSystemAt eigensystem(double k, const WalkParameters& params) {
    require_nondegenerate(k, "eigensystem");
    const double c = params.c();
    const double s = params.s();
    const double sk = std::sin(k);
    const double sigma = sk > 0.0 ? 1.0 : -1.0;
    const double sh2 = std::sin(0.5 * k) * std::sin(0.5 * k);
    const Dispersion d = dispersion(k, params);

    EigenSystemAt es;
    es.k = k;
    const double root = std::abs(sk) * d.r;
    const double g = g_of_k(k, params);
    es.lambda1 = complex{g, root};
    es.lambda2 = complex{g, -root};

    // With every component divided by sin k, branch j has
    //   top = c s sin k + i c (c - s cos k),  bottom = i b_j,
    //   b_1 = sigma r - a,  b_2 = -(sigma r + a),  a = s (s - c cos k),
    // and b_1 b_2 = -c^2 (1 - 2 cs cos k). The smaller b_j comes from the product.
    const double a = s * (s - c) + 2.0 * c * s * sh2;
    const double product = -c * c * d.one_minus_2cs_cos;
    double b1;
    double b2;
    if (sigma * d.r * a > 0.0) {
        b2 = -(sigma * d.r + a);
        b1 = product / b2;
    } else {
        b1 = sigma * d.r - a;
        b2 = product / b1;
    }
    const complex top{c * s * sk, c * ((c - s) + 2.0 * s * sh2)};
    const double top_norm = c * c * d.one_minus_2cs_cos;
    const double m1 = top_norm + b1 * b1;
    const double m2 = top_norm + b2 * b2;
    es.n1 = sk * sk * m1;
    es.n2 = sk * sk * m2;
    const double inv1 = sigma / std::sqrt(m1);
    const double inv2 = sigma / std::sqrt(m2);
    es.v1 = {top * inv1, kI * (b1 * inv1)};
    es.v2 = {top * inv2, kI * (b2 * inv2)};
    return es;
}

double h_of_k(double k, const WalkParameters& params) {
    const Dispersion d = dispersion(k, params);
    return d.one_minus_2cs_cos / d.r;
}

double group_velocity(double k, const WalkParameters& params, int branch) {
    require_branch(branch);
    require_nondegenerate(k, "group_velocity");
    const double sign_branch = branch == 1 ? -1.0 : 1.0;
    const double sign_sin = std::sin(k) > 0.0 ? 1.0 : -1.0;
    return sign_branch * sign_sin * h_of_k(k, params);
}

double dh_dk_closed_form(double k, const WalkParameters& params) {
    const double x = h_of_k(k, params);
    const double c = params.c();
    const double root_d = std::sqrt(big_d(x, params));
    // W+- vanish at the ends of the h-range; clamp rounding below zero.
    const double wp = std::max(0.0, w_plus(x, params));
    const double wm = std::max(0.0, w_minus(x, params));
    const double denom = std::abs(c) * (x + 2.0 * root_d) * (x + 2.0 * root_d);
    return c * (4.0 - x * x) * root_d * std::sqrt(wp) * std::sqrt(wm) / denom;
}

complex inner(const CoinSpinor& u, const CoinSpinor& w) { return std::conj(u.a0) * w.a0 + std::conj(u.a1) * w.a1; }

double overlap_pair_direct(double k, const InitialCoin& coin, const WalkParameters& params, OverlapPair pair) {
    const auto plus = eigensystem(k, params);
    const auto minus = eigensystem(-k, params);
    const CoinSpinor phi = coin.spinor();
    if (pair == OverlapPair::Left) return std::norm(inner(plus.v1, phi)) + std::norm(inner(minus.v2, phi));
    return std::norm(inner(plus.v2, phi)) + std::norm(inner(minus.v1, phi));
}

double overlap_pair_closed_form(double k, const InitialCoin& coin, const WalkParameters& params, OverlapPair pair) {
    const double c2 = params.c() * params.c();
    const double s2 = params.s() * params.s();
    const double denom = 2.0 * c2 - 1.0;
    if (regime_of(params) == Regime::Hadamard)
        throw UnsupportedRegime("closed-form overlaps divide by 2c^2 - 1, which vanishes for theta = pi/4, 3pi/4");
    if (!(k > 0.0 && k < std::numbers::pi))
        throw DomainError("closed-form overlaps are defined for k in (0, pi), got " + std::to_string(k));
    require_nondegenerate(k, "overlap_pair_closed_form");
    const double x = h_of_k(k, params);
    const double root_d = std::sqrt(big_d(x, params));
    const double q = (c2 * x - root_d) / denom;
    const double p = (s2 * x - root_d) / denom;
    const double a2 = std::norm(coin.alpha());
    const double b2 = std::norm(coin.beta());
    const double coh = coin.coherence();
    if (pair == OverlapPair::Left) return (1.0 + q) * a2 + (1.0 - q) * b2 - p * coh;
    return (1.0 - q) * a2 + (1.0 + q) * b2 + p * coh;
}

Matrix2 phase_shift(double k) { return {{std::polar(1.0, k), complex{}, complex{}, std::polar(1.0, -k)}}; }

double hadamard_factorization_residual(double k, const WalkParameters& params) {
    const double theta = params.theta();
    const Matrix2 step = one_step_operator(k, params);
    if (near(theta, std::numbers::pi / 4)) return max_abs(step - power4(phase_shift(k / 2) * hadamard()));
    if (near(theta, 3 * std::numbers::pi / 4)) return max_abs(step + power4(phase_shift(k / 2) * hadamard_tilde()));
    throw UnsupportedRegime("Hadamard factorization holds only for theta = pi/4, 3pi/4");
}

double hadamard_factorization_residual_shifted(double k, const WalkParameters& params) {
    const double theta = params.theta();
    const Matrix2 step = one_step_operator(k, params);
    const Matrix2 rotate = phase_shift((k + std::numbers::pi) / 2);
    if (near(theta, std::numbers::pi / 4)) return max_abs(step + power4(rotate * hadamard()));
    if (near(theta, 3 * std::numbers::pi / 4)) return max_abs(step - power4(rotate * hadamard_tilde()));
    throw UnsupportedRegime("Hadamard factorization holds only for theta = pi/4, 3pi/4");
}

ProbabilityDistribution fourier_evolve(const WalkParameters& params, const InitialCoin& coin, int t,
                                       int quadrature_points, unsigned threads) {
    if (t < 0) throw InvalidParameter("step count must be nonnegative");
    const int n = quadrature_points;
    if (n < 4 * t + 1)
        throw AliasingError("fourier_evolve needs at least 4t + 1 = " + std::to_string(4 * t + 1) +
                            " momentum nodes, got " + std::to_string(n));

    const auto un = static_cast<std::size_t>(n);
    std::vector<double> momenta(un);
    std::vector<CoinSpinor> evolved(un);
    parallel_for(un, threads, [&](std::size_t m) {
        const double k = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(m) / n;
        const Matrix2 u = one_step_operator(k, params);
        CoinSpinor psi = coin.spinor();
        for (int i = 0; i < t; ++i) psi = u * psi;
        momenta[m] = k;
        evolved[m] = psi;
    });

    ProbabilityDistribution out;
    out.t = t;
    out.offset = -2 * t;
    out.probs.assign(static_cast<std::size_t>(4 * t + 1), 0.0);
    parallel_for(out.probs.size(), threads, [&](std::size_t i) {
        const int x = out.offset + static_cast<int>(i);
        CoinSpinor acc;
        for (std::size_t m = 0; m < un; ++m) {
            const complex phase = std::polar(1.0, momenta[m] * x);
            acc.a0 += phase * evolved[m].a0;
            acc.a1 += phase * evolved[m].a1;
        }
        out.probs[i] = (std::norm(acc.a0) + std::norm(acc.a1)) / (static_cast<double>(n) * n);
    });
    return out;
}

}  // namespace qwalk
