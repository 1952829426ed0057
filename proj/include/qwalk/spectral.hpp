#pragma once

// Momentum-space picture of the walk. With psi_hat(k) = sum_x e^{-ikx} psi(x)
// one step acts as the 2x2 unitary U2_hat(k) U1_hat(k).

#include <array>

#include "qwalk/core.hpp"

namespace qwalk {

// Row-major 2x2 complex matrix.
struct Matrix2 {
    std::array<complex, 4> m{};

    static Matrix2 identity() { return {{complex{1.0}, complex{}, complex{}, complex{1.0}}}; }

    complex& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
    const complex& operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

    complex det() const { return m[0] * m[3] - m[1] * m[2]; }
    complex trace() const { return m[0] + m[3]; }
    Matrix2 adjoint() const { return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}}; }

    friend Matrix2 operator*(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator-(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator+(const Matrix2& a, const Matrix2& b);
    friend CoinSpinor operator*(const Matrix2& a, const CoinSpinor& v);
};

// Largest entry modulus.
double max_abs(const Matrix2& a);

// max |(A^dagger A - I)_{ij}|
double unitarity_defect(const Matrix2& a);

// [[c cos k, s + i c sin k], [s - i c sin k, -c cos k]]
Matrix2 u1_hat(double k, const WalkParameters& params);

// [[c, s e^{ik}], [s e^{-ik}, -c]]
Matrix2 u2_hat(double k, const WalkParameters& params);

// u2_hat(k) * u1_hat(k); determinant 1, trace 2 g(k).
Matrix2 one_step_operator(double k, const WalkParameters& params);

// g(k) = cos k + c s sin^2 k, half the trace of the one-step operator.
double g_of_k(double k, const WalkParameters& params);

// Eigen-decomposition of the one-step operator at momentum k.
//
// lambda_j = g(k) - (-1)^j i sqrt(1 - g(k)^2), so branch 1 carries +i and
// branch 2 carries -i. Eigenvectors use the closed form
//   v_j ~ [c s sin^2 k + i c (c - s cos k) sin k] |0>
//       + i [-(-1)^j sqrt(1 - g^2) - s (s - c cos k) sin k] |1>
// divided by sqrt(N_j).
struct EigenSystemAt {
    double k = 0.0;
    complex lambda1;
    complex lambda2;
    CoinSpinor v1;
    CoinSpinor v2;
    double n1 = 0.0;
    double n2 = 0.0;

    const complex& lambda(int j) const { return j == 1 ? lambda1 : lambda2; }
    const CoinSpinor& v(int j) const { return j == 1 ? v1 : v2; }
};

// Throws DegenerateMomentum when sin k = 0 (k = 0 or k = +-pi).
EigenSystemAt eigensystem(double k, const WalkParameters& params);

// h(k) = (1 - 2cs cos k) / sqrt((1 - cs - cs cos k)(1 + cs - cs cos k)).
// Even in k; monotone on (0, pi) from sqrt(1 - 2cs) to sqrt(1 + 2cs).
double h_of_k(double k, const WalkParameters& params);

// i lambda_j'(k) / lambda_j(k) = (-1)^j sign(sin k) h(k), j in {1, 2}.
// Throws DegenerateMomentum when sin k = 0.
double group_velocity(double k, const WalkParameters& params, int branch);

// dh/dk written through x = h(k):
//   c (4 - x^2) sqrt(D(x)) sqrt(W+(x)) sqrt(W-(x)) / (|c| (x + 2 sqrt(D(x)))^2)
// valid for k in (0, pi).
double dh_dk_closed_form(double k, const WalkParameters& params);

// <u|w> with the conjugate on the left argument.
complex inner(const CoinSpinor& u, const CoinSpinor& w);

enum class OverlapPair {
    Left,   // |<v1(k)|phi>|^2 + |<v2(-k)|phi>|^2, weight of velocity -h(k)
    Right,  // |<v2(k)|phi>|^2 + |<v1(-k)|phi>|^2, weight of velocity +h(k)
};

// Paired overlaps computed from the eigenvectors, k in (0, pi).
double overlap_pair_direct(double k, const InitialCoin& coin, const WalkParameters& params, OverlapPair pair);

// The same pair through h(k) alone:
//   Left  = (1 + q)|alpha|^2 + (1 - q)|beta|^2 - p (alpha conj(beta) + c.c.)
//   Right = (1 - q)|alpha|^2 + (1 + q)|beta|^2 + p (alpha conj(beta) + c.c.)
// with q = (c^2 x - sqrt(D(x))) / (2c^2 - 1), p = (s^2 x - sqrt(D(x))) / (2c^2 - 1),
// x = h(k). Only k in (0, pi) is meaningful: h is even, and for k < 0 the two
// pairs trade places. Throws DomainError outside (0, pi) and UnsupportedRegime
// for theta = pi/4, 3pi/4.
double overlap_pair_closed_form(double k, const InitialCoin& coin, const WalkParameters& params, OverlapPair pair);

// R(k) = diag(e^{ik}, e^{-ik}).
Matrix2 phase_shift(double k);

// Max entry modulus of U2_hat U1_hat - (R(k/2) H)^4 for theta = pi/4, or of
// U2_hat U1_hat + (R(k/2) H~)^4 for theta = 3pi/4. Other angles throw
// UnsupportedRegime.
double hadamard_factorization_residual(double k, const WalkParameters& params);

// Same comparison with the momentum of the rotation shifted by pi:
//   theta = pi/4:  U2_hat U1_hat = -(R((k + pi)/2) H)^4
//   theta = 3pi/4: U2_hat U1_hat = +(R((k + pi)/2) H~)^4
// The shift is the gauge (-1)^x on the lattice and leaves every finding
// probability unchanged.
double hadamard_factorization_residual_shifted(double k, const WalkParameters& params);

// Independent evolution oracle: applies the t-th power of the one-step
// operator at N uniform momenta k_m = -pi + 2 pi m / N and inverts with
// psi_t(x) = (1/N) sum_m e^{i k_m x} psi_hat_t(k_m). The result covers
// [-2t, 2t]. Requires N >= 4t + 1, else AliasingError.
ProbabilityDistribution fourier_evolve(const WalkParameters& params, const InitialCoin& coin, int t,
                                       int quadrature_points, unsigned threads = 1);

}  // namespace qwalk
