#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/engine.hpp"
#include "qwalk/limit.hpp"
#include "qwalk/spectral.hpp"
#include "test_support.hpp"

using namespace qwalk;
using namespace qwalk::testing;
using std::numbers::pi;

namespace {

double dist(const Matrix2& a, const Matrix2& b) { return max_abs(a - b); }

Matrix2 mat(complex a, complex b, complex c, complex d) { return {{a, b, c, d}}; }

}  // namespace

TEST_CASE("u1_hat reference values") {
    const auto p = make_parameters(pi / 6);
    const double c = p.c(), s = p.s();
    CHECK(dist(u1_hat(0.0, p), mat(c, s, s, -c)) < 1e-15);
    const auto at_half_pi = u1_hat(pi / 2, p);
    CHECK(dist(at_half_pi, mat(0, complex{0.5, sqrt3() / 2}, complex{0.5, -sqrt3() / 2}, 0)) < 1e-15);
}

TEST_CASE("u2_hat reference values and Hermiticity") {
    const auto p = make_parameters(pi / 6);
    const double c = p.c(), s = p.s();
    CHECK(dist(u2_hat(0.0, p), mat(c, s, s, -c)) < 1e-15);
    CHECK(dist(u2_hat(pi, p), mat(c, -s, -s, -c)) < 1e-15);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> k(-pi, pi);
    for (int i = 0; i < 100; ++i) {
        const double kk = k(rng);
        const auto u = u2_hat(kk, p);
        CHECK(dist(u, u.adjoint()) < 1e-15);
    }
}

TEST_CASE("momentum operators are unitary with the expected determinants") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> k(-pi, pi);
    for (int i = 0; i < 100; ++i) {
        const auto p = make_parameters(random_gapped_theta(rng, 0.01));
        const double kk = k(rng);
        const auto u1 = u1_hat(kk, p);
        const auto u2 = u2_hat(kk, p);
        const auto w = one_step_operator(kk, p);
        CHECK(unitarity_defect(u1) < 1e-12);
        CHECK(unitarity_defect(u2) < 1e-12);
        CHECK(unitarity_defect(w) < 1e-12);
        CHECK(std::abs(u1.det() + 1.0) < 1e-12);
        CHECK(std::abs(u2.det() + 1.0) < 1e-12);
        CHECK(std::abs(w.det() - 1.0) < 1e-12);
        CHECK(std::abs(w.trace() - 2.0 * g_of_k(kk, p)) < 1e-12);
    }
}

TEST_CASE("one-step operator at k = 0 and k = pi") {
    for (double th : {pi / 6, pi / 4, 2.0, 3 * pi / 4}) {
        const auto p = make_parameters(th);
        CHECK(dist(one_step_operator(0.0, p), Matrix2::identity()) < 1e-15);
        CHECK(dist(one_step_operator(pi, p), mat(-1, 0, 0, -1)) < 1e-15);
    }
}

TEST_CASE("g(k) values and range") {
    const auto p = make_parameters(pi / 6);
    CHECK(g_of_k(0.0, p) == 1.0);
    CHECK(std::abs(g_of_k(pi, p) + 1.0) < 1e-15);
    CHECK(std::abs(g_of_k(pi / 2, p) - sqrt3() / 4) < 1e-15);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> k(-pi, pi);
    for (int i = 0; i < 1000; ++i) {
        const auto q = make_parameters(random_gapped_theta(rng, 0.001));
        const double g = g_of_k(k(rng), q);
        CHECK(g <= 1.0);
        CHECK(g >= -1.0);
    }
}

TEST_CASE("eigensystem invariants") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> k(1e-3, pi - 1e-3);
    std::bernoulli_distribution flip;
    for (int i = 0; i < 300; ++i) {
        const double th = i % 10 == 0 ? (i % 20 == 0 ? pi / 4 : 3 * pi / 4) : random_gapped_theta(rng, 0.01);
        const auto p = make_parameters(th);
        const double kk = flip(rng) ? k(rng) : -k(rng);
        const auto es = eigensystem(kk, p);
        const auto w = one_step_operator(kk, p);
        for (int j = 1; j <= 2; ++j) {
            CHECK(std::abs(std::abs(es.lambda(j)) - 1.0) < 1e-12);
            CHECK(std::abs(es.v(j).norm_sq() - 1.0) < 1e-12);
            const CoinSpinor wv = w * es.v(j);
            const double residual =
                std::hypot(std::abs(wv.a0 - es.lambda(j) * es.v(j).a0), std::abs(wv.a1 - es.lambda(j) * es.v(j).a1));
            CHECK(residual < 1e-10);
            CHECK(std::abs(inner(es.v(j), wv) - es.lambda(j)) < 1e-10);
        }
        CHECK(std::abs(inner(es.v1, es.v2)) < 1e-10);
        CHECK(std::abs(es.lambda1 * es.lambda2 - 1.0) < 1e-12);
        CHECK(std::abs(es.lambda1 + es.lambda2 - 2.0 * g_of_k(kk, p)) < 1e-12);
        CHECK(es.lambda1.imag() >= 0.0);
    }
}

TEST_CASE("eigensystem signals degeneracy at k = 0 and k = pi") {
    const auto p = make_parameters(pi / 6);
    CHECK_THROWS_AS(eigensystem(0.0, p), DegenerateMomentum);
    CHECK_THROWS_AS(eigensystem(pi, p), DegenerateMomentum);
    CHECK_THROWS_AS(eigensystem(-pi, p), DegenerateMomentum);
    // Both eigenvalues approach 1 as k -> 0.
    const auto near_zero = eigensystem(1e-6, p);
    CHECK(std::abs(near_zero.lambda1 - 1.0) < 1e-5);
    CHECK(std::abs(near_zero.lambda2 - 1.0) < 1e-5);
}

TEST_CASE("group velocity sign convention") {
    const auto p = make_parameters(pi / 6);
    for (double k : {0.3, 1.2, 2.9}) {
        CHECK(group_velocity(k, p, 1) == doctest::Approx(-h_of_k(k, p)));
        CHECK(group_velocity(k, p, 2) == doctest::Approx(h_of_k(k, p)));
        CHECK(group_velocity(-k, p, 1) == doctest::Approx(h_of_k(k, p)));
    }
    CHECK_THROWS_AS(group_velocity(0.0, p, 1), DegenerateMomentum);
    CHECK_THROWS_AS(group_velocity(1.0, p, 3), InvalidParameter);
}

TEST_CASE("group velocity equals the derivative of the eigenphase") {
    // i lambda'/lambda = -d arg(lambda)/dk for |lambda| = 1.
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> k(0.05, pi - 0.05);
    std::bernoulli_distribution flip;
    const double step = 1e-5;
    for (int i = 0; i < 200; ++i) {
        const auto p = make_parameters(i % 25 == 0 ? pi / 4 : random_gapped_theta(rng, 0.01));
        const double kk = flip(rng) ? k(rng) : -k(rng);
        for (int j = 1; j <= 2; ++j) {
            const double up = std::arg(eigensystem(kk + step, p).lambda(j));
            const double down = std::arg(eigensystem(kk - step, p).lambda(j));
            const double fd = -std::remainder(up - down, 2 * pi) / (2 * step);
            CHECK(std::abs(fd - group_velocity(kk, p, j)) < 1e-6);
        }
    }
}

TEST_CASE("h(k) endpoint limits and range at theta = pi/6") {
    const auto p = make_parameters(pi / 6);
    const double cs = p.c() * p.s();
    CHECK(std::abs(h_of_k(1e-9, p) - std::sqrt(1 - 2 * cs)) < 1e-9);
    CHECK(std::abs(h_of_k(pi - 1e-9, p) - std::sqrt(1 + 2 * cs)) < 1e-9);
    CHECK(std::sqrt(1 - 2 * cs) == doctest::Approx(0.36602540378).epsilon(1e-10));
    CHECK(std::sqrt(1 + 2 * cs) == doctest::Approx(1.36602540378).epsilon(1e-10));
}

TEST_CASE("h(k) is strictly monotone on (0, pi)") {
    const int n = 10000;
    for (double th : {pi / 6, pi / 8, 2 * pi / 5, 3 * pi / 5, 5 * pi / 6, pi / 4, 3 * pi / 4}) {
        const auto p = make_parameters(th);
        int increasing = 0, decreasing = 0;
        double prev = h_of_k(pi / (n + 1), p);
        for (int i = 2; i <= n; ++i) {
            const double cur = h_of_k(pi * i / (n + 1), p);
            (cur > prev ? increasing : decreasing) += 1;
            prev = cur;
        }
        CHECK((increasing == n - 1 || decreasing == n - 1));
        MESSAGE("theta = " << th << ": h is " << (increasing == n - 1 ? "increasing" : "decreasing"));
    }
}

TEST_CASE("closed-form dh/dk matches a central difference") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> k(0.02, pi - 0.02);
    for (int i = 0; i < 300; ++i) {
        const auto p = make_parameters(random_gapped_theta(rng, 0.02));
        const double kk = k(rng);
        const double step = 1e-5;
        const double fd = (h_of_k(kk + step, p) - h_of_k(kk - step, p)) / (2 * step);
        CHECK(std::abs(fd - dh_dk_closed_form(kk, p)) < 1e-6);
    }
}

TEST_CASE("paired overlaps: closed form against eigenvectors") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> k(1e-3, pi - 1e-3);
    for (double th : {pi / 6, pi / 8, 2 * pi / 5, 3 * pi / 5, 5 * pi / 6}) {
        const auto p = make_parameters(th);
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const auto coin = random_coin(rng);
            const double kk = k(rng);
            for (auto pair : {OverlapPair::Left, OverlapPair::Right})
                worst = std::max(worst, std::abs(overlap_pair_direct(kk, coin, p, pair) -
                                                 overlap_pair_closed_form(kk, coin, p, pair)));
        }
        CHECK(worst < 1e-9);
    }
    CHECK_THROWS_AS(overlap_pair_closed_form(1.0, symmetric_coin(), make_parameters(pi / 4), OverlapPair::Left),
                    UnsupportedRegime);
    CHECK_THROWS_AS(overlap_pair_closed_form(-1.0, symmetric_coin(), make_parameters(pi / 6), OverlapPair::Left),
                    DomainError);

    // For k < 0 the pairs trade places: Left at -k is Right at k.
    const auto p6 = make_parameters(pi / 6);
    const auto coin = make_initial_coin({0.6, 0.0}, {0.0, 0.8});
    CHECK(overlap_pair_direct(-1.0, coin, p6, OverlapPair::Left) ==
          doctest::Approx(overlap_pair_closed_form(1.0, coin, p6, OverlapPair::Right)).epsilon(1e-12));
}

TEST_CASE("Hadamard factorization at the special angles") {
    const auto quarter = make_parameters(pi / 4);
    const auto three_quarter = make_parameters(3 * pi / 4);
    CHECK(hadamard_factorization_residual(0.0, quarter) < 1e-15);
    CHECK(hadamard_factorization_residual(0.0, three_quarter) < 1e-15);
    CHECK_THROWS_AS(hadamard_factorization_residual(0.3, make_parameters(pi / 6)), UnsupportedRegime);
    CHECK_THROWS_AS(hadamard_factorization_residual_shifted(0.3, make_parameters(pi / 6)), UnsupportedRegime);

    double literal = 0.0, shifted = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double k = -pi + 2 * pi * i / 1000.0;
        for (const auto& p : {quarter, three_quarter}) {
            literal = std::max(literal, hadamard_factorization_residual(k, p));
            shifted = std::max(shifted, hadamard_factorization_residual_shifted(k, p));
        }
    }
    // The unshifted product has the wrong spectrum: at k = pi/2 its trace is
    // -1 while the one-step operator has trace 2 g(pi/2) = 1.
    const auto rh = phase_shift(pi / 4) * Matrix2{{1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0),
                                                    -1 / std::sqrt(2.0)}};
    const auto rh2 = rh * rh;
    CHECK(std::abs((rh2 * rh2).trace() + 1.0) < 1e-12);
    CHECK(std::abs(one_step_operator(pi / 2, quarter).trace() - 1.0) < 1e-12);
    MESSAGE("max literal residual " << literal << ", max shifted residual " << shifted);
    CHECK(literal > 0.5);
    CHECK(shifted < 1e-12);
}

TEST_CASE("fourier_evolve basics") {
    const auto p = make_parameters(pi / 6);
    const auto d0 = fourier_evolve(p, symmetric_coin(), 0, 1);
    CHECK(d0.probs.size() == 1);
    CHECK(std::abs(d0.at(0) - 1.0) < 1e-15);

    const auto d1 = fourier_evolve(p, make_initial_coin({1, 0}, {0, 0}), 1, 8);
    CHECK(std::abs(d1.at(-2) - 3.0 / 64) < 1e-12);
    CHECK(std::abs(d1.at(-1) - 17.0 / 32) < 1e-12);
    CHECK(std::abs(d1.at(0) - 3.0 / 32) < 1e-12);
    CHECK(std::abs(d1.at(1) - 9.0 / 32) < 1e-12);
    CHECK(std::abs(d1.at(2) - 3.0 / 64) < 1e-12);

    CHECK_THROWS_AS(fourier_evolve(p, symmetric_coin(), 10, 40), AliasingError);
}

TEST_CASE("fourier_evolve matches the engine at t = 200, theta = pi/8") {
    const auto p = make_parameters(pi / 8);
    const auto coin = symmetric_coin();
    const auto oracle = fourier_evolve(p, coin, 200, 801, 2);
    const auto sim = distribution(evolve(p, coin, 200));
    double worst = 0.0;
    for (int x = -400; x <= 400; ++x) worst = std::max(worst, std::abs(oracle.at(x) - sim.at(x)));
    CHECK(worst < 1e-9);
}
