#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/core.hpp"
#include "qwalk/text.hpp"
#include "test_support.hpp"

using namespace qwalk;
using std::numbers::pi;

TEST_CASE("make_parameters caches cos and sin") {
    const auto quarter = make_parameters(pi / 4);
    CHECK(quarter.c() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(quarter.s() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(quarter.is_hadamard_angle());

    const auto sixth = make_parameters(pi / 6);
    CHECK(std::abs(sixth.c() - std::sqrt(3.0) / 2) < 1e-15);
    CHECK(std::abs(sixth.s() - 0.5) < 1e-15);
    CHECK_FALSE(sixth.is_hadamard_angle());

    CHECK(make_parameters(3 * pi / 4).is_hadamard_angle());
    CHECK(make_parameters(2 * pi / 3).c() < 0.0);
}

TEST_CASE("make_parameters rejects angles outside (0, pi) \\ {pi/2}") {
    CHECK_THROWS_AS(make_parameters(pi / 2), InvalidParameter);
    CHECK_THROWS_AS(make_parameters(0.0), InvalidParameter);
    CHECK_THROWS_AS(make_parameters(pi), InvalidParameter);
    CHECK_THROWS_AS(make_parameters(-0.3), InvalidParameter);
    CHECK_THROWS_AS(make_parameters(4.0), InvalidParameter);
    CHECK_THROWS_AS(make_parameters(std::nan("")), InvalidParameter);
    CHECK_THROWS_AS(make_parameters(INFINITY), InvalidParameter);
}

TEST_CASE("c^2 + s^2 = 1 and s > 0 across the admissible range") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(1e-6, pi - 1e-6);
    for (int i = 0; i < 1000; ++i) {
        const double th = u(rng);
        if (std::abs(th - pi / 2) < 1e-9) continue;
        const auto p = make_parameters(th);
        CHECK(std::abs(p.c() * p.c() + p.s() * p.s() - 1.0) < 1e-14);
        CHECK(p.s() > 0.0);
    }
}

TEST_CASE("make_initial_coin enforces normalization") {
    const double r = 1 / std::sqrt(2.0);
    CHECK_NOTHROW(make_initial_coin({r, 0}, {0, r}));
    CHECK_NOTHROW(make_initial_coin({1, 0}, {0, 0}));
    CHECK_THROWS_AS(make_initial_coin({1, 0}, {1, 0}), InvalidParameter);
    CHECK_THROWS_AS(make_initial_coin({0.7, 0}, {0.7, 0}), InvalidParameter);

    const auto sym = symmetric_coin();
    CHECK(std::abs(sym.imbalance()) < 1e-15);
    CHECK(std::abs(sym.coherence()) < 1e-15);

    const auto diag = make_initial_coin({r, 0}, {r, 0});
    CHECK(diag.coherence() == doctest::Approx(1.0));
}

TEST_CASE("lattice containers report zero outside their window") {
    WalkState s{3, -2, {{{1, 0}, {0, 0}}, {{0, 0}, {0, 1}}}};
    CHECK(s.first() == -2);
    CHECK(s.last() == -1);
    CHECK(s.at(-3) == CoinSpinor{});
    CHECK(s.at(-1).a1 == complex{0, 1});
    CHECK(s.norm_sq() == doctest::Approx(2.0));

    ProbabilityDistribution d{1, -1, {0.25, 0.5, 0.25}};
    CHECK(d.at(0) == 0.5);
    CHECK(d.at(5) == 0.0);
    CHECK(d.total() == doctest::Approx(1.0));
}

TEST_CASE("parse_pi_fraction") {
    CHECK(parse_pi_fraction("1/4") == pi / 4);
    CHECK(parse_pi_fraction("3/4") == 3 * pi / 4);
    CHECK(parse_pi_fraction(" 1/6 ") == pi / 6);
    CHECK(parse_pi_fraction("1") == pi);
    CHECK_THROWS_AS(parse_pi_fraction("1/0"), InvalidParameter);
    CHECK_THROWS_AS(parse_pi_fraction("a/b"), InvalidParameter);
    CHECK_THROWS_AS(parse_pi_fraction("0.25"), InvalidParameter);
    // The routing tolerance is met exactly for the rational input.
    CHECK(make_parameters(parse_pi_fraction("3/4")).is_hadamard_angle());
}

TEST_CASE("parse_complex accepts a+bi forms") {
    CHECK(parse_complex("0.70710678+0i") == complex{0.70710678, 0});
    CHECK(parse_complex("0+0.70710678i") == complex{0, 0.70710678});
    CHECK(parse_complex("-1.5-2i") == complex{-1.5, -2});
    CHECK(parse_complex("1") == complex{1, 0});
    CHECK(parse_complex("i") == complex{0, 1});
    CHECK(parse_complex("-i") == complex{0, -1});
    CHECK(parse_complex("+2.5i") == complex{0, 2.5});
    CHECK(parse_complex("1e-3-2E+1i") == complex{1e-3, -20});
    CHECK(parse_complex("3-i") == complex{3, -1});
    CHECK_THROWS_AS(parse_complex(""), InvalidParameter);
    CHECK_THROWS_AS(parse_complex("1+2"), InvalidParameter);
    CHECK_THROWS_AS(parse_complex("x+yi"), InvalidParameter);
    CHECK_THROWS_AS(parse_complex("1,5"), InvalidParameter);
}

TEST_CASE("format_real uses 17 significant digits and round-trips") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(-2.5e-20) == "-2.4999999999999999e-20");
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 200; ++i) {
        const double v = u(rng);
        CHECK(parse_real(format_real(v)) == v);
    }
    CHECK(format_complex({1, -2}) == "1-2i");
    CHECK(parse_complex(format_complex({0.25, 0.5})) == complex{0.25, 0.5});
}

TEST_CASE("fnv1a digest") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("parallel_for covers every index and forwards exceptions") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw DomainError("boom"); }), DomainError);
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
}
