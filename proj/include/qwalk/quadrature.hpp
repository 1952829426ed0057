#pragma once

// Numerical integration used by the limit densities and moment formulas.

#include <functional>
#include <span>
#include <vector>

namespace qwalk::quad {

using Integrand = std::function<double(double)>;

struct Rule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule. Results are cached per n.
const Rule& gauss_legendre(int n);

// Fixed rule mapped onto [a, b].
double integrate_fixed(const Integrand& f, double a, double b, const Rule& rule);

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

struct Tolerance {
    double absolute = 1e-10;
    double relative = 1e-12;
    int max_intervals = 4000;
};

// Globally adaptive 7/15-point Gauss-Kronrod. Throws NonConvergence when the
// error estimate stays above the tolerance after max_intervals bisections.
Result adaptive(const Integrand& f, double a, double b, const Tolerance& tol = {});

// Integral over [lo, hi] of a function whose only singularities are
// integrable inverse square roots at the ends of its support [a, b]
// (a <= lo <= hi <= b). Substitutes x = a + u^2 on the lower half of [a, b]
// and x = b - u^2 on the upper half so both integrands are smooth in u.
Result edge_singular(const Integrand& f, double a, double b, double lo, double hi, const Tolerance& tol = {});

}  // namespace qwalk::quad
