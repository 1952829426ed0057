#include "qwalk/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>

#include "qwalk/core.hpp"

namespace qwalk::quad {

namespace {

Rule build_gauss_legendre(int n) {
    Rule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

// Kronrod 15-point abscissae (descending, last is the midpoint) and weights,
// with the embedded 7-point Gauss weights on the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod15(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

const Rule& gauss_legendre(int n) {
    if (n < 1) throw InvalidParameter("Gauss-Legendre order must be positive");
    static std::mutex mutex;
    static std::map<int, Rule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

double integrate_fixed(const Integrand& f, double a, double b, const Rule& rule) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(center + half * rule.nodes[i]);
    return sum * half;
}

Result adaptive(const Integrand& f, double a, double b, const Tolerance& tol) {
    if (a == b) return {};
    if (a > b) {
        Result r = adaptive(f, b, a, tol);
        r.value = -r.value;
        return r;
    }
    std::priority_queue<Panel> heap;
    Panel first = kronrod15(f, a, b);
    double value = first.value;
    double error = first.error;
    heap.push(first);
    int intervals = 1;
    auto target = [&] { return std::max(tol.absolute, tol.relative * std::abs(value)); };
    while (!(error <= target())) {
        if (!std::isfinite(value) || !std::isfinite(error))
            throw NonConvergence("adaptive quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                                 "] produced a non-finite value");
        if (intervals >= tol.max_intervals)
            throw NonConvergence("adaptive quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                                 "] stalled at error " + std::to_string(error));
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = kronrod15(f, worst.a, mid);
        const Panel right = kronrod15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
        // Re-sum periodically to shed accumulated cancellation in the running totals.
        if (intervals % 64 == 0) {
            auto copy = heap;
            value = 0.0;
            error = 0.0;
            while (!copy.empty()) {
                value += copy.top().value;
                error += copy.top().error;
                copy.pop();
            }
        }
    }
    return {value, error, intervals};
}

Result edge_singular(const Integrand& f, double a, double b, double lo, double hi, const Tolerance& tol) {
    lo = std::clamp(lo, a, b);
    hi = std::clamp(hi, a, b);
    if (hi <= lo) return {};
    const double mid = 0.5 * (a + b);
    Tolerance part = tol;
    part.absolute *= 0.5;

    Result total;
    auto accumulate = [&](const Result& r) {
        total.value += r.value;
        total.error += r.error;
        total.intervals += r.intervals;
    };
    if (lo < mid) {
        const double upper = std::min(hi, mid);
        accumulate(adaptive([&](double u) { return 2.0 * u * f(a + u * u); }, std::sqrt(lo - a),
                            std::sqrt(upper - a), part));
    }
    if (hi > mid) {
        const double lower = std::max(lo, mid);
        accumulate(adaptive([&](double u) { return 2.0 * u * f(b - u * u); }, std::sqrt(b - hi),
                            std::sqrt(b - lower), part));
    }
    return total;
}

}  // namespace qwalk::quad
