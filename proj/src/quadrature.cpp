#include "lqso/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace lqso {

namespace {

struct Panel {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

// Kronrod (15) and embedded Gauss (7) rules from Boost's tables. Boost's own
// integrate() floors the error estimate at a multiple of eps |f| that does
// not shrink with the panel, which stalls bisection on narrow peaks, so the
// estimate |K15 - G7| is formed here.
Panel evaluate_panel(const std::function<double(double)>& f, double a, double b)
{
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    const auto& nodes = kronrod::abscissa();
    const auto& kw = kronrod::weights();
    const auto& gw = boost::math::quadrature::gauss<double, 7>::weights();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    // Even indices (the center included) are the Gauss nodes, odd indices
    // the Kronrod extension.
    const double fc = f(center);
    double k = fc * kw[0];
    double g = fc * gw[0];
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double sum = f(center - half * nodes[i]) + f(center + half * nodes[i]);
        k += kw[i] * sum;
        if (i % 2 == 0)
            g += gw[i / 2] * sum;
    }
    return {a, b, k * half, std::abs(k - g) * half};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t max_intervals)
{
    if (a == b)
        return {};
    return integrate_adaptive(f, std::vector<double>{a, b}, abs_tol, max_intervals);
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    const std::vector<double>& breakpoints, double abs_tol,
                                    std::size_t max_intervals)
{
    if (breakpoints.size() < 2)
        throw std::invalid_argument("need at least two breakpoints");

    std::priority_queue<Panel> panels;
    double total_error = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i] == breakpoints[i + 1])
            continue;
        const Panel panel = evaluate_panel(f, breakpoints[i], breakpoints[i + 1]);
        total_error += panel.error;
        panels.push(panel);
        ++count;
    }
    if (count == 0)
        return {};
    max_intervals = std::max(max_intervals, count);

    while (total_error > abs_tol && count < max_intervals) {
        const Panel worst = panels.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            break; // panel cannot be split further in binary64
        panels.pop();
        const Panel left = evaluate_panel(f, worst.a, mid);
        const Panel right = evaluate_panel(f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
    }

    // Re-sum from scratch; the running total drifts.
    QuadratureResult out;
    out.intervals = count;
    std::vector<Panel> all;
    all.reserve(count);
    while (!panels.empty()) {
        all.push_back(panels.top());
        panels.pop();
    }
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
        out.value += it->value;
        out.abs_error += it->error;
    }
    out.converged = out.abs_error <= abs_tol;
    return out;
}

} // namespace lqso
