#include "lqso/cdf_measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lqso {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

void require_closed_unit_arg(double x)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("CDF argument must lie in [0,1]");
}

std::string format_exponent(double k)
{
    std::string s = std::to_string(k);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.')
        s.pop_back();
    return s;
}

} // namespace

CdfMeasure CdfMeasure::uniform()
{
    return CdfMeasure(Uniform{});
}

CdfMeasure CdfMeasure::power(double k)
{
    if (!std::isfinite(k) || k < 1.0)
        throw std::invalid_argument("power preset needs a finite exponent k >= 1");
    return CdfMeasure(Power{k});
}

CdfMeasure CdfMeasure::from_grid(std::vector<double> xs, std::vector<double> gs)
{
    if (xs.size() != gs.size() || xs.size() < 2)
        throw std::invalid_argument("grid CDF needs at least two (x, g) nodes");
    if (xs.front() != 0.0 || xs.back() != 1.0)
        throw std::invalid_argument("grid CDF nodes must start at x=0 and end at x=1");
    if (gs.front() != 0.0 || gs.back() != 1.0)
        throw std::invalid_argument("grid CDF must satisfy g(0)=0 and g(1)=1");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1]))
            throw std::invalid_argument("grid CDF nodes must be strictly increasing");
        if (!(gs[i] + 1e-12 >= gs[i - 1]) || gs[i] > 1.0 || gs[i] < 0.0)
            throw std::invalid_argument("grid CDF values must be nondecreasing in [0,1]");
    }
    return CdfMeasure(Grid{std::move(xs), std::move(gs)});
}

double CdfMeasure::cdf(double x) const
{
    require_closed_unit_arg(x);
    return std::visit(overloaded{
                          [&](const Uniform&) { return x; },
                          [&](const Power& p) { return std::pow(x, p.k); },
                          [&](const Grid& g) {
                              const auto it = std::upper_bound(g.xs.begin(), g.xs.end(), x);
                              if (it == g.xs.end())
                                  return g.gs.back();
                              const std::size_t i = std::size_t(it - g.xs.begin()) - 1;
                              if (g.xs[i] == x)
                                  return g.gs[i];
                              const double t = (x - g.xs[i]) / (g.xs[i + 1] - g.xs[i]);
                              return g.gs[i] + t * (g.gs[i + 1] - g.gs[i]);
                          },
                      },
                      shape_);
}

double CdfMeasure::survival(double x) const
{
    require_closed_unit_arg(x);
    return std::visit(overloaded{
                          [&](const Uniform&) { return 1.0 - x; },
                          [&](const Power& p) {
                              return x == 0.0 ? 1.0 : -std::expm1(p.k * std::log(x));
                          },
                          [&](const Grid&) { return 1.0 - cdf(x); },
                      },
                      shape_);
}

bool CdfMeasure::has_density() const noexcept
{
    return !std::holds_alternative<Grid>(shape_);
}

double CdfMeasure::density(double x) const
{
    require_closed_unit_arg(x);
    return std::visit(overloaded{
                          [&](const Uniform&) { return 1.0; },
                          [&](const Power& p) {
                              return p.k == 1.0 ? 1.0 : p.k * std::pow(x, p.k - 1.0);
                          },
                          [&](const Grid&) -> double {
                              throw std::logic_error("grid CDF measures carry no density");
                          },
                      },
                      shape_);
}

std::string CdfMeasure::name() const
{
    return std::visit(overloaded{
                          [](const Uniform&) { return std::string("uniform"); },
                          [](const Power& p) { return "pow:" + format_exponent(p.k); },
                          [](const Grid&) { return std::string("user-grid"); },
                      },
                      shape_);
}

} // namespace lqso
