#pragma once

#include <string>
#include <variant>
#include <vector>

namespace lqso {

/// Continuous probability measure on [0,1) given by its CDF g(x) = lambda([0,x)).
class CdfMeasure {
public:
    /// Lebesgue measure, g(x) = x.
    static CdfMeasure uniform();

    /// g(x) = x^k, density k x^(k-1); requires k >= 1.
    static CdfMeasure power(double k);

    /// Piecewise-linear CDF through (xs[i], gs[i]). Nodes must start at 0,
    /// end at 1 and increase strictly; gs must be nondecreasing from 0 to 1.
    /// No density is available for grid measures.
    static CdfMeasure from_grid(std::vector<double> xs, std::vector<double> gs);

    double cdf(double x) const;

    /// 1 - g(x), computed without cancellation where the preset allows.
    double survival(double x) const;

    bool has_density() const noexcept;
    double density(double x) const;

    /// Preset tag: "uniform", "pow:<k>" or "user-grid".
    std::string name() const;

private:
    struct Uniform {};
    struct Power {
        double k;
    };
    struct Grid {
        std::vector<double> xs;
        std::vector<double> gs;
    };

    explicit CdfMeasure(std::variant<Uniform, Power, Grid> shape) : shape_(std::move(shape)) {}

    std::variant<Uniform, Power, Grid> shape_;
};

} // namespace lqso
