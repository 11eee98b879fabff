#include "lqso/initial_measure.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lqso {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out)
{
    text = trim(text);
    if (text.empty())
        return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

double require_double(std::string_view text, const std::string& what)
{
    double v = 0.0;
    if (!parse_double(text, v))
        throw std::invalid_argument("cannot parse " + what + " from '" + std::string(text) + "'");
    return v;
}

AtomicMeasure parse_atoms(std::string_view list)
{
    std::vector<double> atoms, weights;
    while (!list.empty()) {
        const auto comma = list.find(',');
        const std::string_view item = trim(list.substr(0, comma));
        list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
        const auto colon = item.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("malformed atom entry '" + std::string(item) +
                                        "', expected <atom>:<weight>");
        atoms.push_back(require_double(item.substr(0, colon), "atom"));
        weights.push_back(require_double(item.substr(colon + 1), "weight"));
    }
    if (atoms.empty())
        throw std::invalid_argument("atom list is empty");
    for (std::size_t i = 1; i < atoms.size(); ++i)
        if (!(atoms[i] > atoms[i - 1]))
            throw std::invalid_argument("atoms must be listed in strictly increasing order");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(total - 1.0) > descriptor_sum_tolerance)
        throw std::invalid_argument("atom weights must sum to 1 (got " + std::to_string(total) + ")");
    for (double& w : weights)
        w /= total;
    return AtomicMeasure(std::move(atoms), std::move(weights));
}

} // namespace

CdfMeasure read_grid_cdf(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open grid file " + path);
    std::vector<double> xs, gs;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        const std::string_view row = trim(line);
        if (row.empty())
            continue;
        const auto c1 = row.find(',');
        const std::string_view xcol = row.substr(0, c1);
        std::string_view rest = c1 == std::string_view::npos ? std::string_view{} : row.substr(c1 + 1);
        const std::string_view gcol = rest.substr(0, rest.find(','));
        double x = 0.0, g = 0.0;
        if (!parse_double(xcol, x) || !parse_double(gcol, g)) {
            if (first) {
                first = false;
                continue; // header
            }
            throw std::invalid_argument("malformed row in grid file " + path + ": " + line);
        }
        first = false;
        xs.push_back(x);
        gs.push_back(g);
    }
    return CdfMeasure::from_grid(std::move(xs), std::move(gs));
}

InitialMeasure parse_measure(std::string_view descriptor)
{
    const std::string_view d = trim(descriptor);
    const std::string text(d);
    if (d == "uniform")
        return {text, CdfMeasure::uniform()};
    if (d.starts_with("pow:")) {
        const double k = require_double(d.substr(4), "power exponent");
        if (!(k >= 1.0))
            throw std::invalid_argument("power exponent must satisfy k >= 1");
        return {text, CdfMeasure::power(k)};
    }
    if (d.starts_with("atoms")) {
        const std::string_view list = trim(d.substr(5));
        return {text, parse_atoms(list)};
    }
    if (d.starts_with("grid:"))
        return {text, read_grid_cdf(std::string(d.substr(5)))};
    throw std::invalid_argument("unknown initial measure '" + text +
                                "' (expected uniform, pow:<k>, atoms ..., grid:<path>)");
}

} // namespace lqso
