#include "lqso/io.hpp"

#include <array>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <stdexcept>

namespace lqso::io {

std::string format_number(double v)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                         std::chars_format::general, 17);
    if (ec != std::errc{})
        throw std::runtime_error("number formatting failed");
    return std::string(buf.data(), ptr);
}

void write_csv_header(std::ostream& out, std::initializer_list<std::string_view> columns)
{
    bool first = true;
    for (auto c : columns) {
        if (!first)
            out << ',';
        out << c;
        first = false;
    }
    out << '\n';
}

void write_csv_row(std::ostream& out, std::span<const double> values)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out << ',';
        out << format_number(values[i]);
    }
    out << '\n';
}

void write_csv_row(std::ostream& out, std::initializer_list<double> values)
{
    write_csv_row(out, std::span<const double>(values.begin(), values.size()));
}

std::filesystem::path resolve_output_path(const std::string& path)
{
    std::filesystem::path p(path);
    if (p.is_relative())
        if (const char* dir = std::getenv("LQSO_OUTPUT_DIR"); dir && *dir)
            return std::filesystem::path(dir) / p;
    return p;
}

OutputSink::OutputSink(const std::optional<std::string>& path) : out_(&std::cout), label_("stdout")
{
    if (!path)
        return;
    const auto resolved = resolve_output_path(*path);
    label_ = resolved.string();
    file_.open(resolved, std::ios::binary | std::ios::trunc);
    if (!file_)
        throw std::runtime_error("cannot open output file " + label_);
    out_ = &file_;
}

void OutputSink::finish()
{
    out_->flush();
    if (!*out_)
        throw std::runtime_error("failed writing " + label_);
}

} // namespace lqso::io
