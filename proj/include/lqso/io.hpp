#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace lqso::io {

/// 17 significant digits, '.' decimal separator, independent of locale.
std::string format_number(double v);

void write_csv_header(std::ostream& out, std::initializer_list<std::string_view> columns);
void write_csv_row(std::ostream& out, std::span<const double> values);
void write_csv_row(std::ostream& out, std::initializer_list<double> values);

/// Relative paths are resolved against $LQSO_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output_path(const std::string& path);

/// Destination for one artifact: a file when a path is given, else stdout.
/// Files are opened in binary mode so rows end in LF on every platform.
class OutputSink {
public:
    explicit OutputSink(const std::optional<std::string>& path);

    std::ostream& stream() noexcept { return *out_; }
    /// Flushes and throws std::runtime_error naming the path on failure.
    void finish();

private:
    std::ofstream file_;
    std::ostream* out_;
    std::string label_;
};

} // namespace lqso::io
