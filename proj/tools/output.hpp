#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jhflow::cli {

/// Raised for unreadable inputs and unwritable outputs.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 17 significant digits in general format, locale independent, "nan"
/// and "inf"/"-inf" for non-finite values.
std::string format_double(double value);

/// CSV text with the given header and rows; every cell through format_double.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Writes to a sibling temporary file and renames it over path, so that a
/// failed run never leaves a partial file. Without a path, writes to stdout.
void write_output(const std::optional<std::filesystem::path>& path, const std::string& text);

std::string read_file(const std::filesystem::path& path);

}  // namespace jhflow::cli
