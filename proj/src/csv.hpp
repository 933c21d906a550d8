#ifndef FAVAR_SRC_CSV_HPP
#define FAVAR_SRC_CSV_HPP

#include <optional>
#include <string>
#include <vector>

namespace favar::csv {

// Minimal CSV layer for the panel formats: UTF-8, '.' decimal, no quoting,
// no thousands separators. Numeric formatting uses std::to_chars shortest
// round-trip form so written doubles reload bit-for-bit.

std::vector<std::vector<std::string>> read_rows(const std::string& path);

std::string format_double(double v);

// Parses with std::from_chars; empty -> nullopt (missing cell); anything
// else that is not a full numeric token fails.
std::optional<double> parse_double(const std::string& token, bool* ok);

long parse_long(const std::string& token, bool* ok);

void write_file(const std::string& path, const std::string& content);

std::string join(const std::vector<std::string>& fields);

}  // namespace favar::csv

#endif
