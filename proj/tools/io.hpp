#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "rrb/errors.hpp"

namespace rrb::cli {

/// Bad input text or flag values; maps to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Parses decimal literals separated by newlines, commas or whitespace.
/// Errors carry the 1-based line number.
std::vector<double> parse_values(std::string_view text);

std::string read_file(const std::string& path);  // "-" reads stdin
void write_file(const std::string& path, std::string_view content);

std::string sha256_hex(std::string_view bytes);

/// Canonical text of a value list (one per line, shortest round-trip form);
/// used to digest built-in data sets.
std::string canonical_text(std::span<const double> values);

/// Locale-independent number formatting.
std::string format_sig(double x, int digits);  // %.{digits}g
std::string format_exact(double x);            // shortest round-trip

/// Splits "a,b,c" (empty pieces rejected).
std::vector<std::string> split_list(std::string_view text);
double parse_double(std::string_view text, std::string_view what);
std::vector<double> parse_double_list(std::string_view text, std::string_view what);
/// "4", "2,3,5" or "2..6".
std::vector<int> parse_int_range(std::string_view text, std::string_view what);

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::optional<std::uint64_t> seed;
    std::string input_digest;
    std::string tool_version;

    nlohmann::json to_json() const;
    /// Single-line JSON, written as the leading "# manifest: ..." CSV line.
    std::string csv_comment() const;
};

std::string tool_version();

/// Minimal CSV / aligned-table writer over string cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write_csv(std::ostream& out) const;
    void write_aligned(std::ostream& out) const;
};

std::string csv_escape(std::string_view cell);

}  // namespace rrb::cli
