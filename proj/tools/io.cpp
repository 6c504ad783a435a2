#include "io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#ifndef RRB_VERSION
#define RRB_VERSION "0.0.0"
#endif

namespace rrb::cli {

namespace {

bool is_separator(char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == ';'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<double> parse_values(std::string_view text) {
    std::vector<double> out;
    std::size_t line_no = 1;
    std::size_t pos = 0;
    if (text.starts_with("\xEF\xBB\xBF")) pos = 3;  // UTF-8 BOM
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == '\n') {
            ++line_no;
            ++pos;
            continue;
        }
        if (is_separator(c)) {
            ++pos;
            continue;
        }
        if (c == '#') {  // comment to end of line
            while (pos < text.size() && text[pos] != '\n') ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < text.size() && text[end] != '\n' && !is_separator(text[end])) ++end;
        const std::string_view token = text.substr(pos, end - pos);
        double value = 0.0;
        const char* first = token.data();
        if (!token.empty() && token.front() == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
            throw UsageError("line " + std::to_string(line_no) + ": cannot parse '" +
                             std::string(token) + "' as a finite decimal number");
        }
        out.push_back(value);
        pos = end;
    }
    return out;
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw UsageError("write to '" + path + "' failed");
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string canonical_text(std::span<const double> values) {
    std::string out;
    for (double v : values) {
        out += format_exact(v);
        out += '\n';
    }
    return out;
}

std::string format_sig(double x, int digits) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
    return std::string(buf, r.ptr);
}

std::string format_exact(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view piece =
            trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
        if (piece.empty()) throw UsageError("empty item in list '" + std::string(text) + "'");
        out.emplace_back(piece);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
        !std::isfinite(value)) {
        throw UsageError(std::string(what) + ": cannot parse '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_double_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    for (const auto& piece : split_list(text)) out.push_back(parse_double(piece, what));
    return out;
}

std::vector<int> parse_int_range(std::string_view text, std::string_view what) {
    auto parse_int = [&](std::string_view s) {
        s = trim(s);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
            throw UsageError(std::string(what) + ": cannot parse '" + std::string(s) + "'");
        }
        return v;
    };
    std::vector<int> out;
    for (const auto& piece : split_list(text)) {
        const std::size_t dots = piece.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_int(piece));
            continue;
        }
        const int lo = parse_int(std::string_view(piece).substr(0, dots));
        const int hi = parse_int(std::string_view(piece).substr(dots + 2));
        if (hi < lo) throw UsageError(std::string(what) + ": empty range '" + piece + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
    return out;
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    j["input_digest"] = input_digest;
    j["tool_version"] = tool_version;
    return j;
}

std::string RunManifest::csv_comment() const { return "# manifest: " + to_json().dump(); }

std::string tool_version() { return std::string("rrb ") + RRB_VERSION; }

std::string csv_escape(std::string_view cell) {
    if (cell.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(cell);
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void Table::write_csv(std::ostream& out) const {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(cells[i]);
        }
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

void Table::write_aligned(std::ostream& out) const {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) {
            width[i] = std::max(width[i], r[i].size());
        }
    }
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << "  ";
            out << cells[i];
            if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size(), ' ');
        }
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

}  // namespace rrb::cli
