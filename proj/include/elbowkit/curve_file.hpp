#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "elbowkit/curve.hpp"
#include "elbowkit/errors.hpp"

namespace elbowkit {

// Two-column text format:
//   # k_min=<int>        (optional comment)
//   k,value
//   0,10
//   1,4
// Row k must be strictly increasing with step 1; the first row's k (or the
// k_min comment) becomes the curve's index offset.
struct ParsedCurve {
    std::vector<double> values;
    long k_offset = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// shortest round-trip decimal for doubles
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

inline ParsedCurve parse_curve_file(std::istream& in) {
    ParsedCurve pc;
    std::optional<long> k_min_comment;
    std::optional<long> prev_k;
    bool header_seen = false;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto pos = t.find("k_min=");
            if (pos != std::string::npos) {
                long v = 0;
                const char* b = t.data() + pos + 6;
                const char* e = t.data() + t.size();
                const auto res = std::from_chars(b, e, v);
                if (res.ec != std::errc{})
                    throw ParseError("line " + std::to_string(lineno) +
                                     ": bad k_min comment");
                k_min_comment = v;
            }
            continue;
        }
        if (!header_seen) {
            if (t != "k,value")
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected header 'k,value'");
            header_seen = true;
            continue;
        }
        const auto comma = t.find(',');
        if (comma == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected 'k,value'");
        long k = 0;
        auto kr = std::from_chars(t.data(), t.data() + comma, k);
        if (kr.ec != std::errc{} || kr.ptr != t.data() + comma || k < 0)
            throw ParseError("line " + std::to_string(lineno) +
                             ": bad index '" + t.substr(0, comma) + "'");
        double v = 0.0;
        const std::string vs = detail::trim(t.substr(comma + 1));
        auto vr = std::from_chars(vs.data(), vs.data() + vs.size(), v);
        if (vr.ec != std::errc{} || vr.ptr != vs.data() + vs.size())
            throw ParseError("line " + std::to_string(lineno) +
                             ": bad value '" + vs + "'");
        if (prev_k) {
            if (k == *prev_k)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": duplicate k=" + std::to_string(k));
            if (k != *prev_k + 1)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": k must increase by 1");
        } else {
            pc.k_offset = k;
        }
        prev_k = k;
        pc.values.push_back(v);
    }
    if (!header_seen) throw ParseError("missing header 'k,value'");
    if (pc.values.empty()) throw ParseError("no data rows");
    if (k_min_comment) pc.k_offset = *k_min_comment;
    return pc;
}

inline void write_curve_file(std::ostream& out, const ErrorCurve& c) {
    if (c.k_offset != 0) out << "# k_min=" << c.k_offset << "\n";
    out << "k,value\n";
    // row indices carry the offset when it is representable (k >= 0)
    const long base = c.k_offset >= 0 ? c.k_offset : 0;
    for (std::size_t i = 0; i < c.values.size(); ++i)
        out << base + static_cast<long>(i) << ","
            << detail::format_double(c.values[i]) << "\n";
}

}  // namespace elbowkit
