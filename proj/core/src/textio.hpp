#pragma once

// Line/token helpers shared by the text readers. Internal to the library.

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pmq/errors.hpp"

namespace pmq::detail {

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

inline bool blank(const std::string& s) {
    return s.find_first_not_of(" \t") == std::string::npos;
}

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

inline std::int64_t parse_int64(const std::string& tok, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0') {
        throw ParseError("bad integer '" + tok + "' " + where);
    }
    if (errno == ERANGE) {
        throw OverflowError("integer out of 64-bit range: '" + tok + "' " + where);
    }
    return v;
}

inline double parse_double(const std::string& tok, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
        throw ParseError("bad number '" + tok + "' " + where);
    }
    if (!std::isfinite(v)) {
        throw ParseError("non-finite entry '" + tok + "' " + where);
    }
    return v;
}

} // namespace pmq::detail
