#pragma once

// JSON matrix files: {"rows": m, "cols": n, "data": [[[re, im], ...], ...]}, row-major.
// Numbers are written with 17 significant digits so that parsing restores every bit.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oporder/linalg.hpp"

namespace oporder {

namespace detail {

inline std::string format_double(double v) {
    if (!std::isfinite(v)) throw NonFinite("cannot serialize a non-finite number");
    if (v == 0.0) return std::signbit(v) ? "-0.0" : "0";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_number(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(where + ": non-finite number");
    return v;
}

}  // namespace detail

inline Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("matrix file must be a JSON object");
    for (const char* key : {"rows", "cols", "data"}) {
        if (!j.contains(key)) throw ParseError(std::string("matrix file lacks \"") + key + "\"");
    }
    if (!j["rows"].is_number_unsigned() && !(j["rows"].is_number_integer() && j["rows"].get<long long>() >= 0)) {
        throw ParseError("\"rows\" must be a nonnegative integer");
    }
    if (!j["cols"].is_number_unsigned() && !(j["cols"].is_number_integer() && j["cols"].get<long long>() >= 0)) {
        throw ParseError("\"cols\" must be a nonnegative integer");
    }
    const auto rows = j["rows"].get<long long>();
    const auto cols = j["cols"].get<long long>();
    const nlohmann::json& data = j["data"];
    if (!data.is_array() || static_cast<long long>(data.size()) != rows) {
        throw ParseError("\"data\" must be an array of " + std::to_string(rows) + " rows");
    }
    Matrix m(rows, cols);
    for (long long i = 0; i < rows; ++i) {
        const nlohmann::json& row = data[i];
        if (!row.is_array() || static_cast<long long>(row.size()) != cols) {
            throw ParseError("row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
        }
        for (long long k = 0; k < cols; ++k) {
            const nlohmann::json& e = row[k];
            const std::string where = "entry (" + std::to_string(i) + ", " + std::to_string(k) + ")";
            if (e.is_array()) {
                if (e.size() != 2) throw ParseError(where + ": expected [re, im]");
                m(i, k) = Complex(detail::parse_number(e[0], where), detail::parse_number(e[1], where));
            } else {
                m(i, k) = Complex(detail::parse_number(e, where), 0.0);
            }
        }
    }
    return m;
}

inline Matrix parse_matrix(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return matrix_from_json(j);
}

inline std::string serialize_matrix(const Matrix& m) {
    std::ostringstream os;
    os << "{\"rows\": " << m.rows() << ", \"cols\": " << m.cols() << ", \"data\": [";
    for (Index i = 0; i < m.rows(); ++i) {
        os << (i == 0 ? "\n  [" : ",\n  [");
        for (Index k = 0; k < m.cols(); ++k) {
            if (k > 0) os << ", ";
            os << '[' << detail::format_double(m(i, k).real()) << ", " << detail::format_double(m(i, k).imag()) << ']';
        }
        os << ']';
    }
    os << (m.rows() > 0 ? "\n]}\n" : "]}\n");
    return os.str();
}

/// Same content as serialize_matrix, as a JSON value (used inside larger reports).
inline nlohmann::json matrix_to_json(const Matrix& m) { return nlohmann::json::parse(serialize_matrix(m)); }

inline Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_matrix(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_matrix_file(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << serialize_matrix(m);
}

}  // namespace oporder
