#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "numrad/error.hpp"
#include "numrad/matrix.hpp"
#include "numrad/numrange.hpp"
#include "numrad/preservers.hpp"

namespace numrad::io {

using json = nlohmann::json;

inline constexpr const char* kVecConvention = "column-major";

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// {"rows": R, "cols": C, "entries": [[re, im], ...]} in row-major order.
inline json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (const cplx& z : m.entries()) entries.push_back(json::array({z.real(), z.imag()}));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix: expected a JSON object");
    for (const char* key : {"rows", "cols", "entries"}) {
        if (!j.contains(key)) throw ParseError(std::string("matrix: missing field \"") + key + "\"");
    }
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
        throw ParseError("matrix: rows/cols must be nonnegative integers");
    }
    const auto rows = j["rows"].get<std::size_t>();
    const auto cols = j["cols"].get<std::size_t>();
    const json& entries = j["entries"];
    if (!entries.is_array()) throw ParseError("matrix: entries must be an array");
    if (entries.size() != rows * cols) {
        throw ParseError("matrix: expected " + std::to_string(rows * cols) + " entries, found " +
                         std::to_string(entries.size()));
    }
    std::vector<cplx> data;
    data.reserve(entries.size());
    for (const json& e : entries) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw ParseError("matrix: each entry must be [re, im]");
        }
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError("matrix: non-finite entry");
        data.emplace_back(re, im);
    }
    return ComplexMatrix(rows, cols, std::move(data));
}

struct SuperOpFile {
    TensorDims dims;
    SuperOperator op;
};

inline json superop_to_json(const TensorDims& dims, const SuperOperator& op) {
    if (op.dim() != dims.total()) throw DimensionError("superop_to_json: dims do not match operator");
    return json{{"dims", dims.dims()}, {"vec", kVecConvention}, {"matrix", matrix_to_json(op.matrix())}};
}

inline SuperOpFile superop_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("superop: expected a JSON object");
    for (const char* key : {"dims", "vec", "matrix"}) {
        if (!j.contains(key)) throw ParseError(std::string("superop: missing field \"") + key + "\"");
    }
    if (!j["vec"].is_string() || j["vec"].get<std::string>() != kVecConvention) {
        throw ParseError("superop: \"vec\" must be \"column-major\"");
    }
    const json& jd = j["dims"];
    if (!jd.is_array()) throw ParseError("superop: dims must be an array");
    std::vector<std::size_t> dims;
    for (const json& d : jd) {
        if (!d.is_number_unsigned()) throw ParseError("superop: dims must be positive integers");
        dims.push_back(d.get<std::size_t>());
    }
    TensorDims td(std::move(dims));
    ComplexMatrix m = matrix_from_json(j["matrix"]);
    const std::size_t n2 = td.total() * td.total();
    if (m.rows() != n2 || m.cols() != n2) {
        throw ParseError("superop: matrix must be " + std::to_string(n2) + "x" + std::to_string(n2) + " for dims " +
                         to_string(td));
    }
    SuperOperator op(td.total(), std::move(m));
    return {std::move(td), std::move(op)};
}

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

inline ComplexMatrix read_matrix_file(const std::string& path) { return matrix_from_json(read_json(path)); }

inline void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    write_text(path, matrix_to_json(m).dump() + "\n");
}

inline SuperOpFile read_superop_file(const std::string& path) { return superop_from_json(read_json(path)); }

inline void write_superop_file(const std::string& path, const TensorDims& dims, const SuperOperator& op) {
    write_text(path, superop_to_json(dims, op).dump() + "\n");
}

/// "theta,support,re,im" with CRLF line endings.
inline void write_boundary_csv(std::ostream& out, const std::vector<BoundaryPoint>& points) {
    out << "theta,support,re,im\r\n";
    for (const BoundaryPoint& p : points) {
        out << format_double(p.angle) << ',' << format_double(p.support_value) << ','
            << format_double(p.witness.real()) << ',' << format_double(p.witness.imag()) << "\r\n";
    }
}

inline std::string boundary_csv(const std::vector<BoundaryPoint>& points) {
    std::ostringstream os;
    write_boundary_csv(os, points);
    return os.str();
}

} // namespace numrad::io
