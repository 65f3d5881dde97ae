#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "numrad/io.hpp"
#include "numrad/unitary.hpp"

using namespace numrad;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("numrad_io_" + std::to_string(std::random_device{}()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

/// Bitwise equality, so -0.0 and 0.0 are told apart.
bool same_bits(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const cplx x = a.entries()[i], y = b.entries()[i];
        if (std::signbit(x.real()) != std::signbit(y.real()) || std::signbit(x.imag()) != std::signbit(y.imag()))
            return false;
        if (x != y) return false;
    }
    return true;
}

} // namespace

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(io::format_double(0.5), "0.5");
    EXPECT_EQ(io::format_double(0.1), "0.1");
    EXPECT_EQ(io::format_double(-2.0), "-2");
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint64_t> bits;
    for (int t = 0; t < 10000; ++t) {
        double x;
        const std::uint64_t b = bits(rng);
        std::memcpy(&x, &b, sizeof x);
        if (!std::isfinite(x)) continue;
        const std::string s = io::format_double(x);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        EXPECT_EQ(std::memcmp(&x, &back, sizeof x), 0) << s;
    }
}

TEST(MatrixJson, Layout) {
    const ComplexMatrix m{{1, cplx(0, 2)}, {3, 4}};
    const io::json j = io::matrix_to_json(m);
    EXPECT_EQ(j["rows"], 2);
    EXPECT_EQ(j["cols"], 2);
    EXPECT_EQ(j["entries"][1][1], 2.0);
    EXPECT_EQ(j["entries"][2][0], 3.0);
}

TEST(MatrixJson, FileRoundTripIsBitExact) {
    TempDir dir;
    Rng rng(2);
    std::uniform_real_distribution<double> exponent(-300, 300);
    for (int t = 0; t < 50; ++t) {
        ComplexMatrix m = ginibre(1 + t % 5, 1 + (t * 3) % 7, rng);
        for (cplx& z : m.entries()) z *= std::pow(10.0, exponent(rng));
        if (t == 0) m(0, 0) = cplx(-0.0, 5e-324);
        const std::string path = dir.file("m" + std::to_string(t) + ".json");
        io::write_matrix_file(path, m);
        EXPECT_TRUE(same_bits(io::read_matrix_file(path), m));
    }
}

TEST(MatrixJson, ParseErrors) {
    using io::json;
    EXPECT_THROW(io::matrix_from_json(json::array()), ParseError);
    EXPECT_THROW(io::matrix_from_json(json{{"rows", 1}, {"cols", 1}}), ParseError);
    EXPECT_THROW(io::matrix_from_json(json{{"rows", 1}, {"cols", 2}, {"entries", {{1, 0}}}}), ParseError);
    EXPECT_THROW(io::matrix_from_json(json{{"rows", 1}, {"cols", 1}, {"entries", {{1, 0, 3}}}}), ParseError);
    EXPECT_THROW(io::matrix_from_json(json{{"rows", 1}, {"cols", 1}, {"entries", {{"a", 0}}}}), ParseError);
    EXPECT_THROW(io::matrix_from_json(json{{"rows", -1}, {"cols", 1}, {"entries", json::array()}}), ParseError);
}

TEST(SuperOpJson, RoundTrip) {
    TempDir dir;
    const TensorDims d{2, 3};
    const SuperOperator op = canonical_to_superop(random_canonical(d, 4));
    const std::string path = dir.file("op.json");
    io::write_superop_file(path, d, op);
    const io::SuperOpFile back = io::read_superop_file(path);
    EXPECT_EQ(back.dims, d);
    EXPECT_TRUE(same_bits(back.op.matrix(), op.matrix()));
    EXPECT_EQ(io::read_json(path)["vec"], "column-major");
}

TEST(SuperOpJson, VecFieldIsMandatory) {
    io::json j = io::superop_to_json(TensorDims{2, 2}, identity_superop(4));
    io::json missing = j;
    missing.erase("vec");
    EXPECT_THROW(io::superop_from_json(missing), ParseError);
    io::json wrong = j;
    wrong["vec"] = "row-major";
    EXPECT_THROW(io::superop_from_json(wrong), ParseError);
}

TEST(SuperOpJson, SizeMismatch) {
    io::json j = io::superop_to_json(TensorDims{2, 2}, identity_superop(4));
    j["dims"] = {2, 3};
    EXPECT_THROW(io::superop_from_json(j), ParseError);
    EXPECT_THROW(io::superop_to_json(TensorDims{2, 3}, identity_superop(4)), DimensionError);
}

TEST(ReadJson, Errors) {
    TempDir dir;
    EXPECT_THROW(io::read_json(dir.file("absent.json")), IoError);
    const std::string bad = dir.file("bad.json");
    io::write_text(bad, "{\"rows\": 1,");
    EXPECT_THROW(io::read_json(bad), ParseError);
    EXPECT_THROW(io::write_text(dir.file("no/such/dir/x.json"), "x"), IoError);
}

TEST(BoundaryCsv, HeaderRowsAndLineEndings) {
    const ComplexMatrix a{{0, 0}, {0, 1}};
    const auto pts = boundary_points(a, 8);
    const std::string csv = io::boundary_csv(pts);
    EXPECT_EQ(csv.rfind("theta,support,re,im\r\n", 0), 0u);
    std::size_t lines = 0;
    for (std::size_t pos = 0; (pos = csv.find("\r\n", pos)) != std::string::npos; pos += 2) ++lines;
    EXPECT_EQ(lines, 9u);
    EXPECT_EQ(csv.find('\n'), csv.find("\r\n") + 1);

    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    for (const BoundaryPoint& p : pts) {
        std::getline(in, line);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<double> fields;
        std::stringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) fields.push_back(std::stod(cell));
        ASSERT_EQ(fields.size(), 4u);
        EXPECT_EQ(fields[0], p.angle);
        EXPECT_EQ(fields[1], p.support_value);
        EXPECT_NEAR(fields[1], std::max(std::cos(p.angle), 0.0), 1e-9);
    }
}
