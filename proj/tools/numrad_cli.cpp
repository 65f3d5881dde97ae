// numrad command-line front end.
//
// Exit codes: 0 success / preserving, 1 violated, 2 parse error,
// 3 shape or domain error, 4 I/O error, 5 reconstruction failure.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "numrad/io.hpp"
#include "numrad/numrad.hpp"

namespace {

using namespace numrad;

enum ExitCode : int { kOk = 0, kViolated = 1, kParse = 2, kDomain = 3, kIo = 4, kReconstruction = 5 };

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
    const char* env = std::getenv("NUMRAD_LOG");
    if (!env) return LogLevel::Info;
    const std::string v(env);
    if (v == "quiet") return LogLevel::Quiet;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Info;
}

void log(LogLevel level, const std::string& msg) {
    static const LogLevel threshold = log_level();
    if (threshold == LogLevel::Quiet || level > threshold) return;
    std::cerr << (level == LogLevel::Debug ? "[debug] " : "[info] ") << msg << '\n';
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fixed10(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", x);
    return buf;
}

std::string complex_str(cplx z) { return fmt17(z.real()) + " " + fmt17(z.imag()) + "i"; }

std::vector<std::size_t> parse_dims(const std::string& text) {
    std::vector<std::size_t> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long v = std::stol(item, &used);
            if (used != item.size() || v < 0) throw std::invalid_argument(item);
            dims.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw ParseError("bad dims list: " + text);
        }
    }
    return dims;
}

int cmd_radius(const std::string& input, double tol) {
    const ComplexMatrix a = io::read_matrix_file(input);
    log(LogLevel::Info, "read " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " matrix from " + input);
    if (!a.is_square()) throw DimensionError("radius: matrix is not square");
    const RadiusResult r = numerical_radius(a, tol);
    std::cout << "radius = " << fmt17(r.radius) << '\n';
    std::cout << "theta_star = " << fmt17(r.theta_star) << '\n';
    std::cout << "attaining_vector =";
    for (const cplx& z : r.attaining_vector) std::cout << ' ' << complex_str(z);
    std::cout << '\n';
    return kOk;
}

int cmd_boundary(const std::string& input, std::size_t count, const std::string& out) {
    const ComplexMatrix a = io::read_matrix_file(input);
    if (!a.is_square()) throw DimensionError("boundary: matrix is not square");
    const auto points = boundary_points(a, count);
    io::write_text(out, io::boundary_csv(points));
    log(LogLevel::Info, "wrote " + std::to_string(points.size()) + " boundary points to " + out);
    return kOk;
}

void print_verdict(const Verdict& v) {
    if (v.preserving()) {
        std::cout << "verdict: preserving\n";
        return;
    }
    std::cout << "verdict: violated\n";
    std::cout << "sample: " << v.sample_kind << '\n';
    if (v.angle) std::cout << "angle = " << fmt17(*v.angle) << '\n';
    std::cout << "w_input = " << fmt17(v.w_input) << '\n';
    std::cout << "w_output = " << fmt17(v.w_output) << '\n';
    std::cout << "gap = " << fmt17(v.gap()) << '\n';
    for (std::size_t k = 0; k < v.witness.size(); ++k) {
        std::cout << "factor " << k + 1 << ": " << io::matrix_to_json(v.witness[k]).dump() << '\n';
    }
}

int cmd_verify(const std::string& input, std::size_t trials, std::uint64_t seed, double tol,
               const std::string& invariant) {
    const io::SuperOpFile f = io::read_superop_file(input);
    log(LogLevel::Info, "verifying " + invariant + " preservation on dims " + to_string(f.dims) + ", " +
                            std::to_string(trials) + " trials, seed " + std::to_string(seed));
    const Verdict v = invariant == "range" ? verify_range_preservation(f.op, f.dims, trials, tol, seed)
                                           : verify_radius_preservation(f.op, f.dims, trials, tol, seed);
    print_verdict(v);
    return v.preserving() ? kOk : kViolated;
}

int cmd_classify(const std::string& input, double tol, std::uint64_t seed, const std::string& emit_u) {
    const io::SuperOpFile f = io::read_superop_file(input);
    log(LogLevel::Info, "classifying superoperator on dims " + to_string(f.dims));
    const ClassificationResult res = classify_preserver(f.op, f.dims, tol, seed);
    if (res.not_preserving()) {
        std::cout << "status: not-preserving\n";
        print_verdict(res.verdict());
        return kViolated;
    }
    if (res.failed()) {
        std::cout << "status: reconstruction-failed\n";
        std::cout << "stage: " << res.failure().stage << '\n';
        std::cout << "diagnostic = " << fmt17(res.failure().diagnostic) << '\n';
        return kReconstruction;
    }
    const CanonicalPreserver& p = res.preserver();
    std::cout << "status: classified\n";
    std::cout << "xi = " << complex_str(p.xi) << '\n';
    std::cout << "factor_types:";
    for (FactorType t : p.factor_types) std::cout << ' ' << to_string(t);
    std::cout << '\n';
    std::cout << "residual = " << fmt17(res.residual) << '\n';
    if (!emit_u.empty()) {
        io::write_matrix_file(emit_u, p.unitary);
        log(LogLevel::Info, "wrote U to " + emit_u);
    }
    return kOk;
}

int cmd_repro_example1(std::size_t m, std::size_t n) {
    if (m < 3 || n < 3) throw DomainError("repro-example1: m and n must be >= 3");
    const auto [a, b] = example1_witness(m, n);
    const double w_ab = numerical_radius(kron(a, b)).radius;
    const double w_abt = numerical_radius(kron(a, b.transpose())).radius;
    const double w_atb = numerical_radius(kron(a.transpose(), b)).radius;
    const double expected_ab = std::sqrt(4.25);
    const double expected_abt = 2.0;
    const bool pass = std::abs(w_ab - expected_ab) <= 1e-8 && std::abs(w_abt - expected_abt) <= 1e-8 &&
                      std::abs(w_atb - expected_abt) <= 1e-8;

    std::cout << "m = " << m << ", n = " << n << '\n';
    std::cout << "quantity      value                 expected\n";
    std::cout << "w(A(x)B)      " << fmt17(w_ab) << "    sqrt(4.25) = " << fmt17(expected_ab) << '\n';
    std::cout << "w(A(x)B^t)    " << fixed10(w_abt) << "          " << fixed10(expected_abt) << '\n';
    std::cout << "w(A^t(x)B)    " << fixed10(w_atb) << "          " << fixed10(expected_abt) << '\n';
    std::cout << "difference    " << fmt17(w_ab - w_abt) << '\n';
    std::cout << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kOk : kViolated;
}

int cmd_make_superop(const std::string& kind, const std::string& dims_text, const std::vector<std::size_t>& factors,
                     double scale, std::uint64_t seed, const std::string& out) {
    const TensorDims dims(parse_dims(dims_text));
    SuperOperator op;
    if (kind == "identity") {
        op = identity_superop(dims.total());
    } else if (kind == "transpose") {
        op = transpose_superop(dims);
    } else if (kind == "partial-transpose") {
        std::vector<std::size_t> subset;
        for (std::size_t f : factors) {
            if (f == 0) throw DimensionError("factor indices are 1-based");
            subset.push_back(f - 1);
        }
        op = partial_transpose_superop(dims, subset);
    } else if (kind == "scaled") {
        op = SuperOperator(dims.total(), identity(dims.total() * dims.total()) * cplx(scale));
    } else if (kind == "canonical") {
        const CanonicalPreserver p = random_canonical(dims, seed);
        std::string types;
        for (FactorType t : p.factor_types) types += std::string(" ") + to_string(t);
        log(LogLevel::Info, "planted xi = " + complex_str(p.xi) + ", types:" + types);
        op = canonical_to_superop(p);
    } else {
        throw ParseError("unknown superoperator kind: " + kind);
    }
    io::write_superop_file(out, dims, op);
    log(LogLevel::Info, "wrote " + kind + " superoperator on dims " + to_string(dims) + " to " + out);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical range, numerical radius and tensor-product preserver toolkit"};
    app.require_subcommand(1);

    std::string input;
    double tol = kDefaultRadiusTol;
    auto* radius = app.add_subcommand("radius", "Numerical radius of a matrix file");
    radius->add_option("input", input, "MatrixFile (JSON)")->required();
    radius->add_option("--tol", tol, "Radius tolerance")->check(CLI::PositiveNumber);

    std::size_t count = 360;
    std::string out;
    auto* boundary = app.add_subcommand("boundary", "Support points of the numerical range as CSV");
    boundary->add_option("input", input, "MatrixFile (JSON)")->required();
    boundary->add_option("--count", count, "Number of equispaced angles");
    boundary->add_option("--out", out, "CSV output path")->required();

    std::size_t trials = 100;
    std::uint64_t seed = 0;
    double vtol = kVerifyTol;
    std::string invariant = "radius";
    auto* verify = app.add_subcommand("verify", "Test whether a superoperator preserves w or W on products");
    verify->add_option("input", input, "SuperOpFile (JSON)")->required();
    verify->add_option("--trials", trials, "Random product trials")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "RNG seed")->required();
    verify->add_option("--tol", vtol, "Violation tolerance");
    verify->add_option("--invariant", invariant, "radius | range")->check(CLI::IsMember({"radius", "range"}));

    std::string emit_u;
    auto* classify = app.add_subcommand("classify", "Reconstruct the canonical form of a preserver");
    classify->add_option("input", input, "SuperOpFile (JSON)")->required();
    classify->add_option("--tol", vtol, "Verification tolerance");
    classify->add_option("--seed", seed, "RNG seed")->required();
    classify->add_option("--emit-u", emit_u, "Write the recovered U as a MatrixFile");

    std::size_t m = 3, n = 3;
    auto* repro = app.add_subcommand("repro-example1", "Reproduce the nilpotent counterexample values");
    repro->add_option("--m", m, "First factor dimension (>= 3)");
    repro->add_option("--n", n, "Second factor dimension (>= 3)");

    std::string kind, dims_text;
    std::vector<std::size_t> factors;
    double scale = 1.0;
    auto* make = app.add_subcommand("make-superop", "Write a SuperOpFile for a standard map");
    make->add_option("--kind", kind, "identity | transpose | partial-transpose | scaled | canonical")
        ->required()
        ->check(CLI::IsMember({"identity", "transpose", "partial-transpose", "scaled", "canonical"}));
    make->add_option("--dims", dims_text, "Factor dimensions, e.g. 3,3")->required();
    make->add_option("--factors", factors, "1-based factors to transpose (partial-transpose)")->delimiter(',');
    make->add_option("--scale", scale, "Multiplier (scaled)");
    make->add_option("--seed", seed, "RNG seed (canonical)");
    make->add_option("--out", out, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    try {
        if (*radius) return cmd_radius(input, tol);
        if (*boundary) return cmd_boundary(input, count, out);
        if (*verify) return cmd_verify(input, trials, seed, vtol, invariant);
        if (*classify) return cmd_classify(input, vtol, seed, emit_u);
        if (*repro) return cmd_repro_example1(m, n);
        if (*make) {
            if (kind == "canonical" && make->count("--seed") == 0) throw ParseError("canonical requires --seed");
            return cmd_make_superop(kind, dims_text, factors, scale, seed, out);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomain;
    }
    return kParse;
}
