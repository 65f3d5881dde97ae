#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "numrad/error.hpp"
#include "numrad/matrix.hpp"
#include "numrad/numrange.hpp"
#include "numrad/preservers.hpp"
#include "numrad/unitary.hpp"

namespace numrad {

inline constexpr double kVerifyTol = 1e-7;
inline constexpr double kResidualGate = 1e-6;
inline constexpr std::size_t kClassifyTrials = 20;
inline constexpr std::size_t kResidualSamples = 100;
inline constexpr std::size_t kRangeAngles = 72;
inline constexpr std::size_t kMaxClassifyDim = 16;

/**
 * Outcome of a preservation test.
 *
 * For the radius invariant w_input/w_output are w(P) and w(phi(P)). For the
 * range invariant they are the support function values of P and phi(P) at
 * `angle`, the first direction where the two differ by more than tol.
 */
struct Verdict {
    enum class Status { Preserving, Violated };

    Status status = Status::Preserving;
    std::vector<ComplexMatrix> witness;
    double w_input = 0.0;
    double w_output = 0.0;
    std::optional<double> angle;
    std::string sample_kind;

    [[nodiscard]] bool preserving() const noexcept { return status == Status::Preserving; }
    [[nodiscard]] double gap() const noexcept { return std::abs(w_input - w_output); }
};

struct ReconstructionFailure {
    std::string stage;
    double diagnostic = 0.0;
};

/// Radius-attaining vectors u_idx of B_idx = phi(E_{i1 i1} (x) ... (x) E_{im im}), in global index order.
struct AttainingBasis {
    std::vector<Vector> vectors;
    std::vector<cplx> phases;
    double gram_deviation = 0.0;
    /// max ||B_other u_idx||_2 over other != idx.
    double annihilation_residual = 0.0;
};

struct ClassificationResult {
    std::variant<CanonicalPreserver, Verdict, ReconstructionFailure> outcome;
    double residual = 0.0;

    [[nodiscard]] bool classified() const noexcept { return std::holds_alternative<CanonicalPreserver>(outcome); }
    [[nodiscard]] bool not_preserving() const noexcept { return std::holds_alternative<Verdict>(outcome); }
    [[nodiscard]] bool failed() const noexcept { return std::holds_alternative<ReconstructionFailure>(outcome); }
    [[nodiscard]] const CanonicalPreserver& preserver() const { return std::get<CanonicalPreserver>(outcome); }
    [[nodiscard]] const Verdict& verdict() const { return std::get<Verdict>(outcome); }
    [[nodiscard]] const ReconstructionFailure& failure() const { return std::get<ReconstructionFailure>(outcome); }
};

/// The 3x3 nilpotent X = [[0,2,0],[0,0,1],[0,0,0]] padded to A = X (+) 0_{m-3}, B = X (+) 0_{n-3}.
inline std::pair<ComplexMatrix, ComplexMatrix> example1_witness(std::size_t m, std::size_t n) {
    if (m < 3 || n < 3) throw DomainError("example1_witness: both dimensions must be >= 3");
    const ComplexMatrix x{{0, 2, 0}, {0, 0, 1}, {0, 0, 0}};
    auto pad = [&](std::size_t d) { return d == 3 ? x : direct_sum(x, ComplexMatrix(d - 3, d - 3)); };
    return {pad(m), pad(n)};
}

namespace detail {

struct ProductSample {
    std::vector<ComplexMatrix> factors;
    const char* kind;
};

/*
 * Fixed sample order: the nilpotent witness on each factor pair with both
 * dimensions >= 3 (E_11 in the remaining factors), every product of diagonal
 * matrix units, then `trials` Ginibre products and `hermitian` products of
 * random Hermitian factors.
 */
inline std::vector<ProductSample> product_samples(const TensorDims& dims, std::size_t trials, std::size_t hermitian,
                                                  std::uint64_t seed) {
    std::vector<ProductSample> out;
    const std::size_t m = dims.factors();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (dims[i] < 3 || dims[j] < 3) continue;
            const auto [a, b] = example1_witness(dims[i], dims[j]);
            ProductSample s{{}, "example1"};
            for (std::size_t k = 0; k < m; ++k) {
                s.factors.push_back(k == i ? a : k == j ? b : matrix_unit(dims[k], 0, 0));
            }
            out.push_back(std::move(s));
        }
    for (std::size_t g = 0; g < dims.total(); ++g) {
        const auto idx = dims.multi_index(g);
        ProductSample s{{}, "matrix-unit"};
        for (std::size_t k = 0; k < m; ++k) s.factors.push_back(matrix_unit(dims[k], idx[k], idx[k]));
        out.push_back(std::move(s));
    }
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        ProductSample s{{}, "random"};
        for (std::size_t k = 0; k < m; ++k) s.factors.push_back(ginibre(dims[k], dims[k], rng));
        out.push_back(std::move(s));
    }
    for (std::size_t t = 0; t < hermitian; ++t) {
        ProductSample s{{}, "hermitian"};
        for (std::size_t k = 0; k < m; ++k) s.factors.push_back(random_hermitian(dims[k], rng));
        out.push_back(std::move(s));
    }
    return out;
}

inline void require_matching(const SuperOperator& phi, const TensorDims& dims, const char* what) {
    if (phi.dim() != dims.total()) {
        throw DimensionError(std::string(what) + ": superoperator acts on M_" + std::to_string(phi.dim()) +
                             " but dims " + to_string(dims) + " give N = " + std::to_string(dims.total()));
    }
}

inline ReconstructionFailure fail(std::string stage, double diagnostic) { return {std::move(stage), diagnostic}; }

} // namespace detail

/// Checks w(phi(P)) = w(P) on the deterministic witness, the diagonal matrix units and `trials` random products.
inline Verdict verify_radius_preservation(const SuperOperator& phi, const TensorDims& dims, std::size_t trials,
                                          double tol, std::uint64_t seed) {
    detail::require_matching(phi, dims, "verify_radius_preservation");
    if (trials == 0) throw DomainError("verify_radius_preservation: trials must be >= 1");
    for (auto& sample : detail::product_samples(dims, trials, 0, seed)) {
        const ComplexMatrix p = kron_all(sample.factors);
        const double w_in = numerical_radius(p).radius;
        const double w_out = numerical_radius(apply(phi, p)).radius;
        if (std::abs(w_in - w_out) > tol) {
            Verdict v;
            v.status = Verdict::Status::Violated;
            v.witness = std::move(sample.factors);
            v.w_input = w_in;
            v.w_output = w_out;
            v.sample_kind = sample.kind;
            return v;
        }
    }
    return {};
}

/// Compares support functions of P and phi(P) at 72 angles on the same samples plus Hermitian products.
inline Verdict verify_range_preservation(const SuperOperator& phi, const TensorDims& dims, std::size_t trials,
                                         double tol, std::uint64_t seed) {
    detail::require_matching(phi, dims, "verify_range_preservation");
    if (trials == 0) throw DomainError("verify_range_preservation: trials must be >= 1");
    const std::size_t hermitian = (trials + 1) / 2;
    constexpr std::size_t half = kRangeAngles / 2;
    for (auto& sample : detail::product_samples(dims, trials, hermitian, seed)) {
        const ComplexMatrix p = kron_all(sample.factors);
        const detail::CartesianParts in(p);
        const detail::CartesianParts out(apply(phi, p));
        for (std::size_t j = 0; j < half; ++j) {
            const double theta = detail::kTwoPi * static_cast<double>(j) / kRangeAngles;
            const auto [in_fwd, in_back] = in.support_pair(theta);
            const auto [out_fwd, out_back] = out.support_pair(theta);
            const bool fwd_bad = std::abs(in_fwd - out_fwd) > tol;
            if (fwd_bad || std::abs(in_back - out_back) > tol) {
                Verdict v;
                v.status = Verdict::Status::Violated;
                v.witness = std::move(sample.factors);
                v.w_input = fwd_bad ? in_fwd : in_back;
                v.w_output = fwd_bad ? out_fwd : out_back;
                v.angle = fwd_bad ? theta : theta + std::numbers::pi;
                v.sample_kind = sample.kind;
                return v;
            }
        }
    }
    return {};
}

/**
 * Radius-attaining vectors of the images of the diagonal matrix units.
 *
 * For a preserver each B_idx has w = 1, the attaining vectors are orthonormal
 * and B_other annihilates u_idx. A radius off by more than tol fails with stage
 * "radius"; a Gram matrix or annihilation defect above sqrt(tol) fails with
 * stage "gram".
 */
inline std::variant<AttainingBasis, ReconstructionFailure> attaining_basis(const SuperOperator& phi,
                                                                          const TensorDims& dims, double tol) {
    detail::require_matching(phi, dims, "attaining_basis");
    const std::size_t n = dims.total();
    std::vector<ComplexMatrix> images;
    images.reserve(n);
    AttainingBasis basis;
    for (std::size_t g = 0; g < n; ++g) {
        images.push_back(phi.image_of_unit(g, g));
        RadiusResult r = numerical_radius(images.back());
        if (std::abs(r.radius - 1.0) > tol) return detail::fail("radius", std::abs(r.radius - 1.0));
        const cplx xi = quadratic_form(images.back(), r.attaining_vector);
        if (std::abs(std::abs(xi) - 1.0) > tol) return detail::fail("radius", std::abs(std::abs(xi) - 1.0));
        basis.vectors.push_back(std::move(r.attaining_vector));
        basis.phases.push_back(xi);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double dev = std::abs(inner(basis.vectors[i], basis.vectors[j]) - (i == j ? 1.0 : 0.0));
            basis.gram_deviation = std::max(basis.gram_deviation, dev);
            if (i != j) {
                basis.annihilation_residual = std::max(basis.annihilation_residual, norm2(matvec(images[j], basis.vectors[i])));
            }
        }
    const double gram_tol = std::sqrt(tol);
    if (basis.gram_deviation > gram_tol) return detail::fail("gram", basis.gram_deviation);
    if (basis.annihilation_residual > gram_tol) return detail::fail("gram", basis.annihilation_residual);
    return basis;
}

/**
 * Reconstructs phi(P) = xi U (phi_1(A_1) (x) ... (x) phi_m(A_m)) U* on products.
 *
 * 1. radius verification (kClassifyTrials random products)
 * 2. attaining vectors of phi(E_idx,idx), assembled column-wise into U
 * 3. psi = U* phi(.) U must send I to xi I
 * 4. factor types from psi(E_12 in factor k, E_11 elsewhere)
 * 5. residual diagonal phases of U from psi(J), J the all-ones matrix
 * 6. residual over kResidualSamples random products, gated at 1e-6
 */
inline ClassificationResult classify_preserver(const SuperOperator& phi, const TensorDims& dims, double tol,
                                               std::uint64_t seed) {
    detail::require_matching(phi, dims, "classify_preserver");
    const std::size_t n = dims.total();
    if (n > kMaxClassifyDim) throw DomainError("classify_preserver: N = " + std::to_string(n) + " exceeds 16");

    Verdict verdict = verify_radius_preservation(phi, dims, kClassifyTrials, tol, seed);
    if (!verdict.preserving()) return {std::move(verdict), 0.0};

    auto basis_or = attaining_basis(phi, dims, tol);
    if (auto* f = std::get_if<ReconstructionFailure>(&basis_or)) return {*f, 0.0};
    const AttainingBasis& basis = std::get<AttainingBasis>(basis_or);

    ComplexMatrix u(n, n);
    for (std::size_t g = 0; g < n; ++g) u.set_col(g, basis.vectors[g]);
    u = detail::gram_schmidt_qr(std::move(u)).first;
    for (std::size_t g = 0; g < n; ++g) {
        Vector c = u.col(g);
        normalize_phase(c);
        u.set_col(g, c);
    }
    const ComplexMatrix u_adj = u.adjoint();
    auto psi = [&](const ComplexMatrix& x) { return matmul(matmul(u_adj, apply(phi, x)), u); };

    const double loose = std::sqrt(tol);
    const ComplexMatrix psi_id = psi(identity(n));
    cplx xi = psi_id.trace() / static_cast<double>(n);
    const double phase_dev = std::max(distance(psi_id, identity(n) * xi), std::abs(std::abs(xi) - 1.0));
    if (phase_dev > loose) return {detail::fail("phase", phase_dev), 0.0};
    xi /= std::abs(xi);

    std::vector<FactorType> types;
    for (std::size_t k = 0; k < dims.factors(); ++k) {
        std::vector<std::size_t> digits(dims.factors(), 0);
        digits[k] = 1;
        const std::size_t b = dims.global_index(digits);
        const ComplexMatrix probe = psi(matrix_unit(n, 0, b)) * std::conj(xi);
        const double total = probe.frobenius_norm();
        const double as_identity = std::abs(probe(0, b));
        const double as_transpose = std::abs(probe(b, 0));
        const double best = std::max(as_identity, as_transpose);
        const double dev = std::max(std::abs(best - 1.0), std::sqrt(std::max(0.0, total * total - best * best)));
        if (dev > loose) return {detail::fail("type-probe", dev), 0.0};
        types.push_back(as_identity >= as_transpose ? FactorType::Identity : FactorType::Transpose);
    }
    std::optional<FactorType> big_type;
    for (std::size_t k = 0; k < dims.factors(); ++k) {
        if (dims[k] < 3) continue;
        if (big_type && *big_type != types[k]) return {detail::fail("type-consistency", 1.0), 0.0};
        big_type = types[k];
    }

    // psi(J) = xi D* J D for the residual diagonal phases D; U D* absorbs them.
    ComplexMatrix ones(n, n);
    for (cplx& z : ones.entries()) z = 1.0;
    const ComplexMatrix twisted = psi(ones) * std::conj(xi);
    double twist_dev = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        const cplx d = twisted(0, c);
        const double mag = std::abs(d);
        twist_dev = std::max(twist_dev, std::abs(mag - 1.0));
        if (mag == 0.0) return {detail::fail("phase", 1.0), 0.0};
        const cplx correction = std::conj(d) / mag;
        for (std::size_t r = 0; r < n; ++r) u(r, c) *= correction;
    }
    if (twist_dev > loose) return {detail::fail("phase", twist_dev), 0.0};

    CanonicalPreserver result{dims, xi, std::move(u), std::move(types)};
    double residual = 0.0;
    Rng rng(seed ^ 0x9e37'79b9'7f4a'7c15ULL);
    for (std::size_t t = 0; t < kResidualSamples; ++t) {
        std::vector<ComplexMatrix> factors;
        for (std::size_t k = 0; k < dims.factors(); ++k) factors.push_back(ginibre(dims[k], dims[k], rng));
        const ComplexMatrix p = kron_all(factors);
        residual = std::max(residual, distance(apply(phi, p), apply_canonical(result, p)));
    }
    if (!(residual <= kResidualGate)) return {detail::fail("residual", residual), residual};
    return {std::move(result), residual};
}

} // namespace numrad
