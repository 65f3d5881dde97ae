#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "numrad/error.hpp"
#include "numrad/matrix.hpp"
#include "numrad/unitary.hpp"

namespace numrad {

/// Factor dimensions (n_1, ..., n_m) of M_{n_1} (x) ... (x) M_{n_m}; factor 0 is the slowest-varying index.
class TensorDims {
public:
    TensorDims() = default;

    explicit TensorDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
        if (dims_.empty()) throw DomainError("TensorDims: need at least one factor");
        total_ = 1;
        for (std::size_t n : dims_) {
            if (n < 2) throw DomainError("TensorDims: every factor dimension must be >= 2");
            total_ *= n;
        }
    }

    TensorDims(std::initializer_list<std::size_t> dims) : TensorDims(std::vector<std::size_t>(dims)) {}

    [[nodiscard]] std::size_t factors() const noexcept { return dims_.size(); }
    [[nodiscard]] std::size_t total() const noexcept { return total_; }
    [[nodiscard]] std::size_t operator[](std::size_t k) const { return dims_.at(k); }
    [[nodiscard]] const std::vector<std::size_t>& dims() const noexcept { return dims_; }

    /// Digits of a global index, factor 0 first.
    [[nodiscard]] std::vector<std::size_t> multi_index(std::size_t global) const {
        std::vector<std::size_t> idx(dims_.size());
        for (std::size_t k = dims_.size(); k-- > 0;) {
            idx[k] = global % dims_[k];
            global /= dims_[k];
        }
        return idx;
    }

    [[nodiscard]] std::size_t global_index(std::span<const std::size_t> idx) const {
        if (idx.size() != dims_.size()) throw DimensionError("TensorDims::global_index: wrong arity");
        std::size_t g = 0;
        for (std::size_t k = 0; k < dims_.size(); ++k) {
            if (idx[k] >= dims_[k]) throw DimensionError("TensorDims::global_index: digit out of range");
            g = g * dims_[k] + idx[k];
        }
        return g;
    }

    /// Exchanges the row and column digits of (row, col) on every factor with mask[k] set.
    [[nodiscard]] std::pair<std::size_t, std::size_t> swap_digits(std::size_t row, std::size_t col,
                                                                  const std::vector<bool>& mask) const {
        std::size_t r_out = 0, c_out = 0, stride = 1;
        for (std::size_t k = dims_.size(); k-- > 0;) {
            const std::size_t n = dims_[k];
            std::size_t rd = row % n, cd = col % n;
            row /= n;
            col /= n;
            if (mask[k]) std::swap(rd, cd);
            r_out += rd * stride;
            c_out += cd * stride;
            stride *= n;
        }
        return {r_out, c_out};
    }

    friend bool operator==(const TensorDims&, const TensorDims&) = default;

private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 0;
};

inline std::string to_string(const TensorDims& d) {
    std::string s = "(";
    for (std::size_t k = 0; k < d.factors(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
    return s + ")";
}

/// Stacks columns: vec(X)[c * N + r] = X(r, c).
inline Vector vec(const ComplexMatrix& x) {
    Vector v(x.size());
    for (std::size_t c = 0; c < x.cols(); ++c)
        for (std::size_t r = 0; r < x.rows(); ++r) v[c * x.rows() + r] = x(r, c);
    return v;
}

inline ComplexMatrix unvec(std::span<const cplx> v, std::size_t n) {
    if (v.size() != n * n) throw DimensionError("unvec: length is not n^2");
    ComplexMatrix x(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) x(r, c) = v[c * n + r];
    return x;
}

/// Linear map M_N -> M_N as an N^2 x N^2 matrix acting on column-major vectorizations.
class SuperOperator {
public:
    SuperOperator() = default;

    SuperOperator(std::size_t dim, ComplexMatrix matrix) : dim_(dim), matrix_(std::move(matrix)) {
        if (matrix_.rows() != dim_ * dim_ || matrix_.cols() != dim_ * dim_) {
            throw DimensionError("SuperOperator: matrix must be N^2 x N^2 for N = " + std::to_string(dim_));
        }
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return matrix_; }

    /// Image of the matrix unit E_{row,col}: column (col * N + row) of the matrix, unvectorized.
    [[nodiscard]] ComplexMatrix image_of_unit(std::size_t row, std::size_t col) const {
        if (row >= dim_ || col >= dim_) throw DimensionError("image_of_unit: index out of range");
        return unvec(matrix_.col(col * dim_ + row), dim_);
    }

private:
    std::size_t dim_ = 0;
    ComplexMatrix matrix_;
};

inline ComplexMatrix apply(const SuperOperator& phi, const ComplexMatrix& x) {
    if (x.rows() != phi.dim() || x.cols() != phi.dim()) {
        throw DimensionError("apply: input must be " + std::to_string(phi.dim()) + "x" + std::to_string(phi.dim()));
    }
    return unvec(matvec(phi.matrix(), vec(x)), phi.dim());
}

/// Composition (outer after inner).
inline SuperOperator compose(const SuperOperator& outer, const SuperOperator& inner) {
    if (outer.dim() != inner.dim()) throw DimensionError("compose: dimension mismatch");
    return {outer.dim(), matmul(outer.matrix(), inner.matrix())};
}

/**
 * Tabulates a linear function on M_N. Column k of the result is vec(f(E)) for
 * the matrix unit E with vec(E) = e_k. Linearity is spot-checked on three
 * random pairs; a failing check throws DomainError.
 */
template <typename F>
    requires std::invocable<F, const ComplexMatrix&>
SuperOperator superop_from_function(const TensorDims& dims, F&& f) {
    const std::size_t n = dims.total();
    ComplexMatrix m(n * n, n * n);
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = 0; row < n; ++row) {
            const ComplexMatrix img = f(matrix_unit(n, row, col));
            if (img.rows() != n || img.cols() != n) throw DimensionError("superop_from_function: f returned wrong shape");
            m.set_col(col * n + row, vec(img));
        }

    Rng rng(0x5eed'11ea'b1e5ULL);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 3; ++trial) {
        const ComplexMatrix x = ginibre(n, n, rng);
        const ComplexMatrix y = ginibre(n, n, rng);
        const cplx a(normal(rng), normal(rng));
        const cplx b(normal(rng), normal(rng));
        const ComplexMatrix lhs = f(a * x + b * y);
        const ComplexMatrix rhs = a * f(x) + b * f(y);
        if (lhs.rows() != n || lhs.cols() != n) throw DimensionError("superop_from_function: f returned wrong shape");
        if (distance(lhs, rhs) > 1e-10 * (1.0 + lhs.frobenius_norm() + rhs.frobenius_norm())) {
            throw DomainError("superop_from_function: f failed the linearity check");
        }
    }
    return {n, std::move(m)};
}

inline SuperOperator identity_superop(std::size_t n) { return {n, identity(n * n)}; }

enum class FactorType { Identity, Transpose };

inline const char* to_string(FactorType t) { return t == FactorType::Identity ? "identity" : "transpose"; }

/// X -> xi U T(X) U*, where T transposes the factors marked Transpose.
struct CanonicalPreserver {
    TensorDims dims;
    cplx xi{1.0};
    ComplexMatrix unitary;
    std::vector<FactorType> factor_types;

    void validate() const {
        const std::size_t n = dims.total();
        if (factor_types.size() != dims.factors()) throw DomainError("CanonicalPreserver: one type per factor required");
        if (unitary.rows() != n || unitary.cols() != n) throw DimensionError("CanonicalPreserver: U must be N x N");
        if (std::abs(std::abs(xi) - 1.0) > 1e-12) throw DomainError("CanonicalPreserver: |xi| must be 1");
        if (unitarity_deviation(unitary) > 1e-9) throw DomainError("CanonicalPreserver: U is not unitary");
    }

    [[nodiscard]] std::vector<bool> transpose_mask() const {
        std::vector<bool> mask(factor_types.size());
        for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = factor_types[k] == FactorType::Transpose;
        return mask;
    }
};

/// Transposes the tensor factors with mask[k] set; a full mask gives the ordinary transpose.
inline ComplexMatrix partial_transpose(const ComplexMatrix& x, const TensorDims& dims, const std::vector<bool>& mask) {
    const std::size_t n = dims.total();
    if (x.rows() != n || x.cols() != n) throw DimensionError("partial_transpose: matrix does not match dims");
    if (mask.size() != dims.factors()) throw DimensionError("partial_transpose: mask arity mismatch");
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const auto [r2, c2] = dims.swap_digits(r, c, mask);
            out(r2, c2) = x(r, c);
        }
    return out;
}

/// Direct evaluation xi U T(X) U*; agrees with apply(canonical_to_superop(p), X).
inline ComplexMatrix apply_canonical(const CanonicalPreserver& p, const ComplexMatrix& x) {
    const ComplexMatrix t = partial_transpose(x, p.dims, p.transpose_mask());
    return matmul(matmul(p.unitary, t), p.unitary.adjoint()) * p.xi;
}

inline SuperOperator canonical_to_superop(const CanonicalPreserver& p) {
    p.validate();
    const std::size_t n = p.dims.total();
    const std::vector<bool> mask = p.transpose_mask();
    const ComplexMatrix& u = p.unitary;
    ComplexMatrix m(n * n, n * n);
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = 0; row < n; ++row) {
            // E_{row,col} -> E_{r,c} -> xi u_r u_c*
            const auto [r, c] = p.dims.swap_digits(row, col, mask);
            const std::size_t k = col * n + row;
            for (std::size_t j = 0; j < n; ++j) {
                const cplx right = p.xi * std::conj(u(j, c));
                for (std::size_t i = 0; i < n; ++i) m(j * n + i, k) = u(i, r) * right;
            }
        }
    return {n, std::move(m)};
}

/// Transposition on the listed (zero-based) factors only.
inline SuperOperator partial_transpose_superop(const TensorDims& dims, const std::vector<std::size_t>& subset) {
    if (subset.empty()) throw DomainError("partial_transpose_superop: empty factor subset");
    std::vector<bool> mask(dims.factors(), false);
    for (std::size_t k : subset) {
        if (k >= dims.factors()) throw DimensionError("partial_transpose_superop: factor index out of range");
        mask[k] = true;
    }
    const std::size_t n = dims.total();
    ComplexMatrix m(n * n, n * n);
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = 0; row < n; ++row) {
            const auto [r, c] = dims.swap_digits(row, col, mask);
            m(c * n + r, col * n + row) = 1.0;
        }
    return {n, std::move(m)};
}

inline SuperOperator transpose_superop(const TensorDims& dims) {
    std::vector<std::size_t> all(dims.factors());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return partial_transpose_superop(dims, all);
}

/**
 * Seeded canonical preserver with Haar U and uniform xi. Types are drawn per
 * factor, except that all factors of dimension >= 3 share one type so the
 * result is a genuine preserver.
 */
inline CanonicalPreserver random_canonical(const TensorDims& dims, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::bernoulli_distribution coin(0.5);
    CanonicalPreserver p;
    p.dims = dims;
    p.xi = std::polar(1.0, angle(rng));
    p.unitary = random_unitary(dims.total(), rng);
    const FactorType big = coin(rng) ? FactorType::Transpose : FactorType::Identity;
    for (std::size_t k = 0; k < dims.factors(); ++k) {
        const FactorType small = coin(rng) ? FactorType::Transpose : FactorType::Identity;
        p.factor_types.push_back(dims[k] >= 3 ? big : small);
    }
    return p;
}

} // namespace numrad
