#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "numrad/error.hpp"

namespace numrad {

using cplx = std::complex<double>;
using Vector = std::vector<cplx>;

inline constexpr cplx kI{0.0, 1.0};

/**
 * Dense complex matrix stored row-major.
 *
 * Construction from explicit entries rejects NaN/Inf. Element access is
 * unchecked in release builds; use at() when indices come from outside.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    /// rows x cols zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionError("ComplexMatrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                                 std::to_string(data_.size()));
        }
        for (const cplx& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw DomainError("ComplexMatrix: non-finite entry");
            }
        }
    }

    /// Row-by-row literal, e.g. {{0, 2, 0}, {0, 0, 1}, {0, 0, 0}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        std::vector<cplx> entries;
        entries.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw DimensionError("ComplexMatrix: ragged initializer");
            }
            entries.insert(entries.end(), row.begin(), row.end());
        }
        *this = ComplexMatrix(rows_, cols_, std::move(entries));
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    const cplx& at(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) {
            throw DimensionError("ComplexMatrix::at: index out of range");
        }
        return (*this)(r, c);
    }

    [[nodiscard]] std::span<const cplx> entries() const noexcept { return data_; }
    [[nodiscard]] std::span<cplx> entries() noexcept { return data_; }

    [[nodiscard]] Vector col(std::size_t c) const {
        Vector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    void set_col(std::size_t c, std::span<const cplx> v) {
        if (v.size() != rows_) throw DimensionError("set_col: length mismatch");
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
    }

    [[nodiscard]] ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    [[nodiscard]] ComplexMatrix transpose() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    [[nodiscard]] ComplexMatrix conjugate() const {
        ComplexMatrix out = *this;
        for (cplx& z : out.data_) z = std::conj(z);
        return out;
    }

    [[nodiscard]] cplx trace() const {
        cplx t{};
        for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) t += (*this)(k, k);
        return t;
    }

    [[nodiscard]] double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o, "operator+=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o, "operator-=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    ComplexMatrix& operator*=(cplx s) noexcept {
        for (cplx& z : data_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    void require_same_shape(const ComplexMatrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw DimensionError(std::string(what) + ": shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

inline ComplexMatrix identity(std::size_t n) {
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) out(k, k) = 1.0;
    return out;
}

/// E_ij in M_n, zero-based indices.
inline ComplexMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
    if (i >= n || j >= n) throw DimensionError("matrix_unit: index out of range");
    ComplexMatrix out(n, n);
    out(i, j) = 1.0;
    return out;
}

inline ComplexMatrix diagonal(std::span<const cplx> d) {
    ComplexMatrix out(d.size(), d.size());
    for (std::size_t k = 0; k < d.size(); ++k) out(k, k) = d[k];
    return out;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                             std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t br = b.rows();
    const std::size_t bc = b.cols();
    ComplexMatrix out(a.rows() * br, a.cols() * bc);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t p = 0; p < br; ++p)
                for (std::size_t q = 0; q < bc; ++q) out(i * br + p, j * bc + q) = aij * b(p, q);
        }
    return out;
}

/// Left fold of kron over the factors; factor 0 is the slowest-varying index.
inline ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) throw DimensionError("kron_all: no factors");
    ComplexMatrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
    return out;
}

/// Block diagonal a (+) b.
inline ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
    return out;
}

inline Vector matvec(const ComplexMatrix& a, std::span<const cplx> x) {
    if (a.cols() != x.size()) throw DimensionError("matvec: length mismatch");
    Vector y(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        cplx s{};
        for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c) * x[c];
        y[r] = s;
    }
    return y;
}

/// u* v
inline cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.size() != v.size()) throw DimensionError("inner: length mismatch");
    cplx s{};
    for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * v[k];
    return s;
}

inline double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

/// x* A x
inline cplx quadratic_form(const ComplexMatrix& a, std::span<const cplx> x) { return inner(x, matvec(a, x)); }

/// Frobenius distance between two matrices of equal shape.
inline double distance(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).frobenius_norm(); }

/// ||A - A*||_F
inline double hermitian_deviation(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionError("hermitian_deviation: non-square input");
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) s += std::norm(a(r, c) - std::conj(a(c, r)));
    return std::sqrt(s);
}

/// ||U*U - I||_F
inline double unitarity_deviation(const ComplexMatrix& u) {
    if (!u.is_square()) throw DimensionError("unitarity_deviation: non-square input");
    return distance(matmul(u.adjoint(), u), identity(u.rows()));
}

inline Vector basis_vector(std::size_t n, std::size_t k) {
    if (k >= n) throw DimensionError("basis_vector: index out of range");
    Vector e(n);
    e[k] = 1.0;
    return e;
}

/// Rotates v in place so that its largest-magnitude entry (first on ties) is real positive.
inline void normalize_phase(std::span<cplx> v) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double m = std::abs(v[k]);
        if (m > best_mag * (1.0 + 1e-12) + 1e-300) {
            best = k;
            best_mag = m;
        }
    }
    if (best_mag <= 0.0) return;
    const cplx phase = std::conj(v[best]) / best_mag;
    for (cplx& z : v) z *= phase;
    v[best] = best_mag;
}

} // namespace numrad
