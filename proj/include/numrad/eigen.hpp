#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "numrad/error.hpp"
#include "numrad/matrix.hpp"

namespace numrad {

/// Spectral decomposition of a Hermitian matrix: values ascending, vectors as columns.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

struct EigenPair {
    double value = 0.0;
    Vector vector;
};

namespace detail {

/*
 * Householder reduction of a Hermitian matrix to real symmetric tridiagonal
 * form T = (QS)* H (QS), followed by implicit QL with Wilkinson-type shifts.
 * `a` is overwritten. When `q` is non-null it receives QS, the basis in which
 * the tridiagonal eigenvectors must be expressed.
 */
inline void tridiagonalize(ComplexMatrix& a, std::vector<double>& diag, std::vector<double>& off, ComplexMatrix* q) {
    const std::size_t n = a.rows();
    diag.assign(n, 0.0);
    off.assign(n, 0.0);
    std::vector<cplx> sub(n, cplx{});
    if (q) *q = identity(n);

    std::vector<cplx> v(n), p(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        // Work with x / max|x_i| so tiny columns neither underflow nor overflow.
        double scale = 0.0;
        for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(a(k + 1 + i, k)));
        if (scale == 0.0) {
            sub[k] = 0.0;
            continue;
        }
        double xnorm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = a(k + 1 + i, k) / scale;
            xnorm2 += std::norm(v[i]);
        }
        const double xnorm = std::sqrt(xnorm2);
        const double ax0 = std::abs(v[0]);
        const cplx phase = ax0 > 0.0 ? v[0] / ax0 : cplx{1.0};
        v[0] += phase * xnorm;
        const cplx alpha = -phase * xnorm * scale;
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) vnorm2 += std::norm(v[i]);
        const double beta = 2.0 / vnorm2;

        // Trailing block update S <- S - v q* - q v* with q = p - K v, p = beta S v.
        double kk = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            cplx s{};
            for (std::size_t j = 0; j < m; ++j) s += a(k + 1 + i, k + 1 + j) * v[j];
            p[i] = beta * s;
        }
        for (std::size_t i = 0; i < m; ++i) kk += (std::conj(v[i]) * p[i]).real();
        kk *= 0.5 * beta;
        for (std::size_t i = 0; i < m; ++i) p[i] -= kk * v[i];
        for (std::size_t i = 0; i < m; ++i) {
            const cplx vi = v[i];
            const cplx qi = p[i];
            for (std::size_t j = 0; j < m; ++j) {
                a(k + 1 + i, k + 1 + j) -= vi * std::conj(p[j]) + qi * std::conj(v[j]);
            }
        }
        sub[k] = alpha;

        if (q) {
            // Q <- Q (I - beta v v*), acting on columns k+1..n-1.
            for (std::size_t r = 0; r < n; ++r) {
                cplx s{};
                for (std::size_t j = 0; j < m; ++j) s += (*q)(r, k + 1 + j) * v[j];
                s *= beta;
                for (std::size_t j = 0; j < m; ++j) (*q)(r, k + 1 + j) -= s * std::conj(v[j]);
            }
        }
    }
    if (n >= 2) sub[n - 2] = a(n - 1, n - 2);
    for (std::size_t k = 0; k < n; ++k) diag[k] = a(k, k).real();

    // Diagonal phase similarity making the subdiagonal real nonnegative.
    cplx s = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double mag = std::abs(sub[k]);
        off[k] = mag;
        if (mag > 0.0) s *= sub[k] / mag;
        if (q) {
            for (std::size_t r = 0; r < n; ++r) (*q)(r, k + 1) *= s;
        }
    }
}

/// Implicit QL on a symmetric tridiagonal (diag, off[k] = T(k+1,k)). Optional real eigenvector basis z (n x n, row-major).
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e[n - 1] = 0.0;
    constexpr int kMaxIter = 60;
    // Couplings below eps * ||T|| are dropped; this perturbs eigenvalues by at most that much.
    double tnorm = 0.0;
    for (int k = 0; k < n; ++k) tnorm = std::max(tnorm, std::abs(d[k]) + std::abs(e[k]) + (k ? std::abs(e[k - 1]) : 0.0));
    const double floor = std::numeric_limits<double>::epsilon() * tnorm;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) + dd == dd || std::abs(e[m]) <= floor) break;
            }
            if (m != l) {
                if (iter++ == kMaxIter) throw DomainError("hermitian_eigen: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        auto& zz = *z;
                        for (int k = 0; k < n; ++k) {
                            f = zz[k * n + i + 1];
                            zz[k * n + i + 1] = s * zz[k * n + i] + c * f;
                            zz[k * n + i] = c * zz[k * n + i] - s * f;
                        }
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

inline void require_hermitian(const ComplexMatrix& h, const char* what) {
    if (!h.is_square()) throw DimensionError(std::string(what) + ": non-square input");
    if (hermitian_deviation(h) > 1e-10 * (1.0 + h.frobenius_norm())) {
        throw DomainError(std::string(what) + ": input is not Hermitian");
    }
}

/// Ascending eigenvalues; the caller guarantees h is Hermitian.
inline std::vector<double> eigenvalues_unchecked(ComplexMatrix h) {
    std::vector<double> d, e;
    tridiagonalize(h, d, e, nullptr);
    tridiagonal_ql(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

inline HermitianEigen eigen_unchecked(ComplexMatrix h) {
    const std::size_t n = h.rows();
    std::vector<double> d, e;
    ComplexMatrix qs;
    tridiagonalize(h, d, e, &qs);
    std::vector<double> z(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) z[k * n + k] = 1.0;
    tridiagonal_ql(d, e, &z);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

    HermitianEigen out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t src = order[c];
        out.values[c] = d[src];
        for (std::size_t r = 0; r < n; ++r) {
            cplx s{};
            for (std::size_t k = 0; k < n; ++k) s += qs(r, k) * z[k * n + src];
            out.vectors(r, c) = s;
        }
    }
    return out;
}

/*
 * Picks a canonical unit vector from the span of the columns `first..last`
 * of an orthonormal set: the vector of that subspace whose first non-negligible
 * coordinate is as large as possible, made real positive. The choice depends
 * only on the subspace, not on the basis the solver happened to return.
 */
inline Vector canonical_subspace_vector(const ComplexMatrix& vecs, std::size_t first, std::size_t last) {
    const std::size_t n = vecs.rows();
    std::size_t row = 0;
    double weight = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double w = 0.0;
        for (std::size_t c = first; c <= last; ++c) w += std::norm(vecs(r, c));
        if (w > 1e-10) {
            row = r;
            weight = w;
            break;
        }
    }
    Vector v(n);
    if (weight == 0.0) {
        // Only reachable for a vanishing subspace; fall back to the column itself.
        v = vecs.col(last);
        normalize_phase(v);
        return v;
    }
    for (std::size_t c = first; c <= last; ++c) {
        const cplx w = std::conj(vecs(row, c));
        for (std::size_t r = 0; r < n; ++r) v[r] += vecs(r, c) * w;
    }
    const double nv = norm2(v);
    for (cplx& z : v) z /= nv;
    v[row] = std::abs(v[row]);
    return v;
}

inline EigenPair top_eigenpair_unchecked(const ComplexMatrix& h) {
    const HermitianEigen eig = eigen_unchecked(h);
    const std::size_t n = eig.values.size();
    const double top = eig.values[n - 1];
    const double cluster_tol = 1e-9 * (1.0 + h.frobenius_norm());
    std::size_t first = n - 1;
    while (first > 0 && top - eig.values[first - 1] <= cluster_tol) --first;
    return {top, canonical_subspace_vector(eig.vectors, first, n - 1)};
}

} // namespace detail

/// Full eigendecomposition of a Hermitian matrix. Throws DomainError when ||H - H*||_F is not negligible.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
    detail::require_hermitian(h, "hermitian_eigen");
    if (h.rows() == 0) return {};
    return detail::eigen_unchecked(h);
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    detail::require_hermitian(h, "hermitian_eigenvalues");
    return detail::eigenvalues_unchecked(h);
}

/**
 * Largest eigenvalue with a deterministic eigenvector.
 *
 * If the top eigenvalue is (numerically) repeated, the returned vector is the
 * member of its eigenspace with the largest first nonzero coordinate, phase
 * normalized so that coordinate is real positive.
 */
inline EigenPair top_eigenpair(const ComplexMatrix& h) {
    detail::require_hermitian(h, "top_eigenpair");
    if (h.rows() == 0) throw DimensionError("top_eigenpair: empty matrix");
    return detail::top_eigenpair_unchecked(h);
}

} // namespace numrad
