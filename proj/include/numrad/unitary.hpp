#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "numrad/error.hpp"
#include "numrad/matrix.hpp"

namespace numrad {

using Rng = std::mt19937_64;

/// Matrix of i.i.d. standard complex Gaussians, E|z|^2 = 1.
inline ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(rows, cols);
    for (cplx& z : g.entries()) z = cplx(normal(rng), normal(rng));
    return g;
}

inline Vector random_unit_vector(std::size_t n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    for (cplx& z : v) z = cplx(normal(rng), normal(rng));
    const double nv = norm2(v);
    for (cplx& z : v) z /= nv;
    return v;
}

/// (G + G*)/2 for a Ginibre G.
inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    const ComplexMatrix g = ginibre(n, n, rng);
    return (g + g.adjoint()) * cplx(0.5);
}

namespace detail {

/// Modified Gram-Schmidt with one reorthogonalization pass. Returns Q and the diagonal of R.
inline std::pair<ComplexMatrix, std::vector<double>> gram_schmidt_qr(ComplexMatrix a) {
    const std::size_t n = a.rows();
    const std::size_t m = a.cols();
    std::vector<double> rdiag(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj{};
                for (std::size_t r = 0; r < n; ++r) proj += std::conj(a(r, k)) * a(r, j);
                for (std::size_t r = 0; r < n; ++r) a(r, j) -= proj * a(r, k);
            }
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < n; ++r) nrm += std::norm(a(r, j));
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw DomainError("gram_schmidt_qr: rank deficient input");
        rdiag[j] = nrm;
        for (std::size_t r = 0; r < n; ++r) a(r, j) /= nrm;
    }
    return {std::move(a), std::move(rdiag)};
}

} // namespace detail

/**
 * Haar-distributed n x n unitary, deterministic per seed.
 *
 * Q factor of a Ginibre matrix with the triangular factor's diagonal taken
 * real positive (Gram-Schmidt produces exactly that normalization).
 */
inline ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DimensionError("random_unitary: n must be >= 1");
    Rng rng(seed);
    return detail::gram_schmidt_qr(ginibre(n, n, rng)).first;
}

inline ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    if (n == 0) throw DimensionError("random_unitary: n must be >= 1");
    return detail::gram_schmidt_qr(ginibre(n, n, rng)).first;
}

/// Unitary whose first column is exactly x (phase-adjusted Householder completion).
inline ComplexMatrix unitary_with_first_column(std::span<const cplx> x) {
    const std::size_t n = x.size();
    if (n == 0) throw DimensionError("unitary_with_first_column: empty vector");
    if (std::abs(norm2(x) - 1.0) > 1e-10) throw DomainError("unitary_with_first_column: vector is not unit length");

    const double ax0 = std::abs(x[0]);
    const cplx phase = ax0 > 0.0 ? x[0] / ax0 : cplx{1.0};

    // y = conj(phase) x has y0 = |x0| >= 0; reflect e1 onto y with v = e1 - y.
    Vector v(n);
    double tail2 = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        v[k] = -std::conj(phase) * x[k];
        tail2 += std::norm(v[k]);
    }
    v[0] = tail2 / (1.0 + ax0);

    ComplexMatrix u = identity(n);
    const double vnorm2 = std::norm(v[0]) + tail2;
    if (vnorm2 > 0.0) {
        const double beta = 2.0 / vnorm2;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) u(r, c) -= beta * v[r] * std::conj(v[c]);
    }
    u *= phase;
    u.set_col(0, x);
    return u;
}

} // namespace numrad
