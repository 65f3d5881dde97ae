#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's eigensolver or radius search.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "numrad/matrix.hpp"

namespace oracle {

using numrad::ComplexMatrix;
using numrad::cplx;

/// Element-wise Kronecker product straight from the block formula.
inline ComplexMatrix naive_kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t p = 0; p < out.rows(); ++p)
        for (std::size_t q = 0; q < out.cols(); ++q)
            out(p, q) = a(p / b.rows(), q / b.cols()) * b(p % b.rows(), q % b.cols());
    return out;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline cplx determinant(ComplexMatrix a) {
    const std::size_t n = a.rows();
    cplx det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
        if (a(piv, k) == cplx{}) return 0.0;
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const cplx f = a(r, k) / a(k, k);
            for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
        }
    }
    return det;
}

/// Characteristic polynomial coefficients c[0..n] (c[n] = 1) by Faddeev-LeVerrier.
inline std::vector<cplx> char_poly(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<cplx> c(n + 1);
    c[n] = 1.0;
    ComplexMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        ComplexMatrix next(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                cplx s{};
                for (std::size_t l = 0; l < n; ++l) s += a(i, l) * m(l, j);
                next(i, j) = s + (i == j ? c[n - k + 1] : cplx{});
            }
        m = next;
        cplx tr{};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr += a(i, l) * m(l, i);
        c[n - k] = -tr / static_cast<double>(k);
    }
    return c;
}

inline cplx poly_eval(const std::vector<cplx>& c, cplx z) {
    cplx acc{};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

/// Roots of a monic polynomial by Durand-Kerner, real parts sorted ascending.
inline std::vector<double> real_roots(const std::vector<cplx>& c) {
    const std::size_t n = c.size() - 1;
    double bound = 0.0;
    for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[k]));
    bound += 1.0;
    std::vector<cplx> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = bound * std::pow(cplx(0.4, 0.9), static_cast<double>(i));
    for (int iter = 0; iter < 2000; ++iter) {
        double move = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx denom = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            const cplx step = poly_eval(c, z[i]) / denom;
            z[i] -= step;
            move = std::max(move, std::abs(step));
        }
        if (move < 1e-15 * bound) break;
    }
    std::vector<double> out;
    for (const cplx& r : z) out.push_back(r.real());
    std::sort(out.begin(), out.end());
    return out;
}

/// Bisection for a root of a real polynomial on [lo, hi] with a sign change.
inline double bisect_root(const std::vector<cplx>& c, double lo, double hi) {
    double flo = poly_eval(c, lo).real();
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = poly_eval(c, mid).real();
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Largest eigenvalue of a Hermitian matrix of size <= 3 in closed form.
inline double lambda_max_small(const ComplexMatrix& h) {
    const std::size_t n = h.rows();
    if (n == 1) return h(0, 0).real();
    if (n == 2) {
        const double a = h(0, 0).real(), d = h(1, 1).real();
        return 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h(0, 1)));
    }
    const double a00 = h(0, 0).real(), a11 = h(1, 1).real(), a22 = h(2, 2).real();
    const double p1 = std::norm(h(0, 1)) + std::norm(h(0, 2)) + std::norm(h(1, 2));
    const double q = (a00 + a11 + a22) / 3.0;
    const double p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    if (p == 0.0) return q;
    // det((H - qI)/p) / 2, real for Hermitian input.
    const cplx b00 = (a00 - q) / p, b11 = (a11 - q) / p, b22 = (a22 - q) / p;
    const cplx b01 = h(0, 1) / p, b02 = h(0, 2) / p, b12 = h(1, 2) / p;
    const cplx b10 = std::conj(b01), b20 = std::conj(b02), b21 = std::conj(b12);
    const cplx det = b00 * (b11 * b22 - b12 * b21) - b01 * (b10 * b22 - b12 * b20) + b02 * (b10 * b21 - b11 * b20);
    const double r = std::clamp(det.real() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    return q + 2.0 * p * std::cos(phi);
}

/// max over `points` equispaced theta of lambda_max(H(theta)), n <= 3.
inline double theta_grid_radius(const ComplexMatrix& a, std::size_t points) {
    const std::size_t n = a.rows();
    double best = 0.0;
    for (std::size_t j = 0; j < points; ++j) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(points);
        const cplx e = std::polar(1.0, t);
        ComplexMatrix h(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) h(r, c) = 0.5 * (e * a(r, c) + std::conj(e * a(c, r)));
        best = std::max(best, lambda_max_small(h));
    }
    return best;
}

/// max |u*Au| over random unit vectors, a lower bound for w(A).
inline double rayleigh_sampling(const ComplexMatrix& a, std::size_t samples, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    const std::size_t n = a.rows();
    std::vector<cplx> u(n), au(n);
    double best = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        double nrm = 0.0;
        for (cplx& z : u) {
            z = cplx(normal(rng), normal(rng));
            nrm += std::norm(z);
        }
        cplx q{};
        for (std::size_t r = 0; r < n; ++r) {
            cplx row{};
            for (std::size_t c = 0; c < n; ++c) row += a(r, c) * u[c];
            q += std::conj(u[r]) * row;
        }
        best = std::max(best, std::abs(q) / nrm);
    }
    return best;
}

} // namespace oracle
