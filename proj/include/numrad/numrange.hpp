#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "numrad/eigen.hpp"
#include "numrad/error.hpp"
#include "numrad/matrix.hpp"
#include "numrad/unitary.hpp"

namespace numrad {

/// w(A) together with the angle where the support function peaks and a unit vector attaining it.
struct RadiusResult {
    double radius = 0.0;
    double theta_star = 0.0;
    Vector attaining_vector;
};

/// Support point of W(A) in direction theta: Re(e^{i theta} witness) == support_value.
struct BoundaryPoint {
    double angle = 0.0;
    double support_value = 0.0;
    cplx witness;
};

/// U*AU = c M with U[:,0] = x and c = x*Ax.
struct NormalForm {
    ComplexMatrix unitary;
    ComplexMatrix reduced;
};

inline constexpr std::size_t kRadiusGridSize = 720;
inline constexpr double kDefaultRadiusTol = 1e-10;
inline constexpr double kStructureTol = 1e-8;

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A = G + iK with G, K Hermitian; H(theta) = cos(theta) G - sin(theta) K.
struct CartesianParts {
    ComplexMatrix real_part;
    ComplexMatrix imag_part;

    explicit CartesianParts(const ComplexMatrix& a) : real_part(a.rows(), a.cols()), imag_part(a.rows(), a.cols()) {
        const std::size_t n = a.rows();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                const cplx x = a(r, c);
                const cplx y = std::conj(a(c, r));
                real_part(r, c) = 0.5 * (x + y);
                imag_part(r, c) = cplx(0.0, -0.5) * (x - y);
            }
    }

    [[nodiscard]] ComplexMatrix at(double theta) const {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        ComplexMatrix h(real_part.rows(), real_part.cols());
        auto out = h.entries();
        auto g = real_part.entries();
        auto k = imag_part.entries();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * g[i] - s * k[i];
        return h;
    }

    /// (lambda_max(H(theta)), lambda_max(H(theta + pi))) from one eigenvalue solve, since H(theta + pi) = -H(theta).
    [[nodiscard]] std::pair<double, double> support_pair(double theta) const {
        const std::vector<double> ev = eigenvalues_unchecked(at(theta));
        return {ev.back(), -ev.front()};
    }

    [[nodiscard]] double support(double theta) const { return eigenvalues_unchecked(at(theta)).back(); }
};

inline void require_square(const ComplexMatrix& a, const char* what) {
    if (!a.is_square() || a.rows() == 0) throw DimensionError(std::string(what) + ": matrix must be square and nonempty");
}

inline double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

/// Support function sampled on the fixed grid 2 pi j / kRadiusGridSize.
inline std::vector<double> support_grid(const CartesianParts& parts) {
    constexpr std::size_t half = kRadiusGridSize / 2;
    std::vector<double> g(kRadiusGridSize);
    for (std::size_t j = 0; j < half; ++j) {
        const auto [fwd, back] = parts.support_pair(kTwoPi * static_cast<double>(j) / kRadiusGridSize);
        g[j] = fwd;
        g[j + half] = back;
    }
    return g;
}

} // namespace detail

/// H(theta) = (e^{i theta} A + e^{-i theta} A*) / 2.
inline ComplexMatrix hermitian_part_at_angle(const ComplexMatrix& a, double theta) {
    detail::require_square(a, "hermitian_part_at_angle");
    return detail::CartesianParts(a).at(theta);
}

/// Support function of W(A) in direction theta, i.e. lambda_max(H(theta)).
inline double support_function(const ComplexMatrix& a, double theta) {
    detail::require_square(a, "support_function");
    return detail::CartesianParts(a).support(theta);
}

/**
 * Numerical radius w(A) = max over theta of lambda_max(H(theta)).
 *
 * Coarse scan on a fixed 720-point angle grid, then golden-section search on
 * the bracket around the best grid angle. The bracket is shrunk to 1e-12 rad,
 * or earlier once width * ||A||_F drops below tol / 10 (g is Lipschitz with
 * constant ||A||_2).
 */
inline RadiusResult numerical_radius(const ComplexMatrix& a, double tol = kDefaultRadiusTol) {
    detail::require_square(a, "numerical_radius");
    if (!(tol >= 1e-12)) throw DomainError("numerical_radius: tol must be >= 1e-12");
    const std::size_t n = a.rows();
    const double fro = a.frobenius_norm();
    if (fro == 0.0) return {0.0, 0.0, basis_vector(n, 0)};

    const detail::CartesianParts parts(a);
    const std::vector<double> grid = detail::support_grid(parts);
    std::size_t best = 0;
    for (std::size_t j = 1; j < grid.size(); ++j)
        if (grid[j] > grid[best]) best = j;

    const double step = detail::kTwoPi / kRadiusGridSize;
    double lo = step * static_cast<double>(best) - step;
    double hi = step * static_cast<double>(best) + step;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = parts.support(x1);
    double f2 = parts.support(x2);
    const double stop_width = std::max(1e-12, 0.1 * tol / fro);
    while (hi - lo > stop_width) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = parts.support(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = parts.support(x1);
        }
    }
    double theta = step * static_cast<double>(best);
    double value = grid[best];
    if (f1 > value) {
        theta = x1;
        value = f1;
    }
    if (f2 > value) {
        theta = x2;
        value = f2;
    }

    theta = detail::wrap_angle(theta);
    EigenPair top = detail::top_eigenpair_unchecked(parts.at(theta));
    return {std::max(top.value, 0.0), theta, std::move(top.vector)};
}

/// Support points of W(A) at `count` equispaced angles starting from 0.
inline std::vector<BoundaryPoint> boundary_points(const ComplexMatrix& a, std::size_t count) {
    detail::require_square(a, "boundary_points");
    if (count < 3) throw DomainError("boundary_points: count must be >= 3");
    const detail::CartesianParts parts(a);
    std::vector<BoundaryPoint> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double theta = detail::kTwoPi * static_cast<double>(j) / static_cast<double>(count);
        const EigenPair top = detail::top_eigenpair_unchecked(parts.at(theta));
        out.push_back({theta, top.value, quadratic_form(a, top.vector)});
    }
    return out;
}

/**
 * Half-plane membership test for W(A).
 *
 * z passes when Re(e^{i theta} z) <= lambda_max(H(theta)) + tol on the fixed
 * 720-angle grid and additionally in the direction of z itself, which makes
 * the test exact for points lying radially outside w(A).
 */
inline bool range_contains(const ComplexMatrix& a, cplx z, double tol = kStructureTol) {
    detail::require_square(a, "range_contains");
    const detail::CartesianParts parts(a);
    constexpr std::size_t half = kRadiusGridSize / 2;
    for (std::size_t j = 0; j < half; ++j) {
        const double theta = detail::kTwoPi * static_cast<double>(j) / kRadiusGridSize;
        const auto [fwd, back] = parts.support_pair(theta);
        const double proj = (std::polar(1.0, theta) * z).real();
        if (proj > fwd + tol || -proj > back + tol) return false;
    }
    if (std::abs(z) > 0.0) {
        const double theta = -std::arg(z);
        if (std::abs(z) > parts.support(theta) + tol) return false;
    }
    return true;
}

/**
 * Normal form at a radius-attaining vector.
 *
 * Requires w(A) = 1 and |x*Ax| = 1 (both within 1e-8). With U completing x to a
 * unitary, M = (x*Ax)^{-1} U*AU has M(0,0) = 1 and M(0,k) = -conj(M(k,0)).
 */
inline NormalForm lemma_normal_form(const ComplexMatrix& a, std::span<const cplx> x) {
    detail::require_square(a, "lemma_normal_form");
    if (x.size() != a.rows()) throw DimensionError("lemma_normal_form: vector length mismatch");
    const double w = numerical_radius(a).radius;
    if (std::abs(w - 1.0) > kStructureTol) throw DomainError("lemma_normal_form: numerical radius is not 1");
    const cplx c = quadratic_form(a, x);
    if (std::abs(std::abs(c) - 1.0) > kStructureTol) throw DomainError("lemma_normal_form: x does not attain the radius");
    ComplexMatrix u = unitary_with_first_column(x);
    ComplexMatrix m = matmul(matmul(u.adjoint(), a), u) * (1.0 / c);
    return {std::move(u), std::move(m)};
}

} // namespace numrad
