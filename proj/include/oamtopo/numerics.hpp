// SPDX-License-Identifier: Apache-2.0
//
// oamtopo - reconfigurable antenna array topologies for OAM beam links
// Copyright (C) 2026 oamtopo contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Special functions and small dense complex linear algebra. Everything here
// is self-contained: Bessel J_l by Miller's backward recurrence, Hermitian
// solves by Cholesky with an exact 1-norm condition estimate.

#ifndef OAMTOPO_NUMERICS_HPP
#define OAMTOPO_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "oamtopo/common.hpp"

namespace oamtopo {

// ---------------------------------------------------------------------------
// ComplexMatrix: dense, row-major, value semantics. Sized for arrays of at
// most a few dozen rings/elements, so no blocking or views.
// ---------------------------------------------------------------------------
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    bool all_finite() const {
        for (const cplx& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        ComplexMatrix m(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx{}) continue;
                for (std::size_t c = 0; c < b.cols_; ++c) m(r, c) += ark * b(k, c);
            }
        return m;
    }

    std::vector<cplx> apply(const std::vector<cplx>& x) const {
        std::vector<cplx> y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            cplx acc{};
            for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
            y[r] = acc;
        }
        return y;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

// ---------------------------------------------------------------------------
// Bessel function of the first kind, integer order.
// ---------------------------------------------------------------------------

namespace detail {

// Miller's backward recurrence with the even-order normalization
// J_0 + 2*sum_{k>=1} J_{2k} = 1. Returns J_0..J_nmax for x > 0.
inline std::vector<double> bessel_j_miller(int nmax, double x) {
    const int start = std::max(nmax, static_cast<int>(std::ceil(x))) + 18 +
                      static_cast<int>(12.0 * std::cbrt(std::max(x, 1.0)));
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    double jp = 0.0;        // J_{n+1} (unnormalized)
    double jc = 1e-300;     // J_n seed
    double norm = 0.0;
    for (int n = start; n >= 1; --n) {
        double jm = (2.0 * n / x) * jc - jp;
        jp = jc;
        jc = jm;
        if (n - 1 <= nmax) out[static_cast<std::size_t>(n - 1)] = jc;
        if ((n - 1) % 2 == 0) norm += (n - 1 == 0) ? jc : 2.0 * jc;
        if (std::abs(jc) > 1e250) { // rescale to dodge overflow
            jc *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            for (double& v : out) v *= 1e-250;
        }
    }
    for (double& v : out) v /= norm;
    return out;
}

} // namespace detail

/// J_0..J_nmax at x (nmax >= 0). Shared evaluation for all orders of one argument.
inline std::vector<double> bessel_j_all(int nmax, double x) {
    if (nmax < 0 || nmax > 64) throw std::domain_error("bessel_j_all: order out of range");
    if (!(std::abs(x) <= 1e4)) throw std::domain_error("bessel_j_all: argument out of range");
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    const double ax = std::abs(x);
    if (ax == 0.0) {
        out[0] = 1.0;
    } else {
        out = detail::bessel_j_miller(nmax, ax);
        if (x < 0.0) // J_n(-x) = (-1)^n J_n(x)
            for (int n = 1; n <= nmax; n += 2) out[static_cast<std::size_t>(n)] = -out[static_cast<std::size_t>(n)];
    }
    return out;
}

/// Bessel function of the first kind J_l(x), |l| <= 64, |x| <= 1e4.
inline double bessel_j(int order, double x) {
    if (order < -64 || order > 64) throw std::domain_error("bessel_j: order out of range");
    if (!(std::abs(x) <= 1e4)) throw std::domain_error("bessel_j: argument out of range");
    const int n = std::abs(order);
    double v = bessel_j_all(n, x)[static_cast<std::size_t>(n)];
    if (order < 0 && (n % 2) == 1) v = -v; // J_{-l} = (-1)^l J_l
    return v;
}

/// Quadrature of the integral form (1/(2*pi*j^l)) \int_0^{2pi} e^{jl t} e^{jx cos t} dt.
/// Trapezoidal rule with interval doubling; the integrand is 2*pi-periodic and
/// entire, so convergence is geometric. Test oracle for bessel_j.
inline double bessel_j_integral(int order, double x) {
    if (order < -64 || order > 64) throw std::domain_error("bessel_j_integral: order out of range");
    if (!(std::abs(x) <= 1e4)) throw std::domain_error("bessel_j_integral: argument out of range");
    cplx prev{1e300, 0.0};
    for (std::size_t n = 64; n <= (1u << 21); n *= 2) {
        cplx acc{};
        for (std::size_t k = 0; k < n; ++k) {
            const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
            acc += std::exp(cplx{0.0, order * t + x * std::cos(t)});
        }
        acc /= static_cast<double>(n);
        if (std::abs(acc - prev) < 1e-13 * std::max(1.0, std::abs(acc))) {
            const cplx val = acc / unit_power(order);
            if (std::abs(val.imag()) > 1e-9)
                throw numeric_error("bessel_j_integral: imaginary residual too large");
            return val.real();
        }
        prev = acc;
    }
    throw numeric_error("bessel_j_integral: quadrature did not converge");
}

// ---------------------------------------------------------------------------
// Hermitian positive definite solves (Cholesky) and the zero-forcing kernels.
// ---------------------------------------------------------------------------

namespace detail {

// In-place lower Cholesky of a Hermitian matrix. Returns false on a
// non-positive pivot (rank deficiency).
inline bool cholesky(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(a(j, k));
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        a(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * std::conj(a(j, k));
            a(i, j) = s / ljj;
        }
    }
    return true;
}

// Solve L L^H x = b with the factor produced by cholesky().
inline void cholesky_solve(const ComplexMatrix& l, std::vector<cplx>& b) {
    const std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b[k];
        b[i] = s / l(i, i).real();
    }
    for (std::size_t ii = n; ii-- > 0;) {
        cplx s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * b[k];
        b[ii] = s / l(ii, ii).real();
    }
}

inline double norm1(const ComplexMatrix& a) {
    double best = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r) s += std::abs(a(r, c));
        best = std::max(best, s);
    }
    return best;
}

} // namespace detail

/// Hermitian Gram matrix H^H H.
inline ComplexMatrix gram(const ComplexMatrix& h) {
    const std::size_t m = h.rows(), n = h.cols();
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            cplx s{};
            for (std::size_t r = 0; r < m; ++r) s += std::conj(h(r, i)) * h(r, j);
            a(i, j) = s;
            a(j, i) = std::conj(s);
        }
    return a;
}

// Cholesky factorization of an HPD matrix together with its exact 1-norm
// condition number (columns of the inverse are obtained by solves, which is
// cheap at these sizes).
struct HermitianFactor {
    ComplexMatrix l;
    double condition = 0.0;

    std::vector<cplx> solve(std::vector<cplx> b) const {
        detail::cholesky_solve(l, b);
        return b;
    }
};

inline constexpr double kDefaultConditionBound = 1e12;

/// Factor the Hermitian positive definite matrix a. Throws singular_matrix_error
/// (carrying the condition estimate) on rank deficiency or when the 1-norm
/// condition number exceeds cond_bound.
inline HermitianFactor factor_hpd(const ComplexMatrix& a, double cond_bound = kDefaultConditionBound) {
    HermitianFactor f{a, 0.0};
    if (!detail::cholesky(f.l))
        throw singular_matrix_error("Gram matrix is numerically rank deficient",
                                    std::numeric_limits<double>::infinity());
    const std::size_t n = a.rows();
    double inv_norm1 = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<cplx> e(n);
        e[c] = 1.0;
        detail::cholesky_solve(f.l, e);
        double s = 0.0;
        for (const cplx& v : e) s += std::abs(v);
        inv_norm1 = std::max(inv_norm1, s);
    }
    f.condition = detail::norm1(a) * inv_norm1;
    if (!(f.condition < cond_bound))
        throw singular_matrix_error("Gram matrix condition estimate exceeds bound", f.condition);
    return f;
}

/// Zero-forcing pseudo-inverse G = (H^H H)^{-1} H^H for a tall full-rank H.
inline ComplexMatrix zf_pseudo_inverse(const ComplexMatrix& h, double cond_bound = kDefaultConditionBound) {
    if (h.rows() < h.cols()) throw std::invalid_argument("zf_pseudo_inverse: H must have rows >= cols");
    const ComplexMatrix a = gram(h);
    const HermitianFactor f = factor_hpd(a, cond_bound);
    const ComplexMatrix hh = h.adjoint();
    ComplexMatrix g(h.cols(), h.rows());
    std::vector<cplx> col(h.cols());
    for (std::size_t c = 0; c < h.rows(); ++c) {
        for (std::size_t r = 0; r < h.cols(); ++r) col[r] = hh(r, c);
        const std::vector<cplx> x = f.solve_refined(a, col);
        for (std::size_t r = 0; r < h.cols(); ++r) g(r, c) = x[r];
    }
    return g;
}

/// Per-stream ZF noise enhancement [(H^H H)^{-1}]_{nn}; equals the squared
/// 2-norm of row n of the pseudo-inverse.
inline double zf_noise_amplification(const ComplexMatrix& h, std::size_t stream,
                                     double cond_bound = kDefaultConditionBound) {
    if (h.rows() < h.cols()) throw std::invalid_argument("zf_noise_amplification: H must have rows >= cols");
    if (stream >= h.cols()) throw std::invalid_argument("zf_noise_amplification: stream index out of range");
    const ComplexMatrix a = gram(h);
    const HermitianFactor f = factor_hpd(a, cond_bound);
    std::vector<cplx> e(h.cols());
    e[stream] = 1.0;
    const std::vector<cplx> x = f.solve_refined(a, e);
    return x[stream].real();
}

/// All ZF noise-enhancement factors of H at once (one factorization).
inline std::vector<double> zf_noise_amplification_all(const ComplexMatrix& h,
                                                      double cond_bound = kDefaultConditionBound) {
    if (h.rows() < h.cols()) throw std::invalid_argument("zf_noise_amplification_all: H must have rows >= cols");
    const ComplexMatrix a = gram(h);
    const HermitianFactor f = factor_hpd(a, cond_bound);
    std::vector<double> out(h.cols());
    for (std::size_t i = 0; i < h.cols(); ++i) {
        std::vector<cplx> e(h.cols());
        e[i] = 1.0;
        const std::vector<cplx> x = f.solve_refined(a, e);
        out[i] = x[i].real();
    }
    return out;
}

} // namespace oamtopo

#endif // OAMTOPO_NUMERICS_HPP
