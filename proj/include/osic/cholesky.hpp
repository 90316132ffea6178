#pragma once

// Gram matrix assembly and triangular factor kernels.
//
// Conventions: all factors are upper triangular with real positive diagonals.
//   gram_regularized:            Phi = H^H H + sigma2 I
//   gaxpy_cholesky:              Phi = R^H R
//   back_substitution:           F = R^{-1}
//   inverse_cholesky_recursive:  F with F F^H = Phi^{-1}, built by the
//                                order-recursive bordering scheme
// Dot products against a triangular factor multiply the known-real diagonal
// entry as real-by-complex (rcm) and the rest as full complex ops.

#include <cmath>
#include <stdexcept>

#include "osic/matrix.hpp"
#include "osic/tally.hpp"

namespace osic {

// Upper triangle of H^H H via column inner products (M cm + (M-1) ca each),
// then sigma2 added on the diagonal (N ra). Records exactly
// {cm: M*N(N+1)/2, ca: (M-1)*N(N+1)/2, ra: N}.
inline HermitianMatrix gram_regularized(const CMatrix& H, double sigma2, OpTally& t) {
    const std::size_t m = H.rows();
    const std::size_t n = H.cols();
    if (m == 0 || n == 0) throw std::invalid_argument("gram_regularized: empty matrix");
    if (sigma2 < 0.0) throw std::invalid_argument("gram_regularized: negative sigma2");
    if (m < n && sigma2 == 0.0)
        throw std::invalid_argument("gram_regularized: sigma2 > 0 required when M < N");
    HermitianMatrix phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cx acc = std::conj(H(0, i)) * H(0, j);
            for (std::size_t k = 1; k < m; ++k) acc += std::conj(H(k, i)) * H(k, j);
            record(t, OpKind::cm, m);
            record(t, OpKind::ca, m - 1);
            phi.set(i, j, acc);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        phi.set(i, i, cx{phi.at(i, i).real() + sigma2, 0.0});
        record(t, OpKind::ra, 1);
    }
    return phi;
}

// Gaxpy-style Cholesky of the upper factor, row by row: row j of R is the
// j-th row of Phi minus the accumulated outer-product contributions of rows
// above, scaled by the pivot root. Fails loudly on a non-positive pivot.
inline TriFactor gaxpy_cholesky(const HermitianMatrix& phi, OpTally& t) {
    const std::size_t n = phi.dim();
    TriFactor r(n);
    std::vector<cx> row(n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = phi.at(j, j).real();
        for (std::size_t c = j + 1; c < n; ++c) row[c] = phi.at(j, c);
        for (std::size_t k = 0; k < j; ++k) {
            const cx rkj = r(k, j);
            diag -= rkj.real() * rkj.real() + rkj.imag() * rkj.imag();
            record(t, OpKind::rm, 2);
            record(t, OpKind::ra, 2);
            const cx coef = std::conj(rkj);
            for (std::size_t c = j + 1; c < n; ++c) row[c] -= coef * r(k, c);
            record(t, OpKind::cm, n - j - 1);
            record(t, OpKind::ca, n - j - 1);
        }
        if (diag <= 0.0) throw std::runtime_error("gaxpy_cholesky: not positive definite");
        const double piv = std::sqrt(diag);
        record(t, OpKind::rsqrt, 1);
        const double inv = 1.0 / piv;
        record(t, OpKind::rdiv, 1);
        r.set(j, j, cx{piv, 0.0});
        for (std::size_t c = j + 1; c < n; ++c) r.set(j, c, cx{row[c].real() * inv, row[c].imag() * inv});
        record(t, OpKind::rcm, n - j - 1);
    }
    return r;
}

// Row-oriented inversion of an upper-triangular factor with real positive
// diagonal; column j of F = R^{-1} is built bottom-up.
inline TriFactor back_substitution(const TriFactor& r, OpTally& t) {
    const std::size_t n = r.dim();
    TriFactor f(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cx djj = r(j, j);
        if (djj == cx{0.0, 0.0}) throw std::invalid_argument("back_substitution: zero diagonal");
        if (djj.imag() != 0.0)
            throw std::invalid_argument("back_substitution: diagonal must be real");
        const double fjj = 1.0 / djj.real();
        record(t, OpKind::rdiv, 1);
        f.set(j, j, cx{fjj, 0.0});
        for (std::size_t ii = j; ii-- > 0;) {
            // s = sum_{k=ii+1..j} R(ii,k) F(k,j); the k=j term multiplies the
            // real diagonal F(j,j).
            cx s = cx{r(ii, j).real() * fjj, r(ii, j).imag() * fjj};
            record(t, OpKind::rcm, 1);
            for (std::size_t k = ii + 1; k < j; ++k) s += r(ii, k) * f(k, j);
            record(t, OpKind::cm, j - ii - 1);
            record(t, OpKind::ca, j - ii - 1);
            const double fii = f(ii, ii).real();
            f.set(ii, j, cx{-s.real() * fii, -s.imag() * fii});
            record(t, OpKind::rcm, 1);
        }
    }
    return f;
}

// Order-recursive inverse Cholesky: F(0,0) = 1/sqrt(Phi(0,0)); growing the
// order by one computes w = F^H phi_col, beta = Phi(n,n) - w^H w,
// F(n,n) = 1/sqrt(beta), F(0:n-1,n) = -F(n,n) * (F w).
inline TriFactor inverse_cholesky_recursive(const HermitianMatrix& phi, OpTally& t) {
    const std::size_t n = phi.dim();
    TriFactor f(n);
    if (n == 0) return f;
    if (phi.at(0, 0).real() <= 0.0)
        throw std::runtime_error("inverse_cholesky_recursive: not positive definite");
    {
        const double root = std::sqrt(phi.at(0, 0).real());
        record(t, OpKind::rsqrt, 1);
        f.set(0, 0, cx{1.0 / root, 0.0});
        record(t, OpKind::rdiv, 1);
    }
    std::vector<cx> w(n), g(n);
    for (std::size_t k = 1; k < n; ++k) {
        // w = F_k^H * Phi(0:k-1, k), exploiting the real diagonal of F.
        for (std::size_t i = 0; i < k; ++i) {
            cx acc = cx{f(i, i).real() * phi.at(i, k).real(), f(i, i).real() * phi.at(i, k).imag()};
            record(t, OpKind::rcm, 1);
            for (std::size_t kk = 0; kk < i; ++kk) acc += std::conj(f(kk, i)) * phi.at(kk, k);
            record(t, OpKind::cm, i);
            record(t, OpKind::ca, i);
            w[i] = acc;
        }
        double beta = phi.at(k, k).real();
        for (std::size_t i = 0; i < k; ++i) {
            beta -= w[i].real() * w[i].real() + w[i].imag() * w[i].imag();
            record(t, OpKind::rm, 2);
            record(t, OpKind::ra, 2);
        }
        if (beta <= 0.0)
            throw std::runtime_error("inverse_cholesky_recursive: not positive definite");
        const double root = std::sqrt(beta);
        record(t, OpKind::rsqrt, 1);
        const double fkk = 1.0 / root;
        record(t, OpKind::rdiv, 1);
        // g = F_k * w, then the new column is -F(k,k) * g.
        for (std::size_t i = 0; i < k; ++i) {
            cx acc = cx{f(i, i).real() * w[i].real(), f(i, i).real() * w[i].imag()};
            record(t, OpKind::rcm, 1);
            for (std::size_t kk = i + 1; kk < k; ++kk) acc += f(i, kk) * w[kk];
            record(t, OpKind::cm, k - i - 1);
            record(t, OpKind::ca, k - i - 1);
            g[i] = acc;
        }
        f.set(k, k, cx{fkk, 0.0});
        for (std::size_t i = 0; i < k; ++i) {
            f.set(i, k, cx{-fkk * g[i].real(), -fkk * g[i].imag()});
        }
        record(t, OpKind::rcm, k);
    }
    return f;
}

}  // namespace osic
