#pragma once

// Brute-force ordered MMSE-SIC reference detector. Each iteration recomputes
// the full regularized inverse W = (H_k^H H_k + sigma2 I)^{-1} by dense
// Gauss-Jordan elimination with partial pivoting — deliberately sharing no
// machinery with the triangular-factor detectors — picks the layer with the
// smallest error variance W(i,i), estimates it as (W H_k^H y_k)(p), cancels,
// and drops that column. Used only for output equivalence; never counted.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "osic/constellation.hpp"
#include "osic/matrix.hpp"

namespace osic {

struct OracleResult {
    std::vector<std::size_t> order;
    std::vector<std::size_t> symbols;
    CVec soft;
};

namespace detail {

// Dense complex inverse via Gauss-Jordan with partial pivoting.
inline CMatrix gauss_jordan_inverse(const CMatrix& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("gauss_jordan_inverse: not square");
    CMatrix w(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w(i, j) = a(i, j);
        w(i, n + i) = cx{1.0, 0.0};
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(w(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = std::abs(w(r, col));
            if (m > best) {
                best = m;
                piv = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("gauss_jordan_inverse: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(w(col, j), w(piv, j));
        const cx inv = cx{1.0, 0.0} / w(col, col);
        for (std::size_t j = 0; j < 2 * n; ++j) w(col, j) *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const cx factor = w(r, col);
            if (factor == cx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < 2 * n; ++j) w(r, j) -= factor * w(col, j);
        }
    }
    CMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = w(i, n + j);
    return out;
}

}  // namespace detail

inline OracleResult naive_osic(const CMatrix& h, const CVec& y, double sigma2,
                               const Constellation& c) {
    const std::size_t m = h.rows();
    const std::size_t n0 = h.cols();
    if (m != y.size()) throw std::invalid_argument("naive_osic: H/y size mismatch");
    if (m == 0 || n0 == 0) throw std::invalid_argument("naive_osic: empty system");
    if (m < n0 && sigma2 <= 0.0)
        throw std::invalid_argument("naive_osic: sigma2 > 0 required when M < N");

    CMatrix hk = h;
    CVec yk = y;
    std::vector<std::size_t> live(n0);
    for (std::size_t i = 0; i < n0; ++i) live[i] = i;

    OracleResult res;
    while (hk.cols() >= 1) {
        const std::size_t n = hk.cols();

        CMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                cx acc = (i == j) ? cx{sigma2, 0.0} : cx{0.0, 0.0};
                for (std::size_t r = 0; r < m; ++r) acc += std::conj(hk(r, i)) * hk(r, j);
                a(i, j) = acc;
            }
        const CMatrix w = detail::gauss_jordan_inverse(a);

        std::size_t p = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (w(i, i).real() < w(p, p).real()) p = i;

        CVec v(n);
        for (std::size_t i = 0; i < n; ++i) {
            cx acc{0.0, 0.0};
            for (std::size_t r = 0; r < m; ++r) acc += std::conj(hk(r, i)) * yk[r];
            v[i] = acc;
        }
        cx soft{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) soft += w(p, j) * v[j];

        const std::size_t sym = quantize(c, soft);
        res.order.push_back(live[p]);
        res.symbols.push_back(sym);
        res.soft.push_back(soft);

        const cx s_hat = c.points[sym];
        for (std::size_t r = 0; r < m; ++r) yk[r] -= hk(r, p) * s_hat;

        CMatrix next(m, n - 1);
        for (std::size_t r = 0; r < m; ++r) {
            std::size_t cc = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == p) continue;
                next(r, cc++) = hk(r, j);
            }
        }
        hk = std::move(next);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(p));
    }
    return res;
}

}  // namespace osic
