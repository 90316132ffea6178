#pragma once

// Deflation of an upper-triangular inverse-Cholesky factor after a layer is
// selected for detection. The selected row p is cyclically permuted to the
// bottom and a left-to-right sweep of adjacent-column rotations restores the
// triangular form:
//
//   (P F) * Sigma = [[F_next, conj(phase)*u], [0^T, lambda]],
//
// where Sigma is the product of the applied rotations followed by a final
// unit phase factor diag(1, ..., 1, conj(phase)) that makes lambda real and
// positive. F_next is an inverse-Cholesky factor of the deflated system, and
// row squared norms are preserved by the sweep (right-unitary invariance), so
// e'(j) = e(j) - |u(j)|^2.
//
// The outcome stores the raw sweep column u; the phase-corrected column is
// materialized only by column_u() for consumers outside counted paths.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "osic/givens.hpp"
#include "osic/matrix.hpp"
#include "osic/tally.hpp"

namespace osic {

enum class GivensFlavor { fast, conventional };

struct RotationLogEntry {
    std::size_t col;  // rotation acted on columns (col, col+1)
    GivensCoeffs g;
};

struct DeflationOutcome {
    TriFactor F_next;
    CVec u;               // raw sweep column, rows 0..n-2 of the last column
    cx phase;             // unit scalar; true last column is conj(phase)*u
    double lambda = 0.0;  // real positive bottom-right value
    int rotations_used = 0;
    OpTally givens_tally;  // rotation-computation budget only
    OpTally apply_tally;   // applications, pivot-row fills, phase bookkeeping

    OpTally tally() const { return merge(givens_tally, apply_tally); }

    CVec column_u() const {
        CVec out(u.size());
        const cx pc = std::conj(phase);
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = pc * u[i];
        return out;
    }
};

// e(j) = squared Euclidean norm of row j of F, computed exactly.
// Records {rm: 2L, ra: 2L-1} per row of length L.
inline std::vector<double> row_norms_init(const TriFactor& f, OpTally& t) {
    const std::size_t n = f.dim();
    std::vector<double> e(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = j; k < n; ++k) {
            const cx v = f(j, k);
            acc += v.real() * v.real() + v.imag() * v.imag();
        }
        const std::uint64_t len = n - j;
        record(t, OpKind::rm, 2 * len);
        record(t, OpKind::ra, 2 * len - 1);
        e[j] = acc;
    }
    return e;
}

// e'(j) = e(j) - |u(j)|^2 for the surviving rows. Records
// {rm: 2(n-1), ra: 2(n-1)}. Round-off negatives are clamped to zero; a value
// below -1e-9 means the state is inconsistent and fails loudly.
inline std::vector<double> row_norms_update(const std::vector<double>& e, const CVec& u,
                                            OpTally& t) {
    if (e.size() != u.size() + 1)
        throw std::invalid_argument("row_norms_update: size mismatch");
    std::vector<double> out(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double drop = u[j].real() * u[j].real() + u[j].imag() * u[j].imag();
        double v = e[j] - drop;
        record(t, OpKind::rm, 2);
        record(t, OpKind::ra, 2);
        if (v < -1e-9) throw std::runtime_error("row_norms_update: norm underflow");
        if (v < 0.0) v = 0.0;
        out[j] = v;
    }
    return out;
}

namespace detail {
inline void record_rotation_budget(GivensFlavor flavor, OpTally& t) {
    if (flavor == GivensFlavor::fast) {
        record(t, OpKind::rm, 15);
        record(t, OpKind::ra, 5);
        record(t, OpKind::rdiv, 1);
        record(t, OpKind::rsqrt, 1);
    } else {
        record(t, OpKind::rm, 20);
        record(t, OpKind::ra, 5);
        record(t, OpKind::rdiv, 4);
        record(t, OpKind::rsqrt, 3);
    }
}
}  // namespace detail

// Deflates F after selecting row p (0-based). Rotations sweep columns
// (j, j+1) for j = p..n-2, each zeroing the bottom-row entry at column j; the
// rows above the pivot row go through apply_givens_columns and the pivot-row
// fill costs {cm:1, rcm:1}. A zero sweep pivot is handled by a flop-free
// column swap in normal operation; in worst-case mode the full rotation
// budget is charged regardless so the ledger depends only on dimensions.
inline DeflationOutcome deflate_triangular(const TriFactor& f, std::size_t p,
                                           GivensFlavor flavor, bool worst_case,
                                           std::vector<RotationLogEntry>* log = nullptr) {
    const std::size_t n = f.dim();
    if (n == 0) throw std::invalid_argument("deflate_triangular: empty factor");
    if (p >= n) throw std::invalid_argument("deflate_triangular: pivot out of range");

    // W = P F with the cyclic row permutation (row p to the bottom).
    CMatrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = (i + 1 == n) ? p : (i < p ? i : i + 1);
        for (std::size_t j = 0; j < n; ++j) w(i, j) = f(src, j);
    }

    DeflationOutcome out;
    for (std::size_t j = p; j + 1 < n; ++j) {
        const cx d = w(n - 1, j);
        const cx e = w(n - 1, j + 1);
        if (e == cx{0.0, 0.0}) {
            if (d != cx{0.0, 0.0}) {
                // Entry swap: the c=0, s=1 member of the rotation family,
                // applied without arithmetic.
                for (std::size_t rr = 0; rr <= j; ++rr) {
                    const cx xj = w(rr, j);
                    const cx xk = w(rr, j + 1);
                    w(rr, j) = -xk;
                    w(rr, j + 1) = xj;
                }
                w(n - 1, j) = cx{0.0, 0.0};
                w(n - 1, j + 1) = d;
                if (log) log->push_back({j, {0.0, cx{1.0, 0.0}, d}});
            }
            if (worst_case) {
                detail::record_rotation_budget(flavor, out.givens_tally);
                record(out.apply_tally, OpKind::cm, 2 * j + 1);
                record(out.apply_tally, OpKind::rcm, 2 * j + 1);
                record(out.apply_tally, OpKind::ca, 2 * j);
                ++out.rotations_used;
            }
            continue;
        }
        const GivensCoeffs g = (flavor == GivensFlavor::fast)
                                   ? fast_givens(d, e, out.givens_tally)
                                   : conventional_givens(d, e, out.givens_tally);
        apply_givens_columns(w, j, j + 1, g, 0, j, out.apply_tally);
        // Pivot-row fill: column j is structurally zero in row j, so the
        // rotation reduces to two products there.
        const cx xk = w(j, j + 1);
        w(j, j) = -std::conj(g.s) * xk;
        record(out.apply_tally, OpKind::cm, 1);
        w(j, j + 1) = cx{g.c * xk.real(), g.c * xk.imag()};
        record(out.apply_tally, OpKind::rcm, 1);
        w(n - 1, j) = cx{0.0, 0.0};
        w(n - 1, j + 1) = g.r;
        ++out.rotations_used;
        if (log) log->push_back({j, g});
    }

    // Phase normalization of the bottom-right value: lambda = |value|,
    // phase = value / lambda.
    const cx lc = w(n - 1, n - 1);
    const double m2 = lc.real() * lc.real() + lc.imag() * lc.imag();
    record(out.apply_tally, OpKind::rm, 2);
    record(out.apply_tally, OpKind::ra, 1);
    if (m2 == 0.0) throw std::runtime_error("deflate_triangular: singular factor");
    const double m = std::sqrt(m2);
    record(out.apply_tally, OpKind::rsqrt, 1);
    const double inv = 1.0 / m;
    record(out.apply_tally, OpKind::rdiv, 1);
    out.phase = cx{lc.real() * inv, lc.imag() * inv};
    record(out.apply_tally, OpKind::rcm, 1);
    out.lambda = m;

    out.F_next = TriFactor(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i; j + 1 < n; ++j) out.F_next.set(i, j, w(i, j));
    out.u.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) out.u[i] = w(i, n - 1);
    return out;
}

}  // namespace osic
