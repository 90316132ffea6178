#pragma once

// Givens rotation kernels. All rotations here are complex plane rotations in
// the row convention
//
//     [d  e] * G = [0  r],   G = [[c, s], [-conj(s), c]],   c real in [0, 1],
//
// which zeroes the left element of a row pair and accumulates its magnitude
// into the right one. Two constructions are provided with identical outputs
// (in exact arithmetic) but different operation budgets:
//   fast_givens          22 flops  {rm:15, ra:5, rdiv:1, rsqrt:1}
//   conventional_givens  32 flops  {rm:20, ra:5, rdiv:4, rsqrt:3}
// Each call records exactly its budget, making rotation-computation subtotals
// pure functions of the rotation count.

#include <cmath>
#include <stdexcept>

#include "osic/matrix.hpp"
#include "osic/tally.hpp"

namespace osic {

struct RealGivensResult {
    double c;
    double s;
    double r;
};

struct GivensCoeffs {
    double c;  // real cosine, in [0, 1]
    cx s;
    cx r;      // surviving value: [d e]*G = [0 r]
};

// Real rotation with c*a + s*b = r, -s*a + c*b = 0, r = +sqrt(a^2 + b^2).
// One division is traded for two multiplications via the reciprocal of r.
// Records {rm:4, ra:1, rdiv:1, rsqrt:1} = 7 flops.
inline RealGivensResult real_givens(double a, double b, OpTally& t) {
    if (a == 0.0 && b == 0.0) throw std::invalid_argument("real_givens: zero input pair");
    const double a2 = a * a;
    const double b2 = b * b;
    record(t, OpKind::rm, 2);
    const double sum = a2 + b2;
    record(t, OpKind::ra, 1);
    const double r = std::sqrt(sum);
    record(t, OpKind::rsqrt, 1);
    const double inv = 1.0 / r;
    record(t, OpKind::rdiv, 1);
    const double c = a * inv;
    const double s = b * inv;
    record(t, OpKind::rm, 2);
    return {c, s, r};
}

// Square-root-free-style construction from the closed forms
//   c = |e| / sqrt(|e|^2 + |d|^2),   s = e*conj(d) / (|e| sqrt(...)),
//   r = e * sqrt(...) / |e|,
// evaluated as p=|e|^2, q=|d|^2, h=p+q, w=sqrt(p*h), inv=1/w, c=p*inv,
// s=(e*conj(d))*inv, r=e*(h*inv). Records {rm:15, ra:5, rdiv:1, rsqrt:1}.
inline GivensCoeffs fast_givens(cx d, cx e, OpTally& t) {
    if (e == cx{0.0, 0.0}) throw std::invalid_argument("fast_givens: zero pivot");
    const double p = e.real() * e.real() + e.imag() * e.imag();
    record(t, OpKind::rm, 2);
    record(t, OpKind::ra, 1);
    const double q = d.real() * d.real() + d.imag() * d.imag();
    record(t, OpKind::rm, 2);
    record(t, OpKind::ra, 1);
    const double h = p + q;
    record(t, OpKind::ra, 1);
    const double w = std::sqrt(p * h);
    record(t, OpKind::rm, 1);
    record(t, OpKind::rsqrt, 1);
    const double inv = 1.0 / w;
    record(t, OpKind::rdiv, 1);
    const double c = p * inv;
    record(t, OpKind::rm, 1);
    const cx ed = e * std::conj(d);
    record(t, OpKind::rm, 4);
    record(t, OpKind::ra, 2);
    const cx s = cx{ed.real() * inv, ed.imag() * inv};
    record(t, OpKind::rm, 2);
    const double hinv = h * inv;
    record(t, OpKind::rm, 1);
    const cx r = cx{e.real() * hinv, e.imag() * hinv};
    record(t, OpKind::rm, 2);
    return {c, s, r};
}

// Textbook construction: three real rotations (magnitude/phase of e, of d,
// and the mixing angle), the relative phase factor, then s and r. Produces
// the same (c, s, r) as fast_givens. Records {rm:20, ra:5, rdiv:4, rsqrt:3}.
// A zero d takes the guard path (identity-like rotation, same budget).
inline GivensCoeffs conventional_givens(cx d, cx e, OpTally& t) {
    if (e == cx{0.0, 0.0}) throw std::invalid_argument("conventional_givens: zero pivot");
    if (d == cx{0.0, 0.0}) {
        // Nothing to zero; budget still charged so the subtotal stays a pure
        // function of the rotation count.
        record(t, OpKind::rm, 20);
        record(t, OpKind::ra, 5);
        record(t, OpKind::rdiv, 4);
        record(t, OpKind::rsqrt, 3);
        return {1.0, cx{0.0, 0.0}, e};
    }
    // e = r_u * (c_a + i s_a), d = r_v * (c_b + i s_b)
    const RealGivensResult u = real_givens(e.real(), e.imag(), t);
    const RealGivensResult v = real_givens(d.real(), d.imag(), t);
    const RealGivensResult m = real_givens(u.r, v.r, t);
    // Relative phase e^{i phi} = (c_a c_b + s_a s_b) + i(s_a c_b - c_a s_b)
    const double pre = u.c * v.c + u.s * v.s;
    const double pim = u.s * v.c - u.c * v.s;
    record(t, OpKind::rm, 4);
    record(t, OpKind::ra, 2);
    const cx s = cx{m.s * pre, m.s * pim};
    record(t, OpKind::rm, 2);
    const double scale = m.r / u.r;
    record(t, OpKind::rdiv, 1);
    const cx r = cx{e.real() * scale, e.imag() * scale};
    record(t, OpKind::rm, 2);
    return {m.c, s, r};
}

// Applies G on the right to columns (col_zeroed, col_kept) of rows
// [row_begin, row_end):  x_j' = c x_j - conj(s) x_k,  x_k' = s x_j + c x_k.
// Records {cm:2, rcm:2, ca:2} per row (20 flops per row).
inline void apply_givens_columns(CMatrix& m, std::size_t col_zeroed, std::size_t col_kept,
                                 const GivensCoeffs& g, std::size_t row_begin,
                                 std::size_t row_end, OpTally& t) {
    const cx sconj = std::conj(g.s);
    for (std::size_t r = row_begin; r < row_end; ++r) {
        const cx xj = m(r, col_zeroed);
        const cx xk = m(r, col_kept);
        m(r, col_zeroed) = cx{g.c * xj.real(), g.c * xj.imag()} - sconj * xk;
        m(r, col_kept) = g.s * xj + cx{g.c * xk.real(), g.c * xk.imag()};
    }
    const std::uint64_t k = row_end - row_begin;
    record(t, OpKind::cm, 2 * k);
    record(t, OpKind::rcm, 2 * k);
    record(t, OpKind::ca, 2 * k);
}

}  // namespace osic
