#pragma once

// Published per-step and total complexity budgets for both detector
// variants, evaluated in exact rational arithmetic so ledger identities
// (rows summing to totals, the 9N^2 gap) hold with zero float drift. These
// are transcribed closed forms under test, never derived from the
// instrumented code.
//
// Row convention: each step carries a complex-multiply count, a complex-add
// count, and a residual flop term ("raw") for the operations the closed
// forms state directly in flops; the row's flop value under the default
// weights is 6*cm + 2*ca + raw.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "osic/variant.hpp"

namespace osic {

struct Frac {
    long long num = 0;
    long long den = 1;

    Frac() = default;
    Frac(long long n) : num(n), den(1) {}  // NOLINT: implicit ints are the point
    Frac(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Frac: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool operator==(const Frac&) const = default;

    bool is_integer() const { return den == 1; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    // Nearest integer, halves away from zero. Exact: no float round-trip.
    long long round_half_away() const {
        const long long q = num / den;
        const long long r = num % den;
        if (2 * (r < 0 ? -r : r) >= den) return q + (num < 0 ? -1 : 1);
        return q;
    }
};

inline Frac operator+(Frac a, Frac b) { return Frac{a.num * b.den + b.num * a.den, a.den * b.den}; }
inline Frac operator-(Frac a, Frac b) { return Frac{a.num * b.den - b.num * a.den, a.den * b.den}; }
inline Frac operator*(Frac a, Frac b) { return Frac{a.num * b.num, a.den * b.den}; }
inline Frac operator/(Frac a, Frac b) {
    if (b.num == 0) throw std::invalid_argument("Frac: division by zero");
    return Frac{a.num * b.den, a.den * b.num};
}

struct TheoryRow {
    std::string label;
    Frac cm;   // complex multiplies
    Frac ca;   // complex adds
    Frac raw;  // flops stated directly by the closed form
};

inline Frac row_flops(const TheoryRow& r) {
    return Frac{6} * r.cm + Frac{2} * r.ca + r.raw;
}

// Summation identities used by the budget derivations.
inline Frac sum_first(Frac n) { return n * (n + Frac{1}) / Frac{2}; }
inline Frac sum_first_squares(Frac n) {
    return n * (n + Frac{1}) * (Frac{2} * n + Frac{1}) / Frac{6};
}

// Per-step budget table for one variant at dimensions (M, N).
inline std::vector<TheoryRow> step_budget(DetectorVariant v, long long M, long long N) {
    if (M < 1 || N < 1) throw std::invalid_argument("step_budget: M, N >= 1 required");
    const Frac m{M}, n{N};
    const Frac n2 = n * n;
    const Frac n3 = n2 * n;
    const Frac gram_cm = n * (n + Frac{1}) * m / Frac{2};
    const Frac gram_ca = n * (n + Frac{1}) * (m - Frac{1}) / Frac{2} + n / Frac{2};
    if (v == DetectorVariant::A2008) {
        return {
            {"N1-b", gram_cm, gram_ca, Frac{0}},
            {"N1-c", n3 / Frac{3} - Frac{3, 4} * n2, n3 / Frac{3} - Frac{3, 4} * n2, n2},
            {"N1-d", m * n, m * n, Frac{0}},
            {"N2", n2 / Frac{2}, n2 / Frac{2}, Frac{0}},
            {"N3", n3 / Frac{2} - Frac{3, 2} * n2, n3 / Frac{6} - n2 / Frac{2},
             Frac{25, 2} * n2},
            {"N4", n2 / Frac{2}, n2 / Frac{2}, Frac{0}},
            {"N6", n2 / Frac{2}, n2 / Frac{2}, Frac{0}},
        };
    }
    return {
        {"I:1", m * n, m * n, Frac{0}},
        {"II:2-phi", gram_cm, gram_ca, Frac{0}},
        {"II:2-chol", n3 / Frac{6} - n2 / Frac{4}, n3 / Frac{6} - n2 / Frac{4}, n2},
        {"II:3", n3 / Frac{6} - n2 / Frac{2}, n3 / Frac{6} - n2 / Frac{2}, Frac{0}},
        {"II:5", n2 / Frac{4}, n2 / Frac{4}, Frac{0}},
        {"I:11", n2 / Frac{2}, n2 / Frac{2}, Frac{0}},
        {"II:12", Frac{0}, Frac{0}, Frac{16} * n2},
        {"II:13", n3 / Frac{2} - Frac{3, 2} * n2, n3 / Frac{6} - n2 / Frac{2},
         Frac{3, 2} * n2},
        {"I:13", n2 / Frac{2}, n2 / Frac{2}, Frac{0}},
        {"I:15", n2 / Frac{2}, n2 / Frac{2}, Frac{0}},
        {"II:18", n2 / Frac{4}, n2 / Frac{4}, Frac{0}},
    };
}

// Closed-form totals: 4MN^2 + 6N^3 + 12MN + (17/2 or 35/2) N^2. The step
// rows above sum to these exactly.
inline Frac total_flops_formula(DetectorVariant v, long long M, long long N) {
    if (M < 1 || N < 1) throw std::invalid_argument("total_flops_formula: M, N >= 1 required");
    const Frac m{M}, n{N};
    const Frac n2 = n * n;
    const Frac tail = (v == DetectorVariant::A2008 ? Frac{17, 2} : Frac{35, 2}) * n2;
    return Frac{4} * m * n2 + Frac{6} * n2 * n + Frac{12} * m * n + tail;
}

// Shared dominant term 4MN^2 + 6N^3.
inline Frac dominant_flops_formula(long long M, long long N) {
    if (M < 1 || N < 1)
        throw std::invalid_argument("dominant_flops_formula: M, N >= 1 required");
    const Frac m{M}, n{N};
    return Frac{4} * m * n * n + Frac{6} * n * n * n;
}

}  // namespace osic
