#pragma once

// Unit-average-energy symbol constellations and nearest-point slicing.
// Points are stored sorted lexicographically by (real, imag) so that the
// strict-less-than scan in quantize() resolves distance ties toward the
// lexicographically smallest point, deterministically on every platform.
// Slicing is a decision stage, not arithmetic: nothing here is tallied.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "osic/matrix.hpp"

namespace osic {

struct Constellation {
    std::string name;
    std::vector<cx> points;  // sorted by (re, im), average energy 1
};

inline Constellation bpsk() {
    return {"bpsk", {cx{-1.0, 0.0}, cx{1.0, 0.0}}};
}

inline Constellation qpsk() {
    const double a = 1.0 / std::sqrt(2.0);
    Constellation c{"qpsk", {cx{-a, -a}, cx{-a, a}, cx{a, -a}, cx{a, a}}};
    return c;
}

inline Constellation qam16() {
    const double a = 1.0 / std::sqrt(10.0);
    Constellation c{"qam16", {}};
    for (int re : {-3, -1, 1, 3})
        for (int im : {-3, -1, 1, 3}) c.points.push_back(cx{re * a, im * a});
    std::sort(c.points.begin(), c.points.end(), [](cx l, cx r) {
        if (l.real() != r.real()) return l.real() < r.real();
        return l.imag() < r.imag();
    });
    return c;
}

inline Constellation constellation_by_name(const std::string& name) {
    if (name == "bpsk") return bpsk();
    if (name == "qpsk") return qpsk();
    if (name == "qam16") return qam16();
    throw std::invalid_argument("unknown constellation: " + name);
}

// Index of the nearest constellation point; ties go to the earlier (smaller)
// point because only a strictly better distance displaces the running best.
inline std::size_t quantize(const Constellation& c, cx v) {
    std::size_t best = 0;
    double best_d2 = std::norm(v - c.points[0]);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
        const double d2 = std::norm(v - c.points[i]);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

}  // namespace osic
