#pragma once

// The two detector variants under comparison. Both compute the same ordered
// MMSE-SIC decisions; they differ in how the inverse factor is initialized
// and which Givens construction the deflation sweep uses, which is exactly
// what their operation ledgers measure.

#include <stdexcept>
#include <string>

namespace osic {

enum class DetectorVariant {
    A2008,  // recursive inverse Cholesky init + fast (22-flop) rotations
    B2015,  // Cholesky + back-substitution init + conventional (32-flop)
            // rotations + a one-time adjoint-factor transform of the
            // matched-filter statistic
};

inline std::string variant_name(DetectorVariant v) {
    return v == DetectorVariant::A2008 ? "A2008" : "B2015";
}

inline DetectorVariant variant_by_name(const std::string& s) {
    if (s == "A2008") return DetectorVariant::A2008;
    if (s == "B2015") return DetectorVariant::B2015;
    throw std::invalid_argument("unknown detector variant: " + s);
}

}  // namespace osic
