#pragma once

// Operation tally: seven counters for the arithmetic classes tracked by the
// complexity ledger. Counted code paths call record() right next to the
// arithmetic they perform; tallies are plain values threaded through calls.

#include <cstdint>

namespace osic {

enum class OpKind {
    cm,     // complex * complex
    ca,     // complex + complex
    rm,     // real * real
    ra,     // real + real
    rdiv,   // real division
    rsqrt,  // real square root
    rcm,    // real * complex
};

struct OpTally {
    std::uint64_t cm = 0;
    std::uint64_t ca = 0;
    std::uint64_t rm = 0;
    std::uint64_t ra = 0;
    std::uint64_t rdiv = 0;
    std::uint64_t rsqrt = 0;
    std::uint64_t rcm = 0;

    bool operator==(const OpTally&) const = default;
};

// Flop cost of one operation of each class. Defaults: a complex multiply is
// 4 rm + 2 ra = 6 flops, a complex add 2 ra = 2 flops, a real-by-complex
// multiply 2 rm = 2 flops; the remaining real ops cost 1 flop each.
struct FlopWeights {
    std::uint64_t cm = 6;
    std::uint64_t ca = 2;
    std::uint64_t rm = 1;
    std::uint64_t ra = 1;
    std::uint64_t rdiv = 1;
    std::uint64_t rsqrt = 1;
    std::uint64_t rcm = 2;
};

inline void record(OpTally& t, OpKind k, std::uint64_t count) {
    switch (k) {
        case OpKind::cm: t.cm += count; break;
        case OpKind::ca: t.ca += count; break;
        case OpKind::rm: t.rm += count; break;
        case OpKind::ra: t.ra += count; break;
        case OpKind::rdiv: t.rdiv += count; break;
        case OpKind::rsqrt: t.rsqrt += count; break;
        case OpKind::rcm: t.rcm += count; break;
    }
}

inline std::uint64_t flops(const OpTally& t, const FlopWeights& w = {}) {
    return t.cm * w.cm + t.ca * w.ca + t.rm * w.rm + t.ra * w.ra +
           t.rdiv * w.rdiv + t.rsqrt * w.rsqrt + t.rcm * w.rcm;
}

inline OpTally merge(const OpTally& a, const OpTally& b) {
    OpTally out = a;
    out.cm += b.cm;
    out.ca += b.ca;
    out.rm += b.rm;
    out.ra += b.ra;
    out.rdiv += b.rdiv;
    out.rsqrt += b.rsqrt;
    out.rcm += b.rcm;
    return out;
}

inline OpTally& merge_into(OpTally& a, const OpTally& b) {
    a = merge(a, b);
    return a;
}

}  // namespace osic
