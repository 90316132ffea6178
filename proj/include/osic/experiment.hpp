#pragma once

// Experiment runners behind the CLI: worst-case sweeps, Monte Carlo
// averages, formula tables, and the oracle cross-check. All emit rows of one
// fixed CSV schema so any external plotter can reproduce the complexity
// curves; row order is deterministic (ascending over the requested sizes,
// variant A before variant B) and average cells derive per-trial seeds as
// seed + trial_index, so repeated runs are byte-identical.

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "osic/detector.hpp"
#include "osic/oracle.hpp"
#include "osic/rng.hpp"
#include "osic/tally.hpp"
#include "osic/theory.hpp"
#include "osic/variant.hpp"

namespace osic {

struct ComplexityRow {
    std::string detector;
    std::string mode;  // worstcase | average | theory
    long long M = 0;
    long long N = 0;
    long long trials = 0;
    long long seed = 0;
    OpTally counts;               // measured (or rounded-mean) counters
    std::uint64_t flops = 0;      // weighted sum of `counts`
    long long theory_flops = 0;   // total_flops_formula, rounded half away
    long long dominant_flops = 0; // dominant_flops_formula
};

inline const char* csv_header() {
    return "detector,mode,M,N,trials,seed,cm,ca,rm,ra,rdiv,rsqrt,rcm,flops,theory_flops,"
           "dominant_flops";
}

inline void write_csv(std::ostream& os, const std::vector<ComplexityRow>& rows) {
    os << csv_header() << "\n";
    for (const auto& r : rows) {
        os << r.detector << ',' << r.mode << ',' << r.M << ',' << r.N << ',' << r.trials << ','
           << r.seed << ',' << r.counts.cm << ',' << r.counts.ca << ',' << r.counts.rm << ','
           << r.counts.ra << ',' << r.counts.rdiv << ',' << r.counts.rsqrt << ','
           << r.counts.rcm << ',' << r.flops << ',' << r.theory_flops << ','
           << r.dominant_flops << "\n";
    }
}

namespace detail {

inline ComplexityRow formula_columns(DetectorVariant v, long long m, long long n) {
    ComplexityRow row;
    row.detector = variant_name(v);
    row.M = m;
    row.N = n;
    row.theory_flops = total_flops_formula(v, m, n).round_half_away();
    row.dominant_flops = dominant_flops_formula(m, n).round_half_away();
    return row;
}

}  // namespace detail

inline std::vector<ComplexityRow> run_worstcase(const std::vector<long long>& n_list,
                                                long long m_fixed,  // 0 = square (M = N)
                                                const FlopWeights& w = {}) {
    std::vector<ComplexityRow> rows;
    for (long long n : n_list) {
        if (n < 1) throw std::invalid_argument("run_worstcase: N >= 1 required");
        const long long m = m_fixed > 0 ? m_fixed : n;
        for (DetectorVariant v : {DetectorVariant::A2008, DetectorVariant::B2015}) {
            const DetectionResult res = worst_case_run(v, static_cast<std::size_t>(m),
                                                       static_cast<std::size_t>(n));
            ComplexityRow row = detail::formula_columns(v, m, n);
            row.mode = "worstcase";
            row.trials = 1;
            row.seed = 0;
            row.counts = res.tally;
            row.flops = flops(res.tally, w);
            rows.push_back(row);
        }
    }
    return rows;
}

inline std::vector<ComplexityRow> run_average(const std::vector<long long>& n_list,
                                              long long m_fixed, long long trials,
                                              std::uint64_t seed, double sigma2,
                                              const Constellation& c,
                                              const FlopWeights& w = {}) {
    if (trials < 1) throw std::invalid_argument("run_average: trials >= 1 required");
    std::vector<ComplexityRow> rows;
    for (long long n : n_list) {
        if (n < 1) throw std::invalid_argument("run_average: N >= 1 required");
        const long long m = m_fixed > 0 ? m_fixed : n;
        for (DetectorVariant v : {DetectorVariant::A2008, DetectorVariant::B2015}) {
            OpTally sum;
            for (long long tr = 0; tr < trials; ++tr) {
                const std::uint64_t ts = seed + static_cast<std::uint64_t>(tr);
                const CMatrix h = gen_channel(static_cast<std::size_t>(m),
                                              static_cast<std::size_t>(n), ts);
                const Transmission tx = gen_transmission(h, c, sigma2, ts);
                DetectorConfig cfg;
                cfg.constellation = &c;
                merge_into(sum, run_detector(v, h, tx.y, sigma2, cfg).tally);
            }
            ComplexityRow row = detail::formula_columns(v, m, n);
            row.mode = "average";
            row.trials = trials;
            row.seed = static_cast<long long>(seed);
            const auto tn = static_cast<std::uint64_t>(trials);
            auto mean = [tn](std::uint64_t total) {
                const std::uint64_t q = total / tn;
                const std::uint64_t r = total % tn;
                return q + (2 * r >= tn ? 1 : 0);
            };
            row.counts = OpTally{mean(sum.cm), mean(sum.ca),   mean(sum.rm),   mean(sum.ra),
                                 mean(sum.rdiv), mean(sum.rsqrt), mean(sum.rcm)};
            row.flops = flops(row.counts, w);
            rows.push_back(row);
        }
    }
    return rows;
}

inline std::vector<ComplexityRow> run_theory(const std::vector<long long>& n_list,
                                             long long m_fixed) {
    std::vector<ComplexityRow> rows;
    for (long long n : n_list) {
        if (n < 1) throw std::invalid_argument("run_theory: N >= 1 required");
        const long long m = m_fixed > 0 ? m_fixed : n;
        for (DetectorVariant v : {DetectorVariant::A2008, DetectorVariant::B2015}) {
            ComplexityRow row = detail::formula_columns(v, m, n);
            row.mode = "theory";
            rows.push_back(row);
        }
    }
    return rows;
}

struct VerifyStats {
    long long trials_run = 0;
    long long mismatches = 0;
    double max_soft_deviation = 0.0;
};

// Runs both detectors and the brute-force reference on the same random
// instances and compares orders, hard symbols, and soft estimates.
inline VerifyStats run_verify(const std::vector<long long>& n_list, long long m_fixed,
                              long long trials, std::uint64_t seed, double sigma2,
                              const Constellation& c, double soft_tol = 1e-9) {
    if (trials < 1) throw std::invalid_argument("run_verify: trials >= 1 required");
    VerifyStats stats;
    for (long long n : n_list) {
        if (n < 1) throw std::invalid_argument("run_verify: N >= 1 required");
        const long long m = m_fixed > 0 ? m_fixed : n;
        for (long long tr = 0; tr < trials; ++tr) {
            const std::uint64_t ts = seed + static_cast<std::uint64_t>(tr);
            const CMatrix h =
                gen_channel(static_cast<std::size_t>(m), static_cast<std::size_t>(n), ts);
            const Transmission tx = gen_transmission(h, c, sigma2, ts);
            const OracleResult ref = naive_osic(h, tx.y, sigma2, c);
            const DetectionResult a = detect_A(h, tx.y, sigma2, c);
            const DetectionResult b = detect_B(h, tx.y, sigma2, c);
            ++stats.trials_run;

            bool ok = a.order == ref.order && b.order == ref.order &&
                      a.symbols == ref.symbols && b.symbols == ref.symbols;
            for (std::size_t i = 0; ok && i < ref.soft.size(); ++i) {
                const double scale = std::max(std::abs(ref.soft[i]), 1e-12);
                const double da = std::abs(a.soft[i] - ref.soft[i]) / scale;
                const double db = std::abs(b.soft[i] - ref.soft[i]) / scale;
                const double d = std::max(da, db);
                if (d > stats.max_soft_deviation) stats.max_soft_deviation = d;
                if (d > soft_tol) ok = false;
            }
            if (!ok) ++stats.mismatches;
        }
    }
    return stats;
}

}  // namespace osic
