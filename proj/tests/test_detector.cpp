#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "count_model.hpp"
#include "osic/detector.hpp"
#include "osic/rng.hpp"
#include "test_support.hpp"

using namespace osic;

namespace {

OpTally sum_steps(const DetectionResult& r) {
    OpTally t;
    for (const auto& [label, st] : r.per_step) merge_into(t, st);
    return t;
}

}  // namespace

TEST_CASE("single-layer system: closed-form MMSE estimate") {
    const cx hv{1.5, -0.75};
    const cx yv{0.3, 1.1};
    const double sigma2 = 0.2;
    CMatrix h(1, 1);
    h(0, 0) = hv;
    const Constellation c = qpsk();

    for (const DetectionResult& res :
         {detect_A(h, {yv}, sigma2, c), detect_B(h, {yv}, sigma2, c)}) {
        REQUIRE(res.order.size() == 1);
        CHECK(res.order[0] == 0);
        const cx expect = std::conj(hv) * yv / (std::norm(hv) + sigma2);
        CHECK(std::abs(res.soft[0] - expect) < 1e-12);
        CHECK(res.symbols[0] == quantize(c, expect));
        CHECK(res.rotations_total == 0);
    }
}

TEST_CASE("identity channel: per-layer MMSE shrinkage, natural order") {
    const double sigma2 = 0.25;
    CMatrix h(2, 2);
    h(0, 0) = h(1, 1) = cx{1.0, 0.0};
    const CVec y = {cx{0.9, 0.1}, cx{-0.2, 0.8}};
    const Constellation c = qpsk();

    for (const DetectionResult& res :
         {detect_A(h, y, sigma2, c), detect_B(h, y, sigma2, c)}) {
        REQUIRE(res.order.size() == 2);
        CHECK(res.order[0] == 0);  // tie on row norms resolves to layer 0
        CHECK(res.order[1] == 1);
        CHECK(std::abs(res.soft[0] - y[0] / (1.0 + sigma2)) < 1e-12);
        CHECK(std::abs(res.soft[1] - y[1] / (1.0 + sigma2)) < 1e-12);
    }
}

TEST_CASE("input validation") {
    const Constellation c = qpsk();
    CMatrix h(2, 2);
    h(0, 0) = h(1, 1) = cx{1.0, 0.0};
    CHECK_THROWS_AS(detect_A(h, {cx{}}, 0.1, c), std::invalid_argument);
    DetectorConfig no_constellation;
    CHECK_THROWS_AS(run_detector(DetectorVariant::A2008, h, {cx{}, cx{}}, 0.1,
                                 no_constellation),
                    std::invalid_argument);
}

TEST_CASE("worst-case runs are deterministic with full rotation sweeps") {
    for (DetectorVariant v : {DetectorVariant::A2008, DetectorVariant::B2015}) {
        const DetectionResult r1 = worst_case_run(v, 6, 6);
        const DetectionResult r2 = worst_case_run(v, 6, 6);
        CHECK(r1.tally == r2.tally);
        CHECK(r1.order == r2.order);
        CHECK(r1.rotations_total == 6 * 5 / 2);
        CHECK(sum_steps(r1) == r1.tally);

        // Forced order detects layer 0, then the next remaining, and so on.
        for (std::size_t i = 0; i < 6; ++i) CHECK(r1.order[i] == i);
    }
}

TEST_CASE("worst-case tallies equal the independent count model exactly") {
    for (DetectorVariant v : {DetectorVariant::A2008, DetectorVariant::B2015}) {
        for (auto [m, n] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
                 {1, 1}, {2, 2}, {3, 3}, {4, 4}, {8, 8}, {4, 2}, {6, 3}, {2, 3}, {5, 8}}) {
            const DetectionResult res = worst_case_run(v, m, n);
            const OpTally predicted = osic_test::predicted_worst_case(v, m, n);
            INFO(variant_name(v) << " M=" << m << " N=" << n);
            CHECK(res.tally == predicted);
            CHECK(res.rotations_total == static_cast<int>(n * (n - 1) / 2));
        }
    }
}

TEST_CASE("square worst-case flop totals match the frozen closed forms") {
    for (std::uint64_t n = 1; n <= 16; ++n) {
        const std::uint64_t fa = flops(worst_case_run(DetectorVariant::A2008, n, n).tally);
        const std::uint64_t fb = flops(worst_case_run(DetectorVariant::B2015, n, n).tally);
        CHECK(fa == 10 * n * n * n + 25 * n * n - 6);
        CHECK(fb == 10 * n * n * n + 34 * n * n - 6 * n - 6);
        CHECK(fb - fa == 9 * n * n - 6 * n);
    }
}

TEST_CASE("per-step ledger uses the documented labels in order") {
    const DetectionResult a = worst_case_run(DetectorVariant::A2008, 3, 3);
    const DetectionResult b = worst_case_run(DetectorVariant::B2015, 3, 3);
    const std::vector<std::string> la = {"N1-b", "N1-c", "N1-d", "N2",
                                         "N3:givens", "N3:apply", "N4", "N6"};
    const std::vector<std::string> lb = {"I:1",  "II:2-phi", "II:2-chol", "II:3",
                                         "II:5", "I:11",     "II:12",     "II:13",
                                         "I:13", "I:15",     "II:18"};
    REQUIRE(a.per_step.size() == la.size());
    REQUIRE(b.per_step.size() == lb.size());
    for (std::size_t i = 0; i < la.size(); ++i) CHECK(a.per_step[i].first == la[i]);
    for (std::size_t i = 0; i < lb.size(); ++i) CHECK(b.per_step[i].first == lb[i]);

    // Rotation-computation subtotals are pure functions of the rotation count.
    CHECK(flops(a.step("N3:givens")) == 22u * 3);
    CHECK(flops(b.step("II:12")) == 32u * 3);
    CHECK_THROWS_AS(a.step("nope"), std::invalid_argument);
}

TEST_CASE("variants make identical decisions; ledgers differ by the known identity") {
    const Constellation c = qpsk();
    Xoshiro256pp seeds(41);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint64_t seed = seeds.next();
        const std::size_t n = 1 + trial % 8;
        const CMatrix h = gen_channel(n, n, seed);
        const Transmission tx = gen_transmission(h, c, 0.1, seed);

        const DetectionResult a = detect_A(h, tx.y, 0.1, c);
        const DetectionResult b = detect_B(h, tx.y, 0.1, c);

        CHECK(a.order == b.order);
        CHECK(a.symbols == b.symbols);
        CHECK(a.rotations_total == b.rotations_total);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(a.soft[i] - b.soft[i]) < 1e-9 * (1.0 + std::abs(a.soft[i])));

        // B pays 10 extra flops per rotation, the one-time adjoint transform
        // (4N^2 - 2N), and one extra division per layer in initialization.
        const std::uint64_t nn = n;
        CHECK(flops(b.tally) - flops(a.tally) ==
              10 * static_cast<std::uint64_t>(b.rotations_total) + 4 * nn * nn - 2 * nn +
                  nn);

        // Orders are permutations; tallies equal their per-step sums.
        std::set<std::size_t> seen(a.order.begin(), a.order.end());
        CHECK(seen.size() == n);
        CHECK(sum_steps(a) == a.tally);
        CHECK(sum_steps(b) == b.tally);
    }
}

TEST_CASE("average-mode tallies never exceed the worst case") {
    const Constellation c = qpsk();
    for (std::size_t n : {2u, 4u, 6u}) {
        const std::uint64_t worst_a = flops(worst_case_run(DetectorVariant::A2008, n, n).tally);
        const std::uint64_t worst_b = flops(worst_case_run(DetectorVariant::B2015, n, n).tally);
        for (int trial = 0; trial < 50; ++trial) {
            const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(trial);
            const CMatrix h = gen_channel(n, n, seed);
            const Transmission tx = gen_transmission(h, c, 0.1, seed);
            CHECK(flops(detect_A(h, tx.y, 0.1, c).tally) <= worst_a);
            CHECK(flops(detect_B(h, tx.y, 0.1, c).tally) <= worst_b);
        }
    }
}
