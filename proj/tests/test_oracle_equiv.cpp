#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "osic/detector.hpp"
#include "osic/oracle.hpp"
#include "osic/rng.hpp"

using namespace osic;

TEST_CASE("dense inverse: random round trip") {
    Xoshiro256pp rng(43);
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t n = 1 + rng.next() % 8;
        CMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.cnormal(1.0);
            a(i, i) += cx{static_cast<double>(n), 0.0};  // keep well-conditioned
        }
        const CMatrix inv = detail::gauss_jordan_inverse(a);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                cx acc{0.0, 0.0};
                for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * inv(k, j);
                const cx expect = i == j ? cx{1.0, 0.0} : cx{0.0, 0.0};
                CHECK(std::abs(acc - expect) < 1e-9);
            }
    }
    CHECK_THROWS_AS(detail::gauss_jordan_inverse(CMatrix(2, 2)), std::runtime_error);
}

TEST_CASE("reference detector on the identity channel") {
    const double sigma2 = 0.25;
    CMatrix h(2, 2);
    h(0, 0) = h(1, 1) = cx{1.0, 0.0};
    const CVec y = {cx{0.9, 0.1}, cx{-0.2, 0.8}};
    const Constellation c = qpsk();

    const OracleResult res = naive_osic(h, y, sigma2, c);
    REQUIRE(res.order.size() == 2);
    CHECK(res.order[0] == 0);
    CHECK(res.order[1] == 1);
    CHECK(std::abs(res.soft[0] - y[0] / (1.0 + sigma2)) < 1e-12);
    CHECK(std::abs(res.soft[1] - y[1] / (1.0 + sigma2)) < 1e-12);
}

TEST_CASE("detectors match the brute-force reference across shapes and noise") {
    for (const Constellation& c : {bpsk(), qpsk(), qam16()}) {
        for (const double sigma2 : {0.01, 1.0}) {
            for (const auto& [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{
                     {1, 1}, {2, 2}, {3, 3}, {4, 4}, {6, 4}, {3, 4}}) {
                for (int trial = 0; trial < 25; ++trial) {
                    const std::uint64_t seed =
                        1000 * m + 100 * n + static_cast<std::uint64_t>(trial) +
                        (sigma2 < 0.1 ? 50000 : 0) + c.points.size() * 7919;
                    const CMatrix h = gen_channel(m, n, seed);
                    const Transmission tx = gen_transmission(h, c, sigma2, seed);

                    const OracleResult ref = naive_osic(h, tx.y, sigma2, c);
                    const DetectionResult a = detect_A(h, tx.y, sigma2, c);
                    const DetectionResult b = detect_B(h, tx.y, sigma2, c);

                    INFO("M=" << m << " N=" << n << " sigma2=" << sigma2
                              << " constellation=" << c.name << " trial=" << trial);
                    CHECK(a.order == ref.order);
                    CHECK(b.order == ref.order);
                    CHECK(a.symbols == ref.symbols);
                    CHECK(b.symbols == ref.symbols);
                    for (std::size_t i = 0; i < n; ++i) {
                        const double scale = std::max(std::abs(ref.soft[i]), 1e-12);
                        CHECK(std::abs(a.soft[i] - ref.soft[i]) / scale < 1e-9);
                        CHECK(std::abs(b.soft[i] - ref.soft[i]) / scale < 1e-9);
                    }
                }
            }
        }
    }
}
