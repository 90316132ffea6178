#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "osic/constellation.hpp"
#include "osic/rng.hpp"

using namespace osic;

TEST_CASE("constellations: sizes, unit energy, lexicographic ordering") {
    for (const Constellation& c : {bpsk(), qpsk(), qam16()}) {
        double energy = 0.0;
        for (cx p : c.points) energy += std::norm(p);
        energy /= static_cast<double>(c.points.size());
        CHECK(energy == Catch::Approx(1.0).epsilon(1e-12));

        for (std::size_t i = 1; i < c.points.size(); ++i) {
            const cx a = c.points[i - 1];
            const cx b = c.points[i];
            const bool ordered =
                a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
            CHECK(ordered);
        }
    }
    CHECK(bpsk().points.size() == 2);
    CHECK(qpsk().points.size() == 4);
    CHECK(qam16().points.size() == 16);

    CHECK(constellation_by_name("qam16").name == "qam16");
    CHECK_THROWS_AS(constellation_by_name("psk8"), std::invalid_argument);
}

TEST_CASE("quantize recovers points and breaks ties toward the smaller point") {
    Xoshiro256pp rng(37);
    for (const Constellation& c : {bpsk(), qpsk(), qam16()}) {
        // Exact recovery and recovery under small perturbation.
        double min_dist = 1e9;
        for (std::size_t i = 0; i < c.points.size(); ++i)
            for (std::size_t j = i + 1; j < c.points.size(); ++j)
                min_dist = std::min(min_dist, std::abs(c.points[i] - c.points[j]));
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            CHECK(quantize(c, c.points[i]) == i);
            const double ang = 2.0 * M_PI * rng.uniform01();
            const cx jitter = 0.4 * min_dist * cx{std::cos(ang), std::sin(ang)};
            CHECK(quantize(c, c.points[i] + jitter) == i);
        }
    }
    // Dead-center tie: first (lexicographically smallest) point wins.
    CHECK(quantize(bpsk(), cx{0.0, 0.0}) == 0);
    CHECK(quantize(qpsk(), cx{0.0, 0.0}) == 0);
}

TEST_CASE("generator streams are deterministic and tag-separated") {
    Xoshiro256pp a(123), b(123), c(124);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t va = a.next();
        all_equal = all_equal && va == b.next();
        any_diff = any_diff || va != c.next();
    }
    CHECK(all_equal);
    CHECK(any_diff);

    CHECK(derive_stream(42, kStreamChannel) != derive_stream(42, kStreamTransmit));
    CHECK(derive_stream(42, kStreamChannel) != derive_stream(43, kStreamChannel));
}

TEST_CASE("channel entries have unit average power") {
    const CMatrix h = gen_channel(200, 500, 42);
    double acc = 0.0;
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t c = 0; c < h.cols(); ++c) acc += std::norm(h(r, c));
    acc /= static_cast<double>(h.rows() * h.cols());
    CHECK(acc > 0.98);
    CHECK(acc < 1.02);
}

TEST_CASE("transmissions are reproducible, on-constellation, and noise-scaled") {
    const Constellation c = qpsk();
    const CMatrix h = gen_channel(4, 4, 7);

    const Transmission t1 = gen_transmission(h, c, 0.1, 99);
    const Transmission t2 = gen_transmission(h, c, 0.1, 99);
    REQUIRE(t1.x.size() == 4);
    CHECK(t1.symbol_indices == t2.symbol_indices);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(t1.x[i] == c.points[t1.symbol_indices[i]]);
        CHECK(t1.y[i] == t2.y[i]);
    }

    // Zero noise: y = H x exactly as computed.
    const Transmission tz = gen_transmission(h, c, 0.0, 5);
    for (std::size_t r = 0; r < 4; ++r) {
        cx acc{0.0, 0.0};
        for (std::size_t j = 0; j < 4; ++j) acc += h(r, j) * tz.x[j];
        CHECK(std::abs(tz.y[r] - acc) < 1e-15);
    }
}
