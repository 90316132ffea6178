#include <catch2/catch_amalgamated.hpp>

#include "osic/rng.hpp"
#include "osic/tally.hpp"

using namespace osic;

TEST_CASE("tally starts at zero and records per class") {
    OpTally t;
    CHECK(t == OpTally{});
    CHECK(flops(t) == 0);

    record(t, OpKind::cm, 3);
    record(t, OpKind::ca, 2);
    record(t, OpKind::rsqrt, 1);
    CHECK(t.cm == 3);
    CHECK(t.ca == 2);
    CHECK(t.rsqrt == 1);
    CHECK(t.rm == 0);

    record(t, OpKind::cm, 4);
    CHECK(t.cm == 7);
}

TEST_CASE("default weights: cm=6 ca=2 rcm=2 real ops=1") {
    OpTally t{1, 1, 1, 1, 1, 1, 1};
    CHECK(flops(t) == 6 + 2 + 1 + 1 + 1 + 1 + 2);

    FlopWeights w;
    w.cm = 10;
    w.rcm = 0;
    CHECK(flops(t, w) == 10 + 2 + 1 + 1 + 1 + 1);
}

TEST_CASE("merge adds fieldwise") {
    OpTally a{1, 2, 3, 4, 5, 6, 7};
    OpTally b{10, 20, 30, 40, 50, 60, 70};
    const OpTally m = merge(a, b);
    CHECK(m == OpTally{11, 22, 33, 44, 55, 66, 77});

    OpTally c = a;
    merge_into(c, b);
    CHECK(c == m);
}

TEST_CASE("flops is additive over merge for random tallies") {
    Xoshiro256pp rng(7);
    for (int iter = 0; iter < 1000; ++iter) {
        OpTally a, b;
        for (OpTally* t : {&a, &b}) {
            t->cm = rng.next() % 100;
            t->ca = rng.next() % 100;
            t->rm = rng.next() % 100;
            t->ra = rng.next() % 100;
            t->rdiv = rng.next() % 100;
            t->rsqrt = rng.next() % 100;
            t->rcm = rng.next() % 100;
        }
        CHECK(flops(merge(a, b)) == flops(a) + flops(b));
    }
}
