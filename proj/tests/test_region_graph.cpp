#include <doctest.h>

#include "nhp/errors.hpp"
#include "nhp/region_graph.hpp"
#include "nhp/rng.hpp"
#include "oracles.hpp"

using namespace nhp;

TEST_CASE("node_to_edge_labels on a full 2x2 mask") {
    RegionMask m(2, 2);
    m.mask.assign(4, 1);
    const EdgeField f = node_to_edge_labels(m);
    CHECK(f.px[f.idx(0, 0)] == 1.0);
    CHECK(f.px[f.idx(1, 0)] == 1.0);
    CHECK(f.px[f.idx(0, 1)] == 0.0); // column padding
    CHECK(f.px[f.idx(1, 1)] == 0.0);
    CHECK(f.py[f.idx(0, 0)] == 1.0);
    CHECK(f.py[f.idx(0, 1)] == 1.0);
    CHECK(f.py[f.idx(1, 0)] == 0.0); // row padding
    CHECK(f.py[f.idx(1, 1)] == 0.0);
    f.validate();
}

TEST_CASE("node_to_edge_labels needs both endpoints") {
    RegionMask empty(3, 3);
    EdgeField f = node_to_edge_labels(empty);
    for (double v : f.px) CHECK(v == 0.0);
    for (double v : f.py) CHECK(v == 0.0);

    RegionMask lone(3, 3);
    lone.set(1, 1, true);
    f = node_to_edge_labels(lone);
    for (double v : f.px) CHECK(v == 0.0);
    for (double v : f.py) CHECK(v == 0.0);
}

TEST_CASE("label fields always satisfy the padding invariants") {
    Rng rng(17);
    for (int k = 0; k < 50; ++k) {
        const RegionMask m = oracles::random_mask(6, 5, rng.uniform(), rng);
        CHECK_NOTHROW(node_to_edge_labels(m).validate());
    }
}

TEST_CASE("decode_region literal rule") {
    EdgeField f(4, 4);
    f.px[f.idx(1, 1)] = 1.0;
    f.py[f.idx(1, 1)] = 1.0;
    f.px[f.idx(2, 0)] = 0.12;
    f.py[f.idx(2, 0)] = 0.08;
    f.px[f.idx(3, 1)] = 0.17; // last row: py padding stays 0, mean 0.085
    const RegionMask m = decode_region(f, 0.09);
    CHECK(m.at(1, 1));
    CHECK(m.at(2, 0)); // mean 0.10 > 0.09
    CHECK_FALSE(m.at(3, 1));
    CHECK_THROWS_AS(decode_region(f, 1.0), InvalidThreshold);
    CHECK_THROWS_AS(decode_region(f, -0.1), InvalidThreshold);
}

TEST_CASE("decode_region_nodepair strict comparison") {
    NodePairField f(2, 2);
    f.c1[0] = 0.3;
    f.c2[0] = 0.7;
    f.c1[1] = 0.5;
    f.c2[1] = 0.5; // tie -> unpromising
    f.c1[2] = 0.9;
    f.c2[2] = 0.1;
    const RegionMask m = decode_region_nodepair(f);
    CHECK(m.at(0, 0));
    CHECK_FALSE(m.at(0, 1));
    CHECK_FALSE(m.at(1, 0));
}

TEST_CASE("round trip: decode recovers exactly the nodes whose owned edges pass t") {
    // The literal per-node rule drops promising nodes whose owned right+down
    // edge labels average <= t (always including the (i+j)-maximal promising
    // nodes), so the recovered set is computable per node.
    Rng rng(23);
    for (int k = 0; k < 100; ++k) {
        const RegionMask m = oracles::random_mask(8, 8, 0.3 + 0.5 * rng.uniform(), rng);
        const EdgeField labels = node_to_edge_labels(m);
        for (double t : {0.09, 0.3, 0.49}) {
            const RegionMask decoded = decode_region(labels, t);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) {
                    const bool expected =
                        (labels.px[labels.idx(i, j)] + labels.py[labels.idx(i, j)]) / 2.0 > t;
                    CHECK(decoded.at(i, j) == expected);
                    // decoded is always a subset of the mask
                    if (decoded.at(i, j)) CHECK(m.at(i, j));
                    // nodes with both owned edges promising always survive
                    if (labels.px[labels.idx(i, j)] == 1.0 && labels.py[labels.idx(i, j)] == 1.0)
                        CHECK(decoded.at(i, j));
                }
        }
    }
}

namespace {

PlanningProblem band_problem(int w, int h, State start, State goal) {
    return PlanningProblem{GridMap(w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, 0)),
                           start, goal, 1.0};
}

} // namespace

TEST_CASE("is_connected on bands and cuts") {
    RegionMask band(10, 5);
    for (int j = 0; j < 10; ++j) band.set(2, j, true);
    const PlanningProblem p = band_problem(10, 5, State{0.5, 2.5}, State{9.5, 2.5});
    CHECK(is_connected(band, p));

    RegionMask cut = band;
    cut.set(2, 5, false);
    CHECK_FALSE(is_connected(cut, p));

    const PlanningProblem same = band_problem(10, 5, State{3.2, 1.7}, State{3.9, 1.1});
    CHECK(is_connected(RegionMask(10, 5), same)); // same cell, empty region

    // symmetry
    const PlanningProblem rev = band_problem(10, 5, State{9.5, 2.5}, State{0.5, 2.5});
    CHECK(is_connected(band, rev));
    CHECK_FALSE(is_connected(cut, rev));

    RegionMask wrong(4, 4);
    CHECK_THROWS_AS(is_connected(wrong, p), DimensionMismatch);
}

TEST_CASE("start and goal cells are force-included") {
    // Band that stops one cell short of both endpoints.
    RegionMask band(10, 3);
    for (int j = 1; j < 9; ++j) band.set(1, j, true);
    const PlanningProblem p = band_problem(10, 3, State{0.5, 1.5}, State{9.5, 1.5});
    CHECK(is_connected(band, p));
}

TEST_CASE("connectivity_rate counting") {
    RegionMask band(10, 5);
    for (int j = 0; j < 10; ++j) band.set(2, j, true);
    RegionMask cut = band;
    cut.set(2, 5, false);
    const PlanningProblem p = band_problem(10, 5, State{0.5, 2.5}, State{9.5, 2.5});
    std::vector<std::pair<const RegionMask*, const PlanningProblem*>> cases = {
        {&band, &p}, {&band, &p}, {&cut, &p}, {&cut, &p}};
    CHECK(connectivity_rate(cases) == doctest::Approx(0.5));
    cases.resize(2);
    CHECK(connectivity_rate(cases) == doctest::Approx(1.0));
    cases.clear();
    CHECK_THROWS_AS(connectivity_rate(cases), EmptyInput);
}

TEST_CASE("false_negative_rate") {
    RegionMask truth(5, 4);
    for (int j = 0; j < 5; ++j) {
        truth.set(1, j, true);
        truth.set(2, j, true);
    }
    CHECK(false_negative_rate(truth, truth) == 0.0);
    CHECK(false_negative_rate(RegionMask(5, 4), truth) == 1.0);
    RegionMask pred = truth;
    pred.set(1, 0, false); // misses 1 of 10
    CHECK(false_negative_rate(pred, truth) == doctest::Approx(0.1));
    CHECK_THROWS_AS(false_negative_rate(pred, RegionMask(5, 4)), EmptyTruth);
    CHECK_THROWS_AS(false_negative_rate(RegionMask(3, 3), truth), DimensionMismatch);
}
