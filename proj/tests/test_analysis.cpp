#include "doctest.h"

#include "helpers.hpp"
#include "lnc/analysis.hpp"
#include "lnc/generate.hpp"

using namespace lnc;
using lnc::testing::gf;

namespace {

Pattern make_pattern(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> mask) {
    return Pattern{rows, cols, std::move(mask)};
}

// Directed min-cut oracle: enumerate every vertex bipartition with the
// source on one side and the destination on the other, count crossing
// edges, take the minimum. Max-flow must equal it.
std::size_t cut_enumeration(const Network& net, const std::string& dest) {
    std::vector<std::size_t> others;
    std::size_t src = *net.node_index(net.source_id());
    std::size_t dst = *net.node_index(dest);
    for (std::size_t i = 0; i < net.nodes().size(); ++i)
        if (i != src && i != dst) others.push_back(i);

    std::size_t best = SIZE_MAX;
    for (std::size_t mask = 0; mask < (1ull << others.size()); ++mask) {
        std::vector<bool> side(net.nodes().size(), false);
        side[src] = true;
        for (std::size_t b = 0; b < others.size(); ++b)
            if (mask >> b & 1u) side[others[b]] = true;
        std::size_t crossing = 0;
        for (std::size_t e = 0; e < net.edges().size(); ++e)
            if (side[net.tail_index(e)] && !side[net.head_index(e)]) ++crossing;
        best = std::min(best, crossing);
    }
    return best;
}

} // namespace

TEST_SUITE("analysis") {

TEST_CASE("structural rank of simple patterns") {
    CHECK(structural_rank(make_pattern(3, 3, {1, 1, 1, 1, 1, 1, 1, 1, 1})) == 3);
    CHECK(structural_rank(make_pattern(3, 1, {1, 1, 1})) == 1);
    CHECK(structural_rank(make_pattern(2, 2, {0, 0, 0, 0})) == 0);
    CHECK(structural_rank(make_pattern(0, 0, {})) == 0);
    // Two rows confined to one column cannot both contribute.
    CHECK(structural_rank(make_pattern(2, 2, {1, 0, 1, 0})) == 1);
}

TEST_CASE("structural rank of the two-layer example pattern is 3 and attainable") {
    Pattern p = make_pattern(4, 3,
                             {1, 1, 0,
                              1, 1, 1,
                              0, 1, 1,
                              0, 0, 1});
    CHECK(structural_rank(p) == 3);

    // Brute force over GF(5): some filling of the 8 free entries reaches
    // rank 3, and none exceeds it (3 columns).
    auto f = gf(5);
    std::vector<std::pair<std::size_t, std::size_t>> free_pos;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            if (p.at(r, c)) free_pos.emplace_back(r, c);
    REQUIRE(free_pos.size() == 8);

    std::size_t best = 0;
    std::vector<std::uint16_t> fill(8, 0);
    std::uint64_t total = 1;
    for (int i = 0; i < 8; ++i) total *= 5;
    for (std::uint64_t code = 0; code < total && best < 3; ++code) {
        std::uint64_t c = code;
        Matrix m(f, 4, 3);
        for (std::size_t i = 0; i < 8; ++i) {
            m.set(free_pos[i].first, free_pos[i].second, static_cast<std::uint16_t>(c % 5));
            c /= 5;
        }
        best = std::max(best, mat_rank(m));
    }
    CHECK(best == 3);
}

TEST_CASE("structural rank properties") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(6);
        std::vector<std::uint8_t> mask(rows * cols);
        for (auto& b : mask) b = rng.below(100) < 40 ? 1 : 0;
        Pattern p{rows, cols, mask};

        Pattern t{cols, rows, std::vector<std::uint8_t>(rows * cols)};
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) t.mask[c * rows + r] = p.mask[r * cols + c];
        CHECK(structural_rank(p) == structural_rank(t));

        // Monotone: freeing one more position never hurts.
        std::size_t before = structural_rank(p);
        std::size_t pos = rng.below(rows * cols);
        Pattern grown = p;
        grown.mask[pos] = 1;
        CHECK(structural_rank(grown) >= before);
    }
}

TEST_CASE("max-flow on handmade graphs") {
    CHECK(maxflow_mincut(lnc::testing::chain_network(gf(7), 3), 1) == 1);

    // n disjoint parallel paths.
    auto f = gf(7);
    for (std::size_t n : {2u, 4u}) {
        std::vector<Node> nodes{{"S", NodeKind::Source, VariantKind::V1, 0}};
        std::vector<Edge> edges;
        for (std::size_t i = 1; i <= n; ++i) {
            std::string id = "v" + std::to_string(i);
            nodes.push_back({id, NodeKind::Intermediate, VariantKind::V1, 0});
            edges.push_back({"s" + std::to_string(i), "S", id});
            edges.push_back({"t" + std::to_string(i), id, "D"});
        }
        nodes.push_back({"D", NodeKind::Destination, VariantKind::V1, 0});
        Network net(f, std::move(nodes), std::move(edges), "S", {"D"});
        CHECK(maxflow_mincut(net, 1) == n);
    }

    Network fig2 = lnc::testing::load_data_network("fig2.json");
    CHECK(maxflow_mincut(fig2, 1) == 2);
    CHECK(maxflow_mincut(fig2, 2) == 2);
    CHECK_THROWS_WITH_AS(maxflow_mincut(fig2, 3), doctest::Contains("UnknownDestination"), Error);
}

TEST_CASE("max-flow agrees with exhaustive cut enumeration") {
    DagParams params{gf(7)};
    params.max_nodes = 8;
    params.destinations = 2;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Network net = random_dag(params, seed);
        for (int k = 1; k <= 2; ++k) {
            CAPTURE(seed);
            CHECK(maxflow_mincut(net, k) ==
                  cut_enumeration(net, net.destinations()[static_cast<std::size_t>(k) - 1].node));
        }
    }
}

TEST_CASE("rank estimate reaches the width of an identity chain") {
    LayeredParams params{gf(257)};
    params.min_width = 3;
    params.max_width = 3;
    params.min_layers = 3;
    params.max_layers = 3;
    params.square = true;
    LayeredNetwork lnet = random_layered(params, 5);
    CHECK(rank_mincut_estimate(lnet, 1, 4, 11) == 3);
    CHECK(mincut_upper_bound(lnet, 1) == 3);
}

TEST_CASE("a destination fed only by a dead last-layer node estimates zero") {
    // Hand-written layered file: the tapped last-layer node has no inputs.
    json j = parse_json(R"({
      "field": {"p": 7, "m": 1},
      "nodes": [
        {"id": "S", "kind": "source"},
        {"id": "a", "kind": "intermediate", "variant": "variant1"},
        {"id": "b", "kind": "intermediate", "variant": "variant1"},
        {"id": "dead", "kind": "intermediate", "variant": "variant1"},
        {"id": "D", "kind": "destination"}
      ],
      "edges": [
        {"id": "s1", "from": "S", "to": "a"},
        {"id": "e1", "from": "a", "to": "b"},
        {"id": "t1", "from": "dead", "to": "D"}
      ],
      "source": "S",
      "destinations": [{"node": "D"}],
      "layers": {"a": 1, "b": 2, "dead": 2},
      "inserted": []
    })");
    LayeredNetwork lnet = layered_from_json(j);
    CHECK(rank_mincut_estimate(lnet, 1, 8, 3) == 0);
    CHECK(mincut_upper_bound(lnet, 1) == 0);
}

TEST_CASE("estimate requires a field larger than the destination count") {
    LayeredParams params{gf(2)};
    params.destinations = 2;
    LayeredNetwork lnet = random_layered(params, 3);
    CHECK_THROWS_WITH_AS(rank_mincut_estimate(lnet, 1, 2, 1), doctest::Contains("FieldTooSmall"),
                         Error);
    CHECK_THROWS_AS(rank_mincut_estimate(lnet, 1, 0, 1), Error);
}

TEST_CASE("estimate is monotone in the trial count for a fixed seed") {
    LayeredParams params{gf(7)}; // small field so single trials miss sometimes
    params.destinations = 1;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        LayeredNetwork lnet = random_layered(params, seed);
        std::size_t prev = 0;
        for (std::size_t trials : {1u, 2u, 4u, 8u, 16u}) {
            std::size_t est = rank_mincut_estimate(lnet, 1, trials, 77);
            CHECK(est >= prev);
            prev = est;
        }
    }
}

TEST_CASE("a width-one layer caps identical-output coding, not the edge cut") {
    auto f = gf(257);
    // Two wide layers pinched through a single middle node. Both disjoint
    // edge paths survive the pinch, so the cut is 2; a single-output middle
    // node can forward only one combination.
    auto build = [&](VariantKind middle) {
        return Network(f,
                       {{"S", NodeKind::Source, VariantKind::V1, 0},
                        {"a1", NodeKind::Intermediate, VariantKind::V1, 0},
                        {"a2", NodeKind::Intermediate, VariantKind::V1, 0},
                        {"m", NodeKind::Intermediate, middle, 0},
                        {"b1", NodeKind::Intermediate, VariantKind::V1, 0},
                        {"b2", NodeKind::Intermediate, VariantKind::V1, 0},
                        {"D", NodeKind::Destination, VariantKind::V1, 0}},
                       {{"s1", "S", "a1"},
                        {"s2", "S", "a2"},
                        {"e1", "a1", "m"},
                        {"e2", "a2", "m"},
                        {"f1", "m", "b1"},
                        {"f2", "m", "b2"},
                        {"t1", "b1", "D"},
                        {"t2", "b2", "D"}},
                       "S", {"D"});
    };

    Network v1 = build(VariantKind::V1);
    LayeredNetwork lnet = layer(v1);
    CHECK(mincut_upper_bound(lnet, 1) == 1);
    CHECK(rank_mincut_estimate(lnet, 1, 4, 9) == 1);
    CHECK(maxflow_mincut(v1, 1) == 2);

    // Distinct outputs at the pinch recover the full cut.
    MincutReport rep = mincut_report(build(VariantKind::V2), 1, 8, 9);
    CHECK(rep.max_rank == 2);
    CHECK(rep.upper_bound == 2);
    CHECK(rep.maxflow == 2);
}

TEST_CASE("estimate, bound and max-flow bracket each other on random instances") {
    DagParams params{gf(257)};
    params.destinations = 2;
    params.variant = VariantKind::V2;
    for (std::uint64_t seed = 500; seed < 560; ++seed) {
        Network net = random_dag(params, seed);
        for (int k = 1; k <= 2; ++k) {
            MincutReport rep = mincut_report(net, k, 8, seed);
            CHECK(rep.max_rank <= rep.upper_bound);
            CHECK(rep.max_rank <= rep.maxflow);
            CHECK(rep.maxflow <= rep.upper_bound);
        }
    }
}

TEST_CASE("the pipeline report on the bundled example") {
    Network net = lnc::testing::load_data_network("fig2.json");
    MincutReport rep = mincut_report(net, 1, 8, 2024);
    CHECK(rep.maxflow == 2);
    CHECK(rep.upper_bound == 2);
    CHECK(rep.max_rank == 2);
    CHECK(rep.per_layer_ranks == std::vector<std::size_t>{2, 2, 3});
    CHECK(rep.destination == "D1");
}

} // TEST_SUITE
