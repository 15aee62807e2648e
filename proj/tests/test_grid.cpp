#include "doctest.h"

#include <algorithm>
#include <regex>
#include <sstream>
#include <set>

#include "brauer/grid.hpp"
#include "brauer/gt_module.hpp"
#include "json.hpp"

using namespace brauer;

namespace {

PermutationLattice L(std::initializer_list<int> w) { return PermutationLattice(Word(w)); }

std::vector<GridSignature> signatures(int fmax) {
    std::vector<GridSignature> out;
    for (int f = 2; f <= fmax; ++f)
        for (int f1 = 1; f1 < f; ++f1)
            for (const auto &l : upsilon(f))
                for (const auto &l1 : upsilon(f1))
                    for (const auto &l2 : upsilon(f - f1))
                        out.push_back({f, l, f1, f - f1, l1, l2});
    return out;
}

} // namespace

TEST_CASE("signature validation") {
    GridSignature ok{3, Shape({1}), 2, 1, Shape{}, Shape({1})};
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.to_string() == "(3,[1];2,1,[],[1])");
    CHECK(ok.layer_indices() == std::vector<int>{1});
    GridSignature bad = ok;
    bad.f2 = 2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.lambda1 = Shape({1});
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {2, Shape{}, 0, 2, Shape{}, Shape{}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("pair coupling") {
    const LatticePair p{L({1, -1}), L({1})};
    CHECK(pair_coupled(p, p, 1, 2, CouplingMode::Plain));
    CHECK(pair_coupled(p, p, 1, 2, CouplingMode::Bar));
    CHECK_THROWS_AS(pair_coupled(p, p, 2, 2, CouplingMode::Plain), std::out_of_range);
    CHECK_THROWS_AS(pair_coupled(p, p, 3, 2, CouplingMode::Plain), std::out_of_range);

    const LatticePair q{L({1}), L({1, -1})};
    CHECK(pair_coupled(q, q, 2, 1, CouplingMode::Bar));
    CHECK(pair_ibar_self(q, 2, 1));
    CHECK_THROWS_AS(pair_coupled(q, q, 1, 1, CouplingMode::Plain), std::out_of_range);

    const LatticePair r{L({1, 1}), L({1})}, s{L({1, 1}), L({1})};
    CHECK(pair_swap_action(r, 1, 2) == s);
}

TEST_CASE("node coupling") {
    const LatticePair p{L({1, -1}), L({1})};
    const GridNode a{L({1, -1, 1}), p}, b{L({1, 1, -1}), p};
    CHECK(node_coupled(a, a, 1, 2));
    CHECK_FALSE(node_coupled(a, b, 1, 2));
    // Position pair (2,3) couples the targets but is the split index itself.
    CHECK(i_coupled(a.w, b.w, 2));
    CHECK_THROWS_AS(node_coupled(a, b, 2, 2), std::out_of_range);
    // With f1 = 1 the index 2 is legal and acts on the second factor.
    const GridNode c{L({1, -1, 1}), {L({1}), L({1, 1})}}, d{L({1, 1, -1}), {L({1}), L({1, 1})}};
    CHECK(node_coupled(c, d, 2, 1));
}

TEST_CASE("configurations") {
    const int f1 = 2;
    CHECK(classify_node({L({1, 1, -1}), {L({1, 1}), L({1})}}, 1, f1) == Configuration::Crossing);
    CHECK(classify_node({L({1, -1, 1}), {L({1, 1}), L({1})}}, 1, f1) == Configuration::HBridge);
    CHECK(classify_node({L({1, 1, -1}), {L({1, -1}), L({1})}}, 1, f1) == Configuration::VBridge);
    CHECK(classify_node({L({1, -1, 1}), {L({1, -1}), L({1})}}, 1, f1) == Configuration::Singlet);
}

TEST_CASE("small grids") {
    const auto one = build_grid({2, Shape({2}), 1, 1, Shape({1}), Shape({1})});
    CHECK(one.nodes().size() == 1);
    CHECK(one.layers().empty());
    CHECK(one.edge_count() == 0);

    const auto three = build_grid({3, Shape({1}), 2, 1, Shape{}, Shape({1})});
    REQUIRE(three.nodes().size() == 3);
    CHECK(three.nodes()[0].w == L({1, -1, 1}));
    CHECK(three.nodes()[1].w == L({1, 1, -1}));
    CHECK(three.nodes()[2].w == L({1, 2, -2}));
    CHECK(three.layers().size() == 1);

    const auto six = build_grid({4, Shape({2}), 2, 2, Shape({2}), Shape({2})});
    CHECK(six.nodes().size() == 6);
    std::vector<int> is;
    for (const auto &l : six.layers())
        is.push_back(l.i);
    CHECK(is == std::vector<int>{1, 3});
    CHECK_THROWS_AS(six.layer(2), std::out_of_range);
}

TEST_CASE("grid structure on every small signature") {
    for (const auto &sig : signatures(4)) {
        CAPTURE(sig.to_string());
        const auto g = build_grid(sig);
        CHECK(g.nodes().size() == dimension(sig.f, sig.lambda) * dimension(sig.f1, sig.lambda1) *
                                      dimension(sig.f2, sig.lambda2));
        for (std::size_t k = 1; k < g.nodes().size(); ++k)
            CHECK(compare_nodes(g.nodes()[k - 1], g.nodes()[k]) == std::strong_ordering::less);
        for (std::size_t k = 0; k < g.nodes().size(); ++k)
            CHECK(g.node_index(g.nodes()[k]) == k);

        std::map<std::pair<std::size_t, std::size_t>, int> label;
        for (const auto &layer : g.layers()) {
            const auto h = layer.histogram();
            CHECK(h[0] + h[1] + h[2] + h[3] == g.nodes().size());
            // Classes agree with the pairwise relation, so it is an equivalence.
            for (std::size_t a = 0; a < g.nodes().size(); ++a)
                for (std::size_t b = 0; b < g.nodes().size(); ++b)
                    CHECK(node_coupled(g.nodes()[a], g.nodes()[b], layer.i, sig.f1) ==
                          (layer.class_of[a] == layer.class_of[b]));
            for (auto e : layer.edges) {
                CHECK(e.first < e.second);
                auto [it, fresh] = label.emplace(e, layer.i);
                CHECK(fresh);
            }
        }
        const bool full = sig.lambda.boxes() == sig.f && sig.lambda1.boxes() == sig.f1 && sig.lambda2.boxes() == sig.f2;
        if (full)
            for (const auto &layer : g.layers())
                CHECK(layer.histogram()[0] == g.nodes().size());
    }
}

TEST_CASE("dot and json export") {
    const auto one = build_grid({2, Shape({2}), 1, 1, Shape({1}), Shape({1})});
    const auto dot1 = export_dot(one);
    CHECK(dot1.rfind("graph subduction {", 0) == 0);
    CHECK(dot1.find("n0 [label=\"<(1,1);(1),(1)>\"];") != std::string::npos);
    CHECK(dot1.find("--") == std::string::npos);

    const auto g = build_grid({4, Shape({2}), 2, 2, Shape{}, Shape({2})});
    const auto dot = export_dot(g, 1);
    const std::regex vertex(R"re(^  n\d+ \[label="<[^"]*>"[^\]]*\];$)re");
    const std::regex edge(R"re(^  n(\d+) -- n(\d+) \[label="(\d+)"\];$)re");
    std::size_t vertices = 0, edges = 0;
    std::istringstream in(dot);
    std::string line;
    int depth = 0;
    while (std::getline(in, line)) {
        depth += static_cast<int>(std::count(line.begin(), line.end(), '{')) -
                 static_cast<int>(std::count(line.begin(), line.end(), '}'));
        if (std::regex_match(line, vertex))
            ++vertices;
        if (std::regex_match(line, edge))
            ++edges;
    }
    CHECK(depth == 0);
    CHECK(vertices == g.nodes().size());
    CHECK(edges == g.edge_count());
    CHECK(dot.find("shape=doublecircle") != std::string::npos);

    const auto j = nlohmann::json::parse(grid_to_json(g));
    CHECK(j["nodes"].size() == g.nodes().size());
    CHECK(j["layers"].size() == 2);
    CHECK(j["layers"][0]["tags"].size() == g.nodes().size());
    CHECK(j["signature"]["shape2"] == "[2]");
}
