#include <vector>

#include "doctest.h"
#include "kglab/constructions.hpp"
#include "kglab/hypergraph.hpp"
#include "kglab/io.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kglab;

TEST_CASE("hypergraph canonical form") {
    auto a = Hypergraph::from_lists(4, {{3, 4}, {1, 2, 3}, {1, 2}});
    auto b = Hypergraph::from_lists(4, {{1, 2}, {1, 2, 3}, {4, 3}});
    CHECK(a == b);
    CHECK(a.edge_lists() == std::vector<std::vector<int>>{{1, 2}, {3, 4}, {1, 2, 3}});
    CHECK(support::code_of([] { Hypergraph::from_lists(3, {{1, 4}}); }) == ErrorCode::InvalidArgument);
    CHECK(support::code_of([] { Hypergraph::from_lists(3, {{}}); }) == ErrorCode::InvalidArgument);
    CHECK(support::code_of([] { Hypergraph(kMaxVertices + 1, {}); }) == ErrorCode::CapExceeded);
}

TEST_CASE("induced") {
    const auto k5 = complete_uniform(5, 2);
    CHECK(induced(k5, {0, 1}) == Hypergraph::from_lists(2, {{1, 2}}));
    CHECK(induced(k5, {0}) == Hypergraph(1, {}));
    CHECK(induced(k5, {}) == Hypergraph(0, {}));
    const auto sub = induced(hnka(7, 2, 3), {0, 1, 2});
    CHECK(sub.n() == 3);
    CHECK(sub.edge_count() == 0);

    const auto relabelled = induced(k5, {1, 3, 4});
    CHECK(relabelled.labels() == std::vector<int>{2, 4, 5});
    CHECK(relabelled.edge_count() == 3);
}

TEST_CASE("section") {
    const auto f = Hypergraph::from_lists(4, {{1, 3}, {1, 4}, {2, 3}});
    const std::vector<VertexSet> parts{{0, 1}, {2, 3}};
    CHECK(section(f, parts).edge_count() == 3);
    const std::vector<VertexSet> small{{0}, {1}};
    CHECK(section(f, small).edge_count() == 0);

    const auto g = Hypergraph::from_lists(4, {{1, 2, 3}, {1, 3}});
    const std::vector<VertexSet> two{{0, 1}, {2, 3}};
    CHECK(section(g, two).edge_lists() == std::vector<std::vector<int>>{{1, 3}});

    const std::vector<VertexSet> overlap{{0, 1}, {1, 2}};
    CHECK(support::code_of([&] { section(f, overlap); }) == ErrorCode::InvalidPartition);
}

TEST_CASE("is_proper") {
    CHECK(is_proper(support::petersen(), support::petersen_min_coloring()));
    const auto loop = Hypergraph::from_lists(3, {{2}, {1, 3}});
    CHECK_FALSE(is_proper(loop, Coloring({1, 2, 3}, 3)));
    CHECK(is_proper(Hypergraph::from_lists(3, {{1, 2, 3}}), Coloring({1, 1, 2}, 2)));
    CHECK(support::code_of([] { is_proper(Hypergraph(3, {}), Coloring({1, 1}, 1)); }) == ErrorCode::NotTotal);
    CHECK(support::code_of([] { Coloring({1, 3}, 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("is_colorful_balanced_complete") {
    const auto pg = support::petersen();
    // canonical order: {1,2},{1,3},{1,4},{1,5},{2,3},...; v({2,3}) = 4
    std::vector<int> colors(10, 1);
    colors[4] = 1;
    colors[2] = 2;
    colors[3] = 3;
    const Coloring c(colors, 3);
    const std::vector<VertexSet> parts{{4}, {2, 3}};
    CHECK(is_colorful_balanced_complete(pg, parts, c));

    // sizes 3 and 1
    const auto k = complete_uniform(4, 2);
    const Coloring distinct({1, 2, 3, 4}, 4);
    const std::vector<VertexSet> lopsided{{0, 1, 2}, {3}};
    CHECK_FALSE(is_colorful_balanced_complete(k, lopsided, distinct));

    const std::vector<VertexSet> same{{4}, {2, 3}};
    CHECK_FALSE(is_colorful_balanced_complete(pg, same, support::petersen_min_coloring()));

    const std::vector<VertexSet> empty_part{{4}, {}};
    CHECK(support::code_of([&] { is_colorful_balanced_complete(pg, empty_part, c); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("properties: induced and is_proper") {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto h = oracle::random_hypergraph(rng, 7, 8);
        CHECK(induced(h, VertexSet::range(h.n())) == h);

        VertexSet a, b;
        for (std::size_t v = 0; v < h.n(); ++v) {
            if (rng.uniform(0, 1)) a.insert(v);
            if (rng.uniform(0, 1)) b.insert(v);
        }
        // translate b into the relabelled vertices of induced(h, a)
        const auto ha = induced(h, a);
        VertexSet b_local;
        std::size_t pos = 0;
        a.for_each([&](std::size_t v) {
            if (b.contains(v)) b_local.insert(pos);
            ++pos;
        });
        CHECK(induced(ha, b_local) == induced(h, a & b));

        std::vector<int> colors(h.n());
        for (auto& x : colors) x = rng.uniform(1, 3);
        const Coloring c(colors, 3);
        if (is_proper(h, c) && h.edge_count() > 0) {
            auto edges = h.edges();
            edges.erase(edges.begin() + rng.uniform(0, static_cast<int>(edges.size()) - 1));
            CHECK(is_proper(Hypergraph(h.n(), edges), c));
        }

        // one part: only singleton edges survive
        const std::vector<VertexSet> one{a};
        const auto s = section(h, one);
        for (const auto& e : s.edges()) CHECK(e.size() == 1);
        std::size_t singles = 0;
        for (const auto& e : h.edges()) singles += e.size() == 1 && e.subset_of(a);
        CHECK(s.edge_count() == singles);
    }
}

TEST_CASE("json round trip is byte-stable") {
    const std::string text = "{\"n\":5,\"edges\":[[1,2],[2,3],[1,4,5]]}\n";
    const auto doc = parse_document(text);
    CHECK(dump_document(doc) == text);

    const std::string with_meta = "{\"n\":3,\"edges\":[[1,2]],\"meta\":{\"recipe\":\"x\"}}\n";
    CHECK(dump_document(parse_document(with_meta)) == with_meta);

    const auto sub = induced(complete_uniform(5, 2), {1, 3, 4});
    const auto again = parse_document(dump_document({sub, nullptr}));
    CHECK(again.graph == sub);
    CHECK(again.graph.labels() == sub.labels());

    CHECK(support::code_of([] { parse_document("{\"n\":3,\"edges\":[[1,2],[2,1]]}"); }) == ErrorCode::Parse);
    CHECK(support::code_of([] { parse_document("not json"); }) == ErrorCode::Parse);

    const Coloring c({1, 2, 2}, 2);
    CHECK(coloring_from_json(to_json(c)) == c);
    CHECK(to_json(c).dump() == "{\"colors\":[1,2,2],\"color_count\":2}");
}
