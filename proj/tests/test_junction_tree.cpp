#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace jtugms;
using fixtures::set1;

namespace {

/// Every tree-edge separator splits the residual cluster vertices in the
/// triangulated graph.
bool separators_separate(const JunctionTree& jt, const Graph& chordal) {
    for (std::size_t k = 0; k < jt.tree_edges.size(); ++k) {
        const auto& s = jt.separators[k];
        const auto left = set_difference(jt.clusters[static_cast<std::size_t>(jt.tree_edges[k].a)], s);
        const auto right = set_difference(jt.clusters[static_cast<std::size_t>(jt.tree_edges[k].b)], s);
        for (Vertex i : left)
            for (Vertex j : right)
                if (!is_separator(chordal, s, i, j)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("min-fill adds nothing to a chordal graph") {
    const Graph h = fixtures::fig1_h();
    const auto tri = triangulate_min_fill(h);
    CHECK(tri.chordal == h);
    CHECK(is_perfect_elimination_order(h, tri.order));
}

TEST_CASE("min-fill on small graphs") {
    const Graph c4 = fixtures::graph1(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    const auto tri = triangulate_min_fill(c4);
    CHECK(tri.chordal.num_edges() == c4.num_edges() + 1);
    CHECK(is_perfect_elimination_order(tri.chordal, tri.order));
    CHECK(triangulate_min_fill(Graph(5)).chordal.num_edges() == 0);
}

TEST_CASE("junction tree of the chordal example") {
    const JunctionTree jt = build_junction_tree(fixtures::fig1_h());
    auto clusters = jt.clusters;
    std::sort(clusters.begin(), clusters.end());
    std::vector<VertexSet> expect{set1({1, 3, 4, 5}), set1({1, 2, 3, 5}), set1({3, 4, 5, 6}), set1({4, 5, 6, 7})};
    std::sort(expect.begin(), expect.end());
    CHECK(clusters == expect);
    auto seps = jt.separators;
    std::sort(seps.begin(), seps.end());
    CHECK(seps == std::vector<VertexSet>{set1({1, 3, 5}), set1({3, 4, 5}), set1({4, 5, 6})});
}

TEST_CASE("junction tree of the grid") {
    const Graph grid = fixtures::grid3();
    const JunctionTree jt = build_junction_tree(grid);
    CHECK(validate_junction_tree(jt, grid));
    // Same shape as the drawn tree: four triangles, two 4-cliques.
    std::vector<std::size_t> sizes;
    for (const auto& c : jt.clusters) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{3, 3, 3, 3, 4, 4});
    CHECK(jt.tree_edges.size() == 5);

    // With the chord (2,8) the drawn clusters come out exactly.
    Graph chorded = grid;
    chorded.add_edge(1, 7);
    const JunctionTree drawn = build_junction_tree(chorded);
    auto clusters = drawn.clusters;
    std::vector<VertexSet> expect{set1({1, 2, 4}), set1({2, 4, 5, 8}), set1({4, 7, 8}),
                                  set1({2, 5, 6, 8}), set1({2, 3, 6}),    set1({6, 8, 9})};
    std::sort(clusters.begin(), clusters.end());
    std::sort(expect.begin(), expect.end());
    CHECK(clusters == expect);
    CHECK(validate_junction_tree(drawn, grid));
}

TEST_CASE("trees give their edges as clusters") {
    const Graph tree = fixtures::graph1(6, {{1, 2}, {1, 3}, {3, 4}, {3, 5}, {5, 6}});
    const JunctionTree jt = build_junction_tree(tree);
    std::vector<VertexSet> expect;
    for (const Edge& e : tree.edge_list()) expect.push_back({e.u, e.v});
    auto clusters = jt.clusters;
    std::sort(clusters.begin(), clusters.end());
    CHECK(clusters == expect);
}

TEST_CASE("validation of drawn junction trees for the 4-cycle") {
    const Graph c4 = fixtures::graph1(4, {{1, 2}, {2, 4}, {4, 3}, {3, 1}});
    JunctionTree bad;
    bad.clusters = {set1({1, 3}), set1({1, 2}), set1({2, 4}), set1({3, 4})};
    bad.connect(0, 1);
    bad.connect(1, 2);
    bad.connect(2, 3);
    CHECK_FALSE(validate_junction_tree(bad, c4));

    JunctionTree good;
    good.clusters = {set1({1, 2, 3}), set1({2, 3, 4})};
    good.connect(0, 1);
    CHECK(validate_junction_tree(good, c4));

    JunctionTree single;
    single.clusters = {set1({1, 2, 3, 4})};
    CHECK(validate_junction_tree(single, c4));
}

TEST_CASE("random graphs give valid junction trees") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 200; ++rep) {
        const int p = 1 + rep % 15;
        const double density = 0.05 + 0.9 * (rep % 10) / 10.0;
        const Graph g = oracles::random_graph(p, density, rng);
        const auto tri = triangulate_min_fill(g);
        const JunctionTree jt = build_junction_tree(g);
        CHECK(validate_junction_tree(jt, g));
        CHECK(separators_separate(jt, tri.chordal));
        CHECK(jt.tree_edges.size() + connected_components(g).size() == jt.clusters.size());
    }
}

TEST_CASE("separator-cap merging") {
    const Graph h = fixtures::fig1_h();
    const JunctionTree jt = build_junction_tree(h);
    CHECK(merge_by_separator_cap(jt, 3).clusters == jt.clusters);
    const JunctionTree one = merge_by_separator_cap(jt, 1);
    REQUIRE(one.clusters.size() == 1);
    CHECK(one.clusters[0] == h.vertices());
    CHECK_THROWS_AS(merge_by_separator_cap(jt, 0), std::domain_error);

    // Five clusters around a small separator collapse to two.
    JunctionTree star;
    star.clusters = {{0, 1, 2}, {2, 3, 4, 5}, {3, 4, 5, 6}, {4, 5, 6, 7}, {5, 6, 7, 8}};
    star.connect(0, 1);
    star.connect(1, 2);
    star.connect(2, 3);
    star.connect(3, 4);
    const JunctionTree two = merge_by_separator_cap(star, 1);
    REQUIRE(two.clusters.size() == 2);
    CHECK(two.clusters[0] == VertexSet{0, 1, 2});
    CHECK(two.clusters[1] == VertexSet{2, 3, 4, 5, 6, 7, 8});

    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 60; ++rep) {
        const Graph g = oracles::random_graph(12, 0.3, rng);
        const JunctionTree base = build_junction_tree(g);
        for (std::size_t cap = 1; cap <= 3; ++cap) {
            const JunctionTree merged = merge_by_separator_cap(base, cap);
            CHECK(validate_junction_tree(merged, g));
            CHECK(merged.max_separator_size() <= cap);
            for (const auto& c : merged.clusters) {
                VertexSet covered;
                for (const auto& b : base.clusters)
                    if (is_subset(b, c)) covered = set_union(covered, b);
                CHECK(covered == c);
            }
        }
    }
}
