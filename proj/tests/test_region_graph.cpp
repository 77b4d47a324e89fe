#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "jtugms/region_graph.hpp"

using namespace jtugms;
using fixtures::edge1;
using fixtures::set1;

namespace {

std::vector<VertexSet> row_sets(const RegionGraph& rg, std::size_t r) {
    std::vector<VertexSet> out;
    for (RegionId id : rg.row(r)) out.push_back(rg.region(id).vertices);
    return out;
}

std::vector<VertexSet> sets_of(const RegionGraph& rg, const std::vector<RegionId>& ids) {
    std::vector<VertexSet> out;
    for (RegionId id : ids) out.push_back(rg.region(id).vertices);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexSet> sorted(std::vector<VertexSet> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("region graph of the chordal example") {
    const RegionGraph rg = RegionGraph::build(build_junction_tree(fixtures::fig1_h()));
    REQUIRE(rg.num_rows() == 3);
    CHECK(row_sets(rg, 0) ==
          sorted({set1({1, 2, 3, 5}), set1({1, 3, 4, 5}), set1({3, 4, 5, 6}), set1({4, 5, 6, 7})}));
    CHECK(row_sets(rg, 1) == sorted({set1({1, 3, 5}), set1({3, 4, 5}), set1({4, 5, 6})}));
    CHECK(row_sets(rg, 2) == sorted({set1({3, 5}), set1({4, 5})}));
    // Edges: each separator has its two clusters as parents; {3,5} sits
    // under {1,3,5} and {3,4,5}; {4,5} under {3,4,5} and {4,5,6}.
    CHECK(rg.num_edges() == 10);
    const RegionId r35 = rg.find(2, set1({3, 5}));
    REQUIRE(r35 >= 0);
    CHECK(sets_of(rg, rg.parents(r35)) == sorted({set1({1, 3, 5}), set1({3, 4, 5})}));
}

TEST_CASE("region graph of the nine-vertex example") {
    const Graph h = fixtures::fig8_h();
    const JunctionTree jt = fixtures::fig8_jt();
    REQUIRE(validate_junction_tree(jt, h));
    const RegionGraph rg = RegionGraph::build(jt);
    REQUIRE(rg.num_rows() == 3);
    CHECK(row_sets(rg, 1) ==
          sorted({set1({3, 5}), set1({5, 6, 8}), set1({3, 5, 6}), set1({2, 3, 6}), set1({3, 4, 6})}));
    CHECK(row_sets(rg, 2) == sorted({set1({3, 5}), set1({3, 6}), set1({5, 6})}));
    // {3,5} appears in two rows as distinct regions.
    CHECK(rg.find(1, set1({3, 5})) != rg.find(2, set1({3, 5})));

    const RegionId c5 = rg.find(0, set1({2, 3, 4, 6}));
    CHECK(sets_of(rg, rg.children(c5)) == sorted({set1({2, 3, 6}), set1({3, 4, 6})}));
    CHECK(rg.ancestors(rg.find(0, set1({5, 6, 8, 9}))).empty());
    CHECK(sets_of(rg, rg.ancestors(rg.find(1, set1({3, 5, 6})))) == sorted({set1({3, 5, 6, 8}), set1({2, 3, 5, 6})}));
    CHECK(rg.closure(rg.find(1, set1({3, 4, 6}))) == set1({2, 3, 4, 6, 7}));
    CHECK(rg.closure(rg.find(2, set1({3, 6}))) == set1({2, 3, 4, 5, 6, 7, 8}));
    CHECK(rg.closure(c5) == set1({2, 3, 4, 6}));

    CHECK(rg.estimable_subgraph(h, rg.find(1, set1({5, 6, 8}))).edges() == EdgeSet{edge1(5, 8), edge1(6, 8)});
    CHECK(rg.estimable_subgraph(h, rg.find(1, set1({3, 5, 6}))).num_edges() == 0);
    const RegionId leaf = rg.find(2, set1({5, 6}));
    CHECK(rg.estimable_subgraph(h, leaf) == induced_subgraph(h, set1({5, 6})));
}

TEST_CASE("disjoint separators give two rows") {
    const Graph path = fixtures::graph1(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
    const RegionGraph rg = RegionGraph::build(build_junction_tree(path));
    CHECK(rg.num_rows() == 2);
    const RegionGraph single = RegionGraph::build(build_junction_tree(complete_graph({0, 1, 2})));
    CHECK(single.num_rows() == 1);
}

TEST_CASE("structural invariants on random graphs") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 80; ++rep) {
        const int p = 3 + rep % 10;
        const Graph h = oracles::random_graph(p, 0.2 + 0.05 * (rep % 8), rng);
        const RegionGraph rg = RegionGraph::build(build_junction_tree(h));
        EdgeSet covered;
        std::size_t total = 0;
        for (const Region& r : rg.regions()) {
            CHECK_FALSE(r.vertices.empty());
            if (r.row >= 2) CHECK(r.vertices.size() > 1);
            for (RegionId c : rg.children(r.id)) {
                CHECK(rg.region(c).row == r.row + 1);
                CHECK(is_subset(rg.region(c).vertices, r.vertices));
            }
            const Graph hp = rg.estimable_subgraph(h, r.id);
            total += hp.num_edges();
            for (const Edge& e : hp.edge_list()) covered.insert(e);
        }
        CHECK(covered == h.edges());
        CHECK(total == h.num_edges());
    }
}

TEST_CASE("every path around an estimable edge passes through the closure") {
    std::mt19937_64 rng(32);
    for (int rep = 0; rep < 60; ++rep) {
        const int p = 4 + rep % 9;
        const Graph h = oracles::random_graph(p, 0.3, rng);
        const RegionGraph rg = RegionGraph::build(build_junction_tree(h));
        for (const Region& r : rg.regions()) {
            const VertexSet rbar = rg.closure(r.id);
            for (const Edge& e : rg.estimable_subgraph(h, r.id).edge_list()) {
                Graph without = h;
                without.remove_edge(e.u, e.v);
                const VertexSet sep = set_difference(rbar, {e.u, e.v});
                CHECK(oracles::separated(without, sep, e.u, e.v));
            }
        }
    }
}
