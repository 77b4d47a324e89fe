#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "jtugms/graph.hpp"
#include "jtugms/junction_tree.hpp"

namespace fixtures {

using namespace jtugms;

/// Graph on vertices 0..p-1 from edges written with the 1-based labels used
/// in the figures.
inline Graph graph1(int p, std::initializer_list<std::pair<int, int>> edges) {
    Graph g(p);
    for (auto [a, b] : edges) g.add_edge(a - 1, b - 1);
    return g;
}

inline VertexSet set1(std::initializer_list<int> ids) {
    std::vector<Vertex> v;
    for (int x : ids) v.push_back(x - 1);
    return make_vertex_set(std::move(v));
}

inline Edge edge1(int a, int b) { return make_edge(a - 1, b - 1); }

/// Seven-vertex true graph.
inline Graph fig1_gstar() { return graph1(7, {{1, 2}, {1, 3}, {1, 4}, {3, 5}, {4, 6}, {5, 7}, {6, 7}}); }

/// Its candidate superset graph (chordal).
inline Graph fig1_h() {
    return graph1(7, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 5}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {4, 7}, {5, 6},
                      {5, 7}, {6, 7}});
}

/// 3x3 grid, vertices numbered row by row.
inline Graph grid3() {
    return graph1(9, {{1, 2}, {2, 3}, {3, 6}, {6, 9}, {9, 8}, {8, 7}, {7, 4}, {4, 1}, {4, 5}, {5, 6}, {2, 5}, {5, 8}});
}

/// Nine-vertex graph with 18 edges and its hand-drawn junction tree.
inline Graph fig8_h() {
    return graph1(9, {{1, 5}, {6, 8}, {5, 6}, {3, 6}, {8, 9}, {6, 7}, {3, 4}, {2, 3}, {4, 7}, {1, 3}, {2, 5}, {3, 5}, {5, 8},
                      {6, 9}, {2, 4}, {4, 6}, {3, 7}, {3, 8}});
}

inline JunctionTree fig8_jt() {
    // C1 {5,6,8,9}, C2 {3,5,6,8}, C3 {1,3,5}, C4 {2,3,5,6}, C5 {2,3,4,6}, C6 {3,4,6,7}
    JunctionTree jt;
    jt.clusters = {set1({5, 6, 8, 9}), set1({3, 5, 6, 8}), set1({1, 3, 5}), set1({2, 3, 5, 6}), set1({2, 3, 4, 6}),
                   set1({3, 4, 6, 7})};
    jt.connect(2, 1);
    jt.connect(1, 0);
    jt.connect(3, 1);
    jt.connect(3, 4);
    jt.connect(4, 5);
    return jt;
}

/// Graph used for the marginal-graph example.
inline Graph fig10_g() { return graph1(8, {{1, 2}, {1, 3}, {3, 5}, {5, 8}, {4, 8}, {2, 4}, {2, 6}, {4, 6}, {6, 7}}); }

}  // namespace fixtures
