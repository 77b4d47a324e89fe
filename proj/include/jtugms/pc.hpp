#pragma once

#include <cstddef>

#include "jtugms/gaussian.hpp"
#include "jtugms/graph.hpp"

namespace jtugms {

struct PcStats {
    std::size_t tests = 0;
    std::size_t deletions = 0;
};

/// Constraint-based edge deletion restricted by (H, L).
///
/// Returns the surviving subset of L. For k = 0..kappa every surviving edge
/// (i, j) is tested against all k-subsets of the smaller of ne_H(i) \ {j} and
/// ne_H(j) \ {i} (ties go to i), in lexicographic order; the first accepted
/// independence deletes the edge from both the estimate and H. Pools are
/// frozen for the duration of a level and deletions are applied in ascending
/// edge order at the level boundary.
///
/// Edge tests inside one level run in parallel under OpenMP.
Graph pc(int kappa, const CiTest& test, const Graph& h, const Graph& l, PcStats* stats = nullptr);

/// Single-threaded implementation of the same procedure, kept as the
/// reference the parallel kernel is checked against.
Graph pc_reference(int kappa, const CiTest& test, const Graph& h, const Graph& l, PcStats* stats = nullptr);

/// Separator pool used for edge (i, j) in graph h.
VertexSet pc_separator_pool(const Graph& h, Vertex i, Vertex j);

/// True iff some k-subset of `pool` renders i and j independent. `tests`
/// counts the CI calls made.
bool pc_find_separator(const CiTest& test, Vertex i, Vertex j, const VertexSet& pool, int k, std::size_t* tests = nullptr);

}  // namespace jtugms
