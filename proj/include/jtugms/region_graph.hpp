#pragma once

#include <string>
#include <vector>

#include "jtugms/graph.hpp"
#include "jtugms/junction_tree.hpp"

namespace jtugms {

using RegionId = int;

struct Region {
    RegionId id = 0;
    VertexSet vertices;
    int row = 0;  // 0-based: row 0 holds clusters, row 1 separators
};

/// Layered DAG of regions. Row 0 holds the junction-tree clusters, row 1 its
/// separators, and every further row the distinct pairwise intersections
/// (of size > 1) of the row above. Edges run from a region to every subset
/// of it in the next row. The same vertex set may appear in several rows.
class RegionGraph {
public:
    static RegionGraph build(const JunctionTree& jt);

    std::size_t num_rows() const { return rows_.size(); }
    std::size_t num_regions() const { return regions_.size(); }
    const std::vector<RegionId>& row(std::size_t r) const { return rows_.at(r); }
    const Region& region(RegionId id) const { return regions_.at(static_cast<std::size_t>(id)); }
    const std::vector<Region>& regions() const { return regions_; }

    const std::vector<RegionId>& children(RegionId id) const { return children_.at(static_cast<std::size_t>(id)); }
    const std::vector<RegionId>& parents(RegionId id) const { return parents_.at(static_cast<std::size_t>(id)); }
    /// Every region with a directed path to `id`, ascending ids.
    std::vector<RegionId> ancestors(RegionId id) const;
    /// Vertices of the region together with those of all its ancestors.
    VertexSet closure(RegionId id) const;
    /// Edges of h inside the region that lie in no child region.
    Graph estimable_subgraph(const Graph& h, RegionId id) const;

    /// Looks up a region by row and vertex set; -1 if absent.
    RegionId find(std::size_t row, const VertexSet& vertices) const;

    std::size_t num_edges() const;

private:
    std::vector<Region> regions_;
    std::vector<std::vector<RegionId>> rows_;
    std::vector<std::vector<RegionId>> children_;
    std::vector<std::vector<RegionId>> parents_;
};

std::string to_dot(const RegionGraph& rg, const std::string& name = "RG");

}  // namespace jtugms
