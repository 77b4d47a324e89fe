#include "jtugms/region_graph.hpp"

#include <algorithm>
#include <sstream>

namespace jtugms {

RegionGraph RegionGraph::build(const JunctionTree& jt) {
    std::vector<std::vector<VertexSet>> layers;
    {
        auto clusters = jt.clusters;
        std::sort(clusters.begin(), clusters.end());
        layers.push_back(std::move(clusters));
    }
    {
        auto seps = jt.separators;
        std::sort(seps.begin(), seps.end());
        seps.erase(std::unique(seps.begin(), seps.end()), seps.end());
        seps.erase(std::remove_if(seps.begin(), seps.end(), [](const VertexSet& s) { return s.empty(); }), seps.end());
        if (!seps.empty()) layers.push_back(std::move(seps));
    }
    // The largest region strictly shrinks from one intersection row to the
    // next, so this terminates.
    while (layers.size() >= 2) {
        const auto& prev = layers.back();
        std::vector<VertexSet> next;
        for (std::size_t x = 0; x < prev.size(); ++x)
            for (std::size_t y = x + 1; y < prev.size(); ++y) {
                auto s = set_intersection(prev[x], prev[y]);
                if (s.size() > 1) next.push_back(std::move(s));
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.empty()) break;
        layers.push_back(std::move(next));
    }

    RegionGraph rg;
    for (std::size_t r = 0; r < layers.size(); ++r) {
        rg.rows_.emplace_back();
        for (auto& vs : layers[r]) {
            RegionId id = static_cast<RegionId>(rg.regions_.size());
            rg.regions_.push_back({id, std::move(vs), static_cast<int>(r)});
            rg.rows_.back().push_back(id);
        }
    }
    rg.children_.resize(rg.regions_.size());
    rg.parents_.resize(rg.regions_.size());
    for (std::size_t r = 0; r + 1 < rg.rows_.size(); ++r)
        for (RegionId a : rg.rows_[r])
            for (RegionId b : rg.rows_[r + 1])
                if (is_subset(rg.region(b).vertices, rg.region(a).vertices)) {
                    rg.children_[static_cast<std::size_t>(a)].push_back(b);
                    rg.parents_[static_cast<std::size_t>(b)].push_back(a);
                }
    return rg;
}

std::vector<RegionId> RegionGraph::ancestors(RegionId id) const {
    std::vector<char> seen(regions_.size(), 0);
    std::vector<RegionId> stack = parents(id);
    for (RegionId p : stack) seen[static_cast<std::size_t>(p)] = 1;
    while (!stack.empty()) {
        RegionId r = stack.back();
        stack.pop_back();
        for (RegionId p : parents(r))
            if (!seen[static_cast<std::size_t>(p)]) {
                seen[static_cast<std::size_t>(p)] = 1;
                stack.push_back(p);
            }
    }
    std::vector<RegionId> out;
    for (std::size_t k = 0; k < seen.size(); ++k)
        if (seen[k]) out.push_back(static_cast<RegionId>(k));
    return out;
}

VertexSet RegionGraph::closure(RegionId id) const {
    VertexSet out = region(id).vertices;
    for (RegionId a : ancestors(id)) out = set_union(out, region(a).vertices);
    return out;
}

Graph RegionGraph::estimable_subgraph(const Graph& h, RegionId id) const {
    const auto& vs = region(id).vertices;
    Graph out(vs);
    for (Vertex u : vs) {
        if (!h.contains(u)) continue;
        for (Vertex v : h.neighbors(u)) {
            if (v <= u || !set_contains(vs, v)) continue;
            bool in_child = false;
            for (RegionId c : children(id)) {
                const auto& cv = region(c).vertices;
                if (set_contains(cv, u) && set_contains(cv, v)) {
                    in_child = true;
                    break;
                }
            }
            if (!in_child) out.add_edge(u, v);
        }
    }
    return out;
}

RegionId RegionGraph::find(std::size_t row, const VertexSet& vertices) const {
    if (row >= rows_.size()) return -1;
    for (RegionId id : rows_[row])
        if (region(id).vertices == vertices) return id;
    return -1;
}

std::size_t RegionGraph::num_edges() const {
    std::size_t n = 0;
    for (const auto& c : children_) n += c.size();
    return n;
}

std::string to_dot(const RegionGraph& rg, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << name << " {\n  node [shape=box];\n";
    for (std::size_t r = 0; r < rg.num_rows(); ++r) {
        os << "  { rank=same;";
        for (RegionId id : rg.row(r)) os << " r" << id << ";";
        os << " }\n";
    }
    for (const auto& reg : rg.regions()) {
        os << "  r" << reg.id << " [label=\"";
        for (std::size_t k = 0; k < reg.vertices.size(); ++k) os << (k ? "," : "") << reg.vertices[k];
        os << "\"];\n";
    }
    for (const auto& reg : rg.regions())
        for (RegionId c : rg.children(reg.id)) os << "  r" << reg.id << " -> r" << c << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace jtugms
