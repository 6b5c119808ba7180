#ifndef OGC_SURFACES_HPP
#define OGC_SURFACES_HPP

#include <map>
#include <vector>

#include "ogc/generators.hpp"
#include "ogc/halfedge.hpp"

namespace ogc {

struct SurfaceInvariant {
    int genus = 0;
    int boundaries = 0;
    bool operator<(const SurfaceInvariant& o) const {
        return std::make_pair(genus, boundaries) < std::make_pair(o.genus, o.boundaries);
    }
    bool operator==(const SurfaceInvariant& o) const {
        return genus == o.genus && boundaries == o.boundaries;
    }
};

/// Face tracing of a ribbon graph: next(h) = cyclic successor at the vertex of
/// the partner of h. Returns the boundary circuits as half-edge lists.
inline std::vector<std::vector<int>> boundary_cycles(const HalfEdgeGraph& g, const Decoration& ribbon) {
    if (!ribbon.has_rot()) throw StructuralError("boundary cycles need a ribbon structure");
    std::vector<char> seen(g.num_half_edges(), 0);
    std::vector<std::vector<int>> out;
    for (int h0 = 0; h0 < g.num_half_edges(); ++h0) {
        if (seen[h0]) continue;
        std::vector<int> circuit;
        int h = h0;
        do {
            seen[h] = 1;
            circuit.push_back(h);
            h = ribbon.rot[g.inv[h]];
        } while (h != h0);
        out.push_back(std::move(circuit));
    }
    return out;
}

/// Thickened-surface invariants of a connected ribbon graph:
/// V - E + b = 2 - 2g.
inline SurfaceInvariant classify(const HalfEdgeGraph& g, const Decoration& ribbon) {
    if (!g.is_connected()) throw StructuralError("surface classification needs a connected graph");
    SurfaceInvariant s;
    s.boundaries = static_cast<int>(boundary_cycles(g, ribbon).size());
    int chi = g.nv - g.num_edges();
    int twog = 2 - chi - s.boundaries;
    if (twog < 0 || twog % 2 != 0) throw InvariantError("inconsistent Euler characteristic");
    s.genus = twog / 2;
    return s;
}

inline SurfaceInvariant classify(const GeneratorKey& key) { return classify(key.graph, key.deco); }

inline std::map<SurfaceInvariant, std::vector<GeneratorKey>> partition_basis_by_surface(
    const std::vector<GeneratorKey>& basis) {
    std::map<SurfaceInvariant, std::vector<GeneratorKey>> out;
    for (const auto& k : basis) out[classify(k)].push_back(k);
    return out;
}

} // namespace ogc

#endif
