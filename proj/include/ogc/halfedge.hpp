#ifndef OGC_HALFEDGE_HPP
#define OGC_HALFEDGE_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "ogc/errors.hpp"

namespace ogc {

/// Multigraph as half-edges: a fixed-point-free involution pairing half-edges
/// into edges, plus the vertex each half-edge is attached to.
/// Half-edges are 0..H-1, vertices 0..nv-1. Loops and parallel edges allowed.
struct HalfEdgeGraph {
    std::vector<int> inv;  // partner half-edge
    std::vector<int> vat;  // vertex of each half-edge
    int nv = 0;

    int num_half_edges() const { return static_cast<int>(inv.size()); }
    int num_edges() const { return static_cast<int>(inv.size()) / 2; }
    int num_vertices() const { return nv; }

    bool is_loop(int h) const { return vat[h] == vat[inv[h]]; }

    /// Edge representatives: the smaller half-edge of each pair, ascending.
    std::vector<int> edge_reps() const {
        std::vector<int> reps;
        for (int h = 0; h < num_half_edges(); ++h)
            if (h < inv[h]) reps.push_back(h);
        return reps;
    }

    int valence(int v) const {
        int d = 0;
        for (int x : vat)
            if (x == v) ++d;
        return d;
    }

    std::vector<int> valences() const {
        std::vector<int> d(nv, 0);
        for (int x : vat) ++d[x];
        return d;
    }

    std::vector<int> half_edges_at(int v) const {
        std::vector<int> hs;
        for (int h = 0; h < num_half_edges(); ++h)
            if (vat[h] == v) hs.push_back(h);
        return hs;
    }

    int min_valence() const {
        auto d = valences();
        return d.empty() ? 0 : *std::min_element(d.begin(), d.end());
    }

    int loop_count(int v) const {
        int c = 0;
        for (int h : edge_reps())
            if (vat[h] == v && vat[inv[h]] == v) ++c;
        return c;
    }

    /// Component id per vertex, ids 0..c-1 in order of first occurrence.
    std::vector<int> vertex_components() const {
        std::vector<int> comp(nv, -1);
        int c = 0;
        for (int s = 0; s < nv; ++s) {
            if (comp[s] >= 0) continue;
            comp[s] = c;
            std::vector<int> stack{s};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int h = 0; h < num_half_edges(); ++h) {
                    if (vat[h] != v) continue;
                    int w = vat[inv[h]];
                    if (comp[w] < 0) {
                        comp[w] = c;
                        stack.push_back(w);
                    }
                }
            }
            ++c;
        }
        return comp;
    }

    int num_components() const {
        auto comp = vertex_components();
        return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
    }

    bool is_connected() const { return nv > 0 && num_components() == 1; }

    /// First Betti number: |E| - |V| + #components.
    int rank() const { return num_edges() - nv + num_components(); }

    /// Connectivity with one edge removed (the edge of half-edge h).
    bool connected_without(int h) const {
        int skip_a = h, skip_b = inv[h];
        std::vector<char> seen(nv, 0);
        if (nv == 0) return false;
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int x = 0; x < num_half_edges(); ++x) {
                if (vat[x] != v || x == skip_a || x == skip_b) continue;
                int partner = inv[x];
                if (partner == skip_a || partner == skip_b) continue;
                int w = vat[partner];
                if (!seen[w]) {
                    seen[w] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
            }
        }
        return cnt == nv;
    }

    /// Bridges as edge representatives. Loops are never bridges.
    std::vector<int> bridge_edges() const {
        std::vector<int> out;
        for (int h : edge_reps())
            if (!is_loop(h) && !connected_without(h)) out.push_back(h);
        return out;
    }

    void validate() const {
        const int H = num_half_edges();
        if (H % 2 != 0) throw StructuralError("odd number of half-edges");
        if (static_cast<int>(vat.size()) != H) throw StructuralError("vertex map size mismatch");
        for (int h = 0; h < H; ++h) {
            if (inv[h] < 0 || inv[h] >= H || inv[h] == h || inv[inv[h]] != h)
                throw StructuralError("involution is not a fixed-point-free pairing");
            if (vat[h] < 0 || vat[h] >= nv) throw StructuralError("half-edge at unknown vertex");
        }
        auto d = valences();
        for (int v = 0; v < nv; ++v)
            if (d[v] == 0) throw StructuralError("vertex of valence 0");
    }
};

/// True iff the graph is connected with no separating edge.
inline bool is_one_particle_irreducible(const HalfEdgeGraph& g) {
    return g.is_connected() && g.bridge_edges().empty();
}

/// Builds a graph from edge endpoint pairs; half-edges 2i, 2i+1 form edge i.
inline HalfEdgeGraph graph_from_edges(int nv, const std::vector<std::pair<int, int>>& edges) {
    HalfEdgeGraph g;
    g.nv = nv;
    g.inv.resize(edges.size() * 2);
    g.vat.resize(edges.size() * 2);
    for (size_t i = 0; i < edges.size(); ++i) {
        int a = static_cast<int>(2 * i), b = static_cast<int>(2 * i + 1);
        g.inv[a] = b;
        g.inv[b] = a;
        g.vat[a] = edges[i].first;
        g.vat[b] = edges[i].second;
    }
    g.validate();
    return g;
}

/// Decoration carried through canonical labeling. Empty vectors mean "absent".
/// rot: cyclic orders, rot[h] = next half-edge at the same vertex;
/// forest: per-half-edge membership flag of a distinguished edge subset;
/// label: per-half-edge symbol (>= 0), used by the state-sum machinery.
struct Decoration {
    std::vector<int> rot;
    std::vector<char> forest;
    std::vector<int> label;

    bool has_rot() const { return !rot.empty(); }
    bool has_forest() const { return !forest.empty(); }
    bool has_label() const { return !label.empty(); }

    void validate(const HalfEdgeGraph& g) const {
        const int H = g.num_half_edges();
        if (has_rot()) {
            if (static_cast<int>(rot.size()) != H) throw StructuralError("rot size mismatch");
            // rot must permute each vertex fiber in a single cycle
            for (int v = 0; v < g.nv; ++v) {
                auto hs = g.half_edges_at(v);
                if (hs.empty()) continue;
                int h = hs[0], steps = 0;
                do {
                    if (g.vat[h] != v) throw StructuralError("rot leaves its vertex");
                    h = rot[h];
                    ++steps;
                } while (h != hs[0] && steps <= H);
                if (steps != static_cast<int>(hs.size()))
                    throw StructuralError("rot is not a single cycle at a vertex");
            }
        }
        if (has_forest()) {
            if (static_cast<int>(forest.size()) != H) throw StructuralError("forest size mismatch");
            for (int h = 0; h < H; ++h)
                if (forest[h] != forest[g.inv[h]]) throw StructuralError("forest flag not edge-paired");
        }
        if (has_label() && static_cast<int>(label.size()) != H)
            throw StructuralError("label size mismatch");
    }

    /// Forest edges as representatives (smaller half-edge), ascending.
    std::vector<int> forest_edge_reps(const HalfEdgeGraph& g) const {
        std::vector<int> reps;
        if (!has_forest()) return reps;
        for (int h : g.edge_reps())
            if (forest[h]) reps.push_back(h);
        return reps;
    }
};

/// Cyclic order at one vertex as a sequence starting from `start`.
inline std::vector<int> rot_cycle_from(const Decoration& d, int start) {
    std::vector<int> seq;
    int h = start;
    do {
        seq.push_back(h);
        h = d.rot[h];
    } while (h != start);
    return seq;
}

} // namespace ogc

#endif
