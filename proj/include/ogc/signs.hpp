#ifndef OGC_SIGNS_HPP
#define OGC_SIGNS_HPP

#include <optional>
#include <vector>

#include "ogc/canonical.hpp"
#include "ogc/halfedge.hpp"
#include "ogc/rational.hpp"

namespace ogc {

/// Orientation datum. Plain variants use (vertex_order, edge_init): an ordering
/// of the vertices plus a direction per edge. The forested variant uses
/// forest_order only: an ordering of the distinguished forest's edges.
/// Two data differing by an even number of elementary changes are equal.
struct Orientation {
    std::vector<int> vertex_order;  // vertex ids
    std::vector<int> edge_init;     // initial half-edge per edge rep, aligned with edge_reps()
    std::vector<int> forest_order;  // forest edge reps in order

    static Orientation reference(const HalfEdgeGraph& g, const Decoration& d = {}) {
        Orientation o;
        o.vertex_order.resize(g.nv);
        for (int v = 0; v < g.nv; ++v) o.vertex_order[v] = v;
        o.edge_init = g.edge_reps();
        if (d.has_forest()) o.forest_order = d.forest_edge_reps(g);
        return o;
    }
};

inline int edge_rep_index(const HalfEdgeGraph& g, int h) {
    int rep = std::min(h, g.inv[h]);
    int idx = 0;
    for (int r : g.edge_reps()) {
        if (r == rep) return idx;
        ++idx;
    }
    throw StructuralError("edge rep not found");
}

/// Vertex map induced by a half-edge iso.
inline std::vector<int> induced_vertex_map(const HalfEdgeGraph& src, const GraphIso& iso,
                                           const HalfEdgeGraph& dst) {
    std::vector<int> vmap(src.nv, -1);
    for (int h = 0; h < src.num_half_edges(); ++h) {
        int v = src.vat[h], w = dst.vat[iso.hmap[h]];
        if (vmap[v] >= 0 && vmap[v] != w) throw StructuralError("iso does not respect vertex map");
        vmap[v] = w;
    }
    return vmap;
}

/// Sign of transporting a plain orientation along iso and comparing with the
/// target's reference orientation: parity of the induced vertex permutation
/// times (-1)^(number of edges whose direction disagrees with the reference).
inline int orientation_sign_plain(const HalfEdgeGraph& src, const Orientation& o, const GraphIso& iso,
                                  const HalfEdgeGraph& dst) {
    auto vmap = induced_vertex_map(src, iso, dst);
    std::vector<int> order;
    order.reserve(o.vertex_order.size());
    for (int v : o.vertex_order) order.push_back(vmap[v]);
    int s = sort_sign(order);
    auto reps = src.edge_reps();
    for (size_t i = 0; i < reps.size(); ++i) {
        int init_new = iso.hmap[o.edge_init[i]];
        int rep_new = std::min(init_new, dst.inv[init_new]);
        if (init_new != rep_new) s = -s;
    }
    return s;
}

/// Forested variant: sign is the parity of the induced permutation of the
/// forest edges, comparing the transported order with ascending rep order.
inline int orientation_sign_forest(const HalfEdgeGraph& src, const Orientation& o, const GraphIso& iso,
                                   const HalfEdgeGraph& dst) {
    std::vector<int> transported;
    transported.reserve(o.forest_order.size());
    for (int e : o.forest_order) {
        int h = iso.hmap[e];
        transported.push_back(std::min(h, dst.inv[h]));
    }
    return sort_sign(transported);
}

/// Sign of an automorphism of a canonical graph acting on its reference orientation.
inline int automorphism_sign(const HalfEdgeGraph& g, const Decoration& d, const GraphIso& aut, bool forest_rule) {
    Orientation ref = Orientation::reference(g, d);
    return forest_rule ? orientation_sign_forest(g, ref, aut, g) : orientation_sign_plain(g, ref, aut, g);
}

struct CollapseOut {
    bool zero = false;
    HalfEdgeGraph graph;
    Decoration deco;
    Orientation ori;
    int sign = 1;
    std::vector<int> hmap;  // surviving source half-edge -> new id (-1 for the collapsed pair)
    int tail_vertex = -1, head_vertex = -1;  // source endpoints of the collapsed edge
};

/// Collapses a non-loop edge. Normalization: pick a representative with the
/// tail vertex first, the head second and the edge directed tail -> head; the
/// merged vertex is first in the result's vertex order, remaining vertices
/// keep their relative order, surviving edges keep their directions.
/// A loop yields a zero result, not an error.
inline CollapseOut collapse_edge(const HalfEdgeGraph& g, const Decoration& d, const Orientation& o,
                                 int edge_rep) {
    CollapseOut out;
    int idx = edge_rep_index(g, edge_rep);
    int x = o.edge_init[idx];
    int xb = g.inv[x];
    int v = g.vat[x], w = g.vat[xb];
    if (v == w) {
        out.zero = true;
        return out;
    }
    out.tail_vertex = v;
    out.head_vertex = w;

    std::vector<int> rearranged{v, w};
    for (int u : o.vertex_order)
        if (u != v && u != w) rearranged.push_back(u);
    out.sign = relative_order_sign(o.vertex_order, rearranged);

    const int H = g.num_half_edges();
    out.hmap.assign(H, -1);
    int next = 0;
    for (int h = 0; h < H; ++h)
        if (h != x && h != xb) out.hmap[h] = next++;

    std::vector<int> new_vertex(g.nv, -1);
    new_vertex[v] = 0;
    new_vertex[w] = 0;
    for (size_t i = 2; i < rearranged.size(); ++i) new_vertex[rearranged[i]] = static_cast<int>(i) - 1;

    out.graph.nv = g.nv - 1;
    out.graph.inv.assign(H - 2, -1);
    out.graph.vat.assign(H - 2, -1);
    for (int h = 0; h < H; ++h) {
        if (out.hmap[h] < 0) continue;
        out.graph.inv[out.hmap[h]] = out.hmap[g.inv[h]];
        out.graph.vat[out.hmap[h]] = new_vertex[g.vat[h]];
    }

    if (d.has_rot()) {
        out.deco.rot.assign(H - 2, -1);
        for (int h = 0; h < H; ++h) {
            if (out.hmap[h] < 0) continue;
            int s = d.rot[h];
            if (s == x) s = d.rot[xb];
            if (s == xb) s = d.rot[x];
            // a successor equal to the collapsed pair twice cannot happen: valence >= 2
            out.deco.rot[out.hmap[h]] = out.hmap[s];
        }
    }
    if (d.has_forest()) {
        out.deco.forest.assign(H - 2, 0);
        for (int h = 0; h < H; ++h)
            if (out.hmap[h] >= 0) out.deco.forest[out.hmap[h]] = d.forest[h];
    }
    if (d.has_label()) {
        out.deco.label.assign(H - 2, -1);
        for (int h = 0; h < H; ++h)
            if (out.hmap[h] >= 0) out.deco.label[out.hmap[h]] = d.label[h];
    }

    out.ori.vertex_order.resize(out.graph.nv);
    for (int i = 0; i < out.graph.nv; ++i) out.ori.vertex_order[i] = i;
    auto reps = out.graph.edge_reps();
    out.ori.edge_init.resize(reps.size());
    std::vector<int> init_of_new_rep(H - 2, -1);
    auto old_reps = g.edge_reps();
    for (size_t i = 0; i < old_reps.size(); ++i) {
        int init_old = o.edge_init[i];
        if (out.hmap[init_old] < 0) continue;
        int init_new = out.hmap[init_old];
        int rep_new = std::min(init_new, out.graph.inv[init_new]);
        init_of_new_rep[rep_new] = init_new;
    }
    for (size_t i = 0; i < reps.size(); ++i) out.ori.edge_init[i] = init_of_new_rep[reps[i]];
    return out;
}

struct ReglueOut {
    HalfEdgeGraph graph;
    Orientation ori;
    int sign = 1;
    int circles = 0;
};

/// Cuts every edge and reglues the half-edges along the pairing `pi`,
/// transporting the orientation by the chord-diagram rule: per circle of the
/// union of `pi` with the standard pairing, align the old edges coherently
/// with the traversal (each flip costs a sign) and direct each new edge with
/// its initial half-edge at the end the traversal continues from.
/// The standard pairing reproduces the input exactly.
inline ReglueOut reglue(const HalfEdgeGraph& g, const Decoration& d, const Orientation& o,
                        const std::vector<int>& pi) {
    const int H = g.num_half_edges();
    for (int h = 0; h < H; ++h)
        if (pi[h] == h || pi[pi[h]] != h) throw StructuralError("pairing is not a fixed-point-free involution");

    ReglueOut out;
    out.graph.nv = g.nv;
    out.graph.vat = g.vat;
    out.graph.inv = pi;
    out.ori.vertex_order = o.vertex_order;

    std::vector<char> seen(H, 0);
    std::vector<int> init_of_rep(H, -1);
    auto reps = g.edge_reps();
    std::vector<int> init_of_old_rep(H, -1);
    for (size_t i = 0; i < reps.size(); ++i) init_of_old_rep[reps[i]] = o.edge_init[i];

    for (int h0 = 0; h0 < H; ++h0) {
        if (seen[h0]) continue;
        ++out.circles;
        int t = h0;
        do {
            int tb = g.inv[t];
            seen[t] = 1;
            seen[tb] = 1;
            int rep = std::min(t, tb);
            if (init_of_old_rep[rep] != t) out.sign = -out.sign;  // align old edge with traversal
            int next = pi[tb];
            init_of_rep[std::min(tb, next)] = next;  // new edge {tb,next} directed from `next`
            t = next;
        } while (t != h0);
    }

    auto new_reps = out.graph.edge_reps();
    out.ori.edge_init.resize(new_reps.size());
    for (size_t i = 0; i < new_reps.size(); ++i) out.ori.edge_init[i] = init_of_rep[new_reps[i]];
    (void)d;
    return out;
}

/// Sign epsilon(I,J) for splitting an ordered sequence of blocks (components)
/// into the I-part followed by the J-part: block permutation parity where a
/// block weighs its vertex count.
inline int block_split_sign(const std::vector<int>& block_sizes, const std::vector<int>& I,
                            const std::vector<int>& J) {
    // positions: I blocks first (in order), then J blocks (in order)
    std::vector<int> seq;
    seq.insert(seq.end(), I.begin(), I.end());
    seq.insert(seq.end(), J.begin(), J.end());
    // count inversions weighted by block size parity
    int s = 1;
    for (size_t a = 0; a < seq.size(); ++a)
        for (size_t b = a + 1; b < seq.size(); ++b)
            if (seq[a] > seq[b] && (block_sizes[seq[a]] % 2) && (block_sizes[seq[b]] % 2)) s = -s;
    return s;
}

} // namespace ogc

#endif
