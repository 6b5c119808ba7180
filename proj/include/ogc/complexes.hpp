#ifndef OGC_COMPLEXES_HPP
#define OGC_COMPLEXES_HPP

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ogc/enumerate.hpp"
#include "ogc/generators.hpp"
#include "ogc/ratmat.hpp"
#include "ogc/signs.hpp"

namespace ogc {

// --------------------------------------------------------------- chain bases

struct ComplexSpec {
    Variant variant = Variant::Commutative;
    int rank = 2;
    bool reduced = true;    // valences >= 3; unreduced allows bivalent vertices
    bool connected = true;
    bool opi = false;       // restrict to graphs without separating edges
    int max_half_edges = 16;

    int min_valence() const { return reduced ? 3 : 2; }
    int top_degree() const { return 2 * rank - 2; }
};

inline GeneratorKey empty_generator_key(Variant var) {
    HalfEdgeGraph g;
    Orientation o;
    auto r = canonical_generator(var, g, {}, o);
    return r->first;
}

/// The k-gon: a cycle of k bivalent vertices (k = 1 is the single-loop vertex).
inline HalfEdgeGraph polygon_graph(int k) {
    if (k == 1) return graph_from_edges(1, {{0, 0}});
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k});
    return graph_from_edges(k, edges);
}

/// Deterministic ordered basis of the degree-k chain group.
inline std::vector<GeneratorKey> complex_basis(const ComplexSpec& spec, int degree) {
    std::set<GeneratorKey> keys;
    auto note = [&](std::optional<std::pair<GeneratorKey, int>> g) {
        if (g) keys.insert(g->first);
    };
    if (degree < 1) return {};

    if (spec.variant == Variant::Polygon) {
        if (2 * degree > spec.max_half_edges)
            throw CapError("polygon degree exceeds the half-edge cap");
        auto g = polygon_graph(degree);
        note(canonical_generator(Variant::Polygon, g, {}, Orientation::reference(g)));
        return {keys.begin(), keys.end()};
    }

    if (spec.variant == Variant::Forested) {
        int nv = 2 * spec.rank - 2;
        if (degree > nv) return {};
        if (2 * (nv + spec.rank - 1) > spec.max_half_edges)
            throw CapError("forested rank exceeds the half-edge cap");
        for (const auto& g : enumerate_graphs(nv, spec.rank, 3, true)) {
            if (spec.opi && !is_one_particle_irreducible(g)) continue;
            for (const auto& forest : spanning_forests(g, degree)) {
                Decoration d;
                d.forest.assign(g.num_half_edges(), 0);
                for (int e : forest) d.forest[e] = d.forest[g.inv[e]] = 1;
                note(canonical_generator(Variant::Forested, g, d, Orientation::reference(g, d)));
            }
        }
        return {keys.begin(), keys.end()};
    }

    int edges = degree + spec.rank - 1;
    if (edges < 0) return {};
    if (2 * edges > spec.max_half_edges) throw CapError("basis exceeds the half-edge cap");
    for (const auto& g : enumerate_graphs(degree, spec.rank, spec.min_valence(), spec.connected)) {
        if (spec.opi && !is_one_particle_irreducible(g)) continue;
        if (spec.variant == Variant::Commutative) {
            note(canonical_generator(Variant::Commutative, g, {}, Orientation::reference(g)));
        } else {
            for (const auto& d : ribbon_structures(g))
                note(canonical_generator(Variant::Associative, g, d, Orientation::reference(g)));
        }
    }
    return {keys.begin(), keys.end()};
}

// ------------------------------------------------------------ edge boundary

/// Boundary of a single generator: the sum of its one-edge collapses, or for
/// the forested variant the sum of one-edge forest extensions with the new
/// edge ordered last.
inline ChainVector dE_generator(const GeneratorKey& key) {
    ChainVector out;
    const HalfEdgeGraph& g = key.graph;
    if (key.variant == Variant::Forested) {
        auto forest = key.deco.forest_edge_reps(g);
        std::set<int> in_forest(forest.begin(), forest.end());
        for (int e : g.edge_reps()) {
            if (in_forest.count(e) || g.is_loop(e)) continue;
            Decoration d = key.deco;
            d.forest[e] = d.forest[g.inv[e]] = 1;
            // acyclicity: the endpoints must lie in different trees
            std::vector<int> parent(g.nv);
            for (int v = 0; v < g.nv; ++v) parent[v] = v;
            std::function<int(int)> find = [&](int v) {
                while (parent[v] != v) v = parent[v] = parent[parent[v]];
                return v;
            };
            bool acyclic = true;
            auto join = [&](int rep) {
                int a = find(g.vat[rep]), b = find(g.vat[g.inv[rep]]);
                if (a == b) return false;
                parent[a] = b;
                return true;
            };
            for (int f : forest) join(f);
            acyclic = join(e);
            if (!acyclic) continue;
            Orientation o;
            o.forest_order = forest;
            o.forest_order.push_back(e);
            auto r = canonical_generator(Variant::Forested, g, d, o);
            if (r) out.add(r->first, r->second);
        }
        return out;
    }
    Orientation o = Orientation::reference(g, key.deco);
    for (int e : g.edge_reps()) {
        if (g.is_loop(e)) continue;
        auto c = collapse_edge(g, key.deco, o, e);
        if (c.zero) continue;
        auto r = canonical_generator(key.variant, c.graph, c.deco, c.ori);
        if (r) out.add(r->first, Rat(c.sign * r->second));
    }
    return out;
}

inline ChainVector dE_chain(const ChainVector& x) {
    ChainVector out;
    for (auto& [k, c] : x.terms()) out.add(dE_generator(k), c);
    return out;
}

/// Boundary matrix between two ordered bases; every nonzero image term must
/// lie in the target basis.
inline SparseRationalMatrix boundary_matrix(const std::vector<GeneratorKey>& from,
                                            const std::vector<GeneratorKey>& to) {
    std::map<GeneratorKey, int> index;
    for (size_t i = 0; i < to.size(); ++i) index.emplace(to[i], static_cast<int>(i));
    SparseRationalMatrix m(static_cast<int>(to.size()), static_cast<int>(from.size()));
    for (size_t j = 0; j < from.size(); ++j) {
        auto img = dE_generator(from[j]);
        for (auto& [k, c] : img.terms()) {
            auto it = index.find(k);
            if (it == index.end()) throw StructuralError("boundary image leaves the basis");
            m.add(it->second, static_cast<int>(j), c);
        }
    }
    return m;
}

// --------------------------------------------------------------- H-boundary

/// Sum over pairs of half-edges {x,y} with y != x, x-bar of the rewiring that
/// pairs {x,y} and {x-bar,y-bar}, followed by the collapse of the new edge xy.
inline ChainVector dH_generator(const GeneratorKey& key) {
    ChainVector out;
    const HalfEdgeGraph& g = key.graph;
    const int H = g.num_half_edges();
    Orientation o = Orientation::reference(g, key.deco);
    for (int x = 0; x < H; ++x)
        for (int y = x + 1; y < H; ++y) {
            if (y == g.inv[x]) continue;
            std::vector<int> pi = g.inv;
            pi[x] = y;
            pi[y] = x;
            pi[g.inv[x]] = g.inv[y];
            pi[g.inv[y]] = g.inv[x];
            auto re = reglue(g, key.deco, o, pi);
            auto c = collapse_edge(re.graph, key.deco, re.ori, std::min(x, y));
            if (c.zero) continue;
            auto r = canonical_generator(key.variant, c.graph, c.deco, c.ori);
            if (r) out.add(r->first, Rat(re.sign * c.sign * r->second));
        }
    return out;
}

inline ChainVector dH_chain(const ChainVector& x) {
    ChainVector out;
    for (auto& [k, c] : x.terms()) out.add(dH_generator(k), c);
    return out;
}

// ------------------------------------------------------- product, coproduct

/// Raw disjoint union with b's half-edges and vertices shifted after a's.
inline void disjoint_union_raw(const GeneratorKey& a, const GeneratorKey& b, HalfEdgeGraph& g,
                               Decoration& d, Orientation& o) {
    const int Ha = a.graph.num_half_edges(), Hb = b.graph.num_half_edges();
    g.nv = a.graph.nv + b.graph.nv;
    g.inv = a.graph.inv;
    g.vat = a.graph.vat;
    for (int h = 0; h < Hb; ++h) {
        g.inv.push_back(b.graph.inv[h] + Ha);
        g.vat.push_back(b.graph.vat[h] + a.graph.nv);
    }
    if (a.deco.has_rot() || b.deco.has_rot()) {
        d.rot.clear();
        for (int h = 0; h < Ha; ++h) d.rot.push_back(a.deco.rot[h]);
        for (int h = 0; h < Hb; ++h) d.rot.push_back(b.deco.rot[h] + Ha);
    }
    o.vertex_order.resize(g.nv);
    for (int v = 0; v < g.nv; ++v) o.vertex_order[v] = v;
    o.edge_init.clear();
    // both factors are canonical: every edge is directed from its rep
    for (int h : g.edge_reps()) o.edge_init.push_back(h);
}

inline ChainVector product(const GeneratorKey& a, const GeneratorKey& b) {
    if (a.variant != b.variant) throw StructuralError("product of mixed variants");
    HalfEdgeGraph g;
    Decoration d;
    Orientation o;
    disjoint_union_raw(a, b, g, d, o);
    auto r = canonical_generator(a.variant, g, d, o);
    ChainVector out;
    if (r) out.add(r->first, r->second);
    return out;
}

inline ChainVector product(const ChainVector& x, const ChainVector& y) {
    ChainVector out;
    for (auto& [ka, ca] : x.terms())
        for (auto& [kb, cb] : y.terms()) out.add(product(ka, kb), ca * cb);
    return out;
}

/// Extracts the subgraph on a set of components, with the induced vertex
/// order and edge directions of the reference orientation.
inline void extract_components(const GeneratorKey& key, const std::vector<int>& comp_of,
                               const std::set<int>& chosen, HalfEdgeGraph& g, Decoration& d,
                               Orientation& o) {
    const HalfEdgeGraph& src = key.graph;
    std::vector<int> vmap(src.nv, -1), hmap(src.num_half_edges(), -1);
    int nv = 0;
    for (int v = 0; v < src.nv; ++v)
        if (chosen.count(comp_of[v])) vmap[v] = nv++;
    int nh = 0;
    for (int h = 0; h < src.num_half_edges(); ++h)
        if (vmap[src.vat[h]] >= 0) hmap[h] = nh++;
    g.nv = nv;
    g.inv.assign(nh, -1);
    g.vat.assign(nh, -1);
    for (int h = 0; h < src.num_half_edges(); ++h) {
        if (hmap[h] < 0) continue;
        g.inv[hmap[h]] = hmap[src.inv[h]];
        g.vat[hmap[h]] = vmap[src.vat[h]];
    }
    if (key.deco.has_rot()) {
        d.rot.assign(nh, -1);
        for (int h = 0; h < src.num_half_edges(); ++h)
            if (hmap[h] >= 0) d.rot[hmap[h]] = hmap[key.deco.rot[h]];
    }
    o.vertex_order.resize(nv);
    for (int v = 0; v < nv; ++v) o.vertex_order[v] = v;
    o.edge_init.clear();
    auto src_reps = src.edge_reps();
    Orientation src_ref = Orientation::reference(src, key.deco);
    std::vector<int> init_at(nh, -1);
    for (size_t i = 0; i < src_reps.size(); ++i) {
        int init = src_ref.edge_init[i];
        if (hmap[init] < 0) continue;
        int rep_new = std::min(hmap[init], g.inv[hmap[init]]);
        init_at[rep_new] = hmap[init];
    }
    for (int rep : g.edge_reps()) o.edge_init.push_back(init_at[rep]);
}

/// Coproduct: connected generators are primitive; in general, sum over
/// ordered splittings of the components with the block permutation sign.
inline TensorChain coproduct(const GeneratorKey& key) {
    TensorChain out;
    auto comp_of = key.graph.vertex_components();
    int m = key.graph.nv == 0 ? 0 : 1 + *std::max_element(comp_of.begin(), comp_of.end());
    std::vector<int> sizes(m, 0);
    for (int v = 0; v < key.graph.nv; ++v) ++sizes[comp_of[v]];

    // reference order lists vertices 0..nv-1; components are already listed in
    // order of first occurrence, but interleavings carry a sorting sign
    std::vector<int> block_sorted;
    for (int c = 0; c < m; ++c)
        for (int v = 0; v < key.graph.nv; ++v)
            if (comp_of[v] == c) block_sorted.push_back(v);
    std::vector<int> ident(key.graph.nv);
    for (int v = 0; v < key.graph.nv; ++v) ident[v] = v;
    int presort = key.graph.nv ? relative_order_sign(ident, block_sorted) : 1;

    GeneratorKey unit = empty_generator_key(key.variant);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> I, J;
        for (int c = 0; c < m; ++c)
            ((mask >> c) & 1u) ? I.push_back(c) : J.push_back(c);
        int eps = block_split_sign(sizes, I, J);
        auto part = [&](const std::vector<int>& sel) -> std::optional<std::pair<GeneratorKey, int>> {
            if (sel.empty()) return std::make_pair(unit, 1);
            HalfEdgeGraph g;
            Decoration d;
            Orientation o;
            extract_components(key, comp_of, std::set<int>(sel.begin(), sel.end()), g, d, o);
            return canonical_generator(key.variant, g, d, o);
        };
        auto left = part(I);
        auto right = part(J);
        if (!left || !right) throw InvariantError("component of a nonzero generator is zero");
        out.add(left->first, right->first, Rat(presort * eps * left->second * right->second));
    }
    return out;
}

inline TensorChain coproduct(const ChainVector& x) {
    TensorChain out;
    for (auto& [k, c] : x.terms()) {
        TensorChain t = coproduct(k);
        out.add(t, c);
    }
    return out;
}

/// Reduced coproduct: coproduct minus the two primitive terms.
inline TensorChain coproduct_reduced(const ChainVector& x) {
    TensorChain out = coproduct(x);
    GeneratorKey unit;
    bool have_unit = false;
    for (auto& [k, c] : x.terms()) {
        if (!have_unit) {
            unit = empty_generator_key(k.variant);
            have_unit = true;
        }
        out.add(k, unit, -c);
        out.add(unit, k, -c);
    }
    return out;
}

// ------------------------------------------------------- bracket, cobracket

/// Bracket: sum over one half-edge of each factor of the rewired gluing,
/// collapsing the new edge joining the factors.
inline ChainVector bracket(const GeneratorKey& a, const GeneratorKey& b) {
    if (a.variant != b.variant) throw StructuralError("bracket of mixed variants");
    HalfEdgeGraph g;
    Decoration d;
    Orientation o;
    disjoint_union_raw(a, b, g, d, o);
    const int Ha = a.graph.num_half_edges();
    ChainVector out;
    for (int x = 0; x < Ha; ++x)
        for (int y = Ha; y < g.num_half_edges(); ++y) {
            std::vector<int> pi = g.inv;
            pi[x] = y;
            pi[y] = x;
            pi[g.inv[x]] = g.inv[y];
            pi[g.inv[y]] = g.inv[x];
            auto re = reglue(g, d, o, pi);
            auto c = collapse_edge(re.graph, d, re.ori, std::min(x, y));
            if (c.zero) continue;
            auto r = canonical_generator(a.variant, c.graph, c.deco, c.ori);
            if (r) out.add(r->first, Rat(re.sign * c.sign * r->second));
        }
    return out;
}

inline ChainVector bracket(const ChainVector& x, const ChainVector& y) {
    ChainVector out;
    for (auto& [ka, ca] : x.terms())
        for (auto& [kb, cb] : y.terms()) out.add(bracket(ka, kb), ca * cb);
    return out;
}

namespace detail {

/// Common machinery of theta and its homotopy: for each separating pair of a
/// connected generator, the two-component splitting with its sorting sign.
template <typename F>
void for_each_separating_split(const GeneratorKey& key, F&& f) {
    const HalfEdgeGraph& g = key.graph;
    if (!g.is_connected()) throw StructuralError("theta/T are defined on connected generators");
    const int H = g.num_half_edges();
    Orientation o = Orientation::reference(g, key.deco);
    for (int x = 0; x < H; ++x)
        for (int y = x + 1; y < H; ++y) {
            if (y == g.inv[x]) continue;
            std::vector<int> pi = g.inv;
            pi[x] = y;
            pi[y] = x;
            pi[g.inv[x]] = g.inv[y];
            pi[g.inv[y]] = g.inv[x];
            auto re = reglue(g, key.deco, o, pi);
            auto comp_of = re.graph.vertex_components();
            int m = 1 + *std::max_element(comp_of.begin(), comp_of.end());
            if (m == 1) continue;
            // component containing the new edge {x,y}
            int cprime = comp_of[re.graph.vat[x]];
            // sort vertices into (prime block, other block)
            std::vector<int> blocks;
            for (int v = 0; v < re.graph.nv; ++v)
                if (comp_of[v] == cprime) blocks.push_back(v);
            for (int v = 0; v < re.graph.nv; ++v)
                if (comp_of[v] != cprime) blocks.push_back(v);
            int sort_sign_val = relative_order_sign(re.ori.vertex_order, blocks);
            f(re, comp_of, cprime, re.sign * sort_sign_val, x, y);
        }
}

/// Extract one component of a reglued graph with the orientation induced from
/// the given (not necessarily reference) orientation.
inline void extract_component_oriented(const HalfEdgeGraph& src, const Decoration& deco,
                                       const Orientation& ori, const std::vector<int>& comp_of,
                                       int comp, HalfEdgeGraph& g, Decoration& d, Orientation& o,
                                       std::vector<int>& hmap) {
    std::vector<int> vmap(src.nv, -1);
    hmap.assign(src.num_half_edges(), -1);
    int nv = 0;
    for (int v = 0; v < src.nv; ++v)
        if (comp_of[v] == comp) vmap[v] = nv++;
    int nh = 0;
    for (int h = 0; h < src.num_half_edges(); ++h)
        if (vmap[src.vat[h]] >= 0) hmap[h] = nh++;
    g.nv = nv;
    g.inv.assign(nh, -1);
    g.vat.assign(nh, -1);
    for (int h = 0; h < src.num_half_edges(); ++h) {
        if (hmap[h] < 0) continue;
        g.inv[hmap[h]] = hmap[src.inv[h]];
        g.vat[hmap[h]] = vmap[src.vat[h]];
    }
    if (deco.has_rot()) {
        d.rot.assign(nh, -1);
        for (int h = 0; h < src.num_half_edges(); ++h)
            if (hmap[h] >= 0) d.rot[hmap[h]] = hmap[deco.rot[h]];
    }
    o.vertex_order.resize(nv);
    for (int v = 0; v < nv; ++v) o.vertex_order[v] = v;
    // vertex order induced: vertices of the component in src-order appear in
    // relative order, which is exactly 0..nv-1 after vmap since vmap increases
    o.edge_init.clear();
    auto src_reps = src.edge_reps();
    std::vector<int> init_at(nh < 1 ? 1 : nh, -1);
    for (size_t i = 0; i < src_reps.size(); ++i) {
        int init = ori.edge_init[i];
        if (hmap[init] < 0) continue;
        int rep_new = std::min(hmap[init], g.inv[hmap[init]]);
        init_at[rep_new] = hmap[init];
    }
    for (int rep : g.edge_reps()) o.edge_init.push_back(init_at[rep]);
}

} // namespace detail

/// Cobracket on connected generators: sum over separating pairs of
/// X'_{xy} (x) X'' + eps2 * X'' (x) X'_{xy}, where X' carries the new edge.
inline TensorChain theta(const GeneratorKey& key) {
    TensorChain out;
    detail::for_each_separating_split(key, [&](const ReglueOut& re, const std::vector<int>& comp_of,
                                               int cprime, int sgn, int x, int y) {
        HalfEdgeGraph gp, gq;
        Decoration dp, dq;
        Orientation op, oq;
        std::vector<int> hp, hq;
        detail::extract_component_oriented(re.graph, key.deco, re.ori, comp_of, cprime, gp, dp, op, hp);
        int other = -1;
        for (int v = 0; v < re.graph.nv; ++v)
            if (comp_of[v] != cprime) other = comp_of[v];
        detail::extract_component_oriented(re.graph, key.deco, re.ori, comp_of, other, gq, dq, oq, hq);

        // vertex-order normalization: the split sign already moved the prime
        // block first; comparing against the blocks order requires the induced
        // per-component orders, which extract_component_oriented matches when
        // the source order is 0..nv-1. re.ori.vertex_order is the reference
        // order of the original graph, i.e. identity, so this holds.
        auto cprime_collapsed = collapse_edge(gp, dp, op, std::min(hp[x], hp[y]));
        if (cprime_collapsed.zero) return;
        auto left = canonical_generator(key.variant, cprime_collapsed.graph, cprime_collapsed.deco,
                                        cprime_collapsed.ori);
        auto right = canonical_generator(key.variant, gq, dq, oq);
        if (!left || !right) return;
        int s = sgn * cprime_collapsed.sign * left->second * right->second;
        out.add(left->first, right->first, Rat(s));
        int eps2 = ((gp.nv % 2) && (gq.nv % 2)) ? -1 : 1;
        out.add(right->first, left->first, Rat(s * eps2));
    });
    return out;
}

inline TensorChain theta(const ChainVector& xchain) {
    TensorChain out;
    for (auto& [k, c] : xchain.terms()) {
        TensorChain t = theta(k);
        out.add(t, c);
    }
    return out;
}

/// Homotopy for theta: the same splitting sum without collapsing the new edge.
inline TensorChain T_homotopy(const GeneratorKey& key) {
    TensorChain out;
    detail::for_each_separating_split(key, [&](const ReglueOut& re, const std::vector<int>& comp_of,
                                               int cprime, int sgn, int, int) {
        HalfEdgeGraph gp, gq;
        Decoration dp, dq;
        Orientation op, oq;
        std::vector<int> hp, hq;
        detail::extract_component_oriented(re.graph, key.deco, re.ori, comp_of, cprime, gp, dp, op, hp);
        int other = -1;
        for (int v = 0; v < re.graph.nv; ++v)
            if (comp_of[v] != cprime) other = comp_of[v];
        detail::extract_component_oriented(re.graph, key.deco, re.ori, comp_of, other, gq, dq, oq, hq);
        auto left = canonical_generator(key.variant, gp, dp, op);
        auto right = canonical_generator(key.variant, gq, dq, oq);
        if (!left || !right) return;
        out.add(left->first, right->first, Rat(sgn * left->second * right->second));
    });
    return out;
}

inline TensorChain T_homotopy(const ChainVector& x) {
    TensorChain out;
    for (auto& [k, c] : x.terms()) {
        TensorChain t = T_homotopy(k);
        out.add(t, c);
    }
    return out;
}

/// Graded extensions to tensors; the grading is the vertex count.
inline TensorChain dE_tensor(const TensorChain& t) {
    TensorChain out;
    for (auto& [kk, c] : t.terms()) {
        auto da = dE_generator(kk.first);
        for (auto& [k2, c2] : da.terms()) out.add(k2, kk.second, c * c2);
        int sgn = (kk.first.graph.nv % 2) ? -1 : 1;
        auto db = dE_generator(kk.second);
        for (auto& [k2, c2] : db.terms()) out.add(kk.first, k2, c * c2 * sgn);
    }
    return out;
}

inline TensorChain dH_tensor(const TensorChain& t) {
    TensorChain out;
    for (auto& [kk, c] : t.terms()) {
        auto da = dH_generator(kk.first);
        for (auto& [k2, c2] : da.terms()) out.add(k2, kk.second, c * c2);
        int sgn = (kk.first.graph.nv % 2) ? -1 : 1;
        auto db = dH_generator(kk.second);
        for (auto& [k2, c2] : db.terms()) out.add(kk.first, k2, c * c2 * sgn);
    }
    return out;
}

// ------------------------------------------------------------ IHX machinery

/// Basic relator data: the canonical collapsed pair is the dedup key.
inline std::vector<ChainVector> ihx_relators(const ComplexSpec& spec, int degree) {
    if (spec.variant != Variant::Forested) throw StructuralError("IHX relators live in the forested variant");
    std::vector<ChainVector> out;
    std::set<std::vector<int>> seen;
    for (const auto& key : complex_basis(spec, degree)) {
        const HalfEdgeGraph& g = key.graph;
        for (int e : key.deco.forest_edge_reps(g)) {
            // collapse e (a forest edge is never a loop)
            Orientation o = Orientation::reference(g);
            auto c = collapse_edge(g, key.deco, o, e);
            Decoration cd;
            cd.forest = c.deco.forest;
            auto canon = canonical_cached(c.graph, cd);
            if (!seen.insert(canon->stream).second) continue;

            // locate the 4-valent vertex of the collapsed graph
            const HalfEdgeGraph& cg = canon->graph;
            int u = -1;
            for (int v = 0; v < cg.nv; ++v)
                if (cg.valence(v) == 4) u = v;
            if (u < 0) throw InvariantError("collapsed forested graph lacks a 4-valent vertex");
            auto hs = cg.half_edges_at(u);
            auto forest_reps = canon->deco.forest_edge_reps(cg);

            ChainVector relator;
            const std::array<std::array<int, 4>, 3> splits = {
                std::array<int, 4>{hs[0], hs[1], hs[2], hs[3]},
                std::array<int, 4>{hs[0], hs[2], hs[1], hs[3]},
                std::array<int, 4>{hs[0], hs[3], hs[1], hs[2]}};
            for (const auto& sp : splits) {
                HalfEdgeGraph bg = cg;
                const int H = cg.num_half_edges();
                int w = bg.nv;  // new vertex keeps the second pair
                bg.nv += 1;
                bg.inv.push_back(H + 1);
                bg.inv.push_back(H);
                bg.vat.push_back(u);
                bg.vat.push_back(w);
                bg.vat[sp[2]] = w;
                bg.vat[sp[3]] = w;
                Decoration bd;
                bd.forest = canon->deco.forest;
                bd.forest.push_back(1);
                bd.forest.push_back(1);
                Orientation bo;
                bo.forest_order = forest_reps;
                bo.forest_order.push_back(H);
                auto r = canonical_generator(Variant::Forested, bg, bd, bo);
                if (r) relator.add(r->first, r->second);
            }
            if (!relator.is_zero()) out.push_back(relator);
        }
    }
    return out;
}

// ----------------------------------------------------------- quotient chain

struct InducedComplex {
    std::vector<std::vector<GeneratorKey>> bases;   // per degree, 1-based offset below
    std::vector<int> ambient_dims;
    std::vector<int> dims;                          // quotient dimensions per degree
    std::vector<SparseRationalMatrix> boundaries;   // boundaries[k]: degree k -> k-1
    int min_degree = 1;
};

/// Quotient of a chain complex by per-degree relation spans; the boundary must
/// map relations into relations.
inline InducedComplex quotient_complex(const std::vector<std::vector<GeneratorKey>>& bases,
                                       const std::vector<SparseRationalMatrix>& d,
                                       const std::vector<std::vector<SparseVec>>& relations) {
    const size_t n = bases.size();
    std::vector<Echelon> rel(n);
    std::vector<std::vector<int>> free_cols(n);
    for (size_t k = 0; k < n; ++k) {
        for (const auto& v : relations[k]) rel[k].insert(v);
        std::set<int> pivots(rel[k].pivots().begin(), rel[k].pivots().end());
        for (int c = 0; c < static_cast<int>(bases[k].size()); ++c)
            if (!pivots.count(c)) free_cols[k].push_back(c);
    }
    InducedComplex out;
    out.bases = bases;
    for (size_t k = 0; k < n; ++k) {
        out.ambient_dims.push_back(static_cast<int>(bases[k].size()));
        out.dims.push_back(static_cast<int>(free_cols[k].size()));
    }
    for (size_t k = 0; k < n; ++k) {
        int rows = k == 0 ? 0 : out.dims[k - 1];
        SparseRationalMatrix m(rows, out.dims[k]);
        if (k > 0) {
            // invariance: d(relations_k) subset relations_{k-1}
            for (const auto& v : relations[k]) {
                SparseVec img;
                for (auto& [c, coeff] : v)
                    for (auto& [rc, val] : d[k].entries)
                        if (rc.second == c) {
                            img[rc.first] += val * coeff;
                            if (img[rc.first] == 0) img.erase(rc.first);
                        }
                if (!rel[k - 1].contains(img))
                    throw InvariantError("boundary does not preserve the relation span");
            }
            std::map<int, int> row_index;
            for (size_t i = 0; i < free_cols[k - 1].size(); ++i) row_index[free_cols[k - 1][i]] = static_cast<int>(i);
            for (size_t j = 0; j < free_cols[k].size(); ++j) {
                SparseVec col;
                for (auto& [rc, val] : d[k].entries)
                    if (rc.second == free_cols[k][j]) col[rc.first] = val;
                col = rel[k - 1].reduce(col);
                for (auto& [r, val] : col) {
                    auto it = row_index.find(r);
                    if (it == row_index.end()) throw InvariantError("reduced column hits a pivot row");
                    m.add(it->second, static_cast<int>(j), val);
                }
            }
        }
        out.boundaries.push_back(std::move(m));
    }
    return out;
}

// ------------------------------------------------------------------ tables

struct HomologyResult {
    std::vector<int> degrees;
    std::vector<int> dims;
    std::vector<int> betti;
};

/// Homology of the (possibly quotiented) complex for one variant and rank.
inline HomologyResult compute_homology(const ComplexSpec& spec, int max_degree = -1) {
    int kmax = max_degree > 0 ? max_degree : spec.top_degree();
    std::vector<std::vector<GeneratorKey>> bases;
    for (int k = 0; k <= kmax; ++k) bases.push_back(k == 0 ? std::vector<GeneratorKey>{} : complex_basis(spec, k));
    std::vector<SparseRationalMatrix> d;
    for (int k = 0; k <= kmax; ++k)
        d.push_back(k == 0 ? SparseRationalMatrix(0, static_cast<int>(bases[0].size()))
                           : boundary_matrix(bases[k], bases[k - 1]));

    HomologyResult res;
    if (spec.variant == Variant::Forested) {
        std::vector<std::vector<SparseVec>> rels(kmax + 1);
        for (int k = 1; k <= kmax; ++k) {
            std::map<GeneratorKey, int> index;
            for (size_t i = 0; i < bases[k].size(); ++i) index[bases[k][i]] = static_cast<int>(i);
            for (const auto& r : ihx_relators(spec, k)) {
                SparseVec v;
                for (auto& [key, c] : r.terms()) v[index.at(key)] = c;
                rels[k].push_back(v);
            }
        }
        auto induced = quotient_complex(bases, d, rels);
        for (int k = 1; k <= kmax; ++k) {
            SparseRationalMatrix next = (k + 1 <= kmax) ? induced.boundaries[k + 1]
                                                        : SparseRationalMatrix(induced.dims[k], 0);
            res.degrees.push_back(k);
            res.dims.push_back(induced.dims[k]);
            res.betti.push_back(betti(induced.boundaries[k], next));
        }
        return res;
    }
    for (int k = 1; k <= kmax; ++k) {
        SparseRationalMatrix next =
            (k + 1 <= kmax) ? d[k + 1] : SparseRationalMatrix(static_cast<int>(bases[k].size()), 0);
        res.degrees.push_back(k);
        res.dims.push_back(static_cast<int>(bases[k].size()));
        res.betti.push_back(betti(d[k], next));
    }
    return res;
}

} // namespace ogc

#endif
