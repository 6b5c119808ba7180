#ifndef OGC_LIETRANS_HPP
#define OGC_LIETRANS_HPP

#include <map>
#include <vector>

#include "ogc/complexes.hpp"
#include "ogc/spiders.hpp"

namespace ogc {

/// O-graph with explicit Lie-spider colors: per vertex a combination of
/// vertex-oriented binary trees whose legs are the incident half-edges.
struct LieOGraphRaw {
    HalfEdgeGraph graph;
    Orientation ori;
    std::vector<LieTree> colors;  // one tree per vertex
    Rat coeff = 1;
};

namespace detail {

inline LieTree rename_tree_legs(const LieTree& t, const std::vector<int>& map) {
    LieTree r = t;
    if (r.root_leg >= 0) r.root_leg = map[r.root_leg];
    for (auto& n : r.nodes)
        if (n.leg >= 0) n.leg = map[n.leg];
    return r;
}

} // namespace detail

/// Chain in the Lie O-graph realization. Terms are indexed by the canonical
/// underlying graph; colors are stored as coefficient tensors over per-vertex
/// comb-basis words and projected to automorphism coinvariants, so equality of
/// chains is equality of the stored maps.
class LieChain {
public:
    using TensorKey = std::vector<std::vector<int>>;  // comb word per vertex

    void add_raw(const LieOGraphRaw& raw) {
        if (raw.coeff == 0) return;
        auto canon = canonical_cached(raw.graph, {});
        int s = orientation_sign_plain(raw.graph, raw.ori, canon->cert, canon->graph);
        auto vmap = induced_vertex_map(raw.graph, canon->cert, canon->graph);

        // transport colors and expand into comb coordinates
        std::vector<LieSpider> spiders(raw.graph.nv);
        for (int v = 0; v < raw.graph.nv; ++v)
            spiders[vmap[v]] = lie_normal_form(detail::rename_tree_legs(raw.colors[v], canon->cert.hmap));

        Entry& e = terms_[canon->stream];
        if (e.graph.nv == 0 && canon->graph.nv > 0) e.graph = canon->graph;
        expand_product(e, spiders, raw.coeff * s);
        dirty_ = true;
    }

    void add(const LieChain& o, const Rat& scale = 1) {
        for (auto& [stream, entry] : o.terms_) {
            Entry& e = terms_[stream];
            if (e.graph.nv == 0 && entry.graph.nv > 0) e.graph = entry.graph;
            for (auto& [tk, c] : entry.tensor) accumulate(e, tk, c * scale);
        }
        dirty_ = true;
    }

    /// Projects every term to automorphism coinvariants and drops zeros.
    void normalize() {
        if (!dirty_) return;
        std::map<std::vector<int>, Entry> out;
        for (auto& [stream, entry] : terms_) {
            if (entry.tensor.empty()) continue;
            auto canon = canonical_cached(entry.graph, {});
            long n_aut = static_cast<long>(canon->automorphisms.size());
            Entry proj;
            proj.graph = entry.graph;
            for (const GraphIso& a : canon->automorphisms) {
                int sa = automorphism_sign(canon->graph, {}, a, false);
                auto avmap = induced_vertex_map(canon->graph, a, canon->graph);
                for (auto& [tk, c] : entry.tensor) {
                    // transport each vertex color along a
                    std::vector<LieSpider> spiders(entry.graph.nv);
                    for (int v = 0; v < entry.graph.nv; ++v) {
                        auto hs = entry.graph.half_edges_at(v);
                        LieTree t = comb_tree(hs.empty() ? -1 : *std::min_element(hs.begin(), hs.end()), tk[v]);
                        spiders[avmap[v]] = lie_normal_form(detail::rename_tree_legs(t, a.hmap));
                    }
                    expand_product(proj, spiders, c * sa / n_aut);
                }
            }
            for (auto it = proj.tensor.begin(); it != proj.tensor.end();)
                it = (it->second == 0) ? proj.tensor.erase(it) : std::next(it);
            if (!proj.tensor.empty()) out.emplace(stream, std::move(proj));
        }
        terms_ = std::move(out);
        dirty_ = false;
    }

    bool is_zero() {
        normalize();
        return terms_.empty();
    }

    bool equals(LieChain& o) {
        normalize();
        o.normalize();
        if (terms_.size() != o.terms_.size()) return false;
        for (auto& [stream, e] : terms_) {
            auto it = o.terms_.find(stream);
            if (it == o.terms_.end() || it->second.tensor != e.tensor) return false;
        }
        return true;
    }

    size_t term_count() {
        normalize();
        size_t n = 0;
        for (auto& [s, e] : terms_) n += e.tensor.size();
        return n;
    }

    /// Edge boundary in the Lie realization: collapse every non-loop edge and
    /// mate the two tree colors through the collapsed legs.
    LieChain boundary() {
        normalize();
        LieChain out;
        for (auto& [stream, entry] : terms_) {
            const HalfEdgeGraph& g = entry.graph;
            for (auto& [tk, c] : entry.tensor) {
                LieOGraphRaw raw;
                raw.graph = g;
                raw.ori = Orientation::reference(g);
                raw.coeff = c;
                for (int v = 0; v < g.nv; ++v) {
                    auto hs = g.half_edges_at(v);
                    raw.colors.push_back(comb_tree(*std::min_element(hs.begin(), hs.end()), tk[v]));
                }
                for (int e : g.edge_reps()) {
                    if (g.is_loop(e)) continue;
                    out.add_raw(collapse_lie(raw, e));
                }
            }
        }
        out.normalize();
        return out;
    }

    /// Single collapse step with color mating; exposed for the translation.
    /// When hmap_out is given it receives the surviving half-edge relabeling.
    static LieOGraphRaw collapse_lie(const LieOGraphRaw& raw, int edge_rep,
                                     std::vector<int>* hmap_out = nullptr) {
        const HalfEdgeGraph& g = raw.graph;
        int idx = edge_rep_index(g, edge_rep);
        int x = raw.ori.edge_init[idx];
        int xb = g.inv[x];
        int v = g.vat[x], w = g.vat[xb];
        if (v == w) throw StructuralError("collapse_lie on a loop");
        auto c = collapse_edge(g, {}, raw.ori, edge_rep);
        LieOGraphRaw out;
        out.graph = c.graph;
        out.ori = c.ori;
        out.coeff = raw.coeff * c.sign;
        out.colors.resize(out.graph.nv);
        // merged vertex is 0; glue tail color to head color through x, xb
        LieTree glued = glue_trees(raw.colors[v], x, raw.colors[w], xb);
        out.colors[0] = detail::rename_tree_legs(glued, c.hmap);
        for (int u = 0; u < g.nv; ++u) {
            if (u == v || u == w) continue;
            // locate u's new id via any of its half-edges
            int nu = -1;
            for (int h = 0; h < g.num_half_edges(); ++h)
                if (g.vat[h] == u && c.hmap[h] >= 0) nu = out.graph.vat[c.hmap[h]];
            if (nu < 0) throw InvariantError("vertex lost in collapse");
            out.colors[nu] = detail::rename_tree_legs(raw.colors[u], c.hmap);
        }
        if (hmap_out) *hmap_out = c.hmap;
        return out;
    }

private:
    struct Entry {
        HalfEdgeGraph graph;
        std::map<TensorKey, Rat> tensor;
    };

    static void accumulate(Entry& e, const TensorKey& tk, const Rat& c) {
        if (c == 0) return;
        auto it = e.tensor.find(tk);
        if (it == e.tensor.end()) {
            e.tensor.emplace(tk, c);
        } else {
            it->second += c;
            if (it->second == 0) e.tensor.erase(it);
        }
    }

    /// Distributes a per-vertex list of spider combinations into tensor keys.
    static void expand_product(Entry& e, const std::vector<LieSpider>& spiders, const Rat& coeff) {
        TensorKey tk(spiders.size());
        std::function<void(size_t, const Rat&)> rec = [&](size_t v, const Rat& acc) {
            if (v == spiders.size()) {
                accumulate(e, tk, acc);
                return;
            }
            for (auto& [w, c] : spiders[v].combs) {
                tk[v] = w;
                rec(v + 1, acc * c);
            }
        };
        if (spiders.empty()) {
            accumulate(e, tk, coeff);
            return;
        }
        rec(0, coeff);
    }

    std::map<std::vector<int>, Entry> terms_;
    bool dirty_ = false;
};

/// Reference regrouping sign of a trivalent graph: parity of the half-edge
/// permutation taking the edge-blocks word (init, term per edge, edges in rep
/// order) to the vertex-blocks word (ascending within a vertex, vertices in
/// reference order).
inline int trivalent_reference_sign(const HalfEdgeGraph& g) {
    std::vector<int> word_edges, word_vertices;
    for (int rep : g.edge_reps()) {
        word_edges.push_back(rep);
        word_edges.push_back(g.inv[rep]);
    }
    for (int v = 0; v < g.nv; ++v) {
        auto hs = g.half_edges_at(v);
        word_vertices.insert(word_vertices.end(), hs.begin(), hs.end());
    }
    return relative_order_sign(word_edges, word_vertices);
}

/// Translation of a forested generator into the Lie O-graph realization:
/// start from the tripod-colored graph with the reference sign and collapse
/// the forest edges in order.
inline LieChain forested_to_ograph(const GeneratorKey& key) {
    if (key.variant != Variant::Forested) throw StructuralError("translation expects a forested generator");
    const HalfEdgeGraph& g = key.graph;
    LieOGraphRaw raw;
    raw.graph = g;
    raw.ori = Orientation::reference(g);
    raw.coeff = trivalent_reference_sign(g);
    for (int v = 0; v < g.nv; ++v) {
        auto hs = g.half_edges_at(v);
        if (hs.size() != 3) throw StructuralError("forested graphs are trivalent");
        raw.colors.push_back(lie_tripod(hs[0], hs[1], hs[2]));
    }
    // track current ids of the original half-edges through the collapses
    std::vector<int> cur(g.num_half_edges());
    for (int h = 0; h < g.num_half_edges(); ++h) cur[h] = h;
    for (int e : key.deco.forest_edge_reps(g)) {
        int a = cur[e], b = cur[g.inv[e]];
        std::vector<int> hmap;
        LieOGraphRaw next = LieChain::collapse_lie(raw, std::min(a, b), &hmap);
        for (int h = 0; h < g.num_half_edges(); ++h)
            cur[h] = (cur[h] >= 0 && hmap[cur[h]] >= 0) ? hmap[cur[h]] : -1;
        raw = std::move(next);
    }
    LieChain out;
    out.add_raw(raw);
    out.normalize();
    return out;
}

inline LieChain forested_to_ograph(const ChainVector& x) {
    LieChain out;
    for (auto& [k, c] : x.terms()) {
        LieChain t = forested_to_ograph(k);
        out.add(t, c);
    }
    out.normalize();
    return out;
}

/// Ribbon analogue used as a small-scale consistency check: a forested ribbon
/// generator maps into the associative complex by the same collapse sequence,
/// with the reference sign computed from the ribbon cyclic orders.
inline ChainVector forested_ribbon_to_ograph(const HalfEdgeGraph& g, const Decoration& ribbon,
                                             const std::vector<int>& forest_order) {
    std::vector<int> word_edges, word_vertices;
    for (int rep : g.edge_reps()) {
        word_edges.push_back(rep);
        word_edges.push_back(g.inv[rep]);
    }
    for (int v = 0; v < g.nv; ++v) {
        auto hs = g.half_edges_at(v);
        if (hs.size() != 3) throw StructuralError("forested ribbon graphs are trivalent");
        auto cyc = rot_cycle_from(ribbon, *std::min_element(hs.begin(), hs.end()));
        word_vertices.insert(word_vertices.end(), cyc.begin(), cyc.end());
    }
    int coeff = relative_order_sign(word_edges, word_vertices);

    HalfEdgeGraph cg = g;
    Decoration cd = ribbon;
    Orientation ori = Orientation::reference(g);
    std::vector<int> cur(g.num_half_edges());
    for (int h = 0; h < g.num_half_edges(); ++h) cur[h] = h;
    int sign = coeff;
    for (int e : forest_order) {
        int a = cur[e], b = cur[g.inv[e]];
        auto c = collapse_edge(cg, cd, ori, std::min(a, b));
        if (c.zero) throw StructuralError("forest edge became a loop");
        for (int h = 0; h < g.num_half_edges(); ++h)
            cur[h] = (cur[h] >= 0 && c.hmap[cur[h]] >= 0) ? c.hmap[cur[h]] : -1;
        cg = c.graph;
        cd = c.deco;
        ori = c.ori;
        sign *= c.sign;
    }
    ChainVector out;
    auto r = canonical_generator(Variant::Associative, cg, cd, ori);
    if (r) out.add(r->first, Rat(sign * r->second));
    return out;
}

} // namespace ogc

#endif
