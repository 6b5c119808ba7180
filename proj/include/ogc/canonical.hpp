#ifndef OGC_CANONICAL_HPP
#define OGC_CANONICAL_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ogc/halfedge.hpp"

namespace ogc {

/// Half-edge bijection commuting with involutions and vertex maps.
struct GraphIso {
    std::vector<int> hmap;  // source half-edge -> target half-edge
};

inline GraphIso compose(const GraphIso& second, const GraphIso& first) {
    GraphIso r;
    r.hmap.resize(first.hmap.size());
    for (size_t h = 0; h < first.hmap.size(); ++h) r.hmap[h] = second.hmap[first.hmap[h]];
    return r;
}

inline GraphIso inverse(const GraphIso& iso) {
    GraphIso r;
    r.hmap.resize(iso.hmap.size());
    for (size_t h = 0; h < iso.hmap.size(); ++h) r.hmap[iso.hmap[h]] = static_cast<int>(h);
    return r;
}

struct CanonicalResult {
    HalfEdgeGraph graph;
    Decoration deco;
    GraphIso cert;                       // input -> canonical
    std::vector<GraphIso> automorphisms; // of the canonical graph, identity included
    std::vector<int> stream;             // the minimal encoding (global ordering key)
};

namespace detail {

/// Search for the lexicographically minimal half-edge relabeling.
/// Vertex orderings are driven by individualization-refinement; half-edge
/// orders within a vertex are enumerated exhaustively so that every
/// minimal relabeling (hence every automorphism) is found.
class Canonicalizer {
public:
    Canonicalizer(const HalfEdgeGraph& g, const Decoration& d) : g_(g), d_(d), H_(g.num_half_edges()) {}

    CanonicalResult run() {
        g_.validate();
        d_.validate(g_);
        if (g_.nv == 0) {
            CanonicalResult r;
            r.graph = g_;
            r.deco = d_;
            r.cert.hmap = {};
            r.automorphisms = {GraphIso{{}}};
            return r;
        }
        std::vector<std::vector<int>> cells{std::vector<int>(g_.nv)};
        for (int v = 0; v < g_.nv; ++v) cells[0][v] = v;
        refine(cells);
        search_vertices(cells);
        return finish();
    }

private:
    const HalfEdgeGraph& g_;
    const Decoration& d_;
    int H_;

    std::vector<int> best_;
    bool have_best_ = false;
    struct Tie {
        std::vector<int> hmap;  // old half-edge -> new
        std::vector<int> vmap;  // old vertex -> new
    };
    std::vector<Tie> ties_;

    // candidate state
    std::vector<int> stream_;
    std::vector<int> newid_;
    std::vector<int> vorder_;
    int mismatch_pos_ = -1;  // first position where stream_ < best_, or -1 if tied so far

    bool append(int x) {
        if (have_best_ && mismatch_pos_ < 0) {
            size_t pos = stream_.size();
            if (pos >= best_.size()) return false;  // longer with equal prefix: treat as larger
            if (x > best_[pos]) return false;
            if (x < best_[pos]) mismatch_pos_ = static_cast<int>(pos);
        }
        stream_.push_back(x);
        return true;
    }

    void rewind(size_t mark) {
        stream_.resize(mark);
        if (mismatch_pos_ >= static_cast<int>(mark)) mismatch_pos_ = -1;
    }

    void refine(std::vector<std::vector<int>>& cells) const {
        std::vector<int> cell_of(g_.nv);
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t c = 0; c < cells.size(); ++c)
                for (int v : cells[c]) cell_of[v] = static_cast<int>(c);
            std::vector<std::vector<int>> next;
            for (auto& cell : cells) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                std::map<std::vector<int>, std::vector<int>> split;
                for (int v : cell) split[vertex_key(v, cell_of)].push_back(v);
                if (split.size() > 1) changed = true;
                for (auto& [key, vs] : split) next.push_back(vs);
            }
            cells.swap(next);
        }
    }

    std::vector<int> vertex_key(int v, const std::vector<int>& cell_of) const {
        std::vector<std::vector<int>> tuples;
        for (int h = 0; h < H_; ++h) {
            if (g_.vat[h] != v) continue;
            int p = g_.inv[h];
            std::vector<int> t{cell_of[g_.vat[p]], g_.is_loop(h) ? 1 : 0};
            if (d_.has_forest()) t.push_back(d_.forest[h]);
            if (d_.has_label()) {
                t.push_back(d_.label[h]);
                t.push_back(d_.label[p]);
            }
            tuples.push_back(t);
        }
        std::sort(tuples.begin(), tuples.end());
        std::vector<int> key;
        for (auto& t : tuples) key.insert(key.end(), t.begin(), t.end());
        return key;
    }

    void search_vertices(std::vector<std::vector<int>> cells) {
        size_t split_at = cells.size();
        for (size_t c = 0; c < cells.size(); ++c)
            if (cells[c].size() > 1) {
                split_at = c;
                break;
            }
        if (split_at == cells.size()) {
            std::vector<int> order;
            for (auto& cell : cells) order.push_back(cell[0]);
            assign_half_edges(order);
            return;
        }
        for (int v : cells[split_at]) {
            auto next = cells;
            std::vector<int> rest;
            for (int w : cells[split_at])
                if (w != v) rest.push_back(w);
            next[split_at] = {v};
            next.insert(next.begin() + static_cast<long>(split_at) + 1, rest);
            refine(next);
            search_vertices(std::move(next));
        }
    }

    void assign_half_edges(const std::vector<int>& vorder) {
        stream_.clear();
        newid_.assign(H_, -1);
        vorder_ = vorder;
        mismatch_pos_ = -1;
        if (!append(g_.nv) || !append(H_)) return;
        for (int v : vorder)
            if (!append(g_.valence(v))) return;
        block(0, 0);
    }

    void block(size_t vpos, int next_id) {
        if (vpos == vorder_.size()) {
            complete(next_id);
            return;
        }
        auto hs = g_.half_edges_at(vorder_[vpos]);
        slots(vpos, hs, 0, next_id);
    }

    void slots(size_t vpos, const std::vector<int>& hs, size_t slot, int next_id) {
        if (slot == hs.size()) {
            // cyclic-structure codes for the completed block
            size_t mark = stream_.size();
            bool ok = true;
            if (d_.has_rot()) {
                std::vector<int> block_old(hs.size());
                for (int h : hs) block_old[static_cast<size_t>(newid_[h] - (next_id - static_cast<int>(hs.size())))] = h;
                for (int h : block_old)
                    if (!append(newid_[d_.rot[h]])) {
                        ok = false;
                        break;
                    }
            }
            if (ok) block(vpos + 1, next_id);
            rewind(mark);
            return;
        }
        for (int h : hs) {
            if (newid_[h] >= 0) continue;
            size_t mark = stream_.size();
            newid_[h] = next_id;
            int p = g_.inv[h];
            bool ok = append(newid_[p] >= 0 && p != h ? newid_[p] : H_);
            if (ok && d_.has_forest()) ok = append(d_.forest[h]);
            if (ok && d_.has_label()) ok = append(d_.label[h]);
            if (ok) slots(vpos, hs, slot + 1, next_id + 1);
            newid_[h] = -1;
            rewind(mark);
        }
    }

    void complete(int) {
        if (have_best_ && mismatch_pos_ < 0 && stream_.size() < best_.size()) return;
        Tie t;
        t.hmap = newid_;
        t.vmap.assign(g_.nv, -1);
        for (size_t i = 0; i < vorder_.size(); ++i) t.vmap[vorder_[i]] = static_cast<int>(i);
        if (!have_best_ || mismatch_pos_ >= 0) {
            best_ = stream_;
            ties_.clear();
            have_best_ = true;
            mismatch_pos_ = -1;
        }
        ties_.push_back(std::move(t));
    }

    CanonicalResult finish() {
        CanonicalResult r;
        // prefer the identity certificate so canonicalization is idempotent
        size_t pick = 0;
        for (size_t i = 0; i < ties_.size(); ++i) {
            bool ident = true;
            for (int h = 0; h < H_ && ident; ++h) ident = (ties_[i].hmap[h] == h);
            for (int v = 0; v < g_.nv && ident; ++v) ident = (ties_[i].vmap[v] == v);
            if (ident) {
                pick = i;
                break;
            }
        }
        const Tie& t0 = ties_[pick];
        r.cert.hmap = t0.hmap;
        r.stream = best_;
        r.graph.nv = g_.nv;
        r.graph.inv.assign(H_, -1);
        r.graph.vat.assign(H_, -1);
        for (int h = 0; h < H_; ++h) {
            r.graph.inv[t0.hmap[h]] = t0.hmap[g_.inv[h]];
            r.graph.vat[t0.hmap[h]] = t0.vmap[g_.vat[h]];
        }
        if (d_.has_rot()) {
            r.deco.rot.assign(H_, -1);
            for (int h = 0; h < H_; ++h) r.deco.rot[t0.hmap[h]] = t0.hmap[d_.rot[h]];
        }
        if (d_.has_forest()) {
            r.deco.forest.assign(H_, 0);
            for (int h = 0; h < H_; ++h) r.deco.forest[t0.hmap[h]] = d_.forest[h];
        }
        if (d_.has_label()) {
            r.deco.label.assign(H_, -1);
            for (int h = 0; h < H_; ++h) r.deco.label[t0.hmap[h]] = d_.label[h];
        }
        for (const Tie& t : ties_) {
            GraphIso a;
            a.hmap.resize(H_);
            for (int h = 0; h < H_; ++h) a.hmap[t0.hmap[h]] = t.hmap[h];
            r.automorphisms.push_back(std::move(a));
        }
        return r;
    }
};

} // namespace detail

inline CanonicalResult canonicalize(const HalfEdgeGraph& g, const Decoration& d = {}) {
    return detail::Canonicalizer(g, d).run();
}

namespace detail {

inline std::string raw_encode(const HalfEdgeGraph& g, const Decoration& d) {
    std::string s;
    auto push = [&s](int x) {
        s.append(reinterpret_cast<const char*>(&x), sizeof(int));
    };
    push(g.nv);
    for (int x : g.inv) push(x);
    for (int x : g.vat) push(x);
    push(d.has_rot());
    for (int x : d.rot) push(x);
    push(d.has_forest());
    for (char x : d.forest) push(x);
    push(d.has_label());
    for (int x : d.label) push(x);
    return s;
}

} // namespace detail

/// Memoized canonicalization; results are immutable and shared.
inline std::shared_ptr<const CanonicalResult> canonical_cached(const HalfEdgeGraph& g, const Decoration& d = {}) {
    static std::unordered_map<std::string, std::shared_ptr<const CanonicalResult>> cache;
    std::string key = detail::raw_encode(g, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto r = std::make_shared<const CanonicalResult>(canonicalize(g, d));
    cache.emplace(std::move(key), r);
    return r;
}

/// Decoration-preserving automorphism group order of a canonical graph.
inline long automorphism_order(const CanonicalResult& c) {
    return static_cast<long>(c.automorphisms.size());
}

} // namespace ogc

#endif
