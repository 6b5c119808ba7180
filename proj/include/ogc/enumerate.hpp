#ifndef OGC_ENUMERATE_HPP
#define OGC_ENUMERATE_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "ogc/canonical.hpp"
#include "ogc/halfedge.hpp"

namespace ogc {

/// All perfect matchings of {0..n-1} as involution arrays; n must be even.
inline std::vector<std::vector<int>> all_pairings(int n) {
    std::vector<std::vector<int>> out;
    if (n % 2 != 0) return out;
    std::vector<int> pi(n, -1);
    std::function<void()> rec = [&]() {
        int h = -1;
        for (int i = 0; i < n; ++i)
            if (pi[i] < 0) {
                h = i;
                break;
            }
        if (h < 0) {
            out.push_back(pi);
            return;
        }
        for (int j = h + 1; j < n; ++j) {
            if (pi[j] >= 0) continue;
            pi[h] = j;
            pi[j] = h;
            rec();
            pi[h] = -1;
            pi[j] = -1;
        }
    };
    rec();
    return out;
}

namespace detail {

inline void degree_sequences(int total, int parts, int min_val, int max_first, std::vector<int>& cur,
                             std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int d = std::min(total - min_val * (parts - 1), max_first); d >= min_val; --d) {
        cur.push_back(d);
        degree_sequences(total - d, parts - 1, min_val, d, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

/// One canonical representative per isomorphism class of multigraphs with k
/// vertices and m edges, every valence >= min_val. Loops and parallel edges
/// allowed. Sorted by (vertex count, edge count, canonical stream).
inline std::vector<HalfEdgeGraph> enumerate_multigraphs(int k, int m, int min_val, bool connected_only) {
    std::vector<HalfEdgeGraph> result;
    if (k <= 0 || m < 0) return result;
    if (2 * m < min_val * k) return result;
    std::vector<std::vector<int>> seqs;
    std::vector<int> cur;
    detail::degree_sequences(2 * m, k, min_val, 2 * m, cur, seqs);

    std::map<std::vector<int>, HalfEdgeGraph> seen;
    for (const auto& deg : seqs) {
        HalfEdgeGraph g;
        g.nv = k;
        g.vat.resize(2 * m);
        {
            int h = 0;
            for (int v = 0; v < k; ++v)
                for (int i = 0; i < deg[v]; ++i) g.vat[h++] = v;
        }
        std::vector<int> pi(2 * m, -1);
        std::function<void()> rec = [&]() {
            int h = -1;
            for (int i = 0; i < 2 * m; ++i)
                if (pi[i] < 0) {
                    h = i;
                    break;
                }
            if (h < 0) {
                g.inv = pi;
                if (connected_only && !g.is_connected()) return;
                auto canon = canonical_cached(g, {});
                seen.emplace(canon->stream, canon->graph);
                return;
            }
            // partner candidates: the smallest unpaired half-edge at each vertex;
            // unpaired half-edges at a vertex are interchangeable
            int last_vertex = -1;
            for (int j = h + 1; j < 2 * m; ++j) {
                if (pi[j] >= 0 || g.vat[j] == last_vertex) continue;
                last_vertex = g.vat[j];
                pi[h] = j;
                pi[j] = h;
                rec();
                pi[h] = -1;
                pi[j] = -1;
            }
        };
        rec();
    }
    std::vector<HalfEdgeGraph> out;
    out.reserve(seen.size());
    for (auto& [stream, g] : seen) out.push_back(g);
    std::stable_sort(out.begin(), out.end(), [](const HalfEdgeGraph& a, const HalfEdgeGraph& b) {
        return std::make_pair(a.nv, a.num_edges()) < std::make_pair(b.nv, b.num_edges());
    });
    return out;
}

/// Canonical graphs with k vertices and first Betti number r.
/// Connected graphs have k + r - 1 edges; otherwise every component count is tried.
inline std::vector<HalfEdgeGraph> enumerate_graphs(int k, int r, int min_val, bool connected = true) {
    std::vector<HalfEdgeGraph> out;
    if (connected) {
        int m = k + r - 1;
        if (m < 0) return out;
        for (auto& g : enumerate_multigraphs(k, m, min_val, true))
            if (g.rank() == r) out.push_back(g);
        return out;
    }
    for (int comps = 1; comps <= k; ++comps) {
        int m = k + r - comps;
        if (m < 0) continue;
        for (auto& g : enumerate_multigraphs(k, m, min_val, false))
            if (g.rank() == r && g.num_components() == comps) out.push_back(g);
    }
    return out;
}

/// All acyclic edge subsets of a given size, as sorted lists of edge reps.
/// Together with the untouched vertices these are the forests with
/// (num_vertices - size) trees.
inline std::vector<std::vector<int>> acyclic_edge_subsets(const HalfEdgeGraph& g, int size) {
    std::vector<std::vector<int>> out;
    auto reps = g.edge_reps();
    std::vector<int> chosen;
    std::vector<int> parent(g.nv);

    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    std::function<void(size_t)> rec = [&](size_t from) {
        if (static_cast<int>(chosen.size()) == size) {
            out.push_back(chosen);
            return;
        }
        for (size_t i = from; i < reps.size(); ++i) {
            int h = reps[i];
            if (g.is_loop(h)) continue;
            for (int v = 0; v < g.nv; ++v) parent[v] = v;
            bool ok = true;
            auto try_join = [&](int e) {
                int a = find(g.vat[e]), b = find(g.vat[g.inv[e]]);
                if (a == b) return false;
                parent[a] = b;
                return true;
            };
            for (int e : chosen)
                if (!try_join(e)) ok = false;
            if (ok && try_join(h)) {
                chosen.push_back(h);
                rec(i + 1);
                chosen.pop_back();
            }
        }
    };
    rec(0);
    return out;
}

/// Spanning forests with exactly `tree_count` trees (singleton trees allowed).
inline std::vector<std::vector<int>> spanning_forests(const HalfEdgeGraph& g, int tree_count) {
    int size = g.nv - tree_count;
    if (size < 0) return {};
    return acyclic_edge_subsets(g, size);
}

/// All ribbon structures on a graph: one cyclic order per vertex,
/// (valence-1)! choices each, as rot decorations.
inline std::vector<Decoration> ribbon_structures(const HalfEdgeGraph& g) {
    std::vector<std::vector<std::vector<int>>> per_vertex;  // cyclic sequences per vertex
    for (int v = 0; v < g.nv; ++v) {
        auto hs = g.half_edges_at(v);
        std::vector<std::vector<int>> cycles;
        std::vector<int> rest(hs.begin() + 1, hs.end());
        std::sort(rest.begin(), rest.end());
        do {
            std::vector<int> cyc{hs[0]};
            cyc.insert(cyc.end(), rest.begin(), rest.end());
            cycles.push_back(cyc);
        } while (std::next_permutation(rest.begin(), rest.end()));
        per_vertex.push_back(std::move(cycles));
    }
    std::vector<Decoration> out;
    std::vector<size_t> idx(g.nv, 0);
    while (true) {
        Decoration d;
        d.rot.assign(g.num_half_edges(), -1);
        for (int v = 0; v < g.nv; ++v) {
            const auto& cyc = per_vertex[v][idx[v]];
            for (size_t i = 0; i < cyc.size(); ++i) d.rot[cyc[i]] = cyc[(i + 1) % cyc.size()];
        }
        out.push_back(std::move(d));
        int v = 0;
        while (v < g.nv && ++idx[v] == per_vertex[v].size()) idx[v++] = 0;
        if (v == g.nv) break;
    }
    return out;
}

} // namespace ogc

#endif
