#ifndef OGC_SPIDERS_HPP
#define OGC_SPIDERS_HPP

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "ogc/rational.hpp"

namespace ogc {

/// Canonical rotation of a cyclic sequence: minimal element first.
inline std::vector<int> min_rotation(std::vector<int> seq) {
    if (seq.empty()) return seq;
    size_t best = 0;
    for (size_t i = 1; i < seq.size(); ++i)
        if (seq[i] < seq[best]) best = i;
    std::rotate(seq.begin(), seq.begin() + static_cast<long>(best), seq.end());
    return seq;
}

// ---------------------------------------------------------------- commutative

/// One-dimensional color: a weighted star. Legs are external ids.
struct CommSpider {
    std::vector<int> legs;  // sorted
    Rat weight = 1;
};

inline CommSpider mate(const CommSpider& s, int leg_s, int leg_t, const CommSpider& t) {
    CommSpider out;
    out.weight = s.weight * t.weight;
    for (int l : s.legs)
        if (l != leg_s) out.legs.push_back(l);
    for (int l : t.legs)
        if (l != leg_t) out.legs.push_back(l);
    std::sort(out.legs.begin(), out.legs.end());
    return out;
}

// ---------------------------------------------------------------- associative

/// Formal rational combination of cyclic leg orders.
struct AssocSpider {
    std::map<std::vector<int>, Rat> terms;  // keys are canonical rotations

    void add(const std::vector<int>& cyc, const Rat& c) {
        if (c == 0) return;
        auto key = min_rotation(cyc);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(std::move(key), c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    static AssocSpider basis(const std::vector<int>& cyc) {
        AssocSpider s;
        s.add(cyc, 1);
        return s;
    }
    bool operator==(const AssocSpider& o) const { return terms == o.terms; }
};

/// Splice rule for cyclic orders: the legs of s other than leg_s are inserted,
/// in cyclic order after leg_s, at the slot of leg_t in t's cyclic order.
inline std::vector<int> splice_cyclic(const std::vector<int>& s_cyc, int leg_s,
                                      const std::vector<int>& t_cyc, int leg_t) {
    auto pos = [](const std::vector<int>& cyc, int leg) {
        for (size_t i = 0; i < cyc.size(); ++i)
            if (cyc[i] == leg) return i;
        throw StructuralError("leg not found in cyclic order");
    };
    size_t ps = pos(s_cyc, leg_s), pt = pos(t_cyc, leg_t);
    std::vector<int> out;
    for (size_t i = 1; i < s_cyc.size(); ++i) out.push_back(s_cyc[(ps + i) % s_cyc.size()]);
    for (size_t i = 1; i < t_cyc.size(); ++i) out.push_back(t_cyc[(pt + i) % t_cyc.size()]);
    return min_rotation(out);
}

inline AssocSpider mate(const AssocSpider& s, int leg_s, int leg_t, const AssocSpider& t) {
    AssocSpider out;
    for (auto& [cs, vs] : s.terms)
        for (auto& [ct, vt] : t.terms) out.add(splice_cyclic(cs, leg_s, ct, leg_t), vs * vt);
    return out;
}

// ----------------------------------------------------------------------- Lie

/// Vertex-oriented binary tree over distinct leg ids, hung from one leg.
/// Internal nodes carry ordered children; (parent, left, right) is the cyclic
/// order at the corresponding trivalent vertex, so swapping children is the
/// antisymmetry flip.
struct LieTree {
    struct Node {
        int leg = -1;  // >= 0 for leaves
        int left = -1, right = -1;
    };
    int root_leg = -1;
    int top = -1;  // subtree opposite the root leg; a single leaf for 2-leg trees
    std::vector<Node> nodes;

    int add_leaf(int leg) {
        nodes.push_back({leg, -1, -1});
        return static_cast<int>(nodes.size()) - 1;
    }
    int add_join(int l, int r) {
        nodes.push_back({-1, l, r});
        return static_cast<int>(nodes.size()) - 1;
    }
    bool is_leaf(int n) const { return nodes[n].leg >= 0; }

    std::vector<int> legs() const {
        std::vector<int> out{root_leg};
        collect(top, out);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void collect(int n, std::vector<int>& out) const {
        if (n < 0) return;
        if (is_leaf(n)) {
            out.push_back(nodes[n].leg);
            return;
        }
        collect(nodes[n].left, out);
        collect(nodes[n].right, out);
    }
};

/// The 2-leg unit: a bare edge.
inline LieTree lie_unit(int leg_a, int leg_b) {
    LieTree t;
    t.root_leg = leg_a;
    t.top = t.add_leaf(leg_b);
    return t;
}

inline LieTree lie_tripod(int a, int b, int c) {
    LieTree t;
    t.root_leg = a;
    t.top = t.add_join(t.add_leaf(b), t.add_leaf(c));
    return t;
}

namespace detail {

/// Unrooted adjacency form: each trivalent internal vertex lists its three
/// neighbors in cyclic order. Only defined for trees with >= 3 legs.
struct LieAdj {
    struct Ref {
        bool is_leg = true;
        int id = -1;
    };
    std::vector<std::array<Ref, 3>> verts;
    std::map<int, std::pair<int, int>> leg_slot;  // leg -> (vertex, slot)

    static LieAdj from_tree(const LieTree& t) {
        LieAdj a;
        if (t.top < 0 || t.is_leaf(t.top)) throw StructuralError("adjacency needs >= 3 legs");
        a.build(t, t.top, Ref{true, t.root_leg});
        return a;
    }

    /// Reads back a tree hung from the given leg, preserving cyclic orders.
    LieTree to_tree(int root_leg) const {
        LieTree t;
        t.root_leg = root_leg;
        auto it = leg_slot.find(root_leg);
        if (it == leg_slot.end()) throw StructuralError("unknown root leg");
        t.top = read(t, it->second.first, it->second.second);
        return t;
    }

    std::vector<int> legs() const {
        std::vector<int> out;
        for (auto& [l, s] : leg_slot) out.push_back(l);
        return out;
    }

private:
    int build(const LieTree& t, int node, Ref parent) {
        const auto& n = t.nodes[node];
        int vid = static_cast<int>(verts.size());
        verts.push_back({parent, Ref{}, Ref{}});
        if (parent.is_leg) leg_slot[parent.id] = {vid, 0};
        auto attach = [&](int child, int slot) {
            if (t.is_leaf(child)) {
                verts[vid][static_cast<size_t>(slot)] = Ref{true, t.nodes[child].leg};
                leg_slot[t.nodes[child].leg] = {vid, slot};
            } else {
                int cid = build(t, child, Ref{false, vid});
                verts[vid][static_cast<size_t>(slot)] = Ref{false, cid};
                // fix the back reference slot of the child (slot 0 was set to parent)
                (void)cid;
            }
        };
        attach(n.left, 1);
        attach(n.right, 2);
        return vid;
    }

    int read(LieTree& t, int vid, int parent_slot) const {
        auto child = [&](int off) {
            const Ref& r = verts[static_cast<size_t>(vid)][static_cast<size_t>((parent_slot + off) % 3)];
            if (r.is_leg) return t.add_leaf(r.id);
            for (int s = 0; s < 3; ++s)
                if (!verts[static_cast<size_t>(r.id)][static_cast<size_t>(s)].is_leg &&
                    verts[static_cast<size_t>(r.id)][static_cast<size_t>(s)].id == vid)
                    return read(t, r.id, s);
            throw StructuralError("broken tree adjacency");
        };
        int l = child(1);
        int r = child(2);
        return t.add_join(l, r);
    }
};

/// Multilinear associative expansion of the Lie word under a node.
inline void expand_node(const LieTree& t, int node, std::map<std::vector<int>, Rat>& out) {
    if (t.is_leaf(node)) {
        out[{t.nodes[node].leg}] = 1;
        return;
    }
    std::map<std::vector<int>, Rat> lw, rw;
    expand_node(t, t.nodes[node].left, lw);
    expand_node(t, t.nodes[node].right, rw);
    for (auto& [wl, cl] : lw)
        for (auto& [wr, cr] : rw) {
            std::vector<int> ab = wl;
            ab.insert(ab.end(), wr.begin(), wr.end());
            std::vector<int> ba = wr;
            ba.insert(ba.end(), wl.begin(), wl.end());
            Rat c = cl * cr;
            out[ab] += c;
            out[ba] -= c;
        }
}

} // namespace detail

/// Re-hang a tree from another of its legs, preserving vertex orientations.
inline LieTree reroot(const LieTree& t, int new_root) {
    if (t.root_leg == new_root) return t;
    auto ls = t.legs();
    if (ls.size() == 2) return lie_unit(new_root, ls[0] == new_root ? ls[1] : ls[0]);
    return detail::LieAdj::from_tree(t).to_tree(new_root);
}

/// Glues two trees along one leg of each; the glued legs disappear and the
/// incident vertices become adjacent. Pure planar gluing, no sign.
inline LieTree glue_trees(const LieTree& s, int leg_s, const LieTree& t, int leg_t) {
    auto rename_leg = [](LieTree x, int from, int to) {
        if (x.root_leg == from) x.root_leg = to;
        for (auto& n : x.nodes)
            if (n.leg == from) n.leg = to;
        return x;
    };
    auto other_leg = [](const LieTree& x, int used) {
        auto ls = x.legs();
        return ls[0] == used ? ls[1] : ls[0];
    };
    if (s.legs().size() == 2) return rename_leg(t, leg_t, other_leg(s, leg_s));
    if (t.legs().size() == 2) return rename_leg(s, leg_s, other_leg(t, leg_t));

    detail::LieAdj a = detail::LieAdj::from_tree(s);
    detail::LieAdj b = detail::LieAdj::from_tree(t);
    int offset = static_cast<int>(a.verts.size());
    for (auto v : b.verts) {
        for (auto& r : v)
            if (!r.is_leg) r.id += offset;
        a.verts.push_back(v);
    }
    auto [vs, ss] = a.leg_slot.at(leg_s);
    auto [vt, st] = b.leg_slot.at(leg_t);
    vt += offset;
    a.verts[static_cast<size_t>(vs)][static_cast<size_t>(ss)] = detail::LieAdj::Ref{false, vt};
    a.verts[static_cast<size_t>(vt)][static_cast<size_t>(st)] = detail::LieAdj::Ref{false, vs};
    a.leg_slot.erase(leg_s);
    for (auto& [leg, slot] : b.leg_slot)
        if (leg != leg_t) a.leg_slot[leg] = {slot.first + offset, slot.second};
    return a.to_tree(a.leg_slot.begin()->first);
}

/// Normal form: formal combination of left combs hung from the minimal leg.
/// A basis word (a, t1, t2, ...) is a permutation of legs\{min} beginning with
/// the second-smallest leg and denotes the comb [[[a,t1],t2],...].
struct LieSpider {
    std::vector<int> legs;  // sorted
    std::map<std::vector<int>, Rat> combs;

    void add(const std::vector<int>& word, const Rat& c) {
        if (c == 0) return;
        auto it = combs.find(word);
        if (it == combs.end()) {
            combs.emplace(word, c);
        } else {
            it->second += c;
            if (it->second == 0) combs.erase(it);
        }
    }
    void add(const LieSpider& o, const Rat& scale = 1) {
        if (!o.combs.empty() && legs != o.legs) throw StructuralError("mixed leg sets in lie combination");
        for (auto& [w, c] : o.combs) add(w, c * scale);
    }
    LieSpider scaled(const Rat& s) const {
        LieSpider r;
        r.legs = legs;
        for (auto& [w, c] : combs) r.add(w, c * s);
        return r;
    }
    bool is_zero() const { return combs.empty(); }
    bool operator==(const LieSpider& o) const { return legs == o.legs && combs == o.combs; }
};

/// Rewrites a single tree into the comb basis: hang at the minimal leg,
/// expand in the multilinear associative algebra and keep the words that
/// begin with the fixed second letter (first-letter decomposition).
inline LieSpider lie_normal_form(const LieTree& tree, const Rat& coeff = 1) {
    LieSpider out;
    out.legs = tree.legs();
    if (out.legs.size() < 2) throw StructuralError("lie spider needs >= 2 legs");
    if (out.legs.size() == 2) {
        out.add(std::vector<int>{out.legs[1]}, coeff);
        return out;
    }
    LieTree rooted = reroot(tree, out.legs[0]);
    std::map<std::vector<int>, Rat> words;
    detail::expand_node(rooted, rooted.top, words);
    int a = out.legs[1];
    for (auto& [w, c] : words) {
        if (c == 0 || w[0] != a) continue;
        out.add(w, c * coeff);
    }
    return out;
}

/// Rebuilds the comb tree of a basis word (hung from the given root leg).
inline LieTree comb_tree(int root_leg, const std::vector<int>& word) {
    LieTree t;
    t.root_leg = root_leg;
    if (word.size() == 1) {
        t.top = t.add_leaf(word[0]);
        return t;
    }
    int n = t.add_join(t.add_leaf(word[0]), t.add_leaf(word[1]));
    for (size_t i = 2; i < word.size(); ++i) n = t.add_join(n, t.add_leaf(word[i]));
    t.top = n;
    return t;
}

inline LieSpider lie_normal_form_sum(const std::vector<std::pair<LieTree, Rat>>& trees) {
    LieSpider out;
    bool first = true;
    for (auto& [t, c] : trees) {
        LieSpider s = lie_normal_form(t, c);
        if (first) {
            out = s;
            first = false;
        } else {
            out.add(s);
        }
    }
    return out;
}

/// Bilinear mating of Lie spiders through legs (no edge collapse).
inline LieSpider mate(const LieSpider& s, int leg_s, int leg_t, const LieSpider& t) {
    LieSpider out;
    bool first = true;
    for (auto& [ws, cs] : s.combs)
        for (auto& [wt, ct] : t.combs) {
            LieTree glued = glue_trees(comb_tree(s.legs[0], ws), leg_s, comb_tree(t.legs[0], wt), leg_t);
            LieSpider part = lie_normal_form(glued, cs * ct);
            if (first) {
                out = part;
                first = false;
            } else {
                out.add(part);
            }
        }
    return out;
}

/// All vertex-oriented binary trees over a leg set (AS-redundant: both planar
/// orders of every join are produced). Test and cross-check helper.
inline std::vector<LieTree> all_lie_trees(const std::vector<int>& legs) {
    std::vector<LieTree> out;
    if (legs.size() < 2) return out;
    // hang from legs[0], enumerate bracketings of the rest with ordered children
    struct Builder {
        std::vector<LieTree> done;
        void rec(LieTree& t, std::vector<int> nodes_in_play) {
            // nodes_in_play: indices of current roots to merge
            if (nodes_in_play.size() == 1) {
                LieTree f = t;
                f.top = nodes_in_play[0];
                done.push_back(f);
                return;
            }
            for (size_t i = 0; i < nodes_in_play.size(); ++i)
                for (size_t j = 0; j < nodes_in_play.size(); ++j) {
                    if (i == j) continue;
                    auto rest = nodes_in_play;
                    int a = nodes_in_play[i], b = nodes_in_play[j];
                    rest.erase(std::remove(rest.begin(), rest.end(), a), rest.end());
                    rest.erase(std::remove(rest.begin(), rest.end(), b), rest.end());
                    int n = t.add_join(a, b);
                    rest.push_back(n);
                    rec(t, rest);
                    t.nodes.pop_back();
                }
        }
    } b;
    LieTree t;
    t.root_leg = legs[0];
    std::vector<int> in_play;
    for (size_t i = 1; i < legs.size(); ++i) in_play.push_back(t.add_leaf(legs[i]));
    b.rec(t, in_play);
    return b.done;
}

} // namespace ogc

#endif
