#ifndef OGC_STATESUM_HPP
#define OGC_STATESUM_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "ogc/complexes.hpp"
#include "ogc/enumerate.hpp"
#include "ogc/generators.hpp"

namespace ogc {

/// Symbols 0..n-1 are p_1..p_n, symbols n..2n-1 are q_1..q_n.
struct SymplecticBasis {
    int n = 1;
    int dim() const { return 2 * n; }
    bool is_p(int s) const { return s < n; }
    int pair_of(int s) const { return s < n ? s + n : s - n; }
    int omega(int a, int b) const {
        if (b == a + n) return 1;
        if (a == b + n) return -1;
        return 0;
    }
};

/// Spider with symplectic labels on its legs.
/// Commutative: the label multiset. Associative: the label cyclic order.
struct LabeledSpider {
    Variant variant = Variant::Commutative;
    std::vector<int> labels;  // canonical: sorted (comm) or minimal rotation (assoc)

    static LabeledSpider comm(std::vector<int> ls) {
        std::sort(ls.begin(), ls.end());
        return {Variant::Commutative, std::move(ls)};
    }
    static LabeledSpider assoc(std::vector<int> cyc) { return {Variant::Associative, min_rotation(std::move(cyc))}; }

    int legs() const { return static_cast<int>(labels.size()); }
    bool operator<(const LabeledSpider& o) const {
        return std::make_tuple(static_cast<int>(variant), legs(), labels) <
               std::make_tuple(static_cast<int>(o.variant), o.legs(), o.labels);
    }
    bool operator==(const LabeledSpider& o) const { return variant == o.variant && labels == o.labels; }
};

/// Antisymmetrized formal combination of spider sequences: factors are kept
/// sorted; a repeated factor kills the term.
class WedgeElement {
public:
    using Key = std::vector<LabeledSpider>;

    void add(Key factors, Rat c) {
        if (c == 0) return;
        // insertion sort with sign
        for (size_t i = 1; i < factors.size(); ++i)
            for (size_t j = i; j > 0 && factors[j] < factors[j - 1]; --j) {
                std::swap(factors[j], factors[j - 1]);
                c = -c;
            }
        for (size_t i = 0; i + 1 < factors.size(); ++i)
            if (factors[i] == factors[i + 1]) return;
        auto it = terms_.find(factors);
        if (it == terms_.end()) {
            terms_.emplace(std::move(factors), c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add(const WedgeElement& o, const Rat& scale = 1) {
        for (auto& [k, c] : o.terms_) add(k, c * scale);
    }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const WedgeElement& o) const { return terms_ == o.terms_; }
    size_t size() const { return terms_.size(); }
    const std::map<Key, Rat>& terms() const { return terms_; }

private:
    std::map<Key, Rat> terms_;
};

struct StateSumCaps {
    int max_half_edges = 10;
    int max_n = 3;
};

/// State sum cutting a generator into labeled spiders: one symbol pair per
/// edge, sign positive when the initial half-edge carries the p symbol.
inline WedgeElement phi_n(const GeneratorKey& key, const SymplecticBasis& sb,
                          const StateSumCaps& caps = {}) {
    const HalfEdgeGraph& g = key.graph;
    if (g.num_half_edges() > caps.max_half_edges) throw CapError("phi_n: too many half-edges");
    if (sb.n > caps.max_n) throw CapError("phi_n: n exceeds cap");
    WedgeElement out;
    auto reps = g.edge_reps();
    Orientation o = Orientation::reference(g, key.deco);
    std::vector<int> label(g.num_half_edges(), -1);
    std::function<void(size_t, int)> rec = [&](size_t ei, int sign) {
        if (ei == reps.size()) {
            WedgeElement::Key factors;
            for (int v = 0; v < g.nv; ++v) {
                if (key.variant == Variant::Associative) {
                    auto hs = g.half_edges_at(v);
                    auto cyc = rot_cycle_from(key.deco, *std::min_element(hs.begin(), hs.end()));
                    std::vector<int> ls;
                    for (int h : cyc) ls.push_back(label[h]);
                    factors.push_back(LabeledSpider::assoc(ls));
                } else {
                    std::vector<int> ls;
                    for (int h = 0; h < g.num_half_edges(); ++h)
                        if (g.vat[h] == v) ls.push_back(label[h]);
                    factors.push_back(LabeledSpider::comm(ls));
                }
            }
            out.add(std::move(factors), Rat(sign));
            return;
        }
        int init = o.edge_init[ei];
        int term = g.inv[init];
        for (int i = 0; i < sb.n; ++i) {
            label[init] = i;          // p_i at the initial half-edge
            label[term] = i + sb.n;
            rec(ei + 1, sign);
            label[init] = i + sb.n;   // q_i at the initial half-edge
            label[term] = i;
            rec(ei + 1, -sign);
        }
        label[init] = label[term] = -1;
    };
    rec(0, 1);
    return out;
}

/// Gluing state sum: every perfect matching of the legs, weighted by the
/// product of symplectic pairings along the new edges.
inline ChainVector psi_n(const WedgeElement& w, const SymplecticBasis& sb) {
    ChainVector out;
    for (auto& [factors, coeff] : w.terms()) {
        int total = 0;
        for (auto& f : factors) total += f.legs();
        if (total % 2 != 0) continue;  // no perfect matching
        // global leg ids in factor order
        std::vector<int> leg_factor(total), leg_slot(total), leg_label(total);
        {
            int id = 0;
            for (size_t fi = 0; fi < factors.size(); ++fi)
                for (int s = 0; s < factors[fi].legs(); ++s) {
                    leg_factor[id] = static_cast<int>(fi);
                    leg_slot[id] = s;
                    leg_label[id] = factors[fi].labels[s];
                    ++id;
                }
        }
        Variant var = factors.empty() ? Variant::Commutative : factors[0].variant;
        for (const auto& pi : all_pairings(total)) {
            Rat weight = coeff;
            for (int a = 0; a < total && weight != 0; ++a) {
                int b = pi[a];
                if (b < a) continue;
                weight *= sb.omega(leg_label[a], leg_label[b]);
            }
            if (weight == 0) continue;
            HalfEdgeGraph g;
            g.nv = static_cast<int>(factors.size());
            g.inv = pi;
            g.vat = leg_factor;
            Decoration d;
            if (var == Variant::Associative) {
                d.rot.assign(total, -1);
                int base = 0;
                for (auto& f : factors) {
                    for (int s = 0; s < f.legs(); ++s) d.rot[base + s] = base + (s + 1) % f.legs();
                    base += f.legs();
                }
            }
            Orientation o;
            o.vertex_order.resize(g.nv);
            for (int v = 0; v < g.nv; ++v) o.vertex_order[v] = v;
            for (int h : g.edge_reps()) o.edge_init.push_back(h);  // initial at the lower leg
            auto r = canonical_generator(var, g, d, o);
            if (r) out.add(r->first, weight * r->second);
        }
    }
    return out;
}

/// Regluing sum: all pairings of the half-edges, weighted by (2n)^circles
/// with the chord-diagram orientation transport.
inline ChainVector M_n(const GeneratorKey& key, const SymplecticBasis& sb,
                       const StateSumCaps& caps = {}) {
    const HalfEdgeGraph& g = key.graph;
    if (g.num_half_edges() > caps.max_half_edges) throw CapError("M_n: too many half-edges");
    ChainVector out;
    Orientation o = Orientation::reference(g, key.deco);
    for (const auto& pi : all_pairings(g.num_half_edges())) {
        auto re = reglue(g, key.deco, o, pi);
        auto r = canonical_generator(key.variant, re.graph, key.deco, re.ori);
        if (!r) continue;
        Rat w(1);
        for (int i = 0; i < re.circles; ++i) w *= 2 * sb.n;
        out.add(r->first, w * re.sign * r->second);
    }
    return out;
}

/// Bracket of labeled spiders: sum over leg pairs of the symplectic weight
/// times the mating, erasing the matched labels.
inline WedgeElement spider_bracket(const LabeledSpider& a, const LabeledSpider& b,
                                   const SymplecticBasis& sb) {
    WedgeElement out;
    if (a.variant != b.variant) throw StructuralError("bracket of mixed spider variants");
    for (int i = 0; i < a.legs(); ++i)
        for (int j = 0; j < b.legs(); ++j) {
            int w = sb.omega(a.labels[i], b.labels[j]);
            if (w == 0) continue;
            std::vector<int> merged;
            if (a.variant == Variant::Commutative) {
                for (int s = 0; s < a.legs(); ++s)
                    if (s != i) merged.push_back(a.labels[s]);
                for (int s = 0; s < b.legs(); ++s)
                    if (s != j) merged.push_back(b.labels[s]);
                out.add({LabeledSpider::comm(merged)}, Rat(w));
            } else {
                for (int s = 1; s < a.legs(); ++s) merged.push_back(a.labels[(i + s) % a.legs()]);
                for (int s = 1; s < b.legs(); ++s) merged.push_back(b.labels[(j + s) % b.legs()]);
                out.add({LabeledSpider::assoc(merged)}, Rat(w));
            }
        }
    return out;
}

/// Chevalley-Eilenberg boundary on wedges of labeled spiders.
inline WedgeElement lie_boundary_n(const WedgeElement& w, const SymplecticBasis& sb) {
    WedgeElement out;
    for (auto& [factors, coeff] : w.terms()) {
        int k = static_cast<int>(factors.size());
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                int sgn = ((i + j + 1) % 2 == 0) ? 1 : -1;  // (-1)^{(i+1)+(j+1)+1} in 1-based indexing
                WedgeElement br = spider_bracket(factors[i], factors[j], sb);
                for (auto& [bk, bc] : br.terms()) {
                    WedgeElement::Key rest = bk;  // bracket result factors first
                    for (int s = 0; s < k; ++s)
                        if (s != i && s != j) rest.push_back(factors[s]);
                    out.add(std::move(rest), coeff * bc * sgn);
                }
            }
    }
    return out;
}

/// phi on a chain.
inline WedgeElement phi_n(const ChainVector& x, const SymplecticBasis& sb, const StateSumCaps& caps = {}) {
    WedgeElement out;
    for (auto& [k, c] : x.terms()) out.add(phi_n(k, sb, caps), c);
    return out;
}

inline ChainVector M_n(const ChainVector& x, const SymplecticBasis& sb, const StateSumCaps& caps = {}) {
    ChainVector out;
    for (auto& [k, c] : x.terms()) out.add(M_n(k, sb, caps), c);
    return out;
}

/// Relabels every symbol of V_n into V_m (m >= n): the inclusion p_i -> p_i.
inline WedgeElement embed_labels(const WedgeElement& w, int n_from, int n_to) {
    WedgeElement out;
    for (auto& [factors, c] : w.terms()) {
        WedgeElement::Key moved;
        for (auto f : factors) {
            for (auto& l : f.labels)
                if (l >= n_from) l += n_to - n_from;  // q-block shifts
            moved.push_back(f.variant == Variant::Commutative ? LabeledSpider::comm(f.labels)
                                                              : LabeledSpider::assoc(f.labels));
        }
        out.add(std::move(moved), c);
    }
    return out;
}

} // namespace ogc

#endif
