#ifndef OGC_GENERATORS_HPP
#define OGC_GENERATORS_HPP

#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "ogc/canonical.hpp"
#include "ogc/rational.hpp"
#include "ogc/signs.hpp"

namespace ogc {

enum class Variant { Commutative, Associative, Forested, Polygon };

inline bool uses_forest_sign(Variant v) { return v == Variant::Forested; }

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Commutative: return "commutative";
        case Variant::Associative: return "associative";
        case Variant::Forested: return "forested";
        case Variant::Polygon: return "polygon";
    }
    return "?";
}

/// Canonical graph + decoration with the variant tag; the ordered key of all
/// chain-group bases. Ordering: (vertex count, edge count, canonical stream).
struct GeneratorKey {
    Variant variant{};
    HalfEdgeGraph graph;
    Decoration deco;
    std::vector<int> stream;

    std::tuple<int, int, int, const std::vector<int>&> order_tuple() const {
        return {static_cast<int>(variant), graph.num_vertices(), graph.num_edges(), stream};
    }
    bool operator<(const GeneratorKey& o) const {
        return std::tuple<int, int, int, std::vector<int>>(static_cast<int>(variant), graph.num_vertices(),
                                                           graph.num_edges(), stream) <
               std::tuple<int, int, int, std::vector<int>>(static_cast<int>(o.variant), o.graph.num_vertices(),
                                                           o.graph.num_edges(), o.stream);
    }
    bool operator==(const GeneratorKey& o) const {
        return variant == o.variant && stream == o.stream && graph.nv == o.graph.nv &&
               graph.inv == o.graph.inv;
    }
    bool operator!=(const GeneratorKey& o) const { return !(*this == o); }
};

/// Decoration fields significant for a variant; the rest are dropped before
/// canonical labeling so that keys do not depend on incidental data.
inline Decoration significant_deco(Variant var, const Decoration& d) {
    Decoration out;
    switch (var) {
        case Variant::Commutative:
        case Variant::Polygon:
            break;
        case Variant::Associative:
            out.rot = d.rot;
            break;
        case Variant::Forested:
            out.forest = d.forest;
            break;
    }
    return out;
}

/// Builds the canonical generator for an oriented decorated graph.
/// Returns nullopt when the generator is zero by symmetry; otherwise the key
/// and the sign relating the input orientation to the canonical reference one.
inline std::optional<std::pair<GeneratorKey, int>> canonical_generator(Variant var, const HalfEdgeGraph& g,
                                                                       const Decoration& d,
                                                                       const Orientation& o) {
    Decoration sig = significant_deco(var, d);
    auto canon = canonical_cached(g, sig);
    bool forest_rule = uses_forest_sign(var);
    for (const GraphIso& a : canon->automorphisms)
        if (automorphism_sign(canon->graph, canon->deco, a, forest_rule) < 0) return std::nullopt;
    int s = forest_rule ? orientation_sign_forest(g, o, canon->cert, canon->graph)
                        : orientation_sign_plain(g, o, canon->cert, canon->graph);
    GeneratorKey key;
    key.variant = var;
    key.graph = canon->graph;
    key.deco = canon->deco;
    key.stream = canon->stream;
    return std::make_pair(std::move(key), s);
}

/// True iff some decoration-preserving automorphism reverses the orientation.
inline bool is_zero_by_symmetry(Variant var, const HalfEdgeGraph& g, const Decoration& d) {
    Decoration sig = significant_deco(var, d);
    auto canon = canonical_cached(g, sig);
    for (const GraphIso& a : canon->automorphisms)
        if (automorphism_sign(canon->graph, canon->deco, a, uses_forest_sign(var)) < 0) return true;
    return false;
}

/// Finite formal rational combination of canonical generators.
class ChainVector {
public:
    using Map = std::map<GeneratorKey, Rat>;

    void add(const GeneratorKey& k, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    void add(const ChainVector& other, const Rat& scale = 1) {
        for (auto& [k, c] : other.terms_) add(k, c * scale);
    }

    ChainVector operator+(const ChainVector& o) const {
        ChainVector r = *this;
        r.add(o);
        return r;
    }
    ChainVector operator-(const ChainVector& o) const {
        ChainVector r = *this;
        r.add(o, Rat(-1));
        return r;
    }
    ChainVector operator*(const Rat& s) const {
        ChainVector r;
        if (s == 0) return r;
        for (auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const ChainVector& o) const { return terms_ == o.terms_; }
    bool operator!=(const ChainVector& o) const { return !(*this == o); }
    size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }

    static ChainVector single(const GeneratorKey& k, const Rat& c = 1) {
        ChainVector r;
        r.add(k, c);
        return r;
    }

private:
    Map terms_;
};

/// Rational combination of ordered pairs of generators.
class TensorChain {
public:
    using Key = std::pair<GeneratorKey, GeneratorKey>;
    using Map = std::map<Key, Rat>;

    void add(const GeneratorKey& a, const GeneratorKey& b, const Rat& c) {
        if (c == 0) return;
        Key k{a, b};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(std::move(k), c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add(const TensorChain& o, const Rat& scale = 1) {
        for (auto& [k, c] : o.terms_) add(k.first, k.second, c * scale);
    }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const TensorChain& o) const { return terms_ == o.terms_; }
    bool operator!=(const TensorChain& o) const { return !(*this == o); }
    size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }

private:
    Map terms_;
};

} // namespace ogc

#endif
