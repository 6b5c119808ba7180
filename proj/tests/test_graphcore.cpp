#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "ogc/canonical.hpp"
#include "ogc/enumerate.hpp"
#include "ogc/generators.hpp"
#include "ogc/halfedge.hpp"
#include "ogc/signs.hpp"

using namespace ogc;

namespace {

HalfEdgeGraph theta() {
    return graph_from_edges(2, {{0, 1}, {0, 1}, {0, 1}});
}

HalfEdgeGraph dumbbell() {
    // loop - bridge - loop
    return graph_from_edges(2, {{0, 0}, {0, 1}, {1, 1}});
}

HalfEdgeGraph two_loops() {
    return graph_from_edges(1, {{0, 0}, {0, 0}});
}

HalfEdgeGraph relabel(const HalfEdgeGraph& g, const std::vector<int>& sigma, const std::vector<int>& tau) {
    HalfEdgeGraph r;
    r.nv = g.nv;
    r.inv.assign(g.num_half_edges(), -1);
    r.vat.assign(g.num_half_edges(), -1);
    for (int h = 0; h < g.num_half_edges(); ++h) {
        r.inv[sigma[h]] = sigma[g.inv[h]];
        r.vat[sigma[h]] = tau[g.vat[h]];
    }
    return r;
}

HalfEdgeGraph random_relabel(const HalfEdgeGraph& g, std::mt19937& rng) {
    std::vector<int> sigma(g.num_half_edges()), tau(g.nv);
    for (size_t i = 0; i < sigma.size(); ++i) sigma[i] = static_cast<int>(i);
    for (size_t i = 0; i < tau.size(); ++i) tau[i] = static_cast<int>(i);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::shuffle(tau.begin(), tau.end(), rng);
    return relabel(g, sigma, tau);
}

// Brute-force oracle: every half-edge bijection commuting with the involution
// and inducing a vertex bijection, preserving the decoration.
std::vector<std::vector<int>> brute_force_automorphisms(const HalfEdgeGraph& g, const Decoration& d = {}) {
    const int H = g.num_half_edges();
    std::vector<int> p(H);
    for (int i = 0; i < H; ++i) p[i] = i;
    std::vector<std::vector<int>> found;
    do {
        bool ok = true;
        std::vector<int> vmap(g.nv, -1);
        for (int h = 0; h < H && ok; ++h) {
            if (p[g.inv[h]] != g.inv[p[h]]) ok = false;
            if (ok) {
                int v = g.vat[h], w = g.vat[p[h]];
                if (vmap[v] < 0)
                    vmap[v] = w;
                else if (vmap[v] != w)
                    ok = false;
            }
        }
        if (ok && d.has_rot())
            for (int h = 0; h < H && ok; ++h)
                if (p[d.rot[h]] != d.rot[p[h]]) ok = false;
        if (ok && d.has_forest())
            for (int h = 0; h < H && ok; ++h)
                if (d.forest[p[h]] != d.forest[h]) ok = false;
        if (ok) found.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return found;
}

} // namespace

TEST_CASE("canonical form is relabeling invariant", "[graphcore]") {
    std::mt19937 rng(7);
    for (const auto& g : {theta(), dumbbell(), two_loops(),
                          graph_from_edges(3, {{0, 1}, {0, 1}, {1, 2}, {2, 0}}),
                          graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})}) {
        auto base = canonicalize(g);
        for (int trial = 0; trial < 200; ++trial) {
            auto h = random_relabel(g, rng);
            auto c = canonicalize(h);
            REQUIRE(c.graph.inv == base.graph.inv);
            REQUIRE(c.graph.vat == base.graph.vat);
            REQUIRE(c.stream == base.stream);
        }
    }
}

TEST_CASE("canonicalization is idempotent with identity certificate", "[graphcore]") {
    for (const auto& g : {theta(), dumbbell(), two_loops()}) {
        auto c1 = canonicalize(g);
        auto c2 = canonicalize(c1.graph);
        REQUIRE(c2.graph.inv == c1.graph.inv);
        REQUIRE(c2.graph.vat == c1.graph.vat);
        for (int h = 0; h < c1.graph.num_half_edges(); ++h) REQUIRE(c2.cert.hmap[h] == h);
    }
}

TEST_CASE("all dumbbell encodings canonicalize identically", "[graphcore]") {
    auto base = canonicalize(dumbbell());
    std::vector<int> sigma(6);
    for (int i = 0; i < 6; ++i) sigma[i] = i;
    do {
        for (std::vector<int> tau : {std::vector<int>{0, 1}, std::vector<int>{1, 0}}) {
            HalfEdgeGraph g = relabel(dumbbell(), sigma, tau);
            try {
                g.validate();
            } catch (const StructuralError&) {
                continue;
            }
            auto c = canonicalize(g);
            REQUIRE(c.stream == base.stream);
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST_CASE("automorphism groups match the brute-force oracle", "[graphcore]") {
    auto check = [](const HalfEdgeGraph& g, size_t expected) {
        auto c = canonicalize(g);
        REQUIRE(c.automorphisms.size() == expected);
        REQUIRE(brute_force_automorphisms(c.graph).size() == expected);
    };
    check(theta(), 12);
    check(two_loops(), 8);
    // rigid: asymmetric tree on 7 vertices
    check(graph_from_edges(7, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}}), 1);
}

TEST_CASE("orientation signs on automorphisms", "[graphcore]") {
    SECTION("identity is +1") {
        auto c = canonicalize(theta());
        REQUIRE(automorphism_sign(c.graph, c.deco, c.automorphisms.front(), false) >= -1);
        GraphIso ident;
        ident.hmap.resize(c.graph.num_half_edges());
        for (int h = 0; h < c.graph.num_half_edges(); ++h) ident.hmap[h] = h;
        REQUIRE(automorphism_sign(c.graph, c.deco, ident, false) == 1);
    }
    SECTION("theta vertex swap reversing all edges is +1") {
        auto c = canonicalize(theta());
        GraphIso bar;
        bar.hmap.resize(6);
        for (int h = 0; h < 6; ++h) bar.hmap[h] = c.graph.inv[h];
        REQUIRE(automorphism_sign(c.graph, c.deco, bar, false) == 1);
    }
    SECTION("dumbbell loop reversal is -1") {
        auto c = canonicalize(dumbbell());
        // find the automorphism fixing every vertex that swaps exactly one loop's halves
        bool found = false;
        for (const auto& a : c.automorphisms) {
            auto vmap = induced_vertex_map(c.graph, a, c.graph);
            bool vfix = true;
            for (int v = 0; v < c.graph.nv; ++v) vfix &= (vmap[v] == v);
            int moved = 0;
            for (int h = 0; h < 6; ++h) moved += (a.hmap[h] != h);
            if (vfix && moved == 2) {
                REQUIRE(automorphism_sign(c.graph, c.deco, a, false) == -1);
                found = true;
            }
        }
        REQUIRE(found);
    }
}

TEST_CASE("orientation sign is multiplicative", "[graphcore]") {
    for (const auto& g : {theta(), dumbbell(), two_loops(),
                          graph_from_edges(2, {{0, 1}, {0, 1}, {0, 0}, {1, 1}})}) {
        auto c = canonicalize(g);
        for (const auto& a : c.automorphisms)
            for (const auto& b : c.automorphisms) {
                int sa = automorphism_sign(c.graph, c.deco, a, false);
                int sb = automorphism_sign(c.graph, c.deco, b, false);
                int sab = automorphism_sign(c.graph, c.deco, compose(a, b), false);
                REQUIRE(sab == sa * sb);
            }
    }
}

TEST_CASE("zero by symmetry", "[graphcore]") {
    REQUIRE(is_zero_by_symmetry(Variant::Commutative, dumbbell(), {}));
    REQUIRE_FALSE(is_zero_by_symmetry(Variant::Commutative, theta(), {}));
    REQUIRE(is_zero_by_symmetry(Variant::Commutative, two_loops(), {}));

    std::mt19937 rng(11);
    for (const auto& g : {theta(), dumbbell(), two_loops()}) {
        bool z = is_zero_by_symmetry(Variant::Commutative, g, {});
        for (int t = 0; t < 25; ++t)
            REQUIRE(is_zero_by_symmetry(Variant::Commutative, random_relabel(g, rng), {}) == z);
    }
}

TEST_CASE("edge collapse", "[graphcore]") {
    SECTION("theta collapse gives the two-loop graph, merged vertex first") {
        auto g = theta();
        auto o = Orientation::reference(g);
        auto out = collapse_edge(g, {}, o, g.edge_reps()[0]);
        REQUIRE_FALSE(out.zero);
        REQUIRE(out.graph.nv == 1);
        REQUIRE(out.graph.num_edges() == 2);
        REQUIRE(out.graph.loop_count(0) == 2);
    }
    SECTION("loop collapse is zero") {
        auto g = dumbbell();
        auto o = Orientation::reference(g);
        int loop_rep = -1;
        for (int r : g.edge_reps())
            if (g.is_loop(r)) loop_rep = r;
        REQUIRE(collapse_edge(g, {}, o, loop_rep).zero);
    }
    SECTION("dumbbell bridge collapse gives two loops") {
        auto g = dumbbell();
        auto o = Orientation::reference(g);
        int bridge = -1;
        for (int r : g.edge_reps())
            if (!g.is_loop(r)) bridge = r;
        auto out = collapse_edge(g, {}, o, bridge);
        REQUIRE_FALSE(out.zero);
        REQUIRE(out.graph.nv == 1);
        REQUIRE(out.graph.loop_count(0) == 2);
    }
    SECTION("two adjacent collapses anticommute") {
        // triangle with a doubled edge; collapse the two simple edges in both orders
        auto g = graph_from_edges(3, {{0, 1}, {0, 1}, {1, 2}, {2, 0}});
        auto o = Orientation::reference(g);
        auto reps = g.edge_reps();
        int e = reps[2], f = reps[3];

        auto first = collapse_edge(g, {}, o, e);
        REQUIRE_FALSE(first.zero);
        auto second = collapse_edge(first.graph, {}, first.ori, first.hmap[std::min(f, g.inv[f])]);
        REQUIRE_FALSE(second.zero);

        auto first2 = collapse_edge(g, {}, o, f);
        auto second2 = collapse_edge(first2.graph, {}, first2.ori, first2.hmap[std::min(e, g.inv[e])]);
        REQUIRE_FALSE(second2.zero);

        auto ca = canonicalize(second.graph);
        auto cb = canonicalize(second2.graph);
        REQUIRE(ca.stream == cb.stream);
        int sa = first.sign * second.sign *
                 orientation_sign_plain(second.graph, second.ori, ca.cert, ca.graph);
        int sb = first2.sign * second2.sign *
                 orientation_sign_plain(second2.graph, second2.ori, cb.cert, cb.graph);
        REQUIRE(sa == -sb);
    }
}

TEST_CASE("reglue along the standard pairing is the identity", "[graphcore]") {
    std::mt19937 rng(3);
    for (const auto& g0 : {theta(), dumbbell(), two_loops(),
                           graph_from_edges(3, {{0, 1}, {0, 1}, {1, 2}, {2, 0}})}) {
        auto g = random_relabel(g0, rng);
        auto o = Orientation::reference(g);
        auto out = reglue(g, {}, o, g.inv);
        REQUIRE(out.sign == 1);
        REQUIRE(out.circles == g.num_edges());
        REQUIRE(out.graph.inv == g.inv);
        REQUIRE(out.ori.edge_init == o.edge_init);
    }
}

TEST_CASE("graph enumeration matches hand counts and the involution oracle", "[graphcore]") {
    SECTION("k=2 r=2 trivalent: theta and dumbbell") {
        auto got = enumerate_graphs(2, 2, 3, true);
        REQUIRE(got.size() == 2);
    }
    SECTION("k=1 r=2 trivalent: the two-loop graph") {
        auto got = enumerate_graphs(1, 2, 3, true);
        REQUIRE(got.size() == 1);
        REQUIRE(got[0].loop_count(0) == 2);
    }
    SECTION("k=3 r=2 trivalent is infeasible") {
        REQUIRE(enumerate_graphs(3, 2, 3, true).empty());
    }
    SECTION("oracle agreement for small sizes") {
        // independent generator: all involutions over explicit degree assignments,
        // deduplicated by brute-force isomorphism testing
        auto oracle_count = [](int k, int m, int min_val, bool connected) {
            std::vector<std::vector<int>> seqs;
            std::function<void(int, int, int, std::vector<int>&)> gen = [&](int total, int parts, int maxv,
                                                                            std::vector<int>& cur) {
                if (parts == 0) {
                    if (total == 0) seqs.push_back(cur);
                    return;
                }
                for (int d = std::min(total, maxv); d >= min_val; --d) {
                    cur.push_back(d);
                    gen(total - d, parts - 1, d, cur);
                    cur.pop_back();
                }
            };
            std::vector<int> cur;
            gen(2 * m, k, 2 * m, cur);
            std::vector<HalfEdgeGraph> classes;
            auto isomorphic = [](const HalfEdgeGraph& a, const HalfEdgeGraph& b) {
                if (a.nv != b.nv || a.num_half_edges() != b.num_half_edges()) return false;
                std::vector<int> av = a.valences(), bv = b.valences();
                std::sort(av.begin(), av.end());
                std::sort(bv.begin(), bv.end());
                if (av != bv) return false;
                const int H = a.num_half_edges();
                std::vector<int> p(H);
                for (int i = 0; i < H; ++i) p[i] = i;
                do {
                    bool ok = true;
                    std::vector<int> vmap(a.nv, -1);
                    for (int h = 0; h < H && ok; ++h) {
                        if (p[a.inv[h]] != b.inv[p[h]]) ok = false;
                        if (ok) {
                            int v = a.vat[h], w = b.vat[p[h]];
                            if (vmap[v] < 0)
                                vmap[v] = w;
                            else if (vmap[v] != w)
                                ok = false;
                        }
                    }
                    if (ok) return true;
                } while (std::next_permutation(p.begin(), p.end()));
                return false;
            };
            for (const auto& deg : seqs) {
                HalfEdgeGraph g;
                g.nv = k;
                for (int v = 0; v < k; ++v)
                    for (int i = 0; i < deg[v]; ++i) g.vat.push_back(v);
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
                        if (connected && !g.is_connected()) return;
                        for (const auto& c : classes)
                            if (isomorphic(g, c)) return;
                        classes.push_back(g);
                        return;
                    }
                    for (int j = h + 1; j < 2 * m; ++j) {
                        if (pi[j] >= 0) continue;
                        pi[h] = j;
                        pi[j] = h;
                        rec();
                        pi[h] = -1;
                        pi[j] = -1;
                    }
                };
                rec();
            }
            return classes.size();
        };

        for (int k = 1; k <= 3; ++k)
            for (int r = 0; r <= 3; ++r) {
                int m = k + r - 1;
                if (m < 1 || m > 5) continue;
                for (int min_val : {2, 3}) {
                    size_t mine = 0;
                    for (auto& g : enumerate_multigraphs(k, m, min_val, true))
                        if (g.is_connected()) ++mine;
                    REQUIRE(mine == oracle_count(k, m, min_val, true));
                }
            }
    }
}

TEST_CASE("one particle irreducible", "[graphcore]") {
    REQUIRE(is_one_particle_irreducible(theta()));
    REQUIRE_FALSE(is_one_particle_irreducible(dumbbell()));
    // two thetas joined by one edge
    auto g = graph_from_edges(4, {{0, 1}, {0, 1}, {0, 1}, {2, 3}, {2, 3}, {2, 3}, {1, 2}});
    REQUIRE_FALSE(is_one_particle_irreducible(g));
}

TEST_CASE("spanning forests", "[graphcore]") {
    REQUIRE(spanning_forests(theta(), 1).size() == 3);
    REQUIRE(spanning_forests(theta(), 2).size() == 1);
    REQUIRE(spanning_forests(theta(), 2)[0].empty());
    REQUIRE(spanning_forests(dumbbell(), 1).size() == 1);
}

TEST_CASE("forest orientation sign rule", "[graphcore]") {
    // forested decorations on theta: single-edge forests are never zero,
    // and automorphism signs are forest permutation parities
    auto g = theta();
    Decoration d;
    d.forest.assign(6, 0);
    d.forest[0] = d.forest[g.inv[0]] = 1;
    REQUIRE_FALSE(is_zero_by_symmetry(Variant::Forested, g, d));
    auto c = canonicalize(g, significant_deco(Variant::Forested, d));
    for (const auto& a : c.automorphisms)
        for (const auto& b : c.automorphisms)
            REQUIRE(automorphism_sign(c.graph, c.deco, compose(a, b), true) ==
                    automorphism_sign(c.graph, c.deco, a, true) * automorphism_sign(c.graph, c.deco, b, true));
}

TEST_CASE("decorated automorphisms respect ribbon structure", "[graphcore]") {
    auto g = two_loops();
    for (const auto& d : ribbon_structures(g)) {
        auto c = canonicalize(g, d);
        auto oracle = brute_force_automorphisms(c.graph, c.deco);
        REQUIRE(c.automorphisms.size() == oracle.size());
    }
}
