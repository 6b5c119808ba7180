#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "ogc/ratmat.hpp"
#include "ogc/spiders.hpp"

using namespace ogc;

namespace {

std::map<std::vector<int>, Rat> expand_tree(const LieTree& t) {
    std::map<std::vector<int>, Rat> out;
    detail::expand_node(t, t.top, out);
    return out;
}

std::map<std::vector<int>, Rat> expand_spider(const LieSpider& s) {
    std::map<std::vector<int>, Rat> out;
    for (auto& [w, c] : s.combs) {
        auto part = expand_tree(comb_tree(s.legs[0], w));
        for (auto& [word, coeff] : part) {
            out[word] += coeff * c;
            if (out[word] == 0) out.erase(word);
        }
    }
    return out;
}

} // namespace

TEST_CASE("commutative mating multiplies weights", "[spiders]") {
    CommSpider a{{0, 1, 2}, rat(3)};
    CommSpider b{{3, 4, 5}, rat(5, 2)};
    auto c = mate(a, 2, 3, b);
    REQUIRE(c.weight == rat(15, 2));
    REQUIRE(c.legs == std::vector<int>{0, 1, 4, 5});
}

TEST_CASE("associative splice", "[spiders]") {
    // (lam a b) o (mu c d) = (a b c d) up to rotation
    auto s = AssocSpider::basis({100, 1, 2});
    auto t = AssocSpider::basis({200, 3, 4});
    auto m = mate(s, 100, 200, t);
    REQUIRE(m.terms.size() == 1);
    REQUIRE(m.terms.begin()->first == min_rotation({1, 2, 3, 4}));

    SECTION("unit law") {
        auto u = AssocSpider::basis({100, 7});
        auto prod = mate(u, 100, 1, AssocSpider::basis({1, 2, 3}));
        REQUIRE(prod.terms.size() == 1);
        REQUIRE(prod.terms.begin()->first == min_rotation({7, 2, 3}));
    }
    SECTION("4-leg basis has (m-1)! cyclic orders") {
        std::set<std::vector<int>> orders;
        std::vector<int> perm{1, 2, 3};
        do {
            std::vector<int> cyc{0};
            cyc.insert(cyc.end(), perm.begin(), perm.end());
            orders.insert(min_rotation(cyc));
        } while (std::next_permutation(perm.begin(), perm.end()));
        REQUIRE(orders.size() == 6);
    }
    SECTION("2-leg spider has a single cyclic order") {
        REQUIRE(min_rotation({5, 3}) == min_rotation({3, 5}));
    }
}

TEST_CASE("lie antisymmetry", "[spiders]") {
    auto plus = lie_normal_form(lie_tripod(0, 1, 2));
    auto minus = lie_normal_form(lie_tripod(0, 2, 1));
    REQUIRE_FALSE(plus.is_zero());
    REQUIRE(plus == minus.scaled(-1));
}

TEST_CASE("lie IHX relator vanishes", "[spiders]") {
    auto I = glue_trees(lie_tripod(90, 1, 2), 90, lie_tripod(91, 3, 4), 91);
    auto H = glue_trees(lie_tripod(90, 1, 3), 90, lie_tripod(91, 2, 4), 91);
    auto X = glue_trees(lie_tripod(90, 1, 4), 90, lie_tripod(91, 2, 3), 91);
    LieSpider sum = lie_normal_form(I);
    sum.add(lie_normal_form(H), Rat(-1));
    sum.add(lie_normal_form(X));
    REQUIRE(sum.is_zero());
}

TEST_CASE("normal form is a faithful projection", "[spiders]") {
    // re-expanding the comb combination reproduces the tree's own expansion
    for (int legs = 3; legs <= 5; ++legs) {
        std::vector<int> legset;
        for (int i = 0; i < legs; ++i) legset.push_back(i * 3 + 1);
        auto trees = all_lie_trees(legset);
        size_t step = trees.size() > 60 ? trees.size() / 60 : 1;
        for (size_t i = 0; i < trees.size(); i += step) {
            auto nf = lie_normal_form(trees[i]);
            auto lhs = expand_tree(reroot(trees[i], nf.legs[0]));
            REQUIRE(expand_spider(nf) == lhs);
        }
    }
}

TEST_CASE("lie spider dimensions", "[spiders]") {
    // span of all trees on m legs has dimension (m-2)!; at 5 legs there are 15
    // distinct trees up to sign spanning 3! = 6 dimensions
    for (int legs = 3; legs <= 6; ++legs) {
        std::vector<int> legset;
        for (int i = 0; i < legs; ++i) legset.push_back(i);
        auto trees = all_lie_trees(legset);

        std::map<std::vector<int>, int> word_index;
        std::vector<SparseVec> vectors;
        std::set<std::map<std::vector<int>, Rat>> distinct;
        for (auto& t : trees) {
            auto nf = lie_normal_form(t);
            SparseVec v;
            for (auto& [w, c] : nf.combs) {
                auto [it, fresh] = word_index.try_emplace(w, static_cast<int>(word_index.size()));
                v[it->second] = c;
            }
            vectors.push_back(v);
            // sign-normalize the raw expansion to count tree shapes modulo AS
            auto e = expand_tree(reroot(t, t.legs()[0]));
            if (!e.empty() && e.begin()->second < 0)
                for (auto& [w, c] : e) c = -c;
            distinct.insert(e);
        }
        SparseRationalMatrix m(static_cast<int>(vectors.size()), static_cast<int>(word_index.size()));
        for (size_t r = 0; r < vectors.size(); ++r)
            for (auto& [c, val] : vectors[r]) m.add(static_cast<int>(r), c, val);
        long expected = 1;
        for (int i = 2; i <= legs - 2; ++i) expected *= i;
        REQUIRE(rank(m) == expected);
        if (legs == 5) REQUIRE(distinct.size() == 15);
    }
}

TEST_CASE("lie mate", "[spiders]") {
    SECTION("unit law: mating through the 2-leg unit renames a leg") {
        auto s = lie_normal_form(lie_tripod(0, 1, 2));
        LieSpider unit;
        unit.legs = {50, 51};
        unit.add(std::vector<int>{51}, 1);
        auto m = mate(s, 2, 50, unit);
        auto expected = lie_normal_form(lie_tripod(0, 1, 51));
        REQUIRE(m == expected);
    }
    SECTION("mating two tripods matches direct gluing") {
        auto a = lie_normal_form(lie_tripod(0, 1, 2));
        auto b = lie_normal_form(lie_tripod(10, 11, 12));
        auto m = mate(a, 2, 10, b);
        auto direct = lie_normal_form(glue_trees(lie_tripod(0, 1, 2), 2, lie_tripod(10, 11, 12), 10));
        REQUIRE(m == direct);
        REQUIRE(m.legs == std::vector<int>{0, 1, 11, 12});
    }
    SECTION("mating is independent of the chosen tree representatives") {
        // two AS-equivalent representations of the same spider mate equally
        auto r1 = lie_normal_form(lie_tripod(0, 1, 2));
        auto r2 = lie_normal_form(lie_tripod(0, 2, 1), Rat(-1));
        REQUIRE(r1 == r2);
        auto b = lie_normal_form(lie_tripod(10, 11, 12));
        REQUIRE(mate(r1, 0, 11, b) == mate(r2, 0, 11, b));
    }
}

TEST_CASE("reroot preserves the spider", "[spiders]") {
    std::vector<int> legset{2, 4, 6, 8, 10};
    auto trees = all_lie_trees(legset);
    size_t step = trees.size() / 25 + 1;
    for (size_t i = 0; i < trees.size(); i += step) {
        auto nf = lie_normal_form(trees[i]);
        for (int leg : legset) REQUIRE(lie_normal_form(reroot(trees[i], leg)) == nf);
    }
}
