#include <gtest/gtest.h>

#include <cmath>

#include <kanext/constructions.hpp>

#include "support/corpus.hpp"

using namespace kanext;
using namespace kanext::corpus;

namespace {

SetFunctor nested_sets_on_chain3()
{
    return validate_set_functor(SetFunctorSpec{chain_category(3),
                                               {{"0", {"p"}}, {"1", {"p", "q"}}, {"2", {"p", "q", "r"}}},
                                               {{"0<1", {{"p", "p"}}},
                                                {"1<2", {{"p", "p"}, {"q", "q"}}},
                                                {"0<2", {{"p", "p"}}}}});
}

// L a ≤ b iff a ≤ R b, for every a and b.
bool galois(const Functor& l, const Functor& r)
{
    const auto& a = l.source();
    const auto& b = l.target();
    for (Index x = 0; x < a.object_count(); ++x)
        for (Index y = 0; y < b.object_count(); ++y)
            if (leq(b, l.object(x), y) != leq(a, x, r.object(y)))
                return false;
    return true;
}

Functor table(const FinCategory& a, const FinCategory& b, std::vector<Index> obj) { return *monotone_map(a, b, obj); }

}  // namespace

// --- representables and limits ---------------------------------------------

TEST(Representable, EveryObjectOfTheCorpus)
{
    for (const auto& [name, c] : category_corpus())
        for (Index x = 0; x < c.object_count(); ++x) {
            auto r = representable_as_lan(c, x);
            EXPECT_TRUE(r.holds) << name << " at " << c.object(x);
            EXPECT_TRUE(r.unit_generates);
            for (Index y = 0; y < c.object_count(); ++y)
                EXPECT_EQ(r.kan.ext.at(y).size(), c.hom(x, y).size());
        }
}

TEST(LimitAsRan, Product)
{
    auto d = discrete_category({"u", "v"});
    auto x = make_set_functor(d, {letters(2), letters(3, "y")}, {identity_fn(2), identity_fn(3)});
    auto r = limit_as_ran(x);
    EXPECT_EQ(r.ran_size, 6u);
    EXPECT_EQ(r.limit_size, 6u);
    EXPECT_TRUE(r.holds);
}

TEST(LimitAsRan, Equalizer)
{
    // f, g : {0,1} → {0,1}, f = id, g = const 0: equalizer {0}.
    auto pp = parallel_pair();
    auto x = make_set_functor(pp, {letters(2), letters(2, "y")}, {identity_fn(2), identity_fn(2), {0, 1}, {0, 0}});
    auto r = limit_as_ran(x);
    EXPECT_EQ(r.ran_size, 1u);
    EXPECT_EQ(r.limit_size, 1u);
    EXPECT_TRUE(r.holds);
}

TEST(LimitAsRan, EmptyShape)
{
    auto x = make_set_functor(discrete_category({}), {}, {});
    auto r = limit_as_ran(x);
    EXPECT_EQ(r.ran_size, 1u);
    EXPECT_TRUE(r.holds);
}

TEST(LimitAsRan, RandomDiagrams)
{
    std::mt19937 rng(17);
    for (const auto& [name, c] : category_corpus())
        for (int k = 0; k < 3; ++k) {
            auto x = random_set_functor(c, 0, 3, rng);
            auto r = limit_as_ran(x);
            EXPECT_TRUE(r.holds) << name;
            EXPECT_EQ(r.limit_size, product_family_count(x)) << name;
        }
}

// --- adjunctions -------------------------------------------------------------

TEST(Adjunction, GaloisConnectionBetweenChains)
{
    auto a = chain_category(3);
    auto b = chain_category(2);
    auto l = table(a, b, {0, 1, 1});
    auto r = table(b, a, {0, 2});
    ASSERT_TRUE(galois(l, r));
    auto rep = adjunction_check(l, r);
    EXPECT_TRUE(rep.condition1);
    EXPECT_TRUE(rep.condition2);
    EXPECT_TRUE(rep.triangle_left);
    EXPECT_TRUE(rep.triangle_right);
    EXPECT_TRUE(rep.holds);
    ASSERT_TRUE(rep.lan_identity);
    EXPECT_EQ(*rep.lan_identity, r);
}

TEST(Adjunction, SwappedPairFailsFirstCondition)
{
    auto a = chain_category(3);
    auto b = chain_category(2);
    auto l = table(a, b, {0, 1, 1});
    auto r = table(b, a, {0, 2});
    auto rep = adjunction_check(r, l);
    EXPECT_FALSE(rep.condition1);
    EXPECT_FALSE(rep.holds);
    ASSERT_TRUE(rep.lan_identity);
    EXPECT_EQ(rep.lan_identity->object_map(), (std::vector<Index>{0, 0, 1}));
    EXPECT_FALSE(rep.condition1_reason.empty());
    EXPECT_FALSE(adjunction_direct(r, l));
}

TEST(Adjunction, IdentityPair)
{
    auto d = diamond_lattice();
    auto id = identity_functor(d);
    auto rep = adjunction_check(id, id);
    EXPECT_TRUE(rep.holds);
    EXPECT_EQ(*rep.eta, identity_transformation(id));
    EXPECT_EQ(*rep.epsilon, identity_transformation(id));
}

TEST(Adjunction, AgreesWithHomSetsOnPosetPairs)
{
    std::vector<FinCategory> posets{chain_category(2), chain_category(3), diamond_lattice(), antichain2()};
    std::size_t pairs = 0, adjoint = 0;
    for (const auto& a : posets)
        for (const auto& b : posets)
            for (const auto& l : all_monotone_maps(a, b))
                for (const auto& r : all_monotone_maps(b, a)) {
                    bool expected = galois(l, r);
                    auto rep = adjunction_check(l, r);
                    EXPECT_EQ(rep.holds, expected);
                    EXPECT_EQ(adjunction_direct(l, r), expected);
                    if (rep.holds) {
                        EXPECT_TRUE(rep.triangle_left);
                        EXPECT_TRUE(rep.triangle_right);
                    }
                    ++pairs;
                    adjoint += expected;
                }
    EXPECT_GE(pairs, 10u);
    EXPECT_GE(adjoint, 10u);
}

TEST(Adjunction, NonPosetCategories)
{
    // The square's collapse onto the arrow and back: inclusion of s as the
    // initial object is left adjoint to the map to the point.
    auto sq = square_category();
    auto one = terminal_category();
    auto to_one = to_terminal(sq, one);
    auto init = constant_functor(one, sq, 0);
    EXPECT_TRUE(adjunction_check(init, to_one).holds);
    EXPECT_TRUE(adjunction_direct(init, to_one));
    auto last = constant_functor(one, sq, 3);
    EXPECT_FALSE(adjunction_check(last, to_one).holds);
    EXPECT_TRUE(adjunction_check(to_one, last).holds);
    EXPECT_TRUE(adjunction_direct(to_one, last));
}

// --- codensity ---------------------------------------------------------------

TEST(Codensity, ContinuationMonadSizes)
{
    auto one = terminal_category();
    for (std::size_t s : {1, 2}) {
        auto g = constant_set_functor(one, letters(s, "s"));
        std::vector<FinSet> probes{letters(0), letters(1), letters(2)};
        auto m = codensity(g, probes);
        EXPECT_TRUE(m.holds);
        EXPECT_TRUE(m.eta_natural);
        EXPECT_TRUE(m.mu_natural);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            double expected = std::pow(double(s), std::pow(double(s), double(i)));
            EXPECT_EQ(m.probes[i].t.apex.size(), std::size_t(expected));
            EXPECT_TRUE(m.probes[i].left_unit);
            EXPECT_TRUE(m.probes[i].right_unit);
            EXPECT_TRUE(m.probes[i].associativity);
            EXPECT_TRUE(m.probes[i].mu_unique);
        }
    }
}

TEST(Codensity, SixteenAtTwoTwo)
{
    auto g = constant_set_functor(terminal_category(), letters(2, "s"));
    auto m = codensity(g, {letters(2)});
    EXPECT_EQ(m.probes[0].t.apex.size(), 16u);
    EXPECT_EQ(m.probes[0].coordinates, 65536u);
    EXPECT_FALSE(m.probes[0].tt_enumerated);
    EXPECT_TRUE(m.holds);
}

TEST(Codensity, EnumeratesSmallSecondLevel)
{
    auto g = constant_set_functor(terminal_category(), letters(2, "s"));
    auto m = codensity(g, {letters(0), letters(1)});
    ASSERT_TRUE(m.probes[0].tt_enumerated);
    EXPECT_EQ(m.probes[0].tt_size, 16u);  // T(T(∅)) = 2^(2^2)
    ASSERT_TRUE(m.probes[1].tt_enumerated);
    EXPECT_EQ(m.probes[1].tt_size, 65536u);
    EXPECT_TRUE(m.holds);
}

TEST(Codensity, SingletonValueIsTerminalMonad)
{
    auto g = constant_set_functor(terminal_category(), letters(1, "s"));
    auto m = codensity(g, {letters(0), letters(1), letters(3)});
    for (const auto& p : m.probes)
        EXPECT_EQ(p.t.apex.size(), 1u);
    EXPECT_TRUE(m.holds);
}

TEST(Codensity, DiagramWithAnArrow)
{
    // G(s) = 2 → G(t) = 2 by the constant map: T(b) is cut down by the
    // compatibility along f.
    auto g = make_set_functor(arrow_category(), {letters(2), letters(2, "y")}, {identity_fn(2), identity_fn(2), {0, 0}});
    auto m = codensity(g, {letters(0), letters(1)});
    EXPECT_TRUE(m.holds);
    auto full = limit(kanext::detail::codensity_diagram(g, kanext::detail::Coordinates(g, 1, 1u << 20)));
    EXPECT_EQ(m.probes[1].t.apex.size(), full.apex.size());
    EXPECT_LT(m.probes[1].t.apex.size(), 16u);  // fewer than the unconstrained product
}

// --- Yoneda and coYoneda -----------------------------------------------------

TEST(Yoneda, NestedSetsOnChain)
{
    auto x = nested_sets_on_chain3();
    auto y = yoneda_check(x, 1);
    EXPECT_EQ(y.value, 2u);
    EXPECT_EQ(y.nat, 2u);
    EXPECT_EQ(y.limit, 2u);
    EXPECT_TRUE(y.holds);
    auto co = coyoneda_check(x, 1);
    EXPECT_EQ(co.colimit, 2u);
    EXPECT_TRUE(co.holds);
}

TEST(Yoneda, RepresentableOnPoset)
{
    auto c = chain_category(3);
    for (Index a = 0; a < 3; ++a) {
        auto h = representable(c, a, Variance::covariant);
        for (Index b = 0; b < 3; ++b) {
            auto y = yoneda_check(h, b);
            EXPECT_EQ(y.value, c.hom(a, b).size());
            EXPECT_TRUE(y.holds);
        }
    }
}

TEST(Yoneda, AgreesWithHomBijectionAtAPoint)
{
    // K = a : 1 → A, X = *: nat(Lan, H) counts match H(a).
    std::mt19937 rng(3);
    auto sq = square_category();
    auto one = terminal_category();
    auto star = constant_set_functor(one, FinSet({"*"}));
    for (Index a = 0; a < sq.object_count(); ++a) {
        auto kan = lan(constant_functor(one, sq, a), star);
        for (int k = 0; k < 4; ++k) {
            auto h = random_set_functor(sq, 0, 3, rng);
            EXPECT_EQ(hom_bijection_check(kan, h).lhs, yoneda_check(h, a).nat);
        }
    }
}

TEST(Yoneda, RandomFunctorsOnCorpus)
{
    std::mt19937 rng(5);
    for (const auto& [name, c] : category_corpus())
        for (int k = 0; k < 3; ++k) {
            auto x = random_set_functor(c, 0, 3, rng);
            for (Index a = 0; a < c.object_count(); ++a) {
                EXPECT_TRUE(yoneda_check(x, a).holds) << name;
                EXPECT_TRUE(coyoneda_check(x, a).holds) << name;
            }
        }
}

// --- density -----------------------------------------------------------------

TEST(Density, RepresentablePresheaf)
{
    auto sq = square_category();
    for (Index c = 0; c < sq.object_count(); ++c) {
        auto h = representable(sq, c, Variance::contravariant);
        auto r = density_check(h);
        EXPECT_TRUE(r.holds);
    }
}

TEST(Density, ConstantSingletonOnChain)
{
    auto f = constant_set_functor(opposite(chain_category(3)), FinSet({"*"}));
    auto r = density_check(f);
    EXPECT_EQ(r.elements, 3u);
    for (Index x = 0; x < 3; ++x)
        EXPECT_EQ(r.reconstruction.at(x).size(), 1u);
    EXPECT_TRUE(r.holds);
}

TEST(Density, ArrowWithSizesTwoAndOne)
{
    auto shape = opposite(arrow_category());
    auto f = make_set_functor(shape, {letters(2), letters(1, "y")}, {identity_fn(2), identity_fn(1), {1}});
    auto r = density_check(f);
    EXPECT_EQ(r.reconstruction.at(0).size(), 2u);
    EXPECT_EQ(r.reconstruction.at(1).size(), 1u);
    EXPECT_TRUE(r.holds);
}

// --- nerve and realization ---------------------------------------------------

TEST(Nerve, RepresentableRealizesToItsImage)
{
    auto c = chain_category(3);
    auto e = diamond_lattice();
    auto f = table(c, e, {0, 1, 3});
    for (Index x = 0; x < 3; ++x) {
        auto h = representable(c, x, Variance::contravariant);
        for (Index t = 0; t < e.object_count(); ++t) {
            auto r = nerve_realization(f, h, t);
            ASSERT_TRUE(r.realization_exists);
            EXPECT_EQ(r.realization->apex, f.object(x));
            EXPECT_EQ(r.lhs, e.hom(f.object(x), t).size());
            EXPECT_TRUE(r.holds);
        }
    }
}

TEST(Nerve, EmptyPresheafRealizesToBottom)
{
    auto c = chain_category(3);
    auto e = diamond_lattice();
    auto f = table(c, e, {1, 1, 3});
    auto empty = constant_set_functor(opposite(c), FinSet());
    for (Index t = 0; t < e.object_count(); ++t) {
        auto r = nerve_realization(f, empty, t);
        EXPECT_EQ(r.realization->apex, 0u);
        EXPECT_EQ(r.lhs, 1u);
        EXPECT_EQ(r.rhs, 1u);
        EXPECT_TRUE(r.holds);
    }
}

TEST(Nerve, MissingRealizationIsReported)
{
    auto c = discrete_category({"u", "v"});
    auto e = antichain2();
    auto f = table(c, e, {0, 1});
    auto x = constant_set_functor(opposite(c), FinSet({"*"}));
    auto r = nerve_realization(f, x, 0);
    EXPECT_FALSE(r.realization_exists);
    EXPECT_FALSE(r.holds);
}

// --- order extension ---------------------------------------------------------

TEST(OrderExtension, SupAndInfTables)
{
    auto r3 = chain_category(3);
    auto [q, inc] = full_subcategory(r3, {0, 2});
    auto v = poset_category({"1", "4"}, {{true, true}, {false, true}});
    auto x = table(q, v, {0, 1});
    auto ext = order_extension(q, r3, x);
    EXPECT_EQ(ext.lan, (std::vector<Index>{0, 0, 1}));
    EXPECT_EQ(ext.ran, (std::vector<Index>{0, 1, 1}));
    EXPECT_TRUE(ext.holds);
}

TEST(OrderExtension, WholeChainGivesBack)
{
    auto r3 = chain_category(3);
    auto v = chain_category(4);
    auto x = table(r3, v, {0, 2, 3});
    auto ext = order_extension(r3, r3, x);
    EXPECT_EQ(ext.lan, x.object_map());
    EXPECT_EQ(ext.ran, x.object_map());
}

TEST(OrderExtension, CoincideOnSubchainPoints)
{
    auto r5 = chain_category(5);
    auto [q, inc] = full_subcategory(r5, {0, 2, 4});
    auto v = chain_category(5);
    for (const auto& x : all_monotone_maps(q, v)) {
        auto ext = order_extension(q, r5, x);
        for (Index p : {0, 2, 4})
            EXPECT_EQ(ext.lan[p], ext.ran[p]);
    }
}

TEST(OrderExtension, ExtremalMonotoneExtensions)
{
    auto r4 = chain_category(4);
    auto v = chain_category(3);
    for (std::vector<Index> pts : {std::vector<Index>{0, 3}, {0, 1, 3}, {0, 2, 3}})
        for (const auto& x : all_monotone_maps(full_subcategory(r4, pts).first, v)) {
            auto q = x.source();
            auto ext = order_extension(q, r4, x);
            ASSERT_TRUE(ext.holds);
            std::size_t extensions = 0;
            for (const auto& e : all_monotone_maps(r4, v)) {
                bool agrees = true;
                for (Index i = 0; i < pts.size(); ++i)
                    agrees = agrees && e.object(pts[i]) == x.object(i);
                if (!agrees)
                    continue;
                ++extensions;
                for (Index p = 0; p < 4; ++p) {
                    EXPECT_TRUE(leq(v, ext.lan[p], e.object(p)));
                    EXPECT_TRUE(leq(v, e.object(p), ext.ran[p]));
                }
            }
            EXPECT_GE(extensions, 1u);
        }
}

TEST(OrderExtension, EmptyApproximation)
{
    auto r3 = chain_category(3);
    auto [q, inc] = full_subcategory(r3, {1, 2});
    auto x = table(q, chain_category(2), {0, 1});
    try {
        order_extension(q, r3, x);
        FAIL() << "expected EmptyApproximation";
    } catch (const EmptyApproximation& e) {
        EXPECT_EQ(e.at(), "0");
    }
}
