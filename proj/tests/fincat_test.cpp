#include <gtest/gtest.h>

#include <algorithm>

#include <kanext/fincat.hpp>

#include "support/corpus.hpp"

using namespace kanext;
using kanext::corpus::arrow_category;
using kanext::corpus::category_corpus;
using kanext::corpus::square_category;

namespace {

bool has_kind(const std::vector<Violation>& vs, ViolationKind k)
{
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

CategoryTable chain3_table()
{
    CategoryTable t;
    t.objects = {"0", "1", "2"};
    t.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"id2", "2", "2"},
                   {"a", "0", "1"},   {"b", "1", "2"},   {"ba", "0", "2"}};
    t.identities = {{"0", "id0"}, {"1", "id1"}, {"2", "id2"}};
    t.composition = {{"b", "a", "ba"}};
    return t;
}

}  // namespace

TEST(Category, TerminalIsValid)
{
    auto t = terminal_category();
    EXPECT_EQ(t.object_count(), 1u);
    EXPECT_EQ(t.morphism_count(), 1u);
    EXPECT_EQ(t.compose(0, 0), 0u);
}

TEST(Category, ChainTableValidates)
{
    auto c = validate_category(chain3_table());
    EXPECT_EQ(c.object_count(), 3u);
    EXPECT_EQ(c.morphism_count(), 6u);
    EXPECT_EQ(c.compose(c.morphism_index("b"), c.morphism_index("a")), c.morphism_index("ba"));
    // inferred identity composites
    EXPECT_EQ(c.compose(c.morphism_index("a"), c.morphism_index("id0")), c.morphism_index("a"));
    EXPECT_EQ(c.compose(c.morphism_index("id2"), c.morphism_index("ba")), c.morphism_index("ba"));
}

TEST(Category, DeletedCompositeIsNotTotal)
{
    auto t = chain3_table();
    t.composition.clear();
    auto vs = category_violations(t);
    ASSERT_TRUE(has_kind(vs, ViolationKind::composition_not_total));
    EXPECT_EQ(std::string(describe(ViolationKind::composition_not_total)), "composition not total on composable pair");
    auto it = std::find_if(vs.begin(), vs.end(),
                           [](const Violation& v) { return v.kind == ViolationKind::composition_not_total; });
    EXPECT_EQ(it->ids, (std::vector<std::string>{"b", "a"}));
    EXPECT_THROW(validate_category(t), ValidationError);
}

TEST(Category, MissingIdentity)
{
    auto t = chain3_table();
    t.identities.erase("1");
    EXPECT_TRUE(has_kind(category_violations(t), ViolationKind::missing_identity));
}

TEST(Category, IdentityLawFailure)
{
    auto t = chain3_table();
    t.composition.push_back({"id1", "a", "a"});
    t.morphisms.push_back({"a2", "0", "1"});
    t.composition.push_back({"a2", "id0", "a"});
    t.composition.push_back({"b", "a2", "ba"});
    EXPECT_TRUE(has_kind(category_violations(t), ViolationKind::identity_law));
}

TEST(Category, AssociativityFailure)
{
    // One object with a non-associative multiplication on {id, a, b}.
    CategoryTable t;
    t.objects = {"x"};
    t.morphisms = {{"id", "x", "x"}, {"a", "x", "x"}, {"b", "x", "x"}};
    t.identities = {{"x", "id"}};
    t.composition = {{"a", "a", "a"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "a"}};
    auto vs = category_violations(t);
    EXPECT_TRUE(has_kind(vs, ViolationKind::associativity));
    EXPECT_FALSE(has_kind(vs, ViolationKind::composition_not_total));
}

TEST(Category, DanglingAndDuplicate)
{
    auto t = chain3_table();
    t.morphisms.push_back({"c", "2", "9"});
    EXPECT_TRUE(has_kind(category_violations(t), ViolationKind::dangling_reference));
    auto u = chain3_table();
    u.objects.push_back("0");
    EXPECT_TRUE(has_kind(category_violations(u), ViolationKind::duplicate_identifier));
}

TEST(Category, CompositionConflict)
{
    auto t = chain3_table();
    t.morphisms.push_back({"ba2", "0", "2"});
    t.composition.push_back({"b", "a", "ba2"});
    EXPECT_TRUE(has_kind(category_violations(t), ViolationKind::composition_conflict));
}

TEST(Category, ChainCounts)
{
    for (std::size_t n = 1; n <= 6; ++n) {
        auto c = chain_category(n);
        EXPECT_EQ(c.object_count(), n);
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                ++pairs;
        EXPECT_EQ(c.morphism_count(), pairs);
    }
    EXPECT_EQ(chain_category(3).morphism_count(), 6u);
    EXPECT_THROW(chain_category(0), InvalidArgument);
}

TEST(Category, AssociativityOnCorpus)
{
    for (const auto& [name, c] : category_corpus()) {
        for (Index f = 0; f < c.morphism_count(); ++f)
            for (Index g : c.outgoing(c.cod(f)))
                for (Index h : c.outgoing(c.cod(g)))
                    EXPECT_EQ(c.compose(h, c.compose(g, f)), c.compose(c.compose(h, g), f)) << name;
    }
}

TEST(Category, OppositeIsInvolution)
{
    for (const auto& [name, c] : category_corpus()) {
        auto op = opposite(c);
        EXPECT_EQ(opposite(op), c) << name;
        EXPECT_EQ(op.objects(), c.objects());
        EXPECT_EQ(op.morphisms(), c.morphisms());
        for (Index f = 0; f < c.morphism_count(); ++f) {
            EXPECT_EQ(op.dom(f), c.cod(f));
            EXPECT_EQ(op.cod(f), c.dom(f));
        }
        auto t = opposite(op).table();
        auto u = c.table();
        EXPECT_EQ(t.objects, u.objects);
        EXPECT_EQ(t.composition, u.composition);
    }
}

TEST(Category, LargeCategoriesUseSparseComposition)
{
    auto c = chain_category(40);  // 820 morphisms
    ASSERT_GT(c.morphism_count(), FinCategory::dense_limit);
    Index a = c.morphism_index("3<17"), b = c.morphism_index("17<39");
    EXPECT_EQ(c.morphism(c.compose(b, a)), "3<39");
}

TEST(Functor, IdentityAndConstantValidate)
{
    for (const auto& [name, c] : category_corpus()) {
        auto id = identity_functor(c);
        EXPECT_TRUE(functor_violations(c, c, id.object_map(), id.morphism_map()).empty()) << name;
    }
    auto a = chain_category(3);
    auto i = discrete_category({"p", "q"});
    auto delta = constant_functor(i, a, 1);
    EXPECT_EQ(delta.object(0), 1u);
    EXPECT_EQ(delta.object(1), 1u);
}

TEST(Functor, IdentityNotPreserved)
{
    auto a = chain_category(3);
    FunctorSpec spec{a, a, {{"0", "0"}, {"1", "1"}, {"2", "2"}},
                     {{"id_0", "0<1"}, {"0<1", "0<1"}, {"1<2", "1<2"}, {"0<2", "0<2"}}};
    auto vs = functor_violations(spec);
    EXPECT_TRUE(has_kind(vs, ViolationKind::identity_not_preserved) ||
                has_kind(vs, ViolationKind::domain_codomain_mismatch));
    // A well-typed identity failure: send id_0 to a non-identity endomorphism.
    auto m = corpus::idempotent_category();
    FunctorSpec bad{m, m, {{"x", "x"}}, {{"id_x", "e"}, {"e", "e"}}};
    auto ws = functor_violations(bad);
    ASSERT_TRUE(has_kind(ws, ViolationKind::identity_not_preserved));
    EXPECT_EQ(std::string(describe(ViolationKind::identity_not_preserved)), "identity not preserved");
}

TEST(Functor, CompositionNotPreserved)
{
    // e∘e = e cannot go to an involution s with s∘s = id.
    CategoryTable z2;
    z2.objects = {"x"};
    z2.morphisms = {{"id", "x", "x"}, {"s", "x", "x"}};
    z2.identities = {{"x", "id"}};
    z2.composition = {{"s", "s", "id"}};
    auto target = validate_category(z2);
    auto m = corpus::idempotent_category();
    FunctorSpec spec{m, target, {{"x", "x"}}, {{"e", "s"}}};
    auto vs = functor_violations(spec);
    ASSERT_TRUE(has_kind(vs, ViolationKind::composition_not_preserved));
    EXPECT_EQ(vs.front().ids, (std::vector<std::string>{"e", "e"}));
    spec.morphisms["e"] = "id";
    EXPECT_TRUE(functor_violations(spec).empty());

    auto a = arrow_category();
    FunctorSpec broken{a, chain_category(2), {{"s", "0"}, {"t", "0"}}, {{"f", "0<1"}}};
    EXPECT_TRUE(has_kind(functor_violations(broken), ViolationKind::domain_codomain_mismatch));
}

TEST(Functor, FullSubcategoryIsFullyFaithful)
{
    auto c = chain_category(4);
    auto [sub, inc] = full_subcategory(c, {0, 2, 3});
    EXPECT_EQ(sub.object_count(), 3u);
    EXPECT_EQ(sub.morphism_count(), 6u);
    EXPECT_TRUE(is_fully_faithful(inc));
    auto k = constant_functor(chain_category(2), c, 0);
    EXPECT_FALSE(is_fully_faithful(k));
}

namespace {

// Functors chain(2) → chain(3) given by monotone object maps.
Functor monotone(const FinCategory& src, const FinCategory& tgt, std::vector<Index> obj)
{
    std::vector<Index> mor(src.morphism_count());
    for (Index f = 0; f < mor.size(); ++f)
        mor[f] = tgt.hom(obj[src.dom(f)], obj[src.cod(f)]).at(0);
    return make_functor(src, tgt, std::move(obj), std::move(mor));
}

}  // namespace

TEST(NatTrans, IdentityAndWhiskering)
{
    auto a = chain_category(2);
    auto b = chain_category(3);
    auto f = monotone(a, b, {0, 1});
    auto g = monotone(a, b, {1, 2});
    auto h = monotone(a, b, {2, 2});
    auto alpha = make_nat_trans(f, g, {b.morphism_index("0<1"), b.morphism_index("1<2")});
    auto beta = make_nat_trans(g, h, {b.morphism_index("1<2"), b.morphism_index("id_2")});
    auto id_f = identity_transformation(f);
    EXPECT_EQ(vcompose(identity_transformation(g), alpha), alpha);
    EXPECT_EQ(vcompose(alpha, id_f), alpha);
    auto ba = vcompose(beta, alpha);
    EXPECT_EQ(b.morphism(ba.component(0)), "0<2");
    EXPECT_EQ(b.morphism(ba.component(1)), "1<2");

    auto gamma = make_nat_trans(h, h, {b.identity(2), b.identity(2)});
    EXPECT_EQ(vcompose(gamma, vcompose(beta, alpha)), vcompose(vcompose(gamma, beta), alpha));

    // Whiskering along K : chain(1) → chain(2) picking 1.
    auto one = chain_category(1);
    auto k = monotone(one, a, {1});
    auto ak = whisker_right(alpha, k);
    ASSERT_EQ(ak.components().size(), 1u);
    EXPECT_EQ(b.morphism(ak.component(0)), "1<2");
    EXPECT_EQ(whisker_right(id_f, k), identity_transformation(compose(f, k)));
    EXPECT_EQ(whisker_right(vcompose(beta, alpha), k), vcompose(whisker_right(beta, k), whisker_right(alpha, k)));
}

TEST(NatTrans, WhiskerLeft)
{
    auto a = chain_category(2);
    auto b = chain_category(3);
    auto f = monotone(a, b, {0, 1});
    auto g = monotone(a, b, {1, 2});
    auto alpha = make_nat_trans(f, g, {b.morphism_index("0<1"), b.morphism_index("1<2")});
    auto c = chain_category(2);
    auto h = monotone(b, c, {0, 0, 1});
    auto ha = whisker_left(h, alpha);
    EXPECT_EQ(c.morphism(ha.component(0)), "id_0");
    EXPECT_EQ(c.morphism(ha.component(1)), "0<1");
}

TEST(NatTrans, NaturalityFailureIsReported)
{
    // Two functors arrow → chain(2) where the component square fails.
    auto a = arrow_category();
    auto b = square_category();
    FunctorSpec fs{a, b, {{"s", "a"}, {"t", "b"}}, {{"f", "f"}}};
    FunctorSpec gs{a, b, {{"s", "c"}, {"t", "d"}}, {{"f", "k"}}};
    auto f = validate_functor(fs);
    auto g = validate_functor(gs);
    // components g at s, h at t: k∘g = diag = h∘f, natural.
    EXPECT_NO_THROW(validate_nat_trans({f, g, {{"s", "g"}, {"t", "h"}}}));
    // wrong typing
    try {
        validate_nat_trans({f, g, {{"s", "f"}, {"t", "h"}}});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.violations().front().kind, ViolationKind::component_ill_typed);
    }
    try {
        validate_nat_trans({f, g, {{"s", "g"}}});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.violations().front().kind, ViolationKind::component_missing);
    }
}
