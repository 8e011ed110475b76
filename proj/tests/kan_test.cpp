#include <gtest/gtest.h>

#include <random>

#include <kanext/kan.hpp>

#include "support/corpus.hpp"

using namespace kanext;
using namespace kanext::corpus;

namespace {

Functor point(const FinCategory& c, Index x) { return constant_functor(terminal_category(), c, x); }

SetFunctor singleton_on(const FinCategory& c) { return constant_set_functor(c, FinSet({"*"})); }

struct ChainInclusion {
    FinCategory a;
    FinCategory b;
    Functor k;
    SetFunctor x;
};

// Discrete {0, 2} into 0 < 1 < 2 with X(0) = {u}, X(2) = {u, v}.
ChainInclusion discrete_inclusion()
{
    auto b = chain_category(3);
    auto a = discrete_category({"0", "2"});
    auto k = make_functor(a, b, {0, 2}, {b.identity(0), b.identity(2)});
    auto x = make_set_functor(a, {FinSet({"u"}), FinSet({"u", "v"})}, {identity_fn(1), identity_fn(2)});
    return {a, b, k, x};
}

std::vector<std::size_t> sizes(const SetFunctor& f)
{
    std::vector<std::size_t> v;
    for (const auto& s : f.sets())
        v.push_back(s.size());
    return v;
}

// Comma objects counted without the comma module.
std::vector<std::pair<Index, Index>> left_objects(const Functor& k, Index b)
{
    std::vector<std::pair<Index, Index>> v;
    for (Index a = 0; a < k.source().object_count(); ++a)
        for (Index w : k.target().hom(k.object(a), b))
            v.emplace_back(a, w);
    return v;
}

// |colim X over K↓b| via connected components of the element graph.
std::size_t independent_lan_size(const Functor& k, const SetFunctor& x, Index b)
{
    const auto& base = k.target();
    auto objs = left_objects(k, b);
    std::vector<std::pair<std::size_t, Index>> nodes;  // (comma object, element)
    std::map<std::pair<std::size_t, Index>, std::size_t> id;
    for (std::size_t o = 0; o < objs.size(); ++o)
        for (Index e = 0; e < x.at(objs[o].first).size(); ++e) {
            id[{o, e}] = nodes.size();
            nodes.emplace_back(o, e);
        }
    UnionFind uf(nodes.size());
    for (std::size_t s = 0; s < objs.size(); ++s)
        for (std::size_t t = 0; t < objs.size(); ++t)
            for (Index f : k.source().hom(objs[s].first, objs[t].first))
                if (base.compose(objs[t].second, k.morphism(f)) == objs[s].second)
                    for (Index e = 0; e < x.at(objs[s].first).size(); ++e)
                        uf.unite(id[{s, e}], id[{t, x.fn(f)[e]}]);
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        roots.insert(uf.find(i));
    return roots.size();
}

// |lim X over b↓K| by testing every tuple in the product.
std::size_t independent_ran_size(const Functor& k, const SetFunctor& x, Index b)
{
    const auto& base = k.target();
    std::vector<std::pair<Index, Index>> objs;
    for (Index a = 0; a < k.source().object_count(); ++a)
        for (Index w : base.hom(b, k.object(a)))
            objs.emplace_back(a, w);
    std::vector<Index> fam(objs.size());
    std::size_t count = 0;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == objs.size()) {
            for (std::size_t s = 0; s < objs.size(); ++s)
                for (std::size_t t = 0; t < objs.size(); ++t)
                    for (Index f : k.source().hom(objs[s].first, objs[t].first))
                        if (base.compose(k.morphism(f), objs[s].second) == objs[t].second &&
                            x.fn(f)[fam[s]] != fam[t])
                            return;
            ++count;
            return;
        }
        for (Index e = 0; e < x.at(objs[i].first).size(); ++e) {
            fam[i] = e;
            go(i + 1);
        }
    };
    go(0);
    return count;
}

struct Instance {
    Functor k;
    SetFunctor x;
};

// Random functors between corpus categories: monotone maps between chains,
// full subcategory inclusions, collapses.
std::vector<Instance> random_instances(std::mt19937& rng, std::size_t count)
{
    std::vector<Instance> out;
    std::vector<Functor> ks;
    auto c2 = chain_category(2), c3 = chain_category(3), c4 = chain_category(4);
    ks.push_back(full_subcategory(c3, {0, 2}).second);
    ks.push_back(full_subcategory(c4, {1, 2}).second);
    ks.push_back(full_subcategory(c4, {0, 3}).second);
    ks.push_back(validate_functor({c3, c2, {{"0", "0"}, {"1", "1"}, {"2", "1"}}, {}}));
    ks.push_back(validate_functor({c2, c3, {{"0", "0"}, {"1", "2"}}, {}}));
    ks.push_back(validate_functor({square_category(), c3, {{"a", "0"}, {"b", "1"}, {"c", "1"}, {"d", "2"}}, {}}));
    ks.push_back(validate_functor({arrow_category(), square_category(), {{"s", "a"}, {"t", "d"}}, {{"f", "diag"}}}));
    ks.push_back(validate_functor({discrete_category({"p", "q"}), arrow_category(), {{"p", "s"}, {"q", "t"}}, {}}));
    ks.push_back(point(c3, 1));
    ks.push_back(to_terminal(parallel_pair(), terminal_category()));
    std::uniform_int_distribution<std::size_t> pick(0, ks.size() - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& k = ks[pick(rng)];
        out.push_back({k, random_set_functor(k.source(), 0, 2, rng)});
    }
    return out;
}

}  // namespace

TEST(Lan, PointFunctorGivesRepresentable)
{
    for (const auto& [name, c] : category_corpus())
        for (Index x = 0; x < c.object_count(); ++x) {
            auto kan = lan(point(c, x), singleton_on(terminal_category()));
            auto h = representable(c, x, Variance::covariant);
            auto iso = find_natural_iso(kan.ext, h);
            ASSERT_TRUE(iso) << name;
            Index unit = kan.mediator.component(0)[0];
            EXPECT_EQ(h.at(x).label(iso->component(x)[unit]), c.morphism(c.identity(x))) << name;
        }
}

TEST(Lan, ChainInclusionOracle)
{
    auto in = discrete_inclusion();
    auto l = lan(in.k, in.x);
    EXPECT_EQ(sizes(l.ext), (std::vector<std::size_t>{1, 1, 3}));
    auto r = ran(in.k, in.x);
    EXPECT_EQ(sizes(r.ext), (std::vector<std::size_t>{2, 2, 2}));
    EXPECT_EQ(r.ext.at(1).size(), 2u);
    // ext on 1<2 sends the single class to the class of (0, u).
    EXPECT_EQ(l.ext.at(2).label(l.ext.fn(in.b.morphism_index("1<2"))[0]), "(\\(0\\,0<2\\),u)");
}

TEST(Lan, AlongIdentityIsIsomorphic)
{
    std::mt19937 rng(1);
    for (const auto& [name, c] : category_corpus())
        for (int trial = 0; trial < 3; ++trial) {
            auto x = random_set_functor(c, 0, 3, rng);
            auto id = identity_functor(c);
            for (auto kan : {lan(id, x), ran(id, x)}) {
                EXPECT_TRUE(find_natural_iso(kan.ext, x)) << name;
                for (Index a = 0; a < c.object_count(); ++a)
                    EXPECT_TRUE(is_bijection(kan.mediator.component(a), x.at(a).size())) << name;
            }
        }
}

TEST(Ran, LimitAlongTerminal)
{
    std::mt19937 rng(2);
    for (const auto& shape : {parallel_pair(), cospan_category(), square_category(), discrete_category({}),
                              discrete_category({"p", "q"})}) {
        auto d = random_set_functor(shape, 0, 3, rng);
        auto kan = ran(to_terminal(shape, terminal_category()), d);
        EXPECT_EQ(kan.ext.at(0).size(), limit(d).apex.size());
    }
}

TEST(Kan, PointwiseAgreementWithIndependentPath)
{
    std::mt19937 rng(3);
    for (const auto& inst : random_instances(rng, 60)) {
        auto l = lan(inst.k, inst.x);
        auto r = ran(inst.k, inst.x);
        for (Index b = 0; b < inst.k.target().object_count(); ++b) {
            EXPECT_EQ(l.ext.at(b).size(), independent_lan_size(inst.k, inst.x, b));
            EXPECT_EQ(r.ext.at(b).size(), independent_ran_size(inst.k, inst.x, b));
        }
        // Outputs revalidate from scratch.
        EXPECT_NO_THROW(make_set_functor(l.ext.shape(), l.ext.sets(), l.ext.fns()));
        EXPECT_NO_THROW(make_set_nat_trans(l.mediator.source(), l.mediator.target(), l.mediator.components()));
        EXPECT_NO_THROW(make_set_nat_trans(r.mediator.source(), r.mediator.target(), r.mediator.components()));
    }
}

TEST(Kan, RightIsDualOfLeftOnComma)
{
    // Ran_K(X)(b) is the limit over the opposite of K^op↓b.
    std::mt19937 rng(4);
    for (const auto& inst : random_instances(rng, 20)) {
        auto r = ran(inst.k, inst.x);
        auto kop = opposite_functor(inst.k);
        for (Index b = 0; b < inst.k.target().object_count(); ++b) {
            auto cc = comma_left(kop, b);
            auto flipped = opposite(cc.cat);
            auto proj = make_functor(flipped, inst.k.source(), cc.projection.object_map(),
                                     cc.projection.morphism_map());
            EXPECT_EQ(limit(precompose(inst.x, proj)).apex.size(), r.ext.at(b).size());
        }
    }
}

TEST(Universal, UnitFactorsThroughItselfAsIdentity)
{
    auto in = discrete_inclusion();
    auto l = lan(in.k, in.x);
    EXPECT_EQ(verify_universal(l, l.ext, l.mediator), identity_transformation(l.ext));
    auto r = ran(in.k, in.x);
    EXPECT_EQ(verify_universal(r, r.ext, r.mediator), identity_transformation(r.ext));
}

TEST(Universal, PointCaseSendsIdentityToChosenElement)
{
    std::mt19937 rng(5);
    auto c = square_category();
    for (Index x = 0; x < c.object_count(); ++x) {
        auto kan = lan(point(c, x), singleton_on(terminal_category()));
        for (int trial = 0; trial < 5; ++trial) {
            auto f = random_set_functor(c, 1, 3, rng);
            auto fc = precompose(f, kan.k);
            for (Index e = 0; e < f.at(x).size(); ++e) {
                auto gamma = make_set_nat_trans(kan.x, fc, {{e}});
                auto alpha = verify_universal(kan, f, gamma);
                Index unit = kan.mediator.component(0)[0];
                EXPECT_EQ(alpha.component(x)[unit], e);
            }
        }
    }
}

TEST(Universal, RandomInstancesHaveExactlyOneSurvivor)
{
    std::mt19937 rng(6);
    int checked = 0;
    for (const auto& inst : random_instances(rng, 40)) {
        for (auto dir : {Direction::left, Direction::right}) {
            auto kan = kan_extension(dir, inst.k, inst.x);
            auto lp = random_set_functor(inst.k.target(), 0, 2, rng, "y");
            auto lpk = precompose(lp, inst.k);
            auto eta = dir == Direction::left ? random_nat_trans(inst.x, lpk, rng) : random_nat_trans(lpk, inst.x, rng);
            if (!eta)
                continue;
            EXPECT_NO_THROW(verify_universal(kan, lp, *eta));
            ++checked;
        }
    }
    EXPECT_GT(checked, 30);
}

TEST(Universal, NonUnitIsRejected)
{
    // A cocone that is not universal: X over discrete {0,2} extended by a
    // functor that forgets the distinction between u and v.
    auto in = discrete_inclusion();
    auto l = lan(in.k, in.x);
    auto lp = constant_set_functor(in.b, FinSet({"*"}));
    auto eta = make_set_nat_trans(in.x, precompose(lp, in.k), {{0}, {0, 0}});
    EXPECT_NO_THROW(verify_universal(l, lp, eta));
    auto small = validate_set_functor(
        {in.b, {{"0", {"a"}}, {"1", {"a"}}, {"2", {"a", "b"}}}, {{"0<1", {{"a", "a"}}}, {"1<2", {{"a", "a"}}}, {"0<2", {{"a", "a"}}}}});
    auto eta2 = make_set_nat_trans(in.x, precompose(small, in.k), {{0}, {1, 1}});
    EXPECT_NO_THROW(verify_universal(l, small, eta2));
    try {
        // The extension factored through a transformation which is not from X.
        verify_universal(l, small, make_set_nat_trans(precompose(small, in.k), precompose(small, in.k),
                                                      {{0}, {0, 1}}));
        FAIL();
    } catch (const Mismatch&) {
    }
}

TEST(HomBijection, IdentityMapsToUnit)
{
    auto in = discrete_inclusion();
    auto l = lan(in.k, in.x);
    auto rep = hom_bijection_check(l, l.ext);
    EXPECT_TRUE(rep.holds);
    EXPECT_EQ(rep.lhs, rep.rhs);
}

TEST(HomBijection, PointCaseCountsAreFc)
{
    std::mt19937 rng(7);
    auto c = chain_category(3);
    for (Index x = 0; x < 3; ++x) {
        auto kan = lan(point(c, x), singleton_on(terminal_category()));
        for (int trial = 0; trial < 5; ++trial) {
            auto f = random_set_functor(c, 0, 3, rng);
            auto rep = hom_bijection_check(kan, f);
            EXPECT_TRUE(rep.holds);
            EXPECT_EQ(rep.lhs, f.at(x).size());
        }
    }
}

TEST(HomBijection, RandomInstances)
{
    std::mt19937 rng(8);
    for (const auto& inst : random_instances(rng, 30))
        for (auto dir : {Direction::left, Direction::right}) {
            auto kan = kan_extension(dir, inst.k, inst.x);
            auto h = random_set_functor(inst.k.target(), 0, 3, rng, "h");
            auto rep = hom_bijection_check(kan, h);
            EXPECT_TRUE(rep.holds) << rep.witness;
        }
}

TEST(Preservation, IdentityAndHom)
{
    auto in = discrete_inclusion();
    for (auto dir : {Direction::left, Direction::right}) {
        auto kan = kan_extension(dir, in.k, in.x);
        EXPECT_TRUE(preservation_check(IdentityEndofunctor{}, kan).holds);
        EXPECT_TRUE(preservation_check(HomEndofunctor{FinSet({"*"})}, kan).holds);
    }
    auto r = ran(in.k, in.x);
    auto rep = preservation_check(HomEndofunctor{FinSet::range(2)}, r);
    EXPECT_TRUE(rep.holds);
    EXPECT_EQ(rep.extension_of_composite, (std::vector<std::size_t>{4, 4, 4}));
    for (const auto& p : pointwise_check(r, 2))
        EXPECT_TRUE(p.holds) << p.endofunctor;
}

TEST(Preservation, HomDoesNotPreserveCoproducts)
{
    // Lan along a discrete inclusion into a discrete category with a merged
    // object is a coproduct; hom(2, −) does not preserve it.
    auto a = discrete_category({"p", "q"});
    auto b = terminal_category();
    auto k = to_terminal(a, b);
    auto x = make_set_functor(a, {FinSet({"u"}), FinSet({"v"})}, {identity_fn(1), identity_fn(1)});
    auto kan = lan(k, x);
    EXPECT_EQ(kan.ext.at(0).size(), 2u);
    auto rep = preservation_check(HomEndofunctor{FinSet::range(2)}, kan);
    EXPECT_FALSE(rep.holds);
    EXPECT_EQ(rep.extension_of_composite, (std::vector<std::size_t>{2}));
    EXPECT_EQ(rep.composite_of_extension, (std::vector<std::size_t>{4}));
}

TEST(Preservation, TabulatedEndofunctor)
{
    // G(S) = S ⊔ {⊥} on sizes 0..3, every function extended by ⊥ ↦ ⊥.
    TabulatedEndofunctor g;
    for (std::size_t n = 0; n <= 3; ++n) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i)
            labels.push_back("j" + std::to_string(i));
        labels.push_back("bottom");
        g.values.emplace(n, FinSet(labels));
    }
    for (std::size_t n = 0; n <= 3; ++n)
        for (std::size_t m = 0; m <= 3; ++m)
            for_each_function(n, m, [&](const Fn& f) {
                Fn gf = f;
                gf.push_back(m);
                g.actions[{n, m, f}] = gf;
                return true;
            });
    EXPECT_TRUE(tabulated_violations(g).empty());
    auto in = discrete_inclusion();
    auto r = ran(in.k, in.x);
    auto rep = preservation_check(g, r);
    EXPECT_EQ(rep.endofunctor, "tabulated");
    TabulatedEndofunctor partial;
    partial.values.emplace(1, FinSet({"z"}));
    EXPECT_THROW(preservation_check(partial, r), UnsupportedForm);
    auto broken = g;
    broken.actions[{1, 1, Fn{0}}] = Fn{1, 1};
    EXPECT_FALSE(tabulated_violations(broken).empty());
}

TEST(FullyFaithful, RestrictionRecoversX)
{
    std::mt19937 rng(9);
    auto c4 = chain_category(4);
    auto sq = square_category();
    std::vector<Functor> incs = {full_subcategory(c4, {0, 2}).second, full_subcategory(c4, {1, 2, 3}).second,
                                 full_subcategory(sq, {0, 3}).second, full_subcategory(sq, {1, 2}).second};
    for (const auto& k : incs) {
        ASSERT_TRUE(is_fully_faithful(k));
        for (int trial = 0; trial < 4; ++trial) {
            auto x = random_set_functor(k.source(), 0, 3, rng);
            EXPECT_TRUE(find_natural_iso(precompose(ran(k, x).ext, k), x));
            EXPECT_TRUE(find_natural_iso(precompose(lan(k, x).ext, k), x));
        }
    }
}
