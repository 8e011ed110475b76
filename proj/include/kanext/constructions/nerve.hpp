#pragma once

// Realization |X| = colim over ∫X of F∘π inside a finite E, and the nerve
// R_e(c) = E(F c, e), compared through E(|X|, e) ≅ nat(X, R_e).

#include <algorithm>
#include <optional>
#include <string>

#include <kanext/fin_target.hpp>
#include <kanext/finset.hpp>
#include <kanext/kan.hpp>

namespace kanext {

/// c ↦ E(F c, e) as a set functor on C^op.
inline SetFunctor nerve_presheaf(const Functor& f, Index e)
{
    const auto& c = f.source();
    const auto& ecat = f.target();
    auto shape = opposite(c);
    std::vector<FinSet> sets;
    for (Index x = 0; x < c.object_count(); ++x) {
        std::vector<std::string> labels;
        for (Index h : ecat.hom(f.object(x), e))
            labels.push_back(ecat.morphism(h));
        sets.emplace_back(std::move(labels));
    }
    // g : x' → x in C acts E(F x, e) → E(F x', e) by h ↦ h∘F(g).
    std::vector<Fn> fns;
    for (Index g = 0; g < c.morphism_count(); ++g) {
        Index x = c.cod(g), x2 = c.dom(g);
        const auto& to = ecat.hom(f.object(x2), e);
        Fn fn;
        for (Index h : ecat.hom(f.object(x), e)) {
            Index hg = ecat.compose(h, f.morphism(g));
            fn.push_back(Index(std::find(to.begin(), to.end(), hg) - to.begin()));
        }
        fns.push_back(std::move(fn));
    }
    return make_set_functor(shape, std::move(sets), std::move(fns));
}

struct NerveReport {
    Index e = no_index;
    bool realization_exists = false;
    std::string reason;                 // why the realization is missing
    std::optional<FinCocone> realization;
    SetFunctor nerve = detail::empty_set_functor();
    std::size_t lhs = 0;                // |E(|X|, e)|
    std::size_t rhs = 0;                // |nat(X, R_e)|
    Fn comparison;                      // E(|X|, e) → nat(X, R_e), u ↦ (u∘λ)
    bool holds = false;
};

/// X is a set functor on C^op, F : C → E.
inline NerveReport nerve_realization(const Functor& f, const SetFunctor& x, Index e, const Guards& guards = {})
{
    const auto& c = f.source();
    const auto& ecat = f.target();
    if (x.shape() != opposite(c))
        throw Mismatch("nerve_realization: X is not a presheaf on the source of F");
    if (e >= ecat.object_count())
        throw NotFound("object", "#" + std::to_string(e));
    NerveReport r;
    r.e = e;
    r.nerve = nerve_presheaf(f, e);
    auto el = elements_category(x, Variance::contravariant);
    auto diagram = compose(f, make_functor(el.category, c, el.projection.object_map(), el.projection.morphism_map()));
    r.realization = fin_colimit(diagram);
    if (!r.realization) {
        r.reason = "the realization colimit does not exist in the target";
        return r;
    }
    r.realization_exists = true;

    auto nats = nat_hom(x, r.nerve, guards);
    r.rhs = nats.size();
    const auto& us = ecat.hom(r.realization->apex, e);
    r.lhs = us.size();
    for (Index u : us) {
        std::vector<Fn> comp(c.object_count());
        for (Index o = 0; o < el.elements.size(); ++o) {
            auto [obj, elem] = el.elements[o];
            Index h = ecat.compose(u, r.realization->legs[o]);
            const auto& hs = ecat.hom(f.object(obj), e);
            if (comp[obj].empty())
                comp[obj].assign(x.at(obj).size(), no_index);
            comp[obj][elem] = Index(std::find(hs.begin(), hs.end(), h) - hs.begin());
        }
        Index found = no_index;
        for (Index i = 0; i < nats.size() && found == no_index; ++i)
            if (nats[i].components() == comp)
                found = i;
        r.comparison.push_back(found);
    }
    r.holds = r.lhs == r.rhs && is_bijection(r.comparison, r.rhs);
    return r;
}

}  // namespace kanext
