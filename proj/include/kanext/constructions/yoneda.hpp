#pragma once

#include <kanext/comma.hpp>
#include <kanext/finset.hpp>
#include <kanext/kan.hpp>

namespace kanext {

struct YonedaReport {
    Index a = no_index;
    std::size_t value = 0;      // |X(a)|
    std::size_t limit = 0;      // |lim over a↓A of XΠ|
    std::size_t nat = 0;        // |nat(A(a, −), X)|
    Fn to_limit;                // X(a) → lim
    Fn from_nat;                // nat → X(a), α ↦ α_a(id_a)
    bool holds = false;
};

inline YonedaReport yoneda_check(const SetFunctor& x, Index a, const Guards& guards = {})
{
    const auto& cat = x.shape();
    if (a >= cat.object_count())
        throw NotFound("object", "#" + std::to_string(a));
    YonedaReport r;
    r.a = a;
    r.value = x.at(a).size();

    auto cc = comma_right(a, identity_functor(cat), guards);
    auto lim = limit(precompose(x, cc.projection), guards);
    r.limit = lim.apex.size();
    for (Index e = 0; e < r.value; ++e) {
        std::vector<Index> family;
        for (Index o = 0; o < cc.cat.object_count(); ++o)
            family.push_back(x.fn(cc.witnesses[o])[e]);
        r.to_limit.push_back(lim.find(family).value_or(no_index));
    }

    auto h = representable(cat, a, Variance::covariant);
    Index id_pos = h.at(a).index_of(cat.morphism(cat.identity(a)));
    for (const auto& alpha : nat_hom(h, x, guards))
        r.from_nat.push_back(alpha.component(a)[id_pos]);
    r.nat = r.from_nat.size();
    r.holds = r.limit == r.value && r.nat == r.value && is_bijection(r.to_limit, r.limit) &&
              is_bijection(r.from_nat, r.value);
    return r;
}

struct CoyonedaReport {
    Index a = no_index;
    std::size_t value = 0;    // |X(a)|
    std::size_t colimit = 0;  // classes of the colimit over A↓a of XΠ
    Fn to_colimit;            // X(a) → colim, through the object (a, id_a)
    bool holds = false;
};

inline CoyonedaReport coyoneda_check(const SetFunctor& x, Index a, const Guards& guards = {})
{
    const auto& cat = x.shape();
    if (a >= cat.object_count())
        throw NotFound("object", "#" + std::to_string(a));
    CoyonedaReport r;
    r.a = a;
    r.value = x.at(a).size();
    auto cc = comma_left(identity_functor(cat), a, guards);
    auto col = colimit(precompose(x, cc.projection), guards);
    r.colimit = col.apex.size();
    Index top = *cc.find(a, cat.identity(a));
    r.to_colimit = col.legs[top];
    r.holds = r.colimit == r.value && is_bijection(r.to_colimit, r.colimit);
    return r;
}

}  // namespace kanext
