#pragma once

// (Co)limits and Kan extensions for functors into a finite category, found by
// exhaustive search over apexes and cocones with a uniqueness check.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <kanext/comma.hpp>
#include <kanext/error.hpp>
#include <kanext/fincat.hpp>
#include <kanext/finset.hpp>

namespace kanext {

/// A cocone (or cone) in a finite category: legs indexed by diagram objects.
struct FinCocone {
    Index apex = no_index;
    std::vector<Index> legs;
};

namespace detail {

// Every cocone over d with the given apex, legs in lexicographic order.
inline void for_each_cocone(const Functor& d, Index apex, const std::function<bool(const std::vector<Index>&)>& visit)
{
    const auto& i = d.source();
    const auto& e = d.target();
    const std::size_t n = i.object_count();
    std::vector<std::vector<Index>> checks(n);  // morphisms whose later endpoint is this object
    for (Index m = 0; m < i.morphism_count(); ++m)
        if (!i.is_identity(m))
            checks[std::max(i.dom(m), i.cod(m))].push_back(m);
    std::vector<Index> legs(n, no_index);
    std::function<bool(Index)> go = [&](Index j) -> bool {
        if (j == n)
            return visit(legs);
        for (Index l : e.hom(d.object(j), apex)) {
            legs[j] = l;
            bool ok = true;
            for (Index m : checks[j])
                if (e.compose(legs[i.cod(m)], d.morphism(m)) != legs[i.dom(m)]) {
                    ok = false;
                    break;
                }
            if (ok && !go(j + 1))
                return false;
        }
        return true;
    };
    go(0);
}

// Morphisms u : from.apex → apex with u∘from.legs = legs.
inline std::vector<Index> mediators(const FinCategory& e, const FinCocone& from, Index apex,
                                    const std::vector<Index>& legs)
{
    std::vector<Index> out;
    for (Index u : e.hom(from.apex, apex)) {
        bool ok = true;
        for (Index j = 0; j < legs.size() && ok; ++j)
            ok = e.compose(u, from.legs[j]) == legs[j];
        if (ok)
            out.push_back(u);
    }
    return out;
}

}  // namespace detail

/// The first colimiting cocone (apexes in object order, legs in lexicographic
/// order), or nullopt when the colimit does not exist in the target.
inline std::optional<FinCocone> fin_colimit(const Functor& d)
{
    const auto& e = d.target();
    // All cocones, grouped by apex.
    std::vector<std::vector<std::vector<Index>>> cocones(e.object_count());
    for (Index x = 0; x < e.object_count(); ++x)
        detail::for_each_cocone(d, x, [&](const std::vector<Index>& legs) {
            cocones[x].push_back(legs);
            return true;
        });
    for (Index x = 0; x < e.object_count(); ++x)
        for (const auto& legs : cocones[x]) {
            FinCocone cand{x, legs};
            bool universal = true;
            for (Index y = 0; y < e.object_count() && universal; ++y)
                for (const auto& other : cocones[y])
                    if (detail::mediators(e, cand, y, other).size() != 1) {
                        universal = false;
                        break;
                    }
            if (universal)
                return cand;
        }
    return std::nullopt;
}

/// Limits are colimits in the opposite category; legs go apex → D(i).
inline std::optional<FinCocone> fin_limit(const Functor& d) { return fin_colimit(opposite_functor(d)); }

/// The unique morphism apex(from) → apex(to) with u∘from.legs[j] = to_legs[j].
inline Index fin_mediator(const FinCategory& e, const FinCocone& from, Index apex, const std::vector<Index>& to_legs)
{
    auto us = detail::mediators(e, from, apex, to_legs);
    if (us.size() != 1)
        throw UniversalityViolation("mediating morphism out of a colimit is not unique", us.size());
    return us[0];
}

/// Natural transformations between functors into a finite category.
inline std::vector<NatTrans> nat_hom_functors(const Functor& f, const Functor& g, const Guards& guards = {})
{
    if (f.source() != g.source() || f.target() != g.target())
        throw Mismatch("nat_hom_functors: functors are not parallel");
    const auto& a = f.source();
    const auto& b = f.target();
    double est = 1;
    for (Index x = 0; x < a.object_count(); ++x)
        est *= double(std::max<std::size_t>(1, b.hom(f.object(x), g.object(x)).size()));
    if (est > guards.nat_hom_cap)
        throw GuardExceeded("nat_hom_functors", est, guards.nat_hom_cap);
    const std::size_t n = a.object_count();
    std::vector<std::vector<Index>> checks(n);
    for (Index m = 0; m < a.morphism_count(); ++m)
        if (!a.is_identity(m))
            checks[std::max(a.dom(m), a.cod(m))].push_back(m);
    std::vector<Index> comp(n);
    std::vector<NatTrans> out;
    std::function<void(Index)> go = [&](Index x) {
        if (x == n) {
            out.push_back(make_nat_trans(f, g, comp));
            return;
        }
        for (Index c : b.hom(f.object(x), g.object(x))) {
            comp[x] = c;
            bool ok = true;
            for (Index m : checks[x])
                if (b.compose(g.morphism(m), comp[a.dom(m)]) != b.compose(comp[a.cod(m)], f.morphism(m))) {
                    ok = false;
                    break;
                }
            if (ok)
                go(x + 1);
        }
    };
    go(0);
    return out;
}

inline bool is_natural_iso(const NatTrans& t)
{
    const auto& b = t.source().target();
    for (Index c : t.components())
        if (!inverse_of(b, c))
            return false;
    return true;
}

inline std::vector<NatTrans> natural_isos(const Functor& f, const Functor& g, const Guards& guards = {})
{
    std::vector<NatTrans> out;
    for (auto& t : nat_hom_functors(f, g, guards))
        if (is_natural_iso(t))
            out.push_back(std::move(t));
    return out;
}

/// A left Kan extension into a finite category with its unit X ⇒ Lan∘K.
struct FinKan {
    Functor ext = identity_functor(FinCategory());
    NatTrans mediator = identity_transformation(identity_functor(FinCategory()));
    std::vector<FinCocone> cocones;  // per object of the base
};

/// Lan_K(X) for X into a finite category; throws MissingUniversal when some
/// comma colimit does not exist.
inline FinKan fin_lan(const Functor& k, const Functor& x, const Guards& guards = {})
{
    if (k.source() != x.source())
        throw Mismatch("fin_lan: X is not defined on the source of K");
    const auto& base = k.target();
    const auto& e = x.target();
    std::vector<CommaCategory> commas;
    FinKan r;
    std::vector<Index> obj;
    for (Index b = 0; b < base.object_count(); ++b) {
        commas.push_back(comma_left(k, b, guards));
        auto diagram = compose(x, commas.back().projection);
        auto c = fin_colimit(diagram);
        if (!c)
            throw MissingUniversal("colimit over the comma category at " + base.object(b) +
                                       " does not exist in the target",
                                   base.object(b));
        r.cocones.push_back(*c);
        obj.push_back(c->apex);
    }
    std::vector<Index> mor(base.morphism_count());
    for (Index g = 0; g < base.morphism_count(); ++g) {
        Index b = base.dom(g), b2 = base.cod(g);
        auto j = induced_comma_functor(commas[b], commas[b2], g);
        std::vector<Index> legs;
        for (Index o = 0; o < commas[b].cat.object_count(); ++o)
            legs.push_back(r.cocones[b2].legs[j.object(o)]);
        mor[g] = fin_mediator(e, r.cocones[b], obj[b2], legs);
    }
    r.ext = make_functor(base, e, std::move(obj), std::move(mor));
    std::vector<Index> unit;
    for (Index a = 0; a < k.source().object_count(); ++a) {
        Index kb = k.object(a);
        unit.push_back(r.cocones[kb].legs[*commas[kb].find(a, base.identity(kb))]);
    }
    r.mediator = make_nat_trans(x, compose(r.ext, k), std::move(unit));
    return r;
}

/// Ran_K(X) with its counit Ran∘K ⇒ X, computed as Lan in the opposites.
inline FinKan fin_ran(const Functor& k, const Functor& x, const Guards& guards = {})
{
    auto dual = fin_lan(opposite_functor(k), opposite_functor(x), guards);
    FinKan r;
    r.ext = make_functor(k.target(), x.target(), dual.ext.object_map(), dual.ext.morphism_map());
    r.mediator = make_nat_trans(compose(r.ext, k), x, dual.mediator.components());
    r.cocones = std::move(dual.cocones);
    return r;
}

}  // namespace kanext
