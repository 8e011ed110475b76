#pragma once

// The one-sided comma categories K↓b and b↓K with their projections, and the
// functors between them induced by a morphism of the base.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <kanext/error.hpp>
#include <kanext/fincat.hpp>
#include <kanext/finset.hpp>
#include <kanext/labels.hpp>

namespace kanext {

enum class Side {
    left,   // K↓b: objects (a, w : K a → b)
    right,  // b↓K: objects (a, w : b → K a)
};

struct CommaCategory {
    Side side = Side::left;
    Functor k = identity_functor(FinCategory());
    Index b = no_index;
    FinCategory cat;
    Functor projection = identity_functor(FinCategory());  // into the source of K
    std::vector<Index> witnesses;                          // per object, a morphism of the base
    std::map<std::pair<Index, Index>, Index> index;        // (a, w) ↦ object

    std::optional<Index> find(Index a, Index w) const
    {
        auto it = index.find({a, w});
        if (it == index.end())
            return std::nullopt;
        return it->second;
    }
    Index object_of(Index a) const { return projection.object(a); }
};

namespace detail {

inline CommaCategory build_comma(const Functor& k, Index b, Side side, const Guards& guards)
{
    const auto& a_cat = k.source();
    const auto& b_cat = k.target();
    if (b >= b_cat.object_count())
        throw NotFound("object", "#" + std::to_string(b));
    CommaCategory r;
    r.side = side;
    r.k = k;
    r.b = b;

    CategoryData d;
    std::vector<Index> obj_a;
    std::vector<std::vector<Index>> by_a(a_cat.object_count());
    for (Index a = 0; a < a_cat.object_count(); ++a) {
        const auto& ws = side == Side::left ? b_cat.hom(k.object(a), b) : b_cat.hom(b, k.object(a));
        for (Index w : ws) {
            Index id = d.objects.size();
            r.index.emplace(std::make_pair(a, w), id);
            by_a[a].push_back(id);
            d.objects.push_back(encode_pair(a_cat.object(a), b_cat.morphism(w)));
            obj_a.push_back(a);
            r.witnesses.push_back(w);
            if (d.objects.size() > guards.max_comma_objects)
                throw GuardExceeded("comma category objects", double(d.objects.size()),
                                    double(guards.max_comma_objects));
        }
    }

    // Triangle: left w'∘K(f) = w, right K(f)∘w = w'.
    auto commutes = [&](Index f, Index s, Index t) {
        Index kf = k.morphism(f);
        if (side == Side::left)
            return b_cat.compose(r.witnesses[t], kf) == r.witnesses[s];
        return b_cat.compose(kf, r.witnesses[s]) == r.witnesses[t];
    };

    std::map<std::tuple<Index, Index, Index>, Index> arrow;  // (f, source, target)
    std::vector<Index> under;
    std::vector<std::vector<Index>> out(d.objects.size());
    for (Index s = 0; s < d.objects.size(); ++s)
        for (Index f : a_cat.outgoing(obj_a[s]))
            for (Index t : by_a[a_cat.cod(f)]) {
                if (!commutes(f, s, t))
                    continue;
                Index m = d.morphisms.size();
                arrow[{f, s, t}] = m;
                d.morphisms.push_back(encode_tuple({a_cat.morphism(f), d.objects[s], d.objects[t]}));
                d.dom.push_back(s);
                d.cod.push_back(t);
                under.push_back(f);
                out[s].push_back(m);
            }
    d.identity.resize(d.objects.size());
    for (Index s = 0; s < d.objects.size(); ++s)
        d.identity[s] = arrow.at({a_cat.identity(obj_a[s]), s, s});
    for (Index p = 0; p < under.size(); ++p)
        for (Index q : out[d.cod[p]])
            d.composition.emplace_back(q, p, arrow.at({a_cat.compose(under[q], under[p]), d.dom[p], d.cod[q]}));

    r.cat = make_category(std::move(d));
    r.projection = make_functor(r.cat, a_cat, std::move(obj_a), std::move(under));
    return r;
}

}  // namespace detail

/// K↓b.
inline CommaCategory comma_left(const Functor& k, Index b, const Guards& guards = {})
{
    return detail::build_comma(k, b, Side::left, guards);
}

/// b↓K.
inline CommaCategory comma_right(Index b, const Functor& k, const Guards& guards = {})
{
    return detail::build_comma(k, b, Side::right, guards);
}

/// For g : b → b′, the functor K↓b → K↓b′, (a, w) ↦ (a, g∘w) on the left, or
/// b′↓K → b↓K, (a, w) ↦ (a, w∘g) on the right. `from` and `to` are the
/// prebuilt source and target commas.
inline Functor induced_comma_functor(const CommaCategory& from, const CommaCategory& to, Index g)
{
    const auto& base = from.k.target();
    if (from.side != to.side)
        throw Mismatch("induced comma functor: sides differ");
    if (g >= base.morphism_count())
        throw NotFound("morphism", "#" + std::to_string(g));
    const bool left = from.side == Side::left;
    const Index need_from = left ? base.dom(g) : base.cod(g);
    const Index need_to = left ? base.cod(g) : base.dom(g);
    if (from.b != need_from || to.b != need_to)
        throw Mismatch("induced comma functor: " + base.morphism(g) + " does not connect the given commas");

    const auto& src = from.cat;
    std::vector<Index> obj(src.object_count());
    for (Index s = 0; s < obj.size(); ++s) {
        Index w = from.witnesses[s];
        Index w2 = left ? base.compose(g, w) : base.compose(w, g);
        obj[s] = *to.find(from.projection.object(s), w2);
    }
    std::vector<Index> mor(src.morphism_count());
    for (Index m = 0; m < mor.size(); ++m) {
        Index f = from.projection.morphism(m);
        Index s = obj[src.dom(m)], t = obj[src.cod(m)];
        Index found = no_index;
        for (Index n : to.cat.hom(s, t))
            if (to.projection.morphism(n) == f) {
                found = n;
                break;
            }
        mor[m] = found;
    }
    return make_functor(src, to.cat, std::move(obj), std::move(mor));
}

/// Left: K↓dom g → K↓cod g. Right: cod g↓K → dom g↓K.
inline Functor induced_comma_functor(const Functor& k, Index g, Side side, const Guards& guards = {})
{
    const auto& base = k.target();
    if (g >= base.morphism_count())
        throw NotFound("morphism", "#" + std::to_string(g));
    if (side == Side::left)
        return induced_comma_functor(comma_left(k, base.dom(g), guards), comma_left(k, base.cod(g), guards), g);
    return induced_comma_functor(comma_right(base.cod(g), k, guards), comma_right(base.dom(g), k, guards), g);
}

}  // namespace kanext
