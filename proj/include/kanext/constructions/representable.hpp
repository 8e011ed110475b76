#pragma once

#include <optional>

#include <kanext/kan.hpp>

namespace kanext {

struct RepresentableReport {
    Index c = no_index;
    KanExtension kan;
    SetFunctor representable = detail::empty_set_functor();
    std::optional<SetNatTrans> iso;  // ext ≅ C(c, −), from the iso search
    Index unit_element = no_index;   // the unit's image of the point, in ext(c)
    bool unit_generates = false;     // C(c, −) ⇒ ext, id_c ↦ unit element, is invertible
    bool holds = false;
};

/// Lan of the one-point set functor along c : 1 → C, compared with C(c, −).
inline RepresentableReport representable_as_lan(const FinCategory& cat, Index c, const Guards& guards = {})
{
    auto one = terminal_category();
    auto point = constant_functor(one, cat, c);
    auto star = constant_set_functor(one, FinSet({"*"}));
    RepresentableReport r{c, lan(point, star, guards), representable(cat, c, Variance::covariant), {}, no_index,
                          false, false};
    const auto& ext = r.kan.ext;
    r.iso = find_natural_iso(ext, r.representable, guards);
    r.unit_element = r.kan.mediator.component(0).at(0);

    // f ↦ ext(f)(u) for f : c → x; invertible at every x iff the unit is the
    // universal element.
    r.unit_generates = true;
    for (Index x = 0; x < cat.object_count() && r.unit_generates; ++x) {
        const auto& h = cat.hom(c, x);
        if (h.size() != ext.at(x).size()) {
            r.unit_generates = false;
            break;
        }
        Fn img;
        for (Index f : h)
            img.push_back(ext.fn(f)[r.unit_element]);
        r.unit_generates = is_bijection(img, ext.at(x).size());
    }
    r.holds = r.iso.has_value() && r.unit_generates;
    return r;
}

struct LimitAsRanReport {
    std::size_t ran_size = 0;
    std::size_t limit_size = 0;
    Fn comparison;  // Ran(*) → lim D
    bool bijection = false;
    bool commutes = false;
    bool holds = false;
};

/// Ran of D along D's shape → 1, evaluated at the point, against limit(D).
inline LimitAsRanReport limit_as_ran(const SetFunctor& d, const Guards& guards = {})
{
    const auto& shape = d.shape();
    auto one = terminal_category();
    auto k = to_terminal(shape, one);
    auto kan = ran(k, d, guards);
    auto lim = limit(d, guards);
    LimitAsRanReport r;
    r.ran_size = kan.ext.at(0).size();
    r.limit_size = lim.apex.size();
    r.bijection = true;
    r.commutes = true;
    for (Index t = 0; t < r.ran_size; ++t) {
        std::vector<Index> family;
        for (Index j = 0; j < shape.object_count(); ++j)
            family.push_back(kan.mediator.component(j)[t]);
        auto at = lim.find(family);
        if (!at) {
            r.bijection = false;
            r.comparison.push_back(no_index);
            continue;
        }
        r.comparison.push_back(*at);
        for (Index j = 0; j < shape.object_count(); ++j)
            r.commutes = r.commutes && lim.legs[j][*at] == family[j];
    }
    r.bijection = r.bijection && is_bijection(r.comparison, r.limit_size);
    r.holds = r.bijection && r.commutes;
    return r;
}

}  // namespace kanext
