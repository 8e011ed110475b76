#pragma once

// A presheaf F as the colimit of representables over its category of
// elements, computed one object at a time.

#include <algorithm>
#include <optional>

#include <kanext/finset.hpp>
#include <kanext/kan.hpp>

namespace kanext {

struct DensityReport {
    SetFunctor reconstruction = detail::empty_set_functor();  // x ↦ colim over ∫F of C(x, c)
    std::optional<SetNatTrans> iso;                           // from the iso search
    bool canonical_iso = false;  // [(c, e), h] ↦ F(h)(e) is a natural bijection
    std::size_t elements = 0;    // objects of ∫F
    bool holds = false;
};

/// F is a set functor on C^op; C is recovered as opposite(F.shape()).
inline DensityReport density_check(const SetFunctor& f, const Guards& guards = {})
{
    const auto& shape = f.shape();
    auto c = opposite(shape);
    auto el = elements_category(f, Variance::contravariant);
    DensityReport r;
    r.elements = el.category.object_count();

    std::vector<ColimitResult> cols;
    std::vector<FinSet> sets;
    for (Index x = 0; x < c.object_count(); ++x) {
        auto hx = representable(c, x, Variance::covariant);
        cols.push_back(colimit(precompose(hx, el.projection), guards));
        sets.push_back(cols.back().apex);
    }
    // For m : x → x' in C^op, i.e. g : x' → x in C, [(o, h)] ↦ [(o, h∘g)].
    auto position = [&](Index x, Index morphism) {
        const auto& h = c.hom(x, c.cod(morphism));
        return Index(std::find(h.begin(), h.end(), morphism) - h.begin());
    };
    std::vector<Fn> fns;
    for (Index m = 0; m < shape.morphism_count(); ++m) {
        Index x = shape.dom(m), x2 = shape.cod(m);
        Fn fn(cols[x].apex.size());
        for (Index cls = 0; cls < fn.size(); ++cls) {
            auto [o, pos] = cols[x].classes[cls].front();
            Index h = c.hom(x, el.elements[o].first)[pos];
            Index hg = c.compose(h, m);
            fn[cls] = cols[x2].legs[o][position(x2, hg)];
        }
        fns.push_back(std::move(fn));
    }
    r.reconstruction = make_set_functor(shape, std::move(sets), std::move(fns));
    r.iso = find_natural_iso(r.reconstruction, f, guards);

    std::vector<Fn> canon;
    bool ok = true;
    for (Index x = 0; x < c.object_count(); ++x) {
        Fn fn(cols[x].apex.size(), no_index);
        // every member of a class must land on the same element
        for (Index cls = 0; cls < fn.size(); ++cls)
            for (auto [o, pos] : cols[x].classes[cls]) {
                auto [obj, e] = el.elements[o];
                Index h = c.hom(x, obj)[pos];
                Index v = f.fn(h)[e];
                if (fn[cls] != no_index && fn[cls] != v)
                    ok = false;
                fn[cls] = v;
            }
        ok = ok && is_bijection(fn, f.at(x).size());
        canon.push_back(std::move(fn));
    }
    if (ok)
        ok = set_nat_trans_violations(r.reconstruction, f, canon).empty();
    r.canonical_iso = ok;
    r.holds = r.iso.has_value() && r.canonical_iso;
    return r;
}

}  // namespace kanext
