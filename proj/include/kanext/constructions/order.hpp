#pragma once

// Extending a monotone map Q → V along a subchain Q ⊂ R: the left extension
// takes the largest value below, the right one the smallest value above.

#include <optional>
#include <string>

#include <kanext/fin_target.hpp>

namespace kanext {

inline bool is_chain(const FinCategory& c)
{
    if (!is_thin(c))
        return false;
    for (Index a = 0; a < c.object_count(); ++a)
        for (Index b = 0; b < c.object_count(); ++b)
            if (c.hom(a, b).empty() && c.hom(b, a).empty())
                return false;
    return true;
}

inline bool le(const FinCategory& chain, Index a, Index b) { return !chain.hom(a, b).empty(); }

struct OrderExtension {
    Functor inclusion = identity_functor(FinCategory());
    FinKan left;
    FinKan right;
    std::vector<Index> lan;  // per object of R, an object of V
    std::vector<Index> ran;
    bool lan_is_sup = false;  // lan(x) = max{X(q) : q ≤ x}
    bool ran_is_inf = false;  // ran(x) = min{X(q) : q ≥ x}
    bool holds = false;
};

/// The inclusion Q → R matching objects by identifier.
inline Functor chain_inclusion(const FinCategory& q, const FinCategory& r)
{
    std::vector<Index> obj;
    for (const auto& id : q.objects()) {
        auto at = r.find_object(id);
        if (!at)
            throw NotFound("object", id);
        obj.push_back(*at);
    }
    std::vector<Index> mor;
    for (Index m = 0; m < q.morphism_count(); ++m) {
        const auto& h = r.hom(obj[q.dom(m)], obj[q.cod(m)]);
        if (h.empty())
            throw InvalidArgument("subchain order disagrees with the ambient chain at " + q.morphism(m));
        mor.push_back(h.front());
    }
    auto inc = make_functor(q, r, std::move(obj), std::move(mor));
    if (!is_fully_faithful(inc))
        throw InvalidArgument("subchain is not full in the ambient chain");
    return inc;
}

inline OrderExtension order_extension(const FinCategory& qsub, const FinCategory& rsup, const Functor& x,
                                      const Guards& guards = {})
{
    const auto& v = x.target();
    if (!is_chain(qsub) || !is_chain(rsup) || !is_chain(v))
        throw InvalidArgument("order_extension expects chains");
    if (x.source() != qsub)
        throw Mismatch("order_extension: X is not defined on the subchain");
    auto inc = chain_inclusion(qsub, rsup);

    // Both approximation sets must be nonempty everywhere.
    for (Index p = 0; p < rsup.object_count(); ++p) {
        bool below = false, above = false;
        for (Index q = 0; q < qsub.object_count(); ++q) {
            below = below || le(rsup, inc.object(q), p);
            above = above || le(rsup, p, inc.object(q));
        }
        if (!below)
            throw EmptyApproximation("no point of the subchain lies below " + rsup.object(p), rsup.object(p));
        if (!above)
            throw EmptyApproximation("no point of the subchain lies above " + rsup.object(p), rsup.object(p));
    }

    OrderExtension r{inc, fin_lan(inc, x, guards), fin_ran(inc, x, guards), {}, {}, true, true, false};
    for (Index p = 0; p < rsup.object_count(); ++p) {
        r.lan.push_back(r.left.ext.object(p));
        r.ran.push_back(r.right.ext.object(p));
        std::optional<Index> sup, inf;
        for (Index q = 0; q < qsub.object_count(); ++q) {
            Index val = x.object(q);
            if (le(rsup, inc.object(q), p) && (!sup || le(v, *sup, val)))
                sup = val;
            if (le(rsup, p, inc.object(q)) && (!inf || le(v, val, *inf)))
                inf = val;
        }
        r.lan_is_sup = r.lan_is_sup && sup == r.lan.back();
        r.ran_is_inf = r.ran_is_inf && inf == r.ran.back();
    }
    r.holds = r.lan_is_sup && r.ran_is_inf;
    return r;
}

}  // namespace kanext
