#pragma once

// Pointwise Kan extensions of set-valued functors: Lan_K(X)(b) is the colimit
// of X over K↓b, Ran_K(X)(b) the limit of X over b↓K. The action on a
// morphism g is read off the (co)limit certificates through the induced comma
// functor, and every such factorization is checked.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <kanext/comma.hpp>
#include <kanext/error.hpp>
#include <kanext/fincat.hpp>
#include <kanext/finset.hpp>
#include <kanext/labels.hpp>

namespace kanext {

enum class Direction { left, right };

inline const char* to_string(Direction d) { return d == Direction::left ? "left" : "right"; }

struct KanExtension {
    Direction direction = Direction::left;
    Functor k = identity_functor(FinCategory());
    SetFunctor x;
    SetFunctor ext;
    SetNatTrans mediator;                   // unit X ⇒ ext∘K, or counit ext∘K ⇒ X
    std::vector<CommaCategory> commas;      // per object of the base
    std::vector<SetFunctor> diagrams;       // X∘π per object of the base
    std::vector<ColimitResult> colimits;    // left only
    std::vector<LimitResult> limits;        // right only
};

namespace detail {

inline SetFunctor empty_set_functor() { return make_set_functor(FinCategory(), {}, {}); }

inline SetNatTrans empty_nat_trans()
{
    auto e = empty_set_functor();
    return make_set_nat_trans(e, e, {});
}

inline void check_kan_inputs(const Functor& k, const SetFunctor& x)
{
    if (k.source() != x.shape())
        throw Mismatch("Kan extension: X is not defined on the source of K");
}

}  // namespace detail

/// Lan_K(X) with its unit.
inline KanExtension lan(const Functor& k, const SetFunctor& x, const Guards& guards = {})
{
    detail::check_kan_inputs(k, x);
    const auto& base = k.target();
    KanExtension r{Direction::left, k, x, detail::empty_set_functor(), detail::empty_nat_trans(), {}, {}, {}, {}};
    std::vector<FinSet> sets;
    for (Index b = 0; b < base.object_count(); ++b) {
        r.commas.push_back(comma_left(k, b, guards));
        r.diagrams.push_back(precompose(x, r.commas.back().projection));
        r.colimits.push_back(colimit(r.diagrams.back(), guards));
        sets.push_back(r.colimits.back().apex);
    }
    std::vector<Fn> fns(base.morphism_count());
    for (Index g = 0; g < base.morphism_count(); ++g) {
        Index b = base.dom(g), b2 = base.cod(g);
        auto j = induced_comma_functor(r.commas[b], r.commas[b2], g);
        const auto& from = r.colimits[b];
        const auto& to = r.colimits[b2];
        Fn f(from.apex.size(), no_index);
        // Each class goes where its members go; the members must agree.
        for (Index c = 0; c < from.classes.size(); ++c)
            for (auto [obj, elem] : from.classes[c]) {
                Index image = to.legs[j.object(obj)][elem];
                if (f[c] == no_index)
                    f[c] = image;
                else if (f[c] != image)
                    throw UniversalityViolation("Lan action on " + base.morphism(g) +
                                                " does not factor through the colimit", 0);
            }
        fns[g] = std::move(f);
    }
    r.ext = make_set_functor(base, std::move(sets), std::move(fns));

    std::vector<Fn> unit;
    for (Index a = 0; a < k.source().object_count(); ++a) {
        Index kb = k.object(a);
        Index obj = *r.commas[kb].find(a, base.identity(kb));
        unit.push_back(r.colimits[kb].legs[obj]);
    }
    r.mediator = make_set_nat_trans(x, precompose(r.ext, k), std::move(unit));
    return r;
}

/// Ran_K(X) with its counit.
inline KanExtension ran(const Functor& k, const SetFunctor& x, const Guards& guards = {})
{
    detail::check_kan_inputs(k, x);
    const auto& base = k.target();
    KanExtension r{Direction::right, k, x, detail::empty_set_functor(), detail::empty_nat_trans(), {}, {}, {}, {}};
    std::vector<FinSet> sets;
    for (Index b = 0; b < base.object_count(); ++b) {
        r.commas.push_back(comma_right(b, k, guards));
        r.diagrams.push_back(precompose(x, r.commas.back().projection));
        r.limits.push_back(limit(r.diagrams.back(), guards));
        sets.push_back(r.limits.back().apex);
    }
    std::vector<Fn> fns(base.morphism_count());
    for (Index g = 0; g < base.morphism_count(); ++g) {
        Index b = base.dom(g), b2 = base.cod(g);
        // b2↓K → b↓K; a family over b↓K is reindexed along it.
        auto j = induced_comma_functor(r.commas[b2], r.commas[b], g);
        const auto& from = r.limits[b];
        const auto& to = r.limits[b2];
        Fn f(from.apex.size());
        std::vector<Index> family(j.source().object_count());
        for (Index t = 0; t < from.families.size(); ++t) {
            for (Index o = 0; o < family.size(); ++o)
                family[o] = from.families[t][j.object(o)];
            auto image = to.find(family);
            if (!image)
                throw UniversalityViolation("Ran action on " + base.morphism(g) +
                                            " does not factor through the limit", 0);
            f[t] = *image;
        }
        fns[g] = std::move(f);
    }
    r.ext = make_set_functor(base, std::move(sets), std::move(fns));

    std::vector<Fn> counit;
    for (Index a = 0; a < k.source().object_count(); ++a) {
        Index kb = k.object(a);
        Index obj = *r.commas[kb].find(a, base.identity(kb));
        counit.push_back(r.limits[kb].legs[obj]);
    }
    r.mediator = make_set_nat_trans(precompose(r.ext, k), x, std::move(counit));
    return r;
}

inline KanExtension kan_extension(Direction d, const Functor& k, const SetFunctor& x, const Guards& guards = {})
{
    return d == Direction::left ? lan(k, x, guards) : ran(k, x, guards);
}

// ---------------------------------------------------------------------------
// Universal property

/// The unique α : ext ⇒ L′ with (αK)∘η = η′ (left), or β : L′ ⇒ ext with
/// ε∘(βK) = γ (right), found by enumerating every candidate. Throws
/// UniversalityViolation unless exactly one candidate survives.
inline SetNatTrans verify_universal(const KanExtension& kan, const SetFunctor& lp, const SetNatTrans& eta_p,
                                    const Guards& guards = {})
{
    const auto& k = kan.k;
    const auto& a_cat = k.source();
    std::vector<std::vector<Fn>> survivors;
    if (kan.direction == Direction::left) {
        if (eta_p.source() != kan.x || eta_p.target() != precompose(lp, k))
            throw Mismatch("verify_universal: expected a transformation X => L'K");
        for_each_nat_trans(kan.ext, lp, guards, [&](std::vector<Fn>&& alpha) {
            for (Index a = 0; a < a_cat.object_count(); ++a)
                if (compose_fn(alpha[k.object(a)], kan.mediator.component(a)) != eta_p.component(a))
                    return true;
            survivors.push_back(std::move(alpha));
            return survivors.size() < 2;
        });
    } else {
        if (eta_p.target() != kan.x || eta_p.source() != precompose(lp, k))
            throw Mismatch("verify_universal: expected a transformation L'K => X");
        for_each_nat_trans(lp, kan.ext, guards, [&](std::vector<Fn>&& beta) {
            for (Index a = 0; a < a_cat.object_count(); ++a)
                if (compose_fn(kan.mediator.component(a), beta[k.object(a)]) != eta_p.component(a))
                    return true;
            survivors.push_back(std::move(beta));
            return survivors.size() < 2;
        });
    }
    if (survivors.size() != 1)
        throw UniversalityViolation("factorization through the " + std::string(to_string(kan.direction)) +
                                        " Kan extension is not unique",
                                    survivors.size());
    auto alpha = kan.direction == Direction::left ? make_set_nat_trans(kan.ext, lp, std::move(survivors[0]))
                                                  : make_set_nat_trans(lp, kan.ext, std::move(survivors[0]));
    // Recheck the survivor with the transformation calculus.
    auto recomposed = kan.direction == Direction::left ? vcompose(whisker_right(alpha, k), kan.mediator)
                                                       : vcompose(kan.mediator, whisker_right(alpha, k));
    if (recomposed != eta_p)
        throw UniversalityViolation("factorization recheck failed", 1);
    return alpha;
}

struct HomBijectionReport {
    std::size_t lhs = 0;  // |nat(ext, H)| or |nat(H, ext)|
    std::size_t rhs = 0;  // |nat(X, HK)| or |nat(HK, X)|
    bool injective = true;
    bool holds = false;
    std::string witness;  // first failure, if any
};

/// α ↦ (αK)∘η from nat(Lan, H) to nat(X, HK), or β ↦ ε∘(βK) from
/// nat(H, Ran) to nat(HK, X); checks it is a bijection.
inline HomBijectionReport hom_bijection_check(const KanExtension& kan, const SetFunctor& h, const Guards& guards = {})
{
    const auto& k = kan.k;
    const std::size_t n = k.source().object_count();
    if (h.shape() != k.target())
        throw Mismatch("hom_bijection_check: H is not defined on the target of K");
    auto hk = precompose(h, k);
    HomBijectionReport r;
    std::set<std::vector<Fn>> images;
    auto record = [&](std::vector<Fn>&& image) {
        ++r.lhs;
        if (!images.insert(std::move(image)).second && r.injective) {
            r.injective = false;
            r.witness = "two transformations have the same image (#" + std::to_string(r.lhs - 1) + ")";
        }
        return true;
    };
    if (kan.direction == Direction::left) {
        for_each_nat_trans(kan.ext, h, guards, [&](std::vector<Fn>&& alpha) {
            std::vector<Fn> image(n);
            for (Index a = 0; a < n; ++a)
                image[a] = compose_fn(alpha[k.object(a)], kan.mediator.component(a));
            return record(std::move(image));
        });
        r.rhs = count_nat_trans(kan.x, hk, guards);
    } else {
        for_each_nat_trans(h, kan.ext, guards, [&](std::vector<Fn>&& beta) {
            std::vector<Fn> image(n);
            for (Index a = 0; a < n; ++a)
                image[a] = compose_fn(kan.mediator.component(a), beta[k.object(a)]);
            return record(std::move(image));
        });
        r.rhs = count_nat_trans(hk, kan.x, guards);
    }
    // Images must be natural transformations of the right type.
    for (const auto& img : images) {
        auto vs = kan.direction == Direction::left ? set_nat_trans_violations(kan.x, hk, img)
                                                   : set_nat_trans_violations(hk, kan.x, img);
        if (!vs.empty()) {
            r.injective = false;
            r.witness = "image is not natural: " + to_string(vs.front());
            break;
        }
    }
    if (r.injective && r.lhs != r.rhs)
        r.witness = "cardinalities differ: " + std::to_string(r.lhs) + " vs " + std::to_string(r.rhs);
    r.holds = r.injective && r.lhs == r.rhs;
    return r;
}

// ---------------------------------------------------------------------------
// Postcomposition by endofunctors of finite sets

/// S ↦ S.
struct IdentityEndofunctor {};

/// S ↦ S^c (functions c → S), f ↦ f∘−.
struct HomEndofunctor {
    FinSet c;
};

/// Defined on the sets {0, ..., n-1}; a set S is read through the order of
/// its elements. Entries not listed are unsupported, except identities.
struct TabulatedEndofunctor {
    std::map<std::size_t, FinSet> values;
    std::map<std::tuple<std::size_t, std::size_t, Fn>, Fn> actions;  // (n, m, f) ↦ G(f)
};

using SetEndofunctor = std::variant<IdentityEndofunctor, HomEndofunctor, TabulatedEndofunctor>;

inline std::string describe(const SetEndofunctor& g)
{
    if (std::holds_alternative<IdentityEndofunctor>(g))
        return "identity";
    if (auto h = std::get_if<HomEndofunctor>(&g))
        return "hom(" + std::to_string(h->c.size()) + ",-)";
    return "tabulated";
}

/// Checks identities and composites among the listed entries.
inline std::vector<Violation> tabulated_violations(const TabulatedEndofunctor& t)
{
    std::vector<Violation> vs;
    auto where = [](std::size_t n, std::size_t m) { return std::to_string(n) + "->" + std::to_string(m); };
    for (const auto& [key, gf] : t.actions) {
        const auto& [n, m, f] = key;
        auto vn = t.values.find(n), vm = t.values.find(m);
        if (vn == t.values.end() || vm == t.values.end()) {
            vs.push_back({ViolationKind::mapping_missing, "value of an endpoint of " + where(n, m), {}});
            continue;
        }
        bool ok = f.size() == n && gf.size() == vn->second.size();
        for (Index y : f)
            ok = ok && y < m;
        for (Index y : gf)
            ok = ok && y < vm->second.size();
        if (!ok)
            vs.push_back({ViolationKind::function_ill_typed, "action on a function " + where(n, m), {}});
        else if (n == m && f == identity_fn(n) && gf != identity_fn(vn->second.size()))
            vs.push_back({ViolationKind::identity_not_preserved, "at " + std::to_string(n), {}});
    }
    if (!vs.empty())
        return vs;
    for (const auto& [k1, g1] : t.actions)
        for (const auto& [k2, g2] : t.actions) {
            const auto& [n, m, f] = k1;
            const auto& [m2, p, g] = k2;
            if (m != m2)
                continue;
            auto it = t.actions.find({n, p, compose_fn(g, f)});
            if (it != t.actions.end() && it->second != compose_fn(g2, g1))
                vs.push_back({ViolationKind::composition_not_preserved, where(n, m) + " then " + where(m, p), {}});
        }
    return vs;
}

inline FinSet apply_endofunctor(const SetEndofunctor& g, const FinSet& s)
{
    if (std::holds_alternative<IdentityEndofunctor>(g))
        return s;
    if (auto h = std::get_if<HomEndofunctor>(&g)) {
        std::vector<std::string> labels;
        for_each_function(h->c.size(), s.size(), [&](const Fn& f) {
            std::vector<std::string> parts;
            for (Index y : f)
                parts.push_back(s.label(y));
            labels.push_back(encode_tuple(parts));
            return true;
        });
        return FinSet(std::move(labels));
    }
    const auto& t = std::get<TabulatedEndofunctor>(g);
    auto it = t.values.find(s.size());
    if (it == t.values.end())
        throw UnsupportedForm("tabulated endofunctor has no value at a set of size " + std::to_string(s.size()));
    return it->second;
}

/// G(f) for f : S → S′ with |S| = n, |S′| = m.
inline Fn apply_endofunctor(const SetEndofunctor& g, const Fn& f, std::size_t n, std::size_t m)
{
    if (std::holds_alternative<IdentityEndofunctor>(g))
        return f;
    if (auto h = std::get_if<HomEndofunctor>(&g)) {
        // Functions c → S are enumerated in lexicographic order; index them.
        const std::size_t c = h->c.size();
        Fn out;
        for_each_function(c, n, [&](const Fn& u) {
            Index code = 0;
            for (Index i = 0; i < c; ++i)
                code = code * m + f[u[i]];
            out.push_back(code);
            return true;
        });
        return out;
    }
    const auto& t = std::get<TabulatedEndofunctor>(g);
    auto it = t.actions.find({n, m, f});
    if (it != t.actions.end())
        return it->second;
    if (n == m && f == identity_fn(n)) {
        if (auto v = t.values.find(n); v != t.values.end())
            return identity_fn(v->second.size());
    }
    throw UnsupportedForm("tabulated endofunctor has no action on a function " + std::to_string(n) + "->" +
                          std::to_string(m));
}

/// G∘X.
inline SetFunctor postcompose(const SetEndofunctor& g, const SetFunctor& x)
{
    if (auto t = std::get_if<TabulatedEndofunctor>(&g)) {
        auto vs = tabulated_violations(*t);
        if (!vs.empty())
            throw ValidationError(std::move(vs));
    }
    const auto& c = x.shape();
    std::vector<FinSet> sets;
    for (const auto& s : x.sets())
        sets.push_back(apply_endofunctor(g, s));
    std::vector<Fn> fns;
    for (Index m = 0; m < c.morphism_count(); ++m)
        fns.push_back(apply_endofunctor(g, x.fn(m), x.at(c.dom(m)).size(), x.at(c.cod(m)).size()));
    return make_set_functor(c, std::move(sets), std::move(fns));
}

struct PreservationReport {
    std::string endofunctor;
    bool holds = false;
    std::vector<std::size_t> extension_of_composite;  // |Kan(GX)(b)|
    std::vector<std::size_t> composite_of_extension;  // |G Kan(X)(b)|
    std::optional<SetNatTrans> iso;
};

/// Compares Kan_K(G∘X) with G∘Kan_K(X) by an isomorphism search.
inline PreservationReport preservation_check(const SetEndofunctor& g, const KanExtension& kan,
                                             const Guards& guards = {})
{
    PreservationReport r;
    r.endofunctor = describe(g);
    auto gx = postcompose(g, kan.x);
    auto direct = kan_extension(kan.direction, kan.k, gx, guards);
    auto applied = postcompose(g, kan.ext);
    for (const auto& s : direct.ext.sets())
        r.extension_of_composite.push_back(s.size());
    for (const auto& s : applied.sets())
        r.composite_of_extension.push_back(s.size());
    r.iso = find_natural_iso(direct.ext, applied, guards);
    r.holds = r.iso.has_value();
    return r;
}

/// Preservation by hom(c, −) for every |c| ≤ max_c: the pointwise criterion.
inline std::vector<PreservationReport> pointwise_check(const KanExtension& kan, std::size_t max_c,
                                                       const Guards& guards = {})
{
    std::vector<PreservationReport> out;
    for (std::size_t c = 0; c <= max_c; ++c)
        out.push_back(preservation_check(HomEndofunctor{FinSet::range(c)}, kan, guards));
    return out;
}

}  // namespace kanext
