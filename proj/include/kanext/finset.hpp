#pragma once

// Functors into finite sets: the computational substrate for pointwise Kan
// extensions. Limits are enumerated as compatible families, colimits are
// quotients of the disjoint union computed with a union-find.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <kanext/error.hpp>
#include <kanext/fincat.hpp>
#include <kanext/labels.hpp>
#include <kanext/union_find.hpp>

namespace kanext {

/// Size caps for the exhaustive searches.
struct Guards {
    double nat_hom_cap = 1e6;          // ∏ |G a|^{|F a|} for nat_hom
    double iso_cap = 1e7;              // ∏ |F a|! for iso search
    std::size_t max_set_size = 1u << 20;  // largest (co)limit apex enumerated
    std::size_t max_comma_objects = 1u << 16;
    std::size_t codensity_coordinates = 1u << 20;  // level-two index set for codensity
    double codensity_enumeration = 1u << 17;        // largest T(T(b)) enumerated element-by-element
};

/// A finite set of unique string labels. Copies share storage.
class FinSet {
public:
    FinSet() : impl_(std::make_shared<Impl>()) {}

    explicit FinSet(std::vector<std::string> labels) : impl_(build(std::move(labels))) {}

    /// {"0", ..., "n-1"}.
    static FinSet range(std::size_t n)
    {
        std::vector<std::string> v;
        for (std::size_t i = 0; i < n; ++i)
            v.push_back(std::to_string(i));
        return FinSet(std::move(v));
    }

    std::size_t size() const noexcept { return impl_->labels.size(); }
    bool empty() const noexcept { return impl_->labels.empty(); }
    const std::string& label(Index i) const { return impl_->labels.at(i); }
    const std::vector<std::string>& labels() const noexcept { return impl_->labels; }

    std::optional<Index> find(const std::string& label) const
    {
        auto it = impl_->index.find(label);
        if (it == impl_->index.end())
            return std::nullopt;
        return it->second;
    }
    Index index_of(const std::string& label) const
    {
        if (auto i = find(label))
            return *i;
        throw NotFound("element", label);
    }

    friend bool operator==(const FinSet& a, const FinSet& b)
    {
        return a.impl_ == b.impl_ || a.impl_->labels == b.impl_->labels;
    }
    friend bool operator!=(const FinSet& a, const FinSet& b) { return !(a == b); }

private:
    struct Impl {
        std::vector<std::string> labels;
        std::unordered_map<std::string, Index> index;
    };
    static std::shared_ptr<const Impl> build(std::vector<std::string> labels)
    {
        auto impl = std::make_shared<Impl>();
        for (Index i = 0; i < labels.size(); ++i)
            if (!impl->index.emplace(labels[i], i).second)
                throw ValidationError({{ViolationKind::duplicate_label, labels[i], {labels[i]}}});
        impl->labels = std::move(labels);
        return impl;
    }
    std::shared_ptr<const Impl> impl_;
};

/// A total function between finite sets, tabulated by element index.
using Fn = std::vector<Index>;

inline Fn identity_fn(std::size_t n)
{
    Fn f(n);
    for (Index i = 0; i < n; ++i)
        f[i] = i;
    return f;
}

/// g∘f.
inline Fn compose_fn(const Fn& g, const Fn& f)
{
    Fn h(f.size());
    for (Index i = 0; i < f.size(); ++i)
        h[i] = g.at(f[i]);
    return h;
}

inline bool is_bijection(const Fn& f, std::size_t codomain)
{
    if (f.size() != codomain)
        return false;
    std::vector<bool> hit(codomain, false);
    for (Index y : f) {
        if (y >= codomain || hit[y])
            return false;
        hit[y] = true;
    }
    return true;
}

/// |cod|^|dom| as a double (saturates instead of overflowing).
inline double function_count(std::size_t dom, std::size_t cod) { return std::pow(double(cod), double(dom)); }

/// Visits every function dom → cod in lexicographic order (first element
/// varies slowest). Stops early when visit returns false.
template <class Visit>
bool for_each_function(std::size_t dom, std::size_t cod, Visit&& visit)
{
    Fn f(dom, 0);
    if (dom > 0 && cod == 0)
        return true;
    while (true) {
        if (!visit(static_cast<const Fn&>(f)))
            return false;
        std::size_t i = dom;
        while (i > 0) {
            --i;
            if (++f[i] < cod)
                break;
            f[i] = 0;
            if (i == 0)
                return true;
        }
        if (dom == 0)
            return true;
    }
}

// ---------------------------------------------------------------------------
// SetFunctor

class SetFunctor;
inline SetFunctor make_set_functor(FinCategory shape, std::vector<FinSet> sets, std::vector<Fn> fns);

/// A functor from a finite category into finite sets.
class SetFunctor {
public:
    const FinCategory& shape() const noexcept { return impl_->shape; }
    const FinSet& at(Index a) const { return impl_->sets.at(a); }
    const Fn& fn(Index f) const { return impl_->fns.at(f); }
    const std::vector<FinSet>& sets() const noexcept { return impl_->sets; }
    const std::vector<Fn>& fns() const noexcept { return impl_->fns; }

    friend bool operator==(const SetFunctor& x, const SetFunctor& y)
    {
        return x.impl_ == y.impl_ ||
               (x.impl_->sets == y.impl_->sets && x.impl_->fns == y.impl_->fns && x.impl_->shape == y.impl_->shape);
    }
    friend bool operator!=(const SetFunctor& x, const SetFunctor& y) { return !(x == y); }

private:
    struct Impl {
        FinCategory shape;
        std::vector<FinSet> sets;
        std::vector<Fn> fns;
    };
    explicit SetFunctor(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    friend SetFunctor make_set_functor(FinCategory, std::vector<FinSet>, std::vector<Fn>);
    std::shared_ptr<const Impl> impl_;
};

inline std::vector<Violation> set_functor_violations(const FinCategory& shape, const std::vector<FinSet>& sets,
                                                     const std::vector<Fn>& fns)
{
    std::vector<Violation> vs;
    if (sets.size() != shape.object_count() || fns.size() != shape.morphism_count()) {
        vs.push_back({ViolationKind::mapping_missing, "expected one set per object and one function per morphism", {}});
        return vs;
    }
    bool typed = true;
    for (Index m = 0; m < fns.size(); ++m) {
        const auto& f = fns[m];
        std::size_t n = sets[shape.dom(m)].size(), k = sets[shape.cod(m)].size();
        bool ok = f.size() == n && std::all_of(f.begin(), f.end(), [&](Index y) { return y < k; });
        if (!ok) {
            typed = false;
            vs.push_back({ViolationKind::function_ill_typed, "function of " + shape.morphism(m), {shape.morphism(m)}});
        }
    }
    if (!typed)
        return vs;
    for (Index a = 0; a < sets.size(); ++a)
        if (fns[shape.identity(a)] != identity_fn(sets[a].size()))
            vs.push_back({ViolationKind::identity_not_preserved, shape.morphism(shape.identity(a)),
                          {shape.morphism(shape.identity(a))}});
    shape.for_each_composable([&](Index g, Index f) {
        if (shape.is_identity(g) || shape.is_identity(f))
            return;
        if (fns[shape.compose(g, f)] != compose_fn(fns[g], fns[f]))
            vs.push_back({ViolationKind::composition_not_preserved, shape.morphism(g) + " o " + shape.morphism(f),
                          {shape.morphism(g), shape.morphism(f)}});
    });
    return vs;
}

inline SetFunctor make_set_functor(FinCategory shape, std::vector<FinSet> sets, std::vector<Fn> fns)
{
    auto vs = set_functor_violations(shape, sets, fns);
    if (!vs.empty())
        throw ValidationError(std::move(vs));
    auto impl = std::make_shared<SetFunctor::Impl>();
    impl->shape = std::move(shape);
    impl->sets = std::move(sets);
    impl->fns = std::move(fns);
    return SetFunctor(std::move(impl));
}

/// String-keyed set-functor tables. Identity functions may be omitted.
struct SetFunctorSpec {
    FinCategory shape;
    std::map<std::string, std::vector<std::string>> sets;
    std::map<std::string, std::map<std::string, std::string>> functions;
};

inline SetFunctor validate_set_functor(const SetFunctorSpec& spec)
{
    const auto& c = spec.shape;
    std::vector<Violation> vs;
    std::vector<FinSet> sets(c.object_count());
    std::vector<bool> seen(c.object_count(), false);
    for (const auto& [o, labels] : spec.sets) {
        auto oi = c.find_object(o);
        if (!oi) {
            vs.push_back({ViolationKind::dangling_reference, "set for object " + o, {o}});
            continue;
        }
        try {
            sets[*oi] = FinSet(labels);
        } catch (const ValidationError& e) {
            for (auto v : e.violations()) {
                v.detail = "in set of " + o + ": " + v.detail;
                vs.push_back(std::move(v));
            }
        }
        seen[*oi] = true;
    }
    for (Index a = 0; a < seen.size(); ++a)
        if (!seen[a])
            vs.push_back({ViolationKind::mapping_missing, "set for object " + c.object(a), {c.object(a)}});
    if (!vs.empty())
        throw ValidationError(std::move(vs));
    std::vector<Fn> fns(c.morphism_count());
    std::vector<bool> given(c.morphism_count(), false);
    for (const auto& [m, table] : spec.functions) {
        auto mi = c.find_morphism(m);
        if (!mi) {
            vs.push_back({ViolationKind::dangling_reference, "function for morphism " + m, {m}});
            continue;
        }
        const auto& src = sets[c.dom(*mi)];
        const auto& tgt = sets[c.cod(*mi)];
        Fn f(src.size(), no_index);
        for (const auto& [x, y] : table) {
            auto xi = src.find(x);
            auto yi = tgt.find(y);
            if (!xi || !yi) {
                vs.push_back({ViolationKind::function_ill_typed, m + ": " + x + " -> " + y, {m}});
                continue;
            }
            f[*xi] = *yi;
        }
        for (Index x = 0; x < f.size(); ++x)
            if (f[x] == no_index)
                vs.push_back({ViolationKind::function_ill_typed, m + " undefined at " + src.label(x), {m}});
        fns[*mi] = std::move(f);
        given[*mi] = true;
    }
    for (Index m = 0; m < given.size(); ++m) {
        if (given[m])
            continue;
        if (c.is_identity(m))
            fns[m] = identity_fn(sets[c.dom(m)].size());
        else
            vs.push_back({ViolationKind::mapping_missing, "function for morphism " + c.morphism(m), {c.morphism(m)}});
    }
    if (!vs.empty())
        throw ValidationError(std::move(vs));
    return make_set_functor(c, std::move(sets), std::move(fns));
}

inline SetFunctor constant_set_functor(const FinCategory& shape, const FinSet& value)
{
    std::vector<FinSet> sets(shape.object_count(), value);
    std::vector<Fn> fns(shape.morphism_count(), identity_fn(value.size()));
    return make_set_functor(shape, std::move(sets), std::move(fns));
}

/// X∘K for K : A → B and X on B.
inline SetFunctor precompose(const SetFunctor& x, const Functor& k)
{
    if (k.target() != x.shape())
        throw Mismatch("precompose: functor target is not the shape of the set functor");
    std::vector<FinSet> sets;
    std::vector<Fn> fns;
    for (Index a = 0; a < k.source().object_count(); ++a)
        sets.push_back(x.at(k.object(a)));
    for (Index f = 0; f < k.source().morphism_count(); ++f)
        fns.push_back(x.fn(k.morphism(f)));
    return make_set_functor(k.source(), std::move(sets), std::move(fns));
}

/// The same functor read on the opposite of the shape's opposite (identity on
/// tables); used to move presheaves between C^op and (C^op)^op = C views.
inline SetFunctor reshape(const SetFunctor& x, const FinCategory& shape)
{
    if (x.shape() != shape)
        throw Mismatch("reshape: categories differ");
    return make_set_functor(shape, x.sets(), x.fns());
}

// ---------------------------------------------------------------------------
// Natural transformations between set functors

class SetNatTrans;
inline SetNatTrans make_set_nat_trans(SetFunctor source, SetFunctor target, std::vector<Fn> components);

class SetNatTrans {
public:
    const SetFunctor& source() const noexcept { return source_; }
    const SetFunctor& target() const noexcept { return target_; }
    const Fn& component(Index a) const { return components_.at(a); }
    const std::vector<Fn>& components() const noexcept { return components_; }

    friend bool operator==(const SetNatTrans& x, const SetNatTrans& y)
    {
        return x.components_ == y.components_ && x.source_ == y.source_ && x.target_ == y.target_;
    }
    friend bool operator!=(const SetNatTrans& x, const SetNatTrans& y) { return !(x == y); }

private:
    SetNatTrans(SetFunctor s, SetFunctor t, std::vector<Fn> c)
        : source_(std::move(s)), target_(std::move(t)), components_(std::move(c))
    {}
    friend SetNatTrans make_set_nat_trans(SetFunctor, SetFunctor, std::vector<Fn>);
    SetFunctor source_;
    SetFunctor target_;
    std::vector<Fn> components_;
};

inline std::vector<Violation> set_nat_trans_violations(const SetFunctor& f, const SetFunctor& g,
                                                       const std::vector<Fn>& comp)
{
    std::vector<Violation> vs;
    const auto& c = f.shape();
    if (c != g.shape()) {
        vs.push_back({ViolationKind::shape_mismatch, "functors are not parallel", {}});
        return vs;
    }
    if (comp.size() != c.object_count()) {
        vs.push_back({ViolationKind::component_missing, "expected one component per object", {}});
        return vs;
    }
    bool typed = true;
    for (Index a = 0; a < comp.size(); ++a) {
        std::size_t k = g.at(a).size();
        if (comp[a].size() != f.at(a).size() ||
            !std::all_of(comp[a].begin(), comp[a].end(), [&](Index y) { return y < k; })) {
            typed = false;
            vs.push_back({ViolationKind::component_ill_typed, "at " + c.object(a), {c.object(a)}});
        }
    }
    if (!typed)
        return vs;
    for (Index m = 0; m < c.morphism_count(); ++m) {
        if (c.is_identity(m))
            continue;
        Index a = c.dom(m), b = c.cod(m);
        for (Index x = 0; x < f.at(a).size(); ++x)
            if (g.fn(m)[comp[a][x]] != comp[b][f.fn(m)[x]]) {
                vs.push_back({ViolationKind::naturality,
                              c.object(a) + " -> " + c.object(b) + " along " + c.morphism(m) + " at " +
                                  f.at(a).label(x),
                              {c.object(a), c.object(b)}});
                break;
            }
    }
    return vs;
}

inline SetNatTrans make_set_nat_trans(SetFunctor source, SetFunctor target, std::vector<Fn> components)
{
    auto vs = set_nat_trans_violations(source, target, components);
    if (!vs.empty())
        throw ValidationError(std::move(vs));
    return SetNatTrans(std::move(source), std::move(target), std::move(components));
}

struct SetNatTransSpec {
    SetFunctor source;
    SetFunctor target;
    std::map<std::string, std::map<std::string, std::string>> components;
};

inline SetNatTrans validate_set_nat_trans(const SetNatTransSpec& spec)
{
    const auto& c = spec.source.shape();
    std::vector<Violation> vs;
    std::vector<Fn> comp(c.object_count());
    std::vector<bool> seen(c.object_count(), false);
    for (const auto& [o, table] : spec.components) {
        auto oi = c.find_object(o);
        if (!oi) {
            vs.push_back({ViolationKind::dangling_reference, "component at " + o, {o}});
            continue;
        }
        seen[*oi] = true;
        const auto& src = spec.source.at(*oi);
        const auto& tgt = spec.target.at(*oi);
        Fn f(src.size(), no_index);
        for (const auto& [x, y] : table) {
            auto xi = src.find(x);
            auto yi = tgt.find(y);
            if (!xi || !yi)
                vs.push_back({ViolationKind::component_ill_typed, o + ": " + x + " -> " + y, {o}});
            else
                f[*xi] = *yi;
        }
        for (Index x = 0; x < f.size(); ++x)
            if (f[x] == no_index)
                vs.push_back({ViolationKind::component_ill_typed, o + " undefined at " + src.label(x), {o}});
        comp[*oi] = std::move(f);
    }
    for (Index a = 0; a < seen.size(); ++a)
        if (!seen[a])
            vs.push_back({ViolationKind::component_missing, "at " + c.object(a), {c.object(a)}});
    if (!vs.empty())
        throw ValidationError(std::move(vs));
    return make_set_nat_trans(spec.source, spec.target, std::move(comp));
}

inline SetNatTrans identity_transformation(const SetFunctor& f)
{
    std::vector<Fn> comp;
    for (const auto& s : f.sets())
        comp.push_back(identity_fn(s.size()));
    return make_set_nat_trans(f, f, std::move(comp));
}

/// β∘α.
inline SetNatTrans vcompose(const SetNatTrans& beta, const SetNatTrans& alpha)
{
    if (alpha.target() != beta.source())
        throw Mismatch("vertical composition: endpoints do not match");
    std::vector<Fn> comp;
    for (Index a = 0; a < alpha.components().size(); ++a)
        comp.push_back(compose_fn(beta.component(a), alpha.component(a)));
    return make_set_nat_trans(alpha.source(), beta.target(), std::move(comp));
}

/// αK, components α_{K a}.
inline SetNatTrans whisker_right(const SetNatTrans& alpha, const Functor& k)
{
    std::vector<Fn> comp;
    for (Index a = 0; a < k.source().object_count(); ++a)
        comp.push_back(alpha.component(k.object(a)));
    return make_set_nat_trans(precompose(alpha.source(), k), precompose(alpha.target(), k), std::move(comp));
}

// ---------------------------------------------------------------------------
// Limits and colimits

struct LimitResult {
    FinSet apex;
    std::vector<Fn> legs;                      // apex → D(j)
    std::vector<std::vector<Index>> families;  // embedding into the product
    std::map<std::vector<Index>, Index> lookup;

    std::optional<Index> find(const std::vector<Index>& family) const
    {
        auto it = lookup.find(family);
        if (it == lookup.end())
            return std::nullopt;
        return it->second;
    }
};

struct ColimitResult {
    FinSet apex;
    std::vector<Fn> legs;                                       // D(j) → apex
    std::vector<std::vector<std::pair<Index, Index>>> classes;  // partition of the disjoint union
};

/// Compatible families (x_j) with x_{j'} = D(f)(x_j), in lexicographic order.
/// Labels are the tuple of member labels in object order.
inline LimitResult limit(const SetFunctor& d, const Guards& guards = {})
{
    const auto& c = d.shape();
    const std::size_t n = c.object_count();
    // Constraints checked once both endpoints are assigned.
    std::vector<std::vector<Index>> checks(n);
    for (Index m = 0; m < c.morphism_count(); ++m)
        if (!c.is_identity(m))
            checks[std::max(c.dom(m), c.cod(m))].push_back(m);

    LimitResult r;
    std::vector<std::string> labels;
    std::vector<Index> family(n, 0);
    std::function<void(Index)> go = [&](Index j) {
        if (j == n) {
            if (r.families.size() >= guards.max_set_size)
                throw GuardExceeded("limit apex", double(r.families.size() + 1), double(guards.max_set_size));
            r.lookup.emplace(family, r.families.size());
            r.families.push_back(family);
            std::vector<std::string> parts;
            for (Index k = 0; k < n; ++k)
                parts.push_back(d.at(k).label(family[k]));
            labels.push_back(encode_tuple(parts));
            return;
        }
        for (Index x = 0; x < d.at(j).size(); ++x) {
            family[j] = x;
            bool ok = true;
            for (Index m : checks[j])
                if (d.fn(m)[family[c.dom(m)]] != family[c.cod(m)]) {
                    ok = false;
                    break;
                }
            if (ok)
                go(j + 1);
        }
    };
    go(0);
    r.apex = FinSet(std::move(labels));
    r.legs.assign(n, Fn(r.families.size()));
    for (Index i = 0; i < r.families.size(); ++i)
        for (Index j = 0; j < n; ++j)
            r.legs[j][i] = r.families[i][j];
    return r;
}

/// Quotient of ⊔_j D(j) by (j, x) ~ (j', D(f)(x)). Classes are ordered and
/// labeled by their least representative (object order, then element order).
inline ColimitResult colimit(const SetFunctor& d, const Guards& guards = {})
{
    const auto& c = d.shape();
    const std::size_t n = c.object_count();
    std::vector<Index> offset(n + 1, 0);
    for (Index j = 0; j < n; ++j)
        offset[j + 1] = offset[j] + d.at(j).size();
    if (offset[n] > guards.max_set_size)
        throw GuardExceeded("colimit disjoint union", double(offset[n]), double(guards.max_set_size));
    UnionFind uf(offset[n]);
    for (Index m = 0; m < c.morphism_count(); ++m) {
        if (c.is_identity(m))
            continue;
        Index j = c.dom(m), k = c.cod(m);
        for (Index x = 0; x < d.at(j).size(); ++x)
            uf.unite(offset[j] + x, offset[k] + d.fn(m)[x]);
    }
    ColimitResult r;
    std::vector<Index> class_of_root(offset[n], no_index);
    std::vector<std::string> labels;
    r.legs.resize(n);
    for (Index j = 0; j < n; ++j) {
        r.legs[j].resize(d.at(j).size());
        for (Index x = 0; x < d.at(j).size(); ++x) {
            Index root = uf.find(offset[j] + x);
            if (class_of_root[root] == no_index) {
                class_of_root[root] = r.classes.size();
                r.classes.emplace_back();
                labels.push_back(encode_pair(c.object(j), d.at(j).label(x)));
            }
            Index cls = class_of_root[root];
            r.legs[j][x] = cls;
            r.classes[cls].emplace_back(j, x);
        }
    }
    r.apex = FinSet(std::move(labels));
    return r;
}

// ---------------------------------------------------------------------------
// Representables

enum class Variance { covariant, contravariant };

/// Covariant: x ↦ C(c, x) on C. Contravariant: x ↦ C(x, c) on C^op.
/// Elements are labeled by morphism identifiers.
inline SetFunctor representable(const FinCategory& cat, Index c, Variance v)
{
    if (c >= cat.object_count())
        throw NotFound("object", "#" + std::to_string(c));
    const std::size_t n = cat.object_count();
    std::vector<FinSet> sets(n);
    std::vector<std::unordered_map<Index, Index>> pos(n);
    for (Index x = 0; x < n; ++x) {
        const auto& h = v == Variance::covariant ? cat.hom(c, x) : cat.hom(x, c);
        std::vector<std::string> labels;
        for (Index i = 0; i < h.size(); ++i) {
            labels.push_back(cat.morphism(h[i]));
            pos[x][h[i]] = i;
        }
        sets[x] = FinSet(std::move(labels));
    }
    std::vector<Fn> fns(cat.morphism_count());
    for (Index f = 0; f < cat.morphism_count(); ++f) {
        Index x = cat.dom(f), y = cat.cod(f);
        if (v == Variance::covariant) {
            for (Index h : cat.hom(c, x))
                fns[f].push_back(pos[y].at(cat.compose(f, h)));
        } else {
            for (Index h : cat.hom(y, c))
                fns[f].push_back(pos[x].at(cat.compose(h, f)));
        }
    }
    if (v == Variance::covariant)
        return make_set_functor(cat, std::move(sets), std::move(fns));
    return make_set_functor(opposite(cat), std::move(sets), std::move(fns));
}

// ---------------------------------------------------------------------------
// Natural transformation enumeration

namespace detail {

// Element-level constraint problem for components F(a) → G(a): one variable
// per (a, x), constraint G(f)(v[(a,x)]) = v[(a', F(f)(x))] for each f : a → a'.
struct ComponentSearch {
    const SetFunctor& f;
    const SetFunctor& g;
    bool bijective;
    std::vector<Index> offset;
    std::vector<Index> var_object;
    struct Check {
        Index other;  // the earlier variable, or itself
        Index morphism;
        bool self_is_source;  // this variable is the (a, x) end
    };
    std::vector<std::vector<Check>> checks;
    std::vector<Index> value;
    std::vector<std::vector<bool>> used;

    ComponentSearch(const SetFunctor& f_, const SetFunctor& g_, bool bij) : f(f_), g(g_), bijective(bij)
    {
        const auto& c = f.shape();
        const std::size_t n = c.object_count();
        offset.assign(n + 1, 0);
        for (Index a = 0; a < n; ++a)
            offset[a + 1] = offset[a] + f.at(a).size();
        var_object.resize(offset[n]);
        for (Index a = 0; a < n; ++a)
            for (Index x = 0; x < f.at(a).size(); ++x)
                var_object[offset[a] + x] = a;
        checks.assign(offset[n], {});
        for (Index m = 0; m < c.morphism_count(); ++m) {
            if (c.is_identity(m))
                continue;
            Index a = c.dom(m), b = c.cod(m);
            for (Index x = 0; x < f.at(a).size(); ++x) {
                Index u = offset[a] + x;
                Index w = offset[b] + f.fn(m)[x];
                if (u >= w)
                    checks[u].push_back({w, m, true});
                else
                    checks[w].push_back({u, m, false});
            }
        }
        value.assign(offset[n], 0);
        used.resize(n);
        for (Index a = 0; a < n; ++a)
            used[a].assign(g.at(a).size(), false);
    }

    bool consistent(Index v) const
    {
        for (const auto& ch : checks[v]) {
            Index src = ch.self_is_source ? v : ch.other;
            Index tgt = ch.self_is_source ? ch.other : v;
            if (g.fn(ch.morphism)[value[src]] != value[tgt])
                return false;
        }
        return true;
    }

    std::vector<Fn> components() const
    {
        std::vector<Fn> comp(offset.size() - 1);
        for (Index a = 0; a + 1 < offset.size(); ++a)
            comp[a].assign(value.begin() + offset[a], value.begin() + offset[a + 1]);
        return comp;
    }

    // Calls emit(components) for each solution; stops when emit returns false.
    template <class Emit>
    bool run(Index v, Emit& emit)
    {
        if (v == value.size())
            return emit(components());
        Index a = var_object[v];
        for (Index y = 0; y < g.at(a).size(); ++y) {
            if (bijective && used[a][y])
                continue;
            value[v] = y;
            if (!consistent(v))
                continue;
            if (bijective)
                used[a][y] = true;
            bool more = run(v + 1, emit);
            if (bijective)
                used[a][y] = false;
            if (!more)
                return false;
        }
        return true;
    }
};

}  // namespace detail

inline double nat_hom_estimate(const SetFunctor& f, const SetFunctor& g)
{
    double e = 1;
    for (Index a = 0; a < f.shape().object_count(); ++a)
        e *= function_count(f.at(a).size(), g.at(a).size());
    return e;
}

/// Visits component tables of every natural transformation F ⇒ G in
/// lexicographic order; stops when visit returns false.
template <class Visit>
void for_each_nat_trans(const SetFunctor& f, const SetFunctor& g, const Guards& guards, Visit&& visit)
{
    if (f.shape() != g.shape())
        throw Mismatch("nat_hom: functors have different shapes");
    double est = nat_hom_estimate(f, g);
    if (est > guards.nat_hom_cap)
        throw GuardExceeded("nat_hom", est, guards.nat_hom_cap);
    detail::ComponentSearch search(f, g, false);
    auto emit = [&](std::vector<Fn>&& comp) -> bool { return visit(std::move(comp)); };
    search.run(0, emit);
}

/// Every natural transformation F ⇒ G, duplicate-free, lexicographic order.
inline std::vector<SetNatTrans> nat_hom(const SetFunctor& f, const SetFunctor& g, const Guards& guards = {})
{
    std::vector<SetNatTrans> out;
    for_each_nat_trans(f, g, guards, [&](std::vector<Fn>&& comp) {
        out.push_back(make_set_nat_trans(f, g, std::move(comp)));
        return true;
    });
    return out;
}

inline std::size_t count_nat_trans(const SetFunctor& f, const SetFunctor& g, const Guards& guards = {})
{
    std::size_t n = 0;
    for_each_nat_trans(f, g, guards, [&](std::vector<Fn>&&) {
        ++n;
        return true;
    });
    return n;
}

/// A natural transformation with bijective components, or nullopt. Cardinality
/// mismatches are rejected before any search.
inline std::optional<SetNatTrans> find_natural_iso(const SetFunctor& f, const SetFunctor& g,
                                                   const Guards& guards = {})
{
    if (f.shape() != g.shape())
        throw Mismatch("find_natural_iso: functors have different shapes");
    double est = 1;
    for (Index a = 0; a < f.shape().object_count(); ++a) {
        if (f.at(a).size() != g.at(a).size())
            return std::nullopt;
        est *= std::tgamma(double(f.at(a).size()) + 1);
    }
    if (est > guards.iso_cap)
        throw GuardExceeded("find_natural_iso", est, guards.iso_cap);
    detail::ComponentSearch search(f, g, true);
    std::optional<SetNatTrans> found;
    auto emit = [&](std::vector<Fn>&& comp) -> bool {
        found = make_set_nat_trans(f, g, std::move(comp));
        return false;
    };
    search.run(0, emit);
    return found;
}

// ---------------------------------------------------------------------------
// Category of elements

struct ElementsCategory {
    FinCategory category;
    Functor projection;                            // into C
    std::vector<std::pair<Index, Index>> elements;  // object index ↦ (c, x)
};

/// ∫F. Covariant F on C: morphisms f : (c,x) → (c',x') with F(f)(x) = x'.
/// Contravariant F (a set functor on C^op): morphisms f : c → c' of C with
/// F(f)(x') = x; the projection lands in C = opposite(shape).
inline ElementsCategory elements_category(const SetFunctor& f, Variance v)
{
    const auto& shape = f.shape();
    FinCategory base = v == Variance::covariant ? shape : opposite(shape);
    CategoryData d;
    ElementsCategory r{FinCategory(), identity_functor(FinCategory()), {}};
    std::vector<std::vector<Index>> elem_index(shape.object_count());
    for (Index c = 0; c < shape.object_count(); ++c)
        for (Index x = 0; x < f.at(c).size(); ++x) {
            elem_index[c].push_back(d.objects.size());
            r.elements.emplace_back(c, x);
            d.objects.push_back(encode_pair(shape.object(c), f.at(c).label(x)));
        }
    // (underlying morphism of C, source element, target element) ↦ index
    std::map<std::tuple<Index, Index, Index>, Index> arrow;
    std::vector<Index> under;
    for (Index m = 0; m < base.morphism_count(); ++m) {
        Index c = base.dom(m), c2 = base.cod(m);
        for (Index x = 0; x < f.at(c).size(); ++x)
            for (Index x2 = 0; x2 < f.at(c2).size(); ++x2) {
                bool ok = v == Variance::covariant ? f.fn(m)[x] == x2 : f.fn(m)[x2] == x;
                if (!ok)
                    continue;
                Index s = elem_index[c][x], t = elem_index[c2][x2];
                arrow[{m, s, t}] = d.morphisms.size();
                d.morphisms.push_back(encode_tuple({base.morphism(m), d.objects[s], d.objects[t]}));
                d.dom.push_back(s);
                d.cod.push_back(t);
                under.push_back(m);
            }
    }
    d.identity.resize(d.objects.size());
    for (Index e = 0; e < d.objects.size(); ++e)
        d.identity[e] = arrow.at({base.identity(r.elements[e].first), e, e});
    for (Index p = 0; p < under.size(); ++p)
        for (Index q = 0; q < under.size(); ++q)
            if (d.cod[p] == d.dom[q])
                d.composition.emplace_back(q, p, arrow.at({base.compose(under[q], under[p]), d.dom[p], d.cod[q]}));
    std::vector<Index> obj_map;
    for (const auto& e : r.elements)
        obj_map.push_back(e.first);
    r.category = make_category(std::move(d));
    r.projection = make_functor(r.category, base, std::move(obj_map), std::move(under));
    return r;
}

}  // namespace kanext
