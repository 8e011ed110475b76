#pragma once

// Finite categories given by total tables, functors between them, natural
// transformations, and the whiskering / vertical composition calculus.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <kanext/error.hpp>
#include <kanext/labels.hpp>

namespace kanext {

using Index = std::size_t;
inline constexpr Index no_index = std::numeric_limits<Index>::max();

struct MorphismSpec {
    std::string id;
    std::string dom;
    std::string cod;
};

/// String-keyed tables as they arrive from input files. Composition triples
/// are {g, f, g∘f}. Entries involving an identity may be omitted.
struct CategoryTable {
    std::vector<std::string> objects;
    std::vector<MorphismSpec> morphisms;
    std::map<std::string, std::string> identities;
    std::vector<std::array<std::string, 3>> composition;
};

/// Index-level tables; composition triples are (g, f, g∘f).
struct CategoryData {
    std::vector<std::string> objects;
    std::vector<std::string> morphisms;
    std::vector<Index> dom;
    std::vector<Index> cod;
    std::vector<Index> identity;
    std::vector<std::tuple<Index, Index, Index>> composition;
};

class FinCategory;
inline FinCategory make_category(CategoryData data);

/// A validated finite category. Immutable; copies share the tables.
class FinCategory {
public:
    /// The empty category.
    FinCategory() : FinCategory(make_category({})) {}

    std::size_t object_count() const noexcept { return impl_->data.objects.size(); }
    std::size_t morphism_count() const noexcept { return impl_->data.morphisms.size(); }

    const std::string& object(Index a) const { return impl_->data.objects.at(a); }
    const std::string& morphism(Index f) const { return impl_->data.morphisms.at(f); }
    const std::vector<std::string>& objects() const noexcept { return impl_->data.objects; }
    const std::vector<std::string>& morphisms() const noexcept { return impl_->data.morphisms; }

    Index dom(Index f) const { return impl_->data.dom.at(f); }
    Index cod(Index f) const { return impl_->data.cod.at(f); }
    Index identity(Index a) const { return impl_->data.identity.at(a); }
    bool is_identity(Index f) const { return impl_->identity_flag.at(f); }

    /// g∘f; throws Mismatch when cod f != dom g.
    Index compose(Index g, Index f) const
    {
        if (cod(f) != dom(g))
            throw Mismatch("cannot compose " + morphism(g) + " after " + morphism(f));
        return lookup(g, f);
    }

    /// Morphisms a → b, in morphism-index order.
    const std::vector<Index>& hom(Index a, Index b) const
    {
        static const std::vector<Index> empty;
        auto it = impl_->hom.find(key(a, b));
        return it == impl_->hom.end() ? empty : it->second;
    }

    const std::vector<Index>& outgoing(Index a) const { return impl_->out.at(a); }
    const std::vector<Index>& incoming(Index a) const { return impl_->in.at(a); }

    std::optional<Index> find_object(std::string_view id) const
    {
        auto it = impl_->object_index.find(std::string(id));
        if (it == impl_->object_index.end())
            return std::nullopt;
        return it->second;
    }
    std::optional<Index> find_morphism(std::string_view id) const
    {
        auto it = impl_->morphism_index.find(std::string(id));
        if (it == impl_->morphism_index.end())
            return std::nullopt;
        return it->second;
    }
    Index object_index(std::string_view id) const
    {
        if (auto i = find_object(id))
            return *i;
        throw NotFound("object", std::string(id));
    }
    Index morphism_index(std::string_view id) const
    {
        if (auto i = find_morphism(id))
            return *i;
        throw NotFound("morphism", std::string(id));
    }

    const CategoryData& data() const noexcept { return impl_->data; }

    /// Full string-level tables, identity compositions included.
    CategoryTable table() const
    {
        CategoryTable t;
        const auto& d = impl_->data;
        t.objects = d.objects;
        for (Index f = 0; f < morphism_count(); ++f)
            t.morphisms.push_back({d.morphisms[f], d.objects[d.dom[f]], d.objects[d.cod[f]]});
        for (Index a = 0; a < object_count(); ++a)
            t.identities[d.objects[a]] = d.morphisms[d.identity[a]];
        for_each_composable([&](Index g, Index f) {
            t.composition.push_back({d.morphisms[g], d.morphisms[f], d.morphisms[lookup(g, f)]});
        });
        return t;
    }

    /// Calls fn(g, f) for every pair with cod f = dom g.
    template <class Fn>
    void for_each_composable(Fn&& fn) const
    {
        for (Index f = 0; f < morphism_count(); ++f)
            for (Index g : outgoing(cod(f)))
                fn(g, f);
    }

    bool same_tables(const FinCategory& other) const { return impl_ == other.impl_; }

    friend bool operator==(const FinCategory& x, const FinCategory& y)
    {
        if (x.impl_ == y.impl_)
            return true;
        const auto& a = x.impl_->data;
        const auto& b = y.impl_->data;
        if (a.objects != b.objects || a.morphisms != b.morphisms || a.dom != b.dom || a.cod != b.cod ||
            a.identity != b.identity)
            return false;
        bool same = true;
        x.for_each_composable([&](Index g, Index f) { same = same && x.lookup(g, f) == y.lookup(g, f); });
        return same;
    }
    friend bool operator!=(const FinCategory& x, const FinCategory& y) { return !(x == y); }

    static constexpr std::size_t dense_limit = 512;

private:
    struct Impl {
        CategoryData data;
        std::unordered_map<std::string, Index> object_index;
        std::unordered_map<std::string, Index> morphism_index;
        std::vector<std::vector<Index>> out;
        std::vector<std::vector<Index>> in;
        std::unordered_map<std::uint64_t, std::vector<Index>> hom;
        std::vector<bool> identity_flag;
        std::vector<Index> dense;  // used when morphism_count() <= dense_limit
        std::unordered_map<std::uint64_t, Index> sparse;
    };
    explicit FinCategory(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    static std::uint64_t key(Index a, Index b) { return (static_cast<std::uint64_t>(a) << 32) ^ b; }

    Index lookup(Index g, Index f) const
    {
        if (!impl_->dense.empty())
            return impl_->dense[g * morphism_count() + f];
        auto it = impl_->sparse.find(key(g, f));
        return it == impl_->sparse.end() ? no_index : it->second;
    }

    friend FinCategory make_category(CategoryData data);

    std::shared_ptr<const Impl> impl_;
};

namespace detail {

struct CategoryCheck {
    std::vector<Violation> violations;
    std::vector<Index> dense;
    std::unordered_map<std::uint64_t, Index> sparse;
    std::vector<std::vector<Index>> out;
};

inline std::uint64_t pair_key(Index a, Index b) { return (static_cast<std::uint64_t>(a) << 32) ^ b; }

// Checks all axioms and fills the composition lookup, inferring composites
// with identities that the tables omit.
inline CategoryCheck check_category_data(const CategoryData& d, bool use_dense)
{
    CategoryCheck r;
    const std::size_t n = d.objects.size();
    const std::size_t m = d.morphisms.size();
    auto& vs = r.violations;
    auto mid = [&](Index f) { return f < m ? d.morphisms[f] : std::string("#") + std::to_string(f); };

    std::unordered_map<std::string, Index> seen;
    for (Index a = 0; a < n; ++a)
        if (!seen.emplace(d.objects[a], a).second)
            vs.push_back({ViolationKind::duplicate_identifier, "object " + d.objects[a], {d.objects[a]}});
    seen.clear();
    for (Index f = 0; f < m; ++f)
        if (!seen.emplace(d.morphisms[f], f).second)
            vs.push_back({ViolationKind::duplicate_identifier, "morphism " + d.morphisms[f], {d.morphisms[f]}});
    if (d.dom.size() != m || d.cod.size() != m || d.identity.size() != n) {
        vs.push_back({ViolationKind::dangling_reference, "table sizes disagree", {}});
        return r;
    }
    for (Index f = 0; f < m; ++f)
        if (d.dom[f] >= n || d.cod[f] >= n) {
            vs.push_back({ViolationKind::dangling_reference, "endpoint of " + d.morphisms[f], {d.morphisms[f]}});
            return r;
        }

    r.out.assign(n, {});
    for (Index f = 0; f < m; ++f)
        r.out[d.dom[f]].push_back(f);

    std::vector<bool> has_identity(n, false);
    for (Index a = 0; a < n; ++a) {
        Index i = d.identity[a];
        if (i == no_index) {
            vs.push_back({ViolationKind::missing_identity, "object " + d.objects[a], {d.objects[a]}});
        } else if (i >= m) {
            vs.push_back({ViolationKind::dangling_reference, "identity of " + d.objects[a], {d.objects[a]}});
        } else if (d.dom[i] != a || d.cod[i] != a) {
            vs.push_back({ViolationKind::identity_ill_typed, d.morphisms[i] + " for " + d.objects[a],
                          {d.objects[a], d.morphisms[i]}});
        } else {
            has_identity[a] = true;
        }
    }

    if (use_dense)
        r.dense.assign(m * m, no_index);
    auto get = [&](Index g, Index f) -> Index {
        if (use_dense)
            return r.dense[g * m + f];
        auto it = r.sparse.find(pair_key(g, f));
        return it == r.sparse.end() ? no_index : it->second;
    };
    auto set = [&](Index g, Index f, Index h) {
        if (use_dense)
            r.dense[g * m + f] = h;
        else
            r.sparse[pair_key(g, f)] = h;
    };

    for (const auto& [g, f, h] : d.composition) {
        if (g >= m || f >= m || h >= m) {
            vs.push_back({ViolationKind::dangling_reference, "composition entry", {}});
            continue;
        }
        if (d.cod[f] != d.dom[g] || d.dom[h] != d.dom[f] || d.cod[h] != d.cod[g]) {
            vs.push_back({ViolationKind::composition_ill_typed, mid(g) + " o " + mid(f) + " = " + mid(h),
                          {mid(g), mid(f), mid(h)}});
            continue;
        }
        Index old = get(g, f);
        if (old != no_index && old != h) {
            vs.push_back({ViolationKind::composition_conflict, mid(g) + " o " + mid(f), {mid(g), mid(f)}});
            continue;
        }
        set(g, f, h);
    }

    // Infer omitted composites with identities.
    for (Index f = 0; f < m; ++f)
        for (Index g : r.out[d.cod[f]]) {
            if (get(g, f) != no_index)
                continue;
            if (has_identity[d.dom[g]] && f == d.identity[d.dom[g]])
                set(g, f, g);
            else if (has_identity[d.cod[f]] && g == d.identity[d.cod[f]])
                set(g, f, f);
        }

    bool total = true;
    for (Index f = 0; f < m; ++f)
        for (Index g : r.out[d.cod[f]])
            if (get(g, f) == no_index) {
                total = false;
                vs.push_back({ViolationKind::composition_not_total, mid(g) + " o " + mid(f), {mid(g), mid(f)}});
            }

    for (Index f = 0; f < m; ++f) {
        Index a = d.dom[f], b = d.cod[f];
        if (has_identity[a] && get(f, d.identity[a]) != no_index && get(f, d.identity[a]) != f)
            vs.push_back({ViolationKind::identity_law, mid(f) + " o id", {mid(f)}});
        if (has_identity[b] && get(d.identity[b], f) != no_index && get(d.identity[b], f) != f)
            vs.push_back({ViolationKind::identity_law, "id o " + mid(f), {mid(f)}});
    }

    if (total) {
        for (Index f = 0; f < m; ++f)
            for (Index g : r.out[d.cod[f]]) {
                Index gf = get(g, f);
                for (Index h : r.out[d.cod[g]]) {
                    Index lhs = get(h, gf);
                    Index rhs = get(get(h, g), f);
                    if (lhs != rhs)
                        vs.push_back({ViolationKind::associativity, mid(h) + " o " + mid(g) + " o " + mid(f),
                                      {mid(h), mid(g), mid(f)}});
                }
            }
    }
    return r;
}

}  // namespace detail

inline std::vector<Violation> category_violations(const CategoryData& data)
{
    return detail::check_category_data(data, data.morphisms.size() <= FinCategory::dense_limit).violations;
}

/// Validates index-level tables; throws ValidationError listing every violation.
inline FinCategory make_category(CategoryData data)
{
    const bool dense = data.morphisms.size() <= FinCategory::dense_limit;
    auto check = detail::check_category_data(data, dense);
    if (!check.violations.empty())
        throw ValidationError(std::move(check.violations));

    auto impl = std::make_shared<FinCategory::Impl>();
    const std::size_t n = data.objects.size();
    const std::size_t m = data.morphisms.size();
    for (Index a = 0; a < n; ++a)
        impl->object_index.emplace(data.objects[a], a);
    for (Index f = 0; f < m; ++f)
        impl->morphism_index.emplace(data.morphisms[f], f);
    impl->out = std::move(check.out);
    impl->in.assign(n, {});
    impl->identity_flag.assign(m, false);
    for (Index f = 0; f < m; ++f) {
        impl->in[data.cod[f]].push_back(f);
        impl->hom[FinCategory::key(data.dom[f], data.cod[f])].push_back(f);
    }
    for (Index a = 0; a < n; ++a)
        impl->identity_flag[data.identity[a]] = true;
    impl->dense = std::move(check.dense);
    impl->sparse = std::move(check.sparse);
    // Store the completed composition table so table() round-trips exactly.
    data.composition.clear();
    impl->data = std::move(data);
    return FinCategory(std::move(impl));
}

namespace detail {

inline CategoryData table_to_data(const CategoryTable& t, std::vector<Violation>& vs)
{
    CategoryData d;
    d.objects = t.objects;
    std::unordered_map<std::string, Index> obj, mor;
    for (Index a = 0; a < t.objects.size(); ++a)
        obj.emplace(t.objects[a], a);
    for (Index f = 0; f < t.morphisms.size(); ++f) {
        const auto& ms = t.morphisms[f];
        mor.emplace(ms.id, f);
        d.morphisms.push_back(ms.id);
        auto di = obj.find(ms.dom);
        auto ci = obj.find(ms.cod);
        if (di == obj.end())
            vs.push_back({ViolationKind::dangling_reference, "domain " + ms.dom + " of " + ms.id, {ms.id, ms.dom}});
        if (ci == obj.end())
            vs.push_back({ViolationKind::dangling_reference, "codomain " + ms.cod + " of " + ms.id, {ms.id, ms.cod}});
        d.dom.push_back(di == obj.end() ? 0 : di->second);
        d.cod.push_back(ci == obj.end() ? 0 : ci->second);
    }
    d.identity.assign(t.objects.size(), no_index);
    for (const auto& [o, i] : t.identities) {
        auto oi = obj.find(o);
        auto ii = mor.find(i);
        if (oi == obj.end() || ii == mor.end()) {
            vs.push_back({ViolationKind::dangling_reference, "identity entry " + o + " -> " + i, {o, i}});
            continue;
        }
        d.identity[oi->second] = ii->second;
    }
    for (const auto& c : t.composition) {
        Index ix[3];
        bool ok = true;
        for (int k = 0; k < 3; ++k) {
            auto it = mor.find(c[k]);
            if (it == mor.end()) {
                vs.push_back({ViolationKind::dangling_reference, "composition entry mentions " + c[k], {c[k]}});
                ok = false;
            } else {
                ix[k] = it->second;
            }
        }
        if (ok)
            d.composition.emplace_back(ix[0], ix[1], ix[2]);
    }
    return d;
}

}  // namespace detail

/// All violations of the category axioms in raw tables (empty when valid).
inline std::vector<Violation> category_violations(const CategoryTable& t)
{
    std::vector<Violation> vs;
    auto d = detail::table_to_data(t, vs);
    if (!vs.empty())
        return vs;
    return category_violations(d);
}

inline FinCategory validate_category(const CategoryTable& t)
{
    std::vector<Violation> vs;
    auto d = detail::table_to_data(t, vs);
    if (!vs.empty())
        throw ValidationError(std::move(vs));
    return make_category(std::move(d));
}

inline CategoryData data_with_composition(const FinCategory& c)
{
    CategoryData d = c.data();
    c.for_each_composable([&](Index g, Index f) { d.composition.emplace_back(g, f, c.compose(g, f)); });
    return d;
}

/// Same identifiers, dom/cod swapped, composition transposed.
inline FinCategory opposite(const FinCategory& c)
{
    CategoryData d = c.data();
    std::swap(d.dom, d.cod);
    c.for_each_composable([&](Index g, Index f) { d.composition.emplace_back(f, g, c.compose(g, f)); });
    return make_category(std::move(d));
}

inline FinCategory terminal_category()
{
    CategoryData d;
    d.objects = {"1"};
    d.morphisms = {"id_1"};
    d.dom = {0};
    d.cod = {0};
    d.identity = {0};
    return make_category(std::move(d));
}

inline FinCategory discrete_category(const std::vector<std::string>& names)
{
    CategoryData d;
    d.objects = names;
    for (Index a = 0; a < names.size(); ++a) {
        d.morphisms.push_back("id_" + names[a]);
        d.dom.push_back(a);
        d.cod.push_back(a);
        d.identity.push_back(a);
    }
    return make_category(std::move(d));
}

/// Finite poset as a category: one morphism "a<=b" per relation, identities "id_a".
/// `le` must already be reflexive and transitive on the listed elements.
inline FinCategory poset_category(const std::vector<std::string>& elements,
                                  const std::vector<std::vector<bool>>& le)
{
    const std::size_t n = elements.size();
    CategoryData d;
    d.objects = elements;
    d.identity.assign(n, no_index);
    std::vector<std::vector<Index>> arrow(n, std::vector<Index>(n, no_index));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            if (!le[i][j])
                continue;
            if (i != j && le[j][i])
                throw InvalidArgument("order relation is not antisymmetric at " + elements[i] + ", " + elements[j]);
            arrow[i][j] = d.morphisms.size();
            d.morphisms.push_back(i == j ? "id_" + elements[i] : elements[i] + "<=" + elements[j]);
            d.dom.push_back(i);
            d.cod.push_back(j);
            if (i == j)
                d.identity[i] = arrow[i][j];
        }
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            for (Index k = 0; k < n; ++k)
                if (arrow[i][j] != no_index && arrow[j][k] != no_index) {
                    if (arrow[i][k] == no_index)
                        throw InvalidArgument("order relation is not transitive");
                    d.composition.emplace_back(arrow[j][k], arrow[i][j], arrow[i][k]);
                }
    return make_category(std::move(d));
}

/// The chain 0 < 1 < ... < n-1. Morphisms are "id_i" and "i<j".
inline FinCategory chain_category(std::size_t n)
{
    if (n == 0)
        throw InvalidArgument("chain_category needs a positive length");
    CategoryData d;
    std::vector<std::vector<Index>> arrow(n, std::vector<Index>(n, no_index));
    for (Index i = 0; i < n; ++i)
        d.objects.push_back(std::to_string(i));
    d.identity.assign(n, no_index);
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) {
            arrow[i][j] = d.morphisms.size();
            d.morphisms.push_back(i == j ? "id_" + d.objects[i] : d.objects[i] + "<" + d.objects[j]);
            d.dom.push_back(i);
            d.cod.push_back(j);
            if (i == j)
                d.identity[i] = arrow[i][j];
        }
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j)
            for (Index k = j; k < n; ++k)
                d.composition.emplace_back(arrow[j][k], arrow[i][j], arrow[i][k]);
    return make_category(std::move(d));
}

// ---------------------------------------------------------------------------
// Functors

class Functor;
inline Functor make_functor(FinCategory source, FinCategory target, std::vector<Index> objects, std::vector<Index> morphisms);

class Functor {
public:
    const FinCategory& source() const noexcept { return source_; }
    const FinCategory& target() const noexcept { return target_; }
    Index object(Index a) const { return objects_.at(a); }
    Index morphism(Index f) const { return morphisms_.at(f); }
    const std::vector<Index>& object_map() const noexcept { return objects_; }
    const std::vector<Index>& morphism_map() const noexcept { return morphisms_; }

    friend bool operator==(const Functor& x, const Functor& y)
    {
        return x.objects_ == y.objects_ && x.morphisms_ == y.morphisms_ && x.source_ == y.source_ &&
               x.target_ == y.target_;
    }
    friend bool operator!=(const Functor& x, const Functor& y) { return !(x == y); }

private:
    Functor(FinCategory s, FinCategory t, std::vector<Index> o, std::vector<Index> m)
        : source_(std::move(s)), target_(std::move(t)), objects_(std::move(o)), morphisms_(std::move(m))
    {}
    friend Functor make_functor(FinCategory, FinCategory, std::vector<Index>, std::vector<Index>);

    FinCategory source_;
    FinCategory target_;
    std::vector<Index> objects_;
    std::vector<Index> morphisms_;
};

inline std::vector<Violation> functor_violations(const FinCategory& s, const FinCategory& t,
                                                 const std::vector<Index>& obj, const std::vector<Index>& mor)
{
    std::vector<Violation> vs;
    if (obj.size() != s.object_count() || mor.size() != s.morphism_count()) {
        vs.push_back({ViolationKind::mapping_missing, "object or morphism map is incomplete", {}});
        return vs;
    }
    for (Index a = 0; a < obj.size(); ++a)
        if (obj[a] >= t.object_count()) {
            vs.push_back({ViolationKind::mapping_missing, "object " + s.object(a), {s.object(a)}});
            return vs;
        }
    for (Index f = 0; f < mor.size(); ++f)
        if (mor[f] >= t.morphism_count()) {
            vs.push_back({ViolationKind::mapping_missing, "morphism " + s.morphism(f), {s.morphism(f)}});
            return vs;
        }
    bool typed = true;
    for (Index f = 0; f < mor.size(); ++f)
        if (t.dom(mor[f]) != obj[s.dom(f)] || t.cod(mor[f]) != obj[s.cod(f)]) {
            typed = false;
            vs.push_back({ViolationKind::domain_codomain_mismatch, s.morphism(f) + " -> " + t.morphism(mor[f]),
                          {s.morphism(f)}});
        }
    for (Index a = 0; a < obj.size(); ++a)
        if (mor[s.identity(a)] != t.identity(obj[a]))
            vs.push_back({ViolationKind::identity_not_preserved,
                          s.morphism(s.identity(a)) + " -> " + t.morphism(mor[s.identity(a)]),
                          {s.morphism(s.identity(a))}});
    if (typed)
        s.for_each_composable([&](Index g, Index f) {
            if (mor[s.compose(g, f)] != t.compose(mor[g], mor[f]))
                vs.push_back({ViolationKind::composition_not_preserved, s.morphism(g) + " o " + s.morphism(f),
                              {s.morphism(g), s.morphism(f)}});
        });
    return vs;
}

inline Functor make_functor(FinCategory source, FinCategory target, std::vector<Index> objects,
                            std::vector<Index> morphisms)
{
    auto vs = functor_violations(source, target, objects, morphisms);
    if (!vs.empty())
        throw ValidationError(std::move(vs));
    return Functor(std::move(source), std::move(target), std::move(objects), std::move(morphisms));
}

/// At most one morphism between any two objects (a preorder).
inline bool is_thin(const FinCategory& c)
{
    for (Index a = 0; a < c.object_count(); ++a)
        for (Index b = 0; b < c.object_count(); ++b)
            if (c.hom(a, b).size() > 1)
                return false;
    return true;
}

/// String-keyed functor tables. Identity morphisms may be omitted from the
/// morphism map; they are sent to the identity of the image object. When the
/// target is thin, any morphism may be omitted and goes to the unique arrow.
struct FunctorSpec {
    FinCategory source;
    FinCategory target;
    std::map<std::string, std::string> objects;
    std::map<std::string, std::string> morphisms;
};

inline std::vector<Violation> functor_violations(const FunctorSpec& spec, std::vector<Index>* obj_out = nullptr,
                                                 std::vector<Index>* mor_out = nullptr)
{
    std::vector<Violation> vs;
    const auto& s = spec.source;
    const auto& t = spec.target;
    std::vector<Index> obj(s.object_count(), no_index), mor(s.morphism_count(), no_index);
    for (const auto& [a, b] : spec.objects) {
        auto ai = s.find_object(a);
        auto bi = t.find_object(b);
        if (!ai || !bi)
            vs.push_back({ViolationKind::dangling_reference, "object mapping " + a + " -> " + b, {a, b}});
        else
            obj[*ai] = *bi;
    }
    for (const auto& [f, g] : spec.morphisms) {
        auto fi = s.find_morphism(f);
        auto gi = t.find_morphism(g);
        if (!fi || !gi)
            vs.push_back({ViolationKind::dangling_reference, "morphism mapping " + f + " -> " + g, {f, g}});
        else
            mor[*fi] = *gi;
    }
    for (Index a = 0; a < obj.size(); ++a)
        if (obj[a] == no_index)
            vs.push_back({ViolationKind::mapping_missing, "object " + s.object(a), {s.object(a)}});
    if (!vs.empty())
        return vs;
    for (Index a = 0; a < obj.size(); ++a)
        if (mor[s.identity(a)] == no_index)
            mor[s.identity(a)] = t.identity(obj[a]);
    if (is_thin(t))
        for (Index f = 0; f < mor.size(); ++f)
            if (mor[f] == no_index && t.hom(obj[s.dom(f)], obj[s.cod(f)]).size() == 1)
                mor[f] = t.hom(obj[s.dom(f)], obj[s.cod(f)])[0];
    for (Index f = 0; f < mor.size(); ++f)
        if (mor[f] == no_index)
            vs.push_back({ViolationKind::mapping_missing, "morphism " + s.morphism(f), {s.morphism(f)}});
    if (!vs.empty())
        return vs;
    vs = functor_violations(s, t, obj, mor);
    if (obj_out)
        *obj_out = std::move(obj);
    if (mor_out)
        *mor_out = std::move(mor);
    return vs;
}

inline Functor validate_functor(const FunctorSpec& spec)
{
    std::vector<Index> obj, mor;
    auto vs = functor_violations(spec, &obj, &mor);
    if (!vs.empty())
        throw ValidationError(std::move(vs));
    return make_functor(spec.source, spec.target, std::move(obj), std::move(mor));
}

inline Functor identity_functor(const FinCategory& a)
{
    std::vector<Index> obj(a.object_count()), mor(a.morphism_count());
    for (Index i = 0; i < obj.size(); ++i)
        obj[i] = i;
    for (Index i = 0; i < mor.size(); ++i)
        mor[i] = i;
    return make_functor(a, a, std::move(obj), std::move(mor));
}

/// Δ_a : I → A, constant at object a.
inline Functor constant_functor(const FinCategory& shape, const FinCategory& target, Index a)
{
    std::vector<Index> obj(shape.object_count(), a), mor(shape.morphism_count(), target.identity(a));
    return make_functor(shape, target, std::move(obj), std::move(mor));
}

/// The unique functor into the terminal category.
inline Functor to_terminal(const FinCategory& shape, const FinCategory& terminal)
{
    if (terminal.object_count() != 1 || terminal.morphism_count() != 1)
        throw Mismatch("target is not a terminal category");
    return constant_functor(shape, terminal, 0);
}

/// G∘F.
inline Functor compose(const Functor& g, const Functor& f)
{
    if (f.target() != g.source())
        throw Mismatch("functor composition: target of the first is not the source of the second");
    std::vector<Index> obj(f.source().object_count()), mor(f.source().morphism_count());
    for (Index a = 0; a < obj.size(); ++a)
        obj[a] = g.object(f.object(a));
    for (Index m = 0; m < mor.size(); ++m)
        mor[m] = g.morphism(f.morphism(m));
    return make_functor(f.source(), g.target(), std::move(obj), std::move(mor));
}

/// F^op : A^op → B^op (same maps).
inline Functor opposite_functor(const Functor& f)
{
    return make_functor(opposite(f.source()), opposite(f.target()), f.object_map(), f.morphism_map());
}

/// Full subcategory on the listed objects, with its inclusion functor.
inline std::pair<FinCategory, Functor> full_subcategory(const FinCategory& b, const std::vector<Index>& objects)
{
    std::vector<Index> local(b.object_count(), no_index);
    CategoryData d;
    for (Index o : objects) {
        if (o >= b.object_count())
            throw NotFound("object", "#" + std::to_string(o));
        if (local[o] != no_index)
            throw InvalidArgument("object listed twice: " + b.object(o));
        local[o] = d.objects.size();
        d.objects.push_back(b.object(o));
    }
    std::vector<Index> local_mor(b.morphism_count(), no_index), mor_map;
    for (Index f = 0; f < b.morphism_count(); ++f) {
        if (local[b.dom(f)] == no_index || local[b.cod(f)] == no_index)
            continue;
        local_mor[f] = d.morphisms.size();
        d.morphisms.push_back(b.morphism(f));
        d.dom.push_back(local[b.dom(f)]);
        d.cod.push_back(local[b.cod(f)]);
        mor_map.push_back(f);
    }
    for (Index o : objects)
        d.identity.push_back(local_mor[b.identity(o)]);
    for (Index f : mor_map)
        for (Index g : b.outgoing(b.cod(f)))
            if (local_mor[g] != no_index)
                d.composition.emplace_back(local_mor[g], local_mor[f], local_mor[b.compose(g, f)]);
    auto sub = make_category(std::move(d));
    auto inc = make_functor(sub, b, objects, mor_map);
    return {std::move(sub), std::move(inc)};
}

/// Bijective on every hom-set.
inline bool is_fully_faithful(const Functor& k)
{
    const auto& a = k.source();
    const auto& b = k.target();
    for (Index x = 0; x < a.object_count(); ++x)
        for (Index y = 0; y < a.object_count(); ++y) {
            const auto& src = a.hom(x, y);
            const auto& tgt = b.hom(k.object(x), k.object(y));
            if (src.size() != tgt.size())
                return false;
            std::vector<Index> image;
            for (Index f : src)
                image.push_back(k.morphism(f));
            std::sort(image.begin(), image.end());
            if (std::adjacent_find(image.begin(), image.end()) != image.end())
                return false;
        }
    return true;
}

/// m is invertible; returns the inverse.
inline std::optional<Index> inverse_of(const FinCategory& c, Index m)
{
    for (Index n : c.hom(c.cod(m), c.dom(m)))
        if (c.compose(n, m) == c.identity(c.dom(m)) && c.compose(m, n) == c.identity(c.cod(m)))
            return n;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Natural transformations between functors into a finite category

class NatTrans;
inline NatTrans make_nat_trans(Functor source, Functor target, std::vector<Index> components);

class NatTrans {
public:
    const Functor& source() const noexcept { return source_; }
    const Functor& target() const noexcept { return target_; }
    Index component(Index a) const { return components_.at(a); }
    const std::vector<Index>& components() const noexcept { return components_; }

    friend bool operator==(const NatTrans& x, const NatTrans& y)
    {
        return x.components_ == y.components_ && x.source_ == y.source_ && x.target_ == y.target_;
    }
    friend bool operator!=(const NatTrans& x, const NatTrans& y) { return !(x == y); }

private:
    NatTrans(Functor s, Functor t, std::vector<Index> c)
        : source_(std::move(s)), target_(std::move(t)), components_(std::move(c))
    {}
    friend NatTrans make_nat_trans(Functor, Functor, std::vector<Index>);

    Functor source_;
    Functor target_;
    std::vector<Index> components_;
};

inline std::vector<Violation> nat_trans_violations(const Functor& f, const Functor& g,
                                                   const std::vector<Index>& comp)
{
    std::vector<Violation> vs;
    if (f.source() != g.source() || f.target() != g.target()) {
        vs.push_back({ViolationKind::shape_mismatch, "functors are not parallel", {}});
        return vs;
    }
    const auto& a = f.source();
    const auto& b = f.target();
    if (comp.size() != a.object_count()) {
        vs.push_back({ViolationKind::component_missing, "expected one component per object", {}});
        return vs;
    }
    bool typed = true;
    for (Index x = 0; x < comp.size(); ++x) {
        if (comp[x] >= b.morphism_count()) {
            vs.push_back({ViolationKind::component_missing, "at " + a.object(x), {a.object(x)}});
            typed = false;
        } else if (b.dom(comp[x]) != f.object(x) || b.cod(comp[x]) != g.object(x)) {
            vs.push_back({ViolationKind::component_ill_typed, "at " + a.object(x), {a.object(x)}});
            typed = false;
        }
    }
    if (!typed)
        return vs;
    for (Index m = 0; m < a.morphism_count(); ++m) {
        Index x = a.dom(m), y = a.cod(m);
        if (b.compose(g.morphism(m), comp[x]) != b.compose(comp[y], f.morphism(m)))
            vs.push_back({ViolationKind::naturality, a.object(x) + " -> " + a.object(y) + " along " + a.morphism(m),
                          {a.object(x), a.object(y)}});
    }
    return vs;
}

inline NatTrans make_nat_trans(Functor source, Functor target, std::vector<Index> components)
{
    auto vs = nat_trans_violations(source, target, components);
    if (!vs.empty())
        throw ValidationError(std::move(vs));
    return NatTrans(std::move(source), std::move(target), std::move(components));
}

struct NatTransSpec {
    Functor source;
    Functor target;
    std::map<std::string, std::string> components;  // object → morphism
};

inline NatTrans validate_nat_trans(const NatTransSpec& spec)
{
    const auto& a = spec.source.source();
    const auto& b = spec.source.target();
    std::vector<Violation> vs;
    std::vector<Index> comp(a.object_count(), no_index);
    for (const auto& [o, m] : spec.components) {
        auto oi = a.find_object(o);
        auto mi = b.find_morphism(m);
        if (!oi || !mi)
            vs.push_back({ViolationKind::dangling_reference, "component " + o + " -> " + m, {o, m}});
        else
            comp[*oi] = *mi;
    }
    if (!vs.empty())
        throw ValidationError(std::move(vs));
    return make_nat_trans(spec.source, spec.target, std::move(comp));
}

inline NatTrans identity_transformation(const Functor& f)
{
    std::vector<Index> comp(f.source().object_count());
    for (Index a = 0; a < comp.size(); ++a)
        comp[a] = f.target().identity(f.object(a));
    return make_nat_trans(f, f, std::move(comp));
}

/// αK : LK ⇒ L'K, components α_{K a}.
inline NatTrans whisker_right(const NatTrans& alpha, const Functor& k)
{
    std::vector<Index> comp(k.source().object_count());
    for (Index a = 0; a < comp.size(); ++a)
        comp[a] = alpha.component(k.object(a));
    return make_nat_trans(compose(alpha.source(), k), compose(alpha.target(), k), std::move(comp));
}

/// Hα : HF ⇒ HG, components H(α_a).
inline NatTrans whisker_left(const Functor& h, const NatTrans& alpha)
{
    std::vector<Index> comp(alpha.components().size());
    for (Index a = 0; a < comp.size(); ++a)
        comp[a] = h.morphism(alpha.component(a));
    return make_nat_trans(compose(h, alpha.source()), compose(h, alpha.target()), std::move(comp));
}

/// β∘α.
inline NatTrans vcompose(const NatTrans& beta, const NatTrans& alpha)
{
    if (alpha.target() != beta.source())
        throw Mismatch("vertical composition: endpoints do not match");
    const auto& b = alpha.source().target();
    std::vector<Index> comp(alpha.components().size());
    for (Index a = 0; a < comp.size(); ++a)
        comp[a] = b.compose(beta.component(a), alpha.component(a));
    return make_nat_trans(alpha.source(), beta.target(), std::move(comp));
}

}  // namespace kanext
