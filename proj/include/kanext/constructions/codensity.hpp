#pragma once

// The codensity monad of G : D → FinSet, T(b) = lim over b↓G of G∘π,
// materialized at a list of probe sets.
//
// Coordinates. An element of T(b) is a compatible family indexed by pairs
// (d, f : b → G d); f is stored as its mixed-radix code with the first
// element of b as the most significant digit. T(T(b)) is indexed the same way
// by functions T(b) → G d. Maps out of T(T(b)) that only copy coordinates
// (μ, and everything built from it) are compared through the coordinate they
// read, which covers every element of T(T(b)) at once.

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <kanext/error.hpp>
#include <kanext/fincat.hpp>
#include <kanext/finset.hpp>
#include <kanext/kan.hpp>
#include <kanext/labels.hpp>

namespace kanext {

namespace detail {

struct Coordinates {
    std::size_t n = 0;                // size of the set functions start from
    std::vector<std::size_t> radix;   // |G d|
    std::vector<std::size_t> offset;  // first coordinate of d
    std::vector<std::size_t> count;   // |G d|^n
    std::size_t total = 0;

    Coordinates(const SetFunctor& g, std::size_t n_, std::size_t cap) : n(n_)
    {
        const auto& d = g.shape();
        for (Index x = 0; x < d.object_count(); ++x) {
            std::size_t m = g.at(x).size();
            double c = std::pow(double(m), double(n));
            if (double(total) + c > double(cap))
                throw GuardExceeded("codensity coordinates", double(total) + c, double(cap));
            radix.push_back(m);
            offset.push_back(total);
            count.push_back(std::size_t(c));
            total += std::size_t(c);
        }
    }

    Index object_of(std::size_t c) const
    {
        Index x = 0;
        while (x + 1 < offset.size() && offset[x + 1] <= c)
            ++x;
        return x;
    }

    std::size_t encode(Index x, const Fn& f) const
    {
        std::size_t code = 0;
        for (Index v : f)
            code = code * radix[x] + v;
        return offset[x] + code;
    }

    Fn decode(std::size_t c) const
    {
        Index x = object_of(c);
        std::size_t code = c - offset[x];
        Fn f(n);
        for (std::size_t i = n; i-- > 0;) {
            f[i] = code % radix[x];
            code /= radix[x];
        }
        return f;
    }

    // f(i) without decoding the whole function.
    Index digit(std::size_t c, std::size_t i) const
    {
        Index x = object_of(c);
        std::size_t code = c - offset[x];
        for (std::size_t k = n - 1 - i; k > 0; --k)
            code /= radix[x];
        return code % radix[x];
    }
};

// b↓G for |b| = n with G∘π on it; objects in coordinate order.
inline SetFunctor codensity_diagram(const SetFunctor& g, const Coordinates& co)
{
    const auto& d = g.shape();
    CategoryData data;
    std::vector<FinSet> sets;
    for (std::size_t c = 0; c < co.total; ++c) {
        Index x = co.object_of(c);
        std::vector<std::string> images;
        for (Index v : co.decode(c))
            images.push_back(g.at(x).label(v));
        data.objects.push_back(encode_pair(d.object(x), encode_tuple(images)));
        sets.push_back(g.at(x));
    }
    std::map<std::pair<Index, std::size_t>, Index> arrow;  // (u, source coordinate)
    std::vector<Index> under;
    std::vector<std::vector<Index>> out(co.total);
    for (std::size_t c = 0; c < co.total; ++c) {
        Index x = co.object_of(c);
        Fn f = co.decode(c);
        for (Index u : d.outgoing(x)) {
            std::size_t t = co.encode(d.cod(u), compose_fn(g.fn(u), f));
            Index m = data.morphisms.size();
            arrow[{u, c}] = m;
            data.morphisms.push_back(encode_pair(d.morphism(u), data.objects[c]));
            data.dom.push_back(c);
            data.cod.push_back(t);
            under.push_back(u);
            out[c].push_back(m);
        }
    }
    data.identity.resize(co.total);
    for (std::size_t c = 0; c < co.total; ++c)
        data.identity[c] = arrow.at({d.identity(co.object_of(c)), c});
    for (Index p = 0; p < under.size(); ++p)
        for (Index q : out[data.cod[p]])
            data.composition.emplace_back(q, p, arrow.at({d.compose(under[q], under[p]), data.dom[p]}));
    auto shape = make_category(std::move(data));
    std::vector<Fn> fns;
    for (Index u : under)
        fns.push_back(g.fn(u));
    return make_set_functor(shape, std::move(sets), std::move(fns));
}

}  // namespace detail

struct CodensityProbe {
    FinSet b;
    LimitResult t;                      // T(b)
    Fn eta;                             // b → T(b)
    std::vector<std::size_t> mu_reads;  // T(b)-coordinate ↦ T(T(b))-coordinate copied by μ
    std::size_t coordinates = 0;        // number of T(T(b)) coordinates
    bool tt_enumerated = false;         // associativity and μ checked on all of T(T(b))
    std::size_t tt_size = 0;            // |T(T(b))| when enumerated
    std::size_t elements_checked = 0;   // elements of T(T(b)) run through μ
    bool eta_in_t = true;
    bool left_unit = true;   // μ∘Tη = 1
    bool right_unit = true;  // μ∘ηT = 1
    bool associativity = true;
    bool mu_unique = true;   // μ agrees with the unique factorization at every checked element
    bool holds() const { return eta_in_t && left_unit && right_unit && associativity && mu_unique; }
};

struct Monad {
    SetFunctor g = detail::empty_set_functor();
    std::vector<CodensityProbe> probes;
    bool eta_natural = true;
    bool mu_natural = true;
    bool holds = false;
};

namespace detail {

struct CodensityLevel {
    Coordinates one;  // coordinates of T(b)
    Coordinates two;  // coordinates of T(T(b))
    std::vector<std::size_t> proj;  // T(b)-coordinate ↦ T(T(b))-coordinate of t ↦ t[c]
};

inline bool compatible_level_two(const SetFunctor& g, const Coordinates& two, const std::vector<Index>& v)
{
    const auto& d = g.shape();
    for (std::size_t c = 0; c < two.total; ++c) {
        Index x = two.object_of(c);
        Fn f;
        bool decoded = false;
        for (Index u : d.outgoing(x)) {
            if (d.is_identity(u))
                continue;
            if (!decoded) {
                f = two.decode(c);
                decoded = true;
            }
            if (v[two.encode(d.cod(u), compose_fn(g.fn(u), f))] != g.fn(u)[v[c]])
                return false;
        }
    }
    return true;
}

}  // namespace detail

/// Materializes T, η and μ at every probe and checks the monad laws there,
/// plus naturality of η and μ along every function between probes.
inline Monad codensity(const SetFunctor& g, const std::vector<FinSet>& probes, const Guards& guards = {})
{
    Monad mon;
    mon.g = g;
    std::vector<detail::CodensityLevel> levels;

    for (const auto& b : probes) {
        CodensityProbe p;
        p.b = b;
        const std::size_t n = b.size();
        detail::Coordinates one(g, n, guards.codensity_coordinates);
        p.t = limit(detail::codensity_diagram(g, one), guards);
        const auto& fam = p.t.families;
        const std::size_t nt = fam.size();
        detail::Coordinates two(g, nt, guards.codensity_coordinates);
        p.coordinates = two.total;

        // proj[c] = code of t ↦ t[c].
        std::vector<std::size_t> proj(one.total);
        for (std::size_t c = 0; c < one.total; ++c) {
            Index x = one.object_of(c);
            Fn f(nt);
            for (Index t = 0; t < nt; ++t)
                f[t] = fam[t][c];
            proj[c] = two.encode(x, f);
        }
        p.mu_reads = proj;
        auto mu = [&](auto&& read) {
            std::vector<Index> out(one.total);
            for (std::size_t c = 0; c < one.total; ++c)
                out[c] = read(proj[c]);
            return out;
        };

        // η_b(y) = (f ↦ f(y)).
        for (Index y = 0; y < n; ++y) {
            std::vector<Index> family(one.total);
            for (std::size_t c = 0; c < one.total; ++c)
                family[c] = one.digit(c, y);
            auto at = p.t.find(family);
            p.eta_in_t = p.eta_in_t && at.has_value();
            p.eta.push_back(at.value_or(no_index));
        }

        // Unit laws, element by element over T(b).
        if (p.eta_in_t) {
            std::vector<std::size_t> pull_eta(two.total);  // (d, g) ↦ (d, g∘η_b)
            for (std::size_t c = 0; c < two.total; ++c) {
                Fn h(n);
                for (Index y = 0; y < n; ++y)
                    h[y] = two.digit(c, p.eta[y]);
                pull_eta[c] = one.encode(two.object_of(c), h);
            }
            std::vector<Index> v(two.total);
            for (Index t = 0; t < nt; ++t) {
                for (std::size_t c = 0; c < two.total; ++c)
                    v[c] = two.digit(c, t);  // η_{T b}(t)
                bool in_tt = detail::compatible_level_two(g, two, v);
                p.right_unit = p.right_unit && in_tt && mu([&](std::size_t c) { return v[c]; }) == fam[t];
                for (std::size_t c = 0; c < two.total; ++c)
                    v[c] = fam[t][pull_eta[c]];  // T(η_b)(t)
                in_tt = detail::compatible_level_two(g, two, v);
                p.left_unit = p.left_unit && in_tt && mu([&](std::size_t c) { return v[c]; }) == fam[t];
            }
        } else {
            p.left_unit = p.right_unit = false;
        }

        // Elements of T(T(b)) to push through μ: all of them when small,
        // otherwise the images of η_{T b}, T(η_b) and seeded random families.
        double tt_bound = 1;
        for (Index x = 0; x < two.radix.size(); ++x)
            tt_bound *= std::pow(double(two.radix[x]), double(two.count[x]));
        std::vector<std::vector<Index>> samples;
        if (tt_bound <= guards.codensity_enumeration && two.total <= guards.max_comma_objects) {
            auto tt = limit(detail::codensity_diagram(g, two), guards);
            p.tt_enumerated = true;
            p.tt_size = tt.apex.size();
            samples = std::move(tt.families);
        } else {
            std::mt19937_64 rng(0x6b616e + n);
            std::vector<Index> v(two.total);
            for (Index t = 0; t < nt; ++t) {
                for (std::size_t c = 0; c < two.total; ++c)
                    v[c] = two.digit(c, t);
                samples.push_back(v);
            }
            for (int k = 0; k < 64 && samples.size() < 96; ++k) {
                for (std::size_t c = 0; c < two.total; ++c)
                    v[c] = std::uniform_int_distribution<Index>(0, two.radix[two.object_of(c)] - 1)(rng);
                if (detail::compatible_level_two(g, two, v))
                    samples.push_back(v);
            }
        }
        for (const auto& x : samples) {
            auto image = mu([&](std::size_t c) { return x[c]; });
            auto at = p.t.find(image);
            // Unique factorization: the elements of T(b) whose projections
            // agree with the cone X ↦ X[proj c].
            std::size_t survivors = 0;
            Index survivor = no_index;
            for (Index t = 0; t < nt; ++t) {
                bool ok = true;
                for (std::size_t c = 0; c < one.total && ok; ++c)
                    ok = fam[t][c] == x[proj[c]];
                if (ok) {
                    ++survivors;
                    survivor = t;
                }
            }
            p.mu_unique = p.mu_unique && at && survivors == 1 && survivor == *at;
            // Associativity at level two: the leg of μ∘μT at c reads X at
            // proj[c]; the leg of μ∘Tμ evaluates t ↦ t[c] at μ(X).
            if (p.tt_enumerated && at)
                for (std::size_t c = 0; c < one.total; ++c)
                    p.associativity = p.associativity && x[proj[c]] == two.digit(proj[c], *at);
        }
        p.elements_checked = samples.size();
        if (!p.tt_enumerated) {
            // A generic element that returns the coordinate it was asked for.
            auto reads = mu([](std::size_t c) { return Index(c); });
            for (std::size_t c = 0; c < one.total; ++c) {
                // t ↦ t[c] read back through T(b) = the coordinate it was built from
                Fn f(nt);
                for (Index t = 0; t < nt; ++t)
                    f[t] = two.digit(proj[c], t);
                p.associativity = p.associativity && reads[c] == proj[c] && two.encode(one.object_of(c), f) == proj[c];
            }
        }
        levels.push_back({std::move(one), std::move(two), std::move(proj)});
        mon.probes.push_back(std::move(p));
    }

    // Naturality along every h : b → b' between probes.
    for (Index i = 0; i < probes.size(); ++i)
        for (Index j = 0; j < probes.size(); ++j) {
            const auto& pi = mon.probes[i];
            const auto& pj = mon.probes[j];
            const auto& li = levels[i];
            const auto& lj = levels[j];
            if (!pi.eta_in_t || !pj.eta_in_t)
                continue;
            for_each_function(probes[i].size(), probes[j].size(), [&](const Fn& h) {
                // T(h)(t)[(d, f')] = t[(d, f'∘h)]
                std::vector<std::size_t> reindex(lj.one.total);
                for (std::size_t c = 0; c < lj.one.total; ++c)
                    reindex[c] = li.one.encode(lj.one.object_of(c), compose_fn(lj.one.decode(c), h));
                Fn th(pi.t.families.size());
                for (Index t = 0; t < th.size(); ++t) {
                    std::vector<Index> family(lj.one.total);
                    for (std::size_t c = 0; c < family.size(); ++c)
                        family[c] = pi.t.families[t][reindex[c]];
                    auto at = pj.t.find(family);
                    if (!at) {
                        mon.eta_natural = mon.mu_natural = false;
                        return false;
                    }
                    th[t] = *at;
                }
                for (Index y = 0; y < h.size(); ++y)
                    mon.eta_natural = mon.eta_natural && th[pi.eta[y]] == pj.eta[h[y]];
                // T(h)∘μ reads proj_b[reindex c]; μ∘TT(h) reads proj_{b'}[c]∘T(h).
                for (std::size_t c = 0; c < lj.one.total; ++c) {
                    Fn f(th.size());
                    for (Index t = 0; t < th.size(); ++t)
                        f[t] = lj.two.digit(lj.proj[c], th[t]);
                    mon.mu_natural =
                        mon.mu_natural && li.proj[reindex[c]] == li.two.encode(lj.one.object_of(c), f);
                }
                return true;
            });
        }

    mon.holds = mon.eta_natural && mon.mu_natural;
    for (const auto& p : mon.probes)
        mon.holds = mon.holds && p.holds();
    return mon;
}

}  // namespace kanext
