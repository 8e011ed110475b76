#pragma once

// Adjunctions between finite categories through two Kan extension conditions:
//   (1) Lan_L(1_A) ≅ R,
//   (2) Lan_L(L) ≅ L∘R, compatibly with the units.
// η comes from (1), ε is the unique factorization through (2).

#include <optional>
#include <string>

#include <kanext/fin_target.hpp>

namespace kanext {

struct AdjunctionReport {
    Functor l = identity_functor(FinCategory());
    Functor r = identity_functor(FinCategory());
    bool condition1 = false;
    bool condition2 = false;
    std::string condition1_reason;  // empty when it holds
    std::string condition2_reason;
    std::optional<Functor> lan_identity;  // Lan_L(1_A), when it exists
    std::optional<Functor> lan_left;      // Lan_L(L)
    std::optional<NatTrans> eta;          // 1_A ⇒ RL
    std::optional<NatTrans> epsilon;      // LR ⇒ 1_B
    bool triangle_left = false;           // εL ∘ Lη = 1_L
    bool triangle_right = false;          // Rε ∘ ηR = 1_R
    bool holds = false;
};

namespace detail {

inline std::string object_table(const Functor& f)
{
    std::string s = "(";
    for (Index a = 0; a < f.source().object_count(); ++a) {
        if (a)
            s += ", ";
        s += f.source().object(a) + "->" + f.target().object(f.object(a));
    }
    return s + ")";
}

}  // namespace detail

inline AdjunctionReport adjunction_check(const Functor& l, const Functor& r, const Guards& guards = {})
{
    if (l.source() != r.target() || l.target() != r.source())
        throw Mismatch("adjunction_check: expected L : A -> B and R : B -> A");
    const auto& a = l.source();
    AdjunctionReport rep;
    rep.l = l;
    rep.r = r;
    auto id_a = identity_functor(a);
    auto id_b = identity_functor(l.target());

    std::optional<FinKan> lan1, lan2;
    try {
        lan1 = fin_lan(l, id_a, guards);
        rep.lan_identity = lan1->ext;
    } catch (const MissingUniversal& e) {
        rep.condition1_reason = e.what();
    }
    try {
        lan2 = fin_lan(l, l, guards);
        rep.lan_left = lan2->ext;
    } catch (const MissingUniversal& e) {
        rep.condition2_reason = e.what();
    }

    std::vector<NatTrans> thetas;
    if (lan1) {
        thetas = natural_isos(lan1->ext, r, guards);
        if (thetas.empty())
            rep.condition1_reason = "Lan_L(1) = " + detail::object_table(lan1->ext) + " is not isomorphic to R = " +
                                    detail::object_table(r);
    }
    rep.condition1 = !thetas.empty();

    auto lr = compose(l, r);
    if (lan2) {
        auto psis = natural_isos(lan2->ext, lr, guards);
        if (psis.empty())
            rep.condition2_reason = "Lan_L(L) = " + detail::object_table(lan2->ext) +
                                    " is not isomorphic to LR = " + detail::object_table(lr);
        // The iso must carry the unit of Lan_L(L) to Lη for some η from (1).
        for (const auto& theta : thetas) {
            auto eta = vcompose(whisker_right(theta, l), lan1->mediator);
            auto l_eta = whisker_left(l, eta);
            for (const auto& psi : psis)
                if (vcompose(whisker_right(psi, l), lan2->mediator) == l_eta) {
                    rep.condition2 = true;
                    rep.eta = eta;
                    break;
                }
            if (rep.condition2)
                break;
        }
        if (!psis.empty() && !rep.condition2)
            rep.condition2_reason = thetas.empty() ? "no unit from condition (1) to compare with"
                                                   : "no isomorphism Lan_L(L) = LR is compatible with the units";
    }

    rep.holds = rep.condition1 && rep.condition2;
    if (!rep.holds)
        return rep;

    // ε : LR ⇒ 1_B, unique with εL ∘ Lη = 1_L.
    const auto& eta = *rep.eta;
    auto l_eta = whisker_left(l, eta);
    auto id_l = identity_transformation(l);
    std::vector<NatTrans> eps;
    for (auto& cand : nat_hom_functors(lr, id_b, guards))
        if (vcompose(whisker_right(cand, l), l_eta) == id_l)
            eps.push_back(std::move(cand));
    if (eps.size() != 1)
        throw UniversalityViolation("counit factorization through Lan_L(L) is not unique", eps.size());
    rep.epsilon = eps[0];
    rep.triangle_left = true;
    rep.triangle_right =
        vcompose(whisker_left(r, *rep.epsilon), whisker_right(eta, r)) == identity_transformation(r);
    return rep;
}

/// Adjunction by direct search for η and ε satisfying both triangle identities.
inline bool adjunction_direct(const Functor& l, const Functor& r, const Guards& guards = {})
{
    if (l.source() != r.target() || l.target() != r.source())
        throw Mismatch("adjunction_direct: expected L : A -> B and R : B -> A");
    auto rl = compose(r, l);
    auto lr = compose(l, r);
    auto etas = nat_hom_functors(identity_functor(l.source()), rl, guards);
    auto epss = nat_hom_functors(lr, identity_functor(l.target()), guards);
    auto id_l = identity_transformation(l);
    auto id_r = identity_transformation(r);
    for (const auto& eta : etas)
        for (const auto& eps : epss)
            if (vcompose(whisker_right(eps, l), whisker_left(l, eta)) == id_l &&
                vcompose(whisker_left(r, eps), whisker_right(eta, r)) == id_r)
                return true;
    return false;
}

}  // namespace kanext
