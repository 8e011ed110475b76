#pragma once

// Command dispatch for the command-line tool. Each command reads named
// entries from a workspace and produces one JSON document and an exit code:
// 0 when the statement holds, 1 when it fails mathematically, 2 on misuse.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <kanext/comma.hpp>
#include <kanext/constructions.hpp>
#include <kanext/io/dot.hpp>
#include <kanext/io/workspace.hpp>
#include <kanext/kan.hpp>

namespace kanext::io {

struct Request {
    std::string command;
    std::map<std::string, std::string> args;  // flag name without dashes ↦ value
    std::vector<std::size_t> probes;          // codensity probe sizes
};

struct Response {
    int exit_code = 0;
    json doc;
    std::string dot;  // empty when the command has no rendering
};

inline const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"validate", "limit",       "colimit",    "lan",     "ran",
                                                "comma",    "universal",   "hom-bijection", "adjunction",
                                                "codensity", "yoneda",     "coyoneda",   "density", "nerve",
                                                "order-ext", "preserve"};
    return names;
}

namespace detail {

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error("usage", what) {}
};

inline const std::string& need(const Request& r, const std::string& key)
{
    auto it = r.args.find(key);
    if (it == r.args.end() || it->second.empty())
        throw UsageError(r.command + " needs --" + key);
    return it->second;
}

inline std::optional<std::string> maybe(const Request& r, const std::string& key)
{
    auto it = r.args.find(key);
    if (it == r.args.end() || it->second.empty())
        return std::nullopt;
    return it->second;
}

inline Direction direction_of(const Request& r)
{
    auto d = maybe(r, "direction").value_or("left");
    if (d == "left" || d == "lan")
        return Direction::left;
    if (d == "right" || d == "ran")
        return Direction::right;
    throw UsageError("--direction must be left or right");
}

inline json labels_json(const FinSet& s) { return s.labels(); }

inline json fn_json(const FinSet& dom, const FinSet& cod, const Fn& f)
{
    json j = json::object();
    for (Index e = 0; e < dom.size(); ++e)
        j[dom.label(e)] = f[e] == no_index ? json(nullptr) : json(cod.label(f[e]));
    return j;
}

inline json ok(json body = json::object())
{
    body["status"] = "ok";
    return body;
}

inline Response fails(const std::string& code, const std::string& message, json result = json::object())
{
    json doc;
    doc["status"] = "fails";
    doc["error"] = {{"code", code}, {"message", message}};
    if (!result.empty())
        doc["result"] = std::move(result);
    return {1, std::move(doc), {}};
}

inline Response verdict(bool holds, const std::string& code, const std::string& message, json result)
{
    if (holds)
        return {0, ok(std::move(result)), {}};
    return fails(code, message, std::move(result));
}

inline Index object_in(const FinCategory& c, const std::string& id) { return c.object_index(id); }

inline json kan_json(const KanExtension& kan)
{
    json j;
    j["direction"] = to_string(kan.direction);
    j["extension"] = setfunctor_json(kan.ext);
    json sizes = json::object();
    const auto& b = kan.k.target();
    for (Index x = 0; x < b.object_count(); ++x)
        sizes[b.object(x)] = kan.ext.at(x).size();
    j["sizes"] = sizes;
    j[kan.direction == Direction::left ? "unit" : "counit"] = set_nat_trans_json(kan.mediator);
    return j;
}

inline SetEndofunctor endofunctor_of(const std::string& spec)
{
    if (spec == "identity")
        return IdentityEndofunctor{};
    if (spec.rfind("hom:", 0) == 0) {
        std::size_t n = std::stoul(spec.substr(4));
        return HomEndofunctor{FinSet::range(n)};
    }
    throw UsageError("--G must be identity or hom:<n>");
}

// --- commands ----------------------------------------------------------------

inline Response cmd_validate(const Workspace& ws, const Request& r)
{
    Response out{0, ok(), {}};
    if (auto c = maybe(r, "cat")) {
        out.dot = category_dot(*c, ws.category(*c));
    } else if (auto f = maybe(r, "functor")) {
        ws.functor(*f);
    } else if (auto x = maybe(r, "setfunctor")) {
        ws.setfunctor(*x);
    } else if (auto t = maybe(r, "trans")) {
        if (!ws.transformations.count(*t))
            ws.set_transformation(*t);
    } else {
        out.doc["categories"] = ws.categories.size();
        out.doc["functors"] = ws.functors.size();
        out.doc["setfunctors"] = ws.setfunctors.size();
        out.doc["transformations"] = ws.transformations.size() + ws.set_transformations.size();
    }
    return out;
}

inline Response cmd_limit(const Workspace& ws, const Request& r, bool co)
{
    const auto& x = ws.setfunctor(need(r, "X"));
    const auto& c = x.shape();
    json body;
    json legs = json::object();
    if (!co) {
        auto lim = limit(x, ws.guards);
        body["apex"] = labels_json(lim.apex);
        for (Index j = 0; j < c.object_count(); ++j)
            legs[c.object(j)] = fn_json(lim.apex, x.at(j), lim.legs[j]);
    } else {
        auto col = colimit(x, ws.guards);
        body["apex"] = labels_json(col.apex);
        for (Index j = 0; j < c.object_count(); ++j)
            legs[c.object(j)] = fn_json(x.at(j), col.apex, col.legs[j]);
    }
    body["legs"] = legs;
    return {0, ok(body), {}};
}

inline Response cmd_kan(const Workspace& ws, const Request& r, Direction d)
{
    const auto& k = ws.functor(need(r, "K"));
    const auto& x = ws.setfunctor(need(r, "X"));
    auto kan = kan_extension(d, k, x, ws.guards);
    Response out{0, ok(kan_json(kan)), {}};
    out.dot = extension_dot(r.command, kan);
    return out;
}

inline Response cmd_comma(const Workspace& ws, const Request& r)
{
    const auto& k = ws.functor(need(r, "K"));
    Index b = object_in(k.target(), need(r, "b"));
    auto side = maybe(r, "side").value_or("left");
    if (side != "left" && side != "right")
        throw UsageError("--side must be left or right");
    auto cc = side == "left" ? comma_left(k, b, ws.guards) : comma_right(b, k, ws.guards);
    json body;
    body["side"] = side;
    body["objects"] = cc.cat.objects();
    json ms = json::array();
    for (Index m = 0; m < cc.cat.morphism_count(); ++m)
        if (!cc.cat.is_identity(m))
            ms.push_back({{"id", cc.cat.morphism(m)},
                          {"dom", cc.cat.object(cc.cat.dom(m))},
                          {"cod", cc.cat.object(cc.cat.cod(m))}});
    body["morphisms"] = ms;
    body["projection"] = functor_json(cc.projection);
    Response out{0, ok(body), {}};
    out.dot = comma_dot(r.command, cc);
    return out;
}

inline Response cmd_universal(const Workspace& ws, const Request& r)
{
    const auto& k = ws.functor(need(r, "K"));
    const auto& x = ws.setfunctor(need(r, "X"));
    const auto& lp = ws.setfunctor(need(r, "L"));
    const auto& eta = ws.set_transformation(need(r, "eta"));
    auto kan = kan_extension(direction_of(r), k, x, ws.guards);
    try {
        auto alpha = verify_universal(kan, lp, eta, ws.guards);
        json body;
        body["direction"] = to_string(kan.direction);
        body["factorization"] = set_nat_trans_json(alpha);
        return {0, ok(body), {}};
    } catch (const UniversalityViolation& e) {
        json res;
        res["survivors"] = e.survivors();
        return fails("universality", e.what(), res);
    }
}

inline Response cmd_hom_bijection(const Workspace& ws, const Request& r)
{
    const auto& k = ws.functor(need(r, "K"));
    const auto& x = ws.setfunctor(need(r, "X"));
    const auto& h = ws.setfunctor(need(r, "H"));
    auto kan = kan_extension(direction_of(r), k, x, ws.guards);
    auto rep = hom_bijection_check(kan, h, ws.guards);
    json body;
    body["direction"] = to_string(kan.direction);
    body["lhs"] = rep.lhs;
    body["rhs"] = rep.rhs;
    body["injective"] = rep.injective;
    body["holds"] = rep.holds;
    return verdict(rep.holds, "hom_bijection_fails", rep.witness, body);
}

inline Response cmd_adjunction(const Workspace& ws, const Request& r)
{
    const auto& l = ws.functor(need(r, "L"));
    const auto& rt = ws.functor(need(r, "R"));
    auto rep = adjunction_check(l, rt, ws.guards);
    json body;
    body["condition1"] = rep.condition1;
    body["condition2"] = rep.condition2;
    if (rep.lan_identity)
        body["lan_identity"] = functor_json(*rep.lan_identity)["objects"];
    if (rep.lan_left)
        body["lan_left"] = functor_json(*rep.lan_left)["objects"];
    if (!rep.condition1_reason.empty())
        body["condition1_reason"] = rep.condition1_reason;
    if (!rep.condition2_reason.empty())
        body["condition2_reason"] = rep.condition2_reason;
    if (rep.eta)
        body["eta"] = nat_trans_json(*rep.eta);
    if (rep.epsilon)
        body["epsilon"] = nat_trans_json(*rep.epsilon);
    body["triangle_left"] = rep.triangle_left;
    body["triangle_right"] = rep.triangle_right;
    body["holds"] = rep.holds;
    if (rep.holds)
        return {0, ok(body), {}};
    if (!rep.condition1)
        return fails("condition1_fails", rep.condition1_reason, body);
    return fails("condition2_fails", rep.condition2_reason, body);
}

inline Response cmd_codensity(const Workspace& ws, const Request& r)
{
    const auto& g = ws.setfunctor(need(r, "G"));
    std::vector<FinSet> probes;
    for (std::size_t n : r.probes.empty() ? std::vector<std::size_t>{0, 1, 2} : r.probes)
        probes.push_back(FinSet::range(n));
    auto mon = codensity(g, probes, ws.guards);
    json body;
    json ps = json::array();
    for (const auto& p : mon.probes) {
        json j;
        j["b"] = p.b.size();
        j["T"] = p.t.apex.size();
        j["eta"] = fn_json(p.b, p.t.apex, p.eta);
        j["left_unit"] = p.left_unit;
        j["right_unit"] = p.right_unit;
        j["associativity"] = p.associativity;
        j["mu_unique"] = p.mu_unique;
        j["coordinates"] = p.coordinates;
        j["TT_enumerated"] = p.tt_enumerated;
        if (p.tt_enumerated)
            j["TT"] = p.tt_size;
        j["elements_checked"] = p.elements_checked;
        ps.push_back(j);
    }
    body["probes"] = ps;
    body["eta_natural"] = mon.eta_natural;
    body["mu_natural"] = mon.mu_natural;
    body["holds"] = mon.holds;
    return verdict(mon.holds, "monad_laws_fail", "a monad law fails at some probe", body);
}

inline Response cmd_yoneda(const Workspace& ws, const Request& r, bool co)
{
    const auto& x = ws.setfunctor(need(r, "X"));
    Index a = object_in(x.shape(), need(r, "a"));
    json body;
    if (!co) {
        auto rep = yoneda_check(x, a, ws.guards);
        body["value"] = rep.value;
        body["limit"] = rep.limit;
        body["nat"] = rep.nat;
        body["holds"] = rep.holds;
        return verdict(rep.holds, "yoneda_fails", "the three sides do not match", body);
    }
    auto rep = coyoneda_check(x, a, ws.guards);
    body["value"] = rep.value;
    body["colimit"] = rep.colimit;
    body["holds"] = rep.holds;
    return verdict(rep.holds, "coyoneda_fails", "colimit and value do not match", body);
}

inline Response cmd_density(const Workspace& ws, const Request& r)
{
    const auto& f = ws.setfunctor(need(r, "F"));
    auto rep = density_check(f, ws.guards);
    json body;
    body["elements"] = rep.elements;
    body["reconstruction"] = setfunctor_json(rep.reconstruction);
    body["iso_found"] = rep.iso.has_value();
    body["canonical_iso"] = rep.canonical_iso;
    body["holds"] = rep.holds;
    return verdict(rep.holds, "density_fails", "the reconstruction is not isomorphic to F", body);
}

inline Response cmd_nerve(const Workspace& ws, const Request& r)
{
    const auto& f = ws.functor(need(r, "F"));
    const auto& x = ws.setfunctor(need(r, "X"));
    Index e = object_in(f.target(), need(r, "e"));
    auto rep = nerve_realization(f, x, e, ws.guards);
    json body;
    body["realization_exists"] = rep.realization_exists;
    if (rep.realization)
        body["realization"] = f.target().object(rep.realization->apex);
    body["lhs"] = rep.lhs;
    body["rhs"] = rep.rhs;
    body["holds"] = rep.holds;
    if (!rep.realization_exists)
        return fails("colimit_missing", rep.reason, body);
    return verdict(rep.holds, "nerve_fails", "E(|X|, e) and nat(X, R_e) differ", body);
}

inline Response cmd_order(const Workspace& ws, const Request& r)
{
    const auto& q = ws.category(need(r, "Q"));
    const auto& rs = ws.category(need(r, "R"));
    const auto& x = ws.functor(need(r, "X"));
    try {
        auto ext = order_extension(q, rs, x, ws.guards);
        const auto& v = x.target();
        json lan = json::object(), ran = json::object();
        for (Index p = 0; p < rs.object_count(); ++p) {
            lan[rs.object(p)] = v.object(ext.lan[p]);
            ran[rs.object(p)] = v.object(ext.ran[p]);
        }
        json body;
        body["lan"] = lan;
        body["ran"] = ran;
        body["lan_is_sup"] = ext.lan_is_sup;
        body["ran_is_inf"] = ext.ran_is_inf;
        body["holds"] = ext.holds;
        return verdict(ext.holds, "order_extension_fails", "extension tables disagree with sup/inf", body);
    } catch (const EmptyApproximation& e) {
        json res;
        res["at"] = e.at();
        return fails(e.code(), e.what(), res);
    }
}

inline Response cmd_preserve(const Workspace& ws, const Request& r)
{
    const auto& k = ws.functor(need(r, "K"));
    const auto& x = ws.setfunctor(need(r, "X"));
    auto kan = kan_extension(direction_of(r), k, x, ws.guards);
    std::vector<PreservationReport> reps;
    if (auto m = maybe(r, "max-c"))
        reps = pointwise_check(kan, std::stoul(*m), ws.guards);
    else
        reps.push_back(preservation_check(endofunctor_of(maybe(r, "G").value_or("identity")), kan, ws.guards));
    json body;
    json items = json::array();
    bool all = true;
    for (const auto& p : reps) {
        json j;
        j["endofunctor"] = p.endofunctor;
        j["holds"] = p.holds;
        j["extension_of_composite"] = p.extension_of_composite;
        j["composite_of_extension"] = p.composite_of_extension;
        items.push_back(j);
        all = all && p.holds;
    }
    body["checks"] = items;
    body["holds"] = all;
    return verdict(all, "not_preserved", "the extension is not preserved", body);
}

inline json error_doc(const Error& e)
{
    json err;
    err["code"] = e.code();
    err["message"] = e.what();
    if (auto v = dynamic_cast<const ValidationError*>(&e)) {
        json vs = json::array();
        for (const auto& x : v->violations())
            vs.push_back({{"code", code_of(x.kind)}, {"message", to_string(x)}, {"ids", x.ids}});
        err["violations"] = vs;
    }
    if (auto g = dynamic_cast<const GuardExceeded*>(&e)) {
        err["estimate"] = g->estimate();
        err["cap"] = g->cap();
    }
    if (auto l = dynamic_cast<const LoadError*>(&e)) {
        json ds = json::array();
        for (const auto& d : l->diagnostics())
            ds.push_back(to_json(d));
        err["diagnostics"] = ds;
    }
    return {{"status", "error"}, {"error", err}};
}

// Failures of a mathematical statement, as opposed to bad input.
inline bool is_math_failure(const Error& e)
{
    return dynamic_cast<const UniversalityViolation*>(&e) || dynamic_cast<const MissingUniversal*>(&e) ||
           dynamic_cast<const EmptyApproximation*>(&e);
}

}  // namespace detail

inline Response run_command(const Workspace& ws, const Request& r)
{
    using namespace detail;
    try {
        const auto& c = r.command;
        if (c == "validate") return cmd_validate(ws, r);
        if (c == "limit") return cmd_limit(ws, r, false);
        if (c == "colimit") return cmd_limit(ws, r, true);
        if (c == "lan") return cmd_kan(ws, r, Direction::left);
        if (c == "ran") return cmd_kan(ws, r, Direction::right);
        if (c == "comma") return cmd_comma(ws, r);
        if (c == "universal") return cmd_universal(ws, r);
        if (c == "hom-bijection") return cmd_hom_bijection(ws, r);
        if (c == "adjunction") return cmd_adjunction(ws, r);
        if (c == "codensity") return cmd_codensity(ws, r);
        if (c == "yoneda") return cmd_yoneda(ws, r, false);
        if (c == "coyoneda") return cmd_yoneda(ws, r, true);
        if (c == "density") return cmd_density(ws, r);
        if (c == "nerve") return cmd_nerve(ws, r);
        if (c == "order-ext") return cmd_order(ws, r);
        if (c == "preserve") return cmd_preserve(ws, r);
        throw UsageError("unknown command " + c);
    } catch (const Error& e) {
        return {is_math_failure(e) ? 1 : 2, error_doc(e), {}};
    } catch (const std::invalid_argument& e) {
        return {2, error_doc(UsageError(e.what())), {}};
    } catch (const std::out_of_range& e) {
        return {2, error_doc(UsageError(e.what())), {}};
    }
}

/// Canonical text of a response: sorted keys, fixed indentation.
inline std::string render(const json& doc, int indent = 2) { return doc.dump(indent) + "\n"; }

}  // namespace kanext::io
