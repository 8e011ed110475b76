#pragma once

// JSON workspaces: named categories, functors, set functors and
// transformations loaded from one or more files, validated as a whole.
//
// Every top-level section is an array of entries carrying a "name". Names
// share one namespace across sections and files.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <kanext/error.hpp>
#include <kanext/fincat.hpp>
#include <kanext/finset.hpp>

namespace kanext::io {

using json = nlohmann::json;

struct Provenance {
    std::string file;
    std::size_t line = 0;  // 1-based, 0 when unknown
    std::string pointer;   // JSON pointer to the entry
};

inline std::string to_string(const Provenance& p)
{
    std::string s = p.file;
    if (p.line)
        s += ":" + std::to_string(p.line);
    if (!p.pointer.empty())
        s += " (" + p.pointer + ")";
    return s;
}

struct Diagnostic {
    std::string code;
    std::string message;
    Provenance where;
    std::vector<std::string> ids;
};

inline json to_json(const Diagnostic& d)
{
    json j;
    j["code"] = d.code;
    j["message"] = d.message;
    j["file"] = d.where.file;
    j["line"] = d.where.line;
    j["pointer"] = d.where.pointer;
    if (!d.ids.empty())
        j["ids"] = d.ids;
    return j;
}

class LoadError : public Error {
public:
    explicit LoadError(std::vector<Diagnostic> ds) : Error("load", summarize(ds)), diagnostics_(std::move(ds)) {}
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    static std::string summarize(const std::vector<Diagnostic>& ds)
    {
        std::string s = std::to_string(ds.size()) + " diagnostic(s)";
        if (!ds.empty())
            s += "; first at " + to_string(ds.front().where) + ": " + ds.front().message;
        return s;
    }
    std::vector<Diagnostic> diagnostics_;
};

enum class EntryKind { category, functor, setfunctor, transformation };

inline const char* section_of(EntryKind k)
{
    switch (k) {
    case EntryKind::category: return "categories";
    case EntryKind::functor: return "functors";
    case EntryKind::setfunctor: return "setfunctors";
    case EntryKind::transformation: return "transformations";
    }
    return "";
}

struct Workspace {
    std::map<std::string, FinCategory> categories;
    std::map<std::string, Functor> functors;
    std::map<std::string, SetFunctor> setfunctors;
    std::map<std::string, NatTrans> transformations;
    std::map<std::string, SetNatTrans> set_transformations;

    // Names of the endpoints each entry was declared with.
    std::map<std::string, std::pair<std::string, std::string>> functor_ends;
    std::map<std::string, std::string> setfunctor_shape;
    std::map<std::string, std::pair<std::string, std::string>> transformation_ends;

    std::map<std::string, std::pair<EntryKind, Provenance>> declared;
    Guards guards;

    const FinCategory& category(const std::string& n) const { return get(categories, "category", n); }
    const Functor& functor(const std::string& n) const { return get(functors, "functor", n); }
    const SetFunctor& setfunctor(const std::string& n) const { return get(setfunctors, "set functor", n); }
    const NatTrans& transformation(const std::string& n) const { return get(transformations, "transformation", n); }
    const SetNatTrans& set_transformation(const std::string& n) const
    {
        return get(set_transformations, "set transformation", n);
    }

    /// Objects of a category by identifier.
    Index object(const std::string& cat, const std::string& id) const { return category(cat).object_index(id); }

private:
    template <class M>
    static const typename M::mapped_type& get(const M& m, const char* kind, const std::string& n)
    {
        auto it = m.find(n);
        if (it == m.end())
            throw NotFound(kind, n);
        return it->second;
    }
};

namespace detail {

struct Document {
    std::string file;
    std::string text;
    json root;
};

inline std::size_t line_of(const std::string& text, std::size_t offset)
{
    return 1 + std::size_t(std::count(text.begin(), text.begin() + std::min(offset, text.size()), '\n'));
}

// Approximate line of the entry declaring `name`.
inline std::size_t locate(const std::string& text, const std::string& name)
{
    std::string quoted = json(name).dump();
    std::string esc;
    for (char c : quoted) {
        if (std::string("\\^$.|?*+()[]{}").find(c) != std::string::npos)
            esc += '\\';
        esc += c;
    }
    std::smatch m;
    if (std::regex_search(text, m, std::regex("\"name\"\\s*:\\s*" + esc)))
        return line_of(text, std::size_t(m.position(0)));
    return 0;
}

class Loader {
public:
    explicit Loader(Workspace& ws) : ws_(ws) {}

    void run(std::vector<Document>& docs)
    {
        // Declarations first, so collisions and dangling names are reported
        // regardless of file order.
        for (auto& d : docs)
            declare(d);
        for (EntryKind k : {EntryKind::category, EntryKind::functor, EntryKind::setfunctor, EntryKind::transformation})
            for (auto& e : pending_)
                if (e.kind == k && !e.done)
                    build(e);
        if (!diags_.empty())
            throw LoadError(std::move(diags_));
    }

private:
    struct Entry {
        EntryKind kind;
        std::string name;
        const json* body;
        Provenance where;
        bool done = false;
    };

    void error(const std::string& code, const std::string& message, const Provenance& where,
               std::vector<std::string> ids = {})
    {
        diags_.push_back({code, message, where, std::move(ids)});
    }

    void declare(Document& d)
    {
        if (!d.root.is_object()) {
            error("schema", "top level must be an object", {d.file, 1, ""});
            return;
        }
        static const std::set<std::string> sections{"categories", "functors", "setfunctors", "transformations"};
        for (const auto& [key, value] : d.root.items()) {
            if (!sections.count(key)) {
                error("schema", "unknown top-level key " + key, {d.file, 0, "/" + key});
                continue;
            }
            if (!value.is_array()) {
                error("schema", key + " must be an array", {d.file, 0, "/" + key});
                continue;
            }
        }
        for (EntryKind k : {EntryKind::category, EntryKind::functor, EntryKind::setfunctor, EntryKind::transformation}) {
            auto it = d.root.find(section_of(k));
            if (it == d.root.end() || !it->is_array())
                continue;
            for (std::size_t i = 0; i < it->size(); ++i) {
                const json& e = (*it)[i];
                Provenance where{d.file, 0, "/" + std::string(section_of(k)) + "/" + std::to_string(i)};
                if (!e.is_object() || !e.contains("name") || !e["name"].is_string()) {
                    error("schema", "entry needs a string \"name\"", where);
                    continue;
                }
                std::string name = e["name"];
                where.line = locate(d.text, name);
                auto prev = ws_.declared.find(name);
                if (prev != ws_.declared.end()) {
                    error("name_collision", "name " + name + " already declared at " + to_string(prev->second.second),
                          where, {name});
                    continue;
                }
                ws_.declared.emplace(name, std::make_pair(k, where));
                pending_.push_back({k, name, &e, where});
            }
        }
    }

    // Resolve a reference; reports dangling names, stays quiet for names
    // that were declared but failed validation.
    template <class M>
    const typename M::mapped_type* ref(const M& m, EntryKind want, const std::string& name, const Entry& from,
                                       const std::string& role)
    {
        auto it = m.find(name);
        if (it != m.end())
            return &it->second;
        auto d = ws_.declared.find(name);
        if (d == ws_.declared.end())
            error("dangling_reference", role + " " + name + " is not declared", from.where, {name});
        else if (d->second.first != want)
            error("dangling_reference", role + " " + name + " is a " + section_of(d->second.first) + " entry",
                  from.where, {name});
        return nullptr;
    }

    static std::string str(const json& j, const char* key)
    {
        if (!j.contains(key) || !j[key].is_string())
            throw std::invalid_argument(std::string("expected string field \"") + key + "\"");
        return j[key];
    }

    static std::map<std::string, std::string> str_map(const json& j, const char* key)
    {
        std::map<std::string, std::string> m;
        if (!j.contains(key))
            return m;
        if (!j[key].is_object())
            throw std::invalid_argument(std::string("field \"") + key + "\" must be an object");
        for (const auto& [k, v] : j[key].items()) {
            if (!v.is_string())
                throw std::invalid_argument(std::string("values of \"") + key + "\" must be strings");
            m[k] = v;
        }
        return m;
    }

    void violations(const ValidationError& e, const Entry& from)
    {
        for (const auto& v : e.violations())
            error(code_of(v.kind), from.name + ": " + kanext::to_string(v), from.where, v.ids);
    }

    void build(Entry& e)
    {
        e.done = true;
        building_.insert(e.name);
        try {
            switch (e.kind) {
            case EntryKind::category: build_category(e); break;
            case EntryKind::functor: build_functor(e); break;
            case EntryKind::setfunctor: build_setfunctor(e); break;
            case EntryKind::transformation: build_transformation(e); break;
            }
        } catch (const ValidationError& v) {
            violations(v, e);
        } catch (const Error& x) {
            error(x.code(), e.name + ": " + x.what(), e.where);
        } catch (const json::exception& x) {
            error("schema", e.name + ": " + x.what(), e.where);
        } catch (const std::invalid_argument& x) {
            error("schema", e.name + ": " + x.what(), e.where);
        }
        building_.erase(e.name);
    }

    void build_category(Entry& e)
    {
        const json& j = *e.body;
        std::optional<FinCategory> c;
        if (j.contains("poset_chain")) {
            c = chain_category(j["poset_chain"].get<std::size_t>());
        } else if (j.contains("discrete")) {
            c = discrete_category(j["discrete"].get<std::vector<std::string>>());
        } else if (j.contains("terminal")) {
            c = terminal_category();
        } else if (j.contains("poset")) {
            const json& p = j["poset"];
            auto elems = p.at("elements").get<std::vector<std::string>>();
            std::map<std::string, Index> at;
            for (Index i = 0; i < elems.size(); ++i)
                at[elems[i]] = i;
            const std::size_t n = elems.size();
            std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
            for (Index i = 0; i < n; ++i)
                le[i][i] = true;
            for (const auto& pair : p.at("le")) {
                auto ab = pair.get<std::vector<std::string>>();
                if (ab.size() != 2 || !at.count(ab[0]) || !at.count(ab[1]))
                    throw std::invalid_argument("poset relation entries are [lower, upper] element pairs");
                le[at[ab[0]]][at[ab[1]]] = true;
            }
            // transitive closure of the listed relations
            for (Index k = 0; k < n; ++k)
                for (Index i = 0; i < n; ++i)
                    for (Index l = 0; l < n; ++l)
                        if (le[i][k] && le[k][l])
                            le[i][l] = true;
            c = poset_category(elems, le);
        } else if (j.contains("opposite")) {
            std::string base = j["opposite"];
            if (building_.count(base)) {
                error("cycle", "opposite of " + base + " refers back to itself", e.where, {base});
                return;
            }
            // opposites may chain; build the referent first
            for (auto& other : pending_)
                if (other.kind == EntryKind::category && other.name == base && !other.done)
                    build(other);
            auto* b = ref(ws_.categories, EntryKind::category, base, e, "category");
            if (!b)
                return;
            c = opposite(*b);
        } else {
            CategoryTable t;
            t.objects = j.at("objects").get<std::vector<std::string>>();
            for (const auto& m : j.at("morphisms"))
                t.morphisms.push_back({str(m, "id"), str(m, "dom"), str(m, "cod")});
            t.identities = str_map(j, "identities");
            if (j.contains("composition"))
                for (const auto& tr : j["composition"]) {
                    auto v = tr.get<std::vector<std::string>>();
                    if (v.size() != 3)
                        throw std::invalid_argument("composition entries are [g, f, g∘f] triples");
                    t.composition.push_back({v[0], v[1], v[2]});
                }
            c = validate_category(t);
        }
        ws_.categories.emplace(e.name, std::move(*c));
    }

    void build_functor(Entry& e)
    {
        const json& j = *e.body;
        std::string s = str(j, "source"), t = str(j, "target");
        auto* src = ref(ws_.categories, EntryKind::category, s, e, "source");
        auto* tgt = ref(ws_.categories, EntryKind::category, t, e, "target");
        if (!src || !tgt)
            return;
        auto f = validate_functor(FunctorSpec{*src, *tgt, str_map(j, "objects"), str_map(j, "morphisms")});
        ws_.functors.emplace(e.name, std::move(f));
        ws_.functor_ends[e.name] = {s, t};
    }

    void build_setfunctor(Entry& e)
    {
        const json& j = *e.body;
        std::string s = str(j, "shape");
        auto* shape = ref(ws_.categories, EntryKind::category, s, e, "shape");
        if (!shape)
            return;
        SetFunctorSpec spec{*shape, {}, {}};
        if (j.contains("sets"))
            for (const auto& [k, v] : j["sets"].items())
                spec.sets[k] = v.get<std::vector<std::string>>();
        if (j.contains("functions"))
            for (const auto& [k, v] : j["functions"].items())
                spec.functions[k] = v.get<std::map<std::string, std::string>>();
        ws_.setfunctors.emplace(e.name, validate_set_functor(spec));
        ws_.setfunctor_shape[e.name] = s;
    }

    void build_transformation(Entry& e)
    {
        const json& j = *e.body;
        std::string s = str(j, "source"), t = str(j, "target");
        auto ks = ws_.declared.find(s);
        bool set_level = ks != ws_.declared.end() && ks->second.first == EntryKind::setfunctor;
        if (set_level) {
            auto* f = ref(ws_.setfunctors, EntryKind::setfunctor, s, e, "source");
            auto* g = ref(ws_.setfunctors, EntryKind::setfunctor, t, e, "target");
            if (!f || !g)
                return;
            SetNatTransSpec spec{*f, *g, {}};
            if (j.contains("components"))
                for (const auto& [k, v] : j["components"].items())
                    spec.components[k] = v.get<std::map<std::string, std::string>>();
            ws_.set_transformations.emplace(e.name, validate_set_nat_trans(spec));
        } else {
            auto* f = ref(ws_.functors, EntryKind::functor, s, e, "source");
            auto* g = ref(ws_.functors, EntryKind::functor, t, e, "target");
            if (!f || !g)
                return;
            ws_.transformations.emplace(e.name, validate_nat_trans(NatTransSpec{*f, *g, str_map(j, "components")}));
        }
        ws_.transformation_ends[e.name] = {s, t};
    }

    Workspace& ws_;
    std::vector<Entry> pending_;
    std::vector<Diagnostic> diags_;
    std::set<std::string> building_;
};

}  // namespace detail

/// Loads (file name, contents) pairs into one workspace.
inline Workspace load_documents(const std::vector<std::pair<std::string, std::string>>& files, Guards guards = {})
{
    Workspace ws;
    ws.guards = guards;
    std::vector<detail::Document> docs;
    std::vector<Diagnostic> diags;
    for (const auto& [file, text] : files) {
        try {
            docs.push_back({file, text, json::parse(text)});
        } catch (const json::parse_error& e) {
            diags.push_back({"parse_error", e.what(), {file, detail::line_of(text, e.byte ? e.byte - 1 : 0), ""}, {}});
        }
    }
    if (!diags.empty())
        throw LoadError(std::move(diags));
    detail::Loader(ws).run(docs);
    return ws;
}

inline Workspace load(const std::vector<std::string>& paths, Guards guards = {})
{
    std::vector<std::pair<std::string, std::string>> files;
    std::vector<Diagnostic> diags;
    for (const auto& p : paths) {
        std::ifstream in(p, std::ios::binary);
        if (!in) {
            diags.push_back({"io_error", "cannot open " + p, {p, 0, ""}, {}});
            continue;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        files.emplace_back(p, ss.str());
    }
    if (!diags.empty())
        throw LoadError(std::move(diags));
    return load_documents(files, guards);
}

// ---------------------------------------------------------------------------
// Canonical serialization: every category as a full table, non-identity
// morphisms only in maps, composites only between non-identities.

inline json category_json(const FinCategory& c)
{
    json j;
    j["objects"] = c.objects();
    // identities are listed as morphisms too so their identifiers survive
    json ids = json::object();
    for (Index a = 0; a < c.object_count(); ++a) {
        Index i = c.identity(a);
        ids[c.object(a)] = c.morphism(i);
    }
    json all = json::array();
    for (Index f = 0; f < c.morphism_count(); ++f)
        all.push_back({{"id", c.morphism(f)}, {"dom", c.object(c.dom(f))}, {"cod", c.object(c.cod(f))}});
    j["morphisms"] = all;
    j["identities"] = ids;
    json comp = json::array();
    c.for_each_composable([&](Index g, Index f) {
        if (!c.is_identity(g) && !c.is_identity(f))
            comp.push_back({c.morphism(g), c.morphism(f), c.morphism(c.compose(g, f))});
    });
    j["composition"] = comp;
    return j;
}

inline json functor_json(const Functor& f)
{
    const auto& s = f.source();
    const auto& t = f.target();
    json j;
    json obj = json::object(), mor = json::object();
    for (Index a = 0; a < s.object_count(); ++a)
        obj[s.object(a)] = t.object(f.object(a));
    for (Index m = 0; m < s.morphism_count(); ++m)
        if (!s.is_identity(m))
            mor[s.morphism(m)] = t.morphism(f.morphism(m));
    j["objects"] = obj;
    j["morphisms"] = mor;
    return j;
}

inline json setfunctor_json(const SetFunctor& x)
{
    const auto& c = x.shape();
    json j;
    json sets = json::object(), fns = json::object();
    for (Index a = 0; a < c.object_count(); ++a)
        sets[c.object(a)] = x.at(a).labels();
    for (Index m = 0; m < c.morphism_count(); ++m) {
        if (c.is_identity(m))
            continue;
        json f = json::object();
        const auto& dom = x.at(c.dom(m));
        const auto& cod = x.at(c.cod(m));
        for (Index e = 0; e < dom.size(); ++e)
            f[dom.label(e)] = cod.label(x.fn(m)[e]);
        fns[c.morphism(m)] = f;
    }
    j["sets"] = sets;
    j["functions"] = fns;
    return j;
}

inline json set_nat_trans_json(const SetNatTrans& t)
{
    const auto& c = t.source().shape();
    json comp = json::object();
    for (Index a = 0; a < c.object_count(); ++a) {
        json f = json::object();
        const auto& dom = t.source().at(a);
        const auto& cod = t.target().at(a);
        for (Index e = 0; e < dom.size(); ++e)
            f[dom.label(e)] = cod.label(t.component(a)[e]);
        comp[c.object(a)] = f;
    }
    return comp;
}

inline json nat_trans_json(const NatTrans& t)
{
    const auto& c = t.source().source();
    const auto& b = t.source().target();
    json comp = json::object();
    for (Index a = 0; a < c.object_count(); ++a)
        comp[c.object(a)] = b.morphism(t.component(a));
    return comp;
}

/// Canonical document; load(serialize(ws)) rebuilds an identical workspace.
inline json serialize(const Workspace& ws)
{
    json root;
    json cats = json::array(), funs = json::array(), sets = json::array(), trans = json::array();
    for (const auto& [name, c] : ws.categories) {
        json j = category_json(c);
        j["name"] = name;
        cats.push_back(j);
    }
    for (const auto& [name, f] : ws.functors) {
        json j = functor_json(f);
        j["name"] = name;
        j["source"] = ws.functor_ends.at(name).first;
        j["target"] = ws.functor_ends.at(name).second;
        funs.push_back(j);
    }
    for (const auto& [name, x] : ws.setfunctors) {
        json j = setfunctor_json(x);
        j["name"] = name;
        j["shape"] = ws.setfunctor_shape.at(name);
        sets.push_back(j);
    }
    for (const auto& [name, t] : ws.transformations) {
        json j;
        j["name"] = name;
        j["source"] = ws.transformation_ends.at(name).first;
        j["target"] = ws.transformation_ends.at(name).second;
        j["components"] = nat_trans_json(t);
        trans.push_back(j);
    }
    for (const auto& [name, t] : ws.set_transformations) {
        json j;
        j["name"] = name;
        j["source"] = ws.transformation_ends.at(name).first;
        j["target"] = ws.transformation_ends.at(name).second;
        j["components"] = set_nat_trans_json(t);
        trans.push_back(j);
    }
    root["categories"] = cats;
    root["functors"] = funs;
    root["setfunctors"] = sets;
    root["transformations"] = trans;
    return root;
}

}  // namespace kanext::io
