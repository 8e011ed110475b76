#pragma once

// Graphviz renderings. Identities are left out; a morphism that factors
// through two non-identities is drawn dashed.

#include <sstream>
#include <string>

#include <kanext/comma.hpp>
#include <kanext/fincat.hpp>
#include <kanext/kan.hpp>

namespace kanext::io {

inline std::string dot_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

inline bool is_composite(const FinCategory& c, Index m)
{
    if (c.is_identity(m))
        return false;
    bool found = false;
    c.for_each_composable([&](Index g, Index f) {
        if (!found && !c.is_identity(g) && !c.is_identity(f) && c.compose(g, f) == m)
            found = true;
    });
    return found;
}

inline std::string category_dot(const std::string& name, const FinCategory& c)
{
    std::ostringstream out;
    out << "digraph " << dot_quote(name) << " {\n";
    for (const auto& o : c.objects())
        out << "  " << dot_quote(o) << ";\n";
    for (Index m = 0; m < c.morphism_count(); ++m) {
        if (c.is_identity(m))
            continue;
        out << "  " << dot_quote(c.object(c.dom(m))) << " -> " << dot_quote(c.object(c.cod(m)))
            << " [label=" << dot_quote(c.morphism(m));
        if (is_composite(c, m))
            out << ", style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

inline std::string comma_dot(const std::string& name, const CommaCategory& cc) { return category_dot(name, cc.cat); }

/// Elements of X(a) on the left, of the extension at K a on the right,
/// joined by the unit (left) or counit (right).
inline std::string extension_dot(const std::string& name, const KanExtension& kan)
{
    const auto& a_cat = kan.k.source();
    const auto& b_cat = kan.k.target();
    std::ostringstream out;
    out << "digraph " << dot_quote(name) << " {\n  rankdir=LR;\n";
    auto x_node = [&](Index a, Index e) { return dot_quote("X:" + a_cat.object(a) + ":" + kan.x.at(a).label(e)); };
    auto e_node = [&](Index b, Index e) { return dot_quote("E:" + b_cat.object(b) + ":" + kan.ext.at(b).label(e)); };
    out << "  subgraph cluster_x {\n    label=\"X\";\n";
    for (Index a = 0; a < a_cat.object_count(); ++a)
        for (Index e = 0; e < kan.x.at(a).size(); ++e)
            out << "    " << x_node(a, e) << " [label=" << dot_quote(kan.x.at(a).label(e)) << "];\n";
    out << "  }\n  subgraph cluster_ext {\n    label=" << dot_quote(kan.direction == Direction::left ? "Lan" : "Ran")
        << ";\n";
    for (Index b = 0; b < b_cat.object_count(); ++b)
        for (Index e = 0; e < kan.ext.at(b).size(); ++e)
            out << "    " << e_node(b, e) << " [label=" << dot_quote(kan.ext.at(b).label(e)) << "];\n";
    out << "  }\n";
    for (Index a = 0; a < a_cat.object_count(); ++a) {
        Index b = kan.k.object(a);
        const auto& comp = kan.mediator.component(a);
        if (kan.direction == Direction::left) {
            for (Index e = 0; e < comp.size(); ++e)
                out << "  " << x_node(a, e) << " -> " << e_node(b, comp[e]) << ";\n";
        } else {
            for (Index e = 0; e < comp.size(); ++e)
                out << "  " << e_node(b, e) << " -> " << x_node(a, comp[e]) << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace kanext::io
