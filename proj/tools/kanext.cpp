// kanext: command-line front end over JSON workspaces.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include <kanext/io/commands.hpp>

namespace {

using kanext::io::json;

struct CommandFlags {
    std::string name;
    std::string help;
    std::vector<std::pair<std::string, std::string>> flags;  // flag, description
};

const std::vector<CommandFlags>& command_table()
{
    static const std::vector<CommandFlags> table{
        {"validate", "load and validate the workspace, or one named entry",
         {{"cat", "category"}, {"functor", "functor"}, {"setfunctor", "set-valued functor"}, {"trans", "transformation"}}},
        {"limit", "limit of a set-valued functor", {{"X", "diagram"}}},
        {"colimit", "colimit of a set-valued functor", {{"X", "diagram"}}},
        {"lan", "left Kan extension", {{"K", "functor A -> B"}, {"X", "set functor on A"}}},
        {"ran", "right Kan extension", {{"K", "functor A -> B"}, {"X", "set functor on A"}}},
        {"comma", "comma category K/b or b/K",
         {{"K", "functor"}, {"b", "object of the target"}, {"side", "left (K/b) or right (b/K)"}}},
        {"universal", "factor a candidate through the extension",
         {{"K", "functor"}, {"X", "set functor"}, {"L", "candidate functor on B"}, {"eta", "candidate unit or counit"},
          {"direction", "left or right"}}},
        {"hom-bijection", "check the hom-set bijection",
         {{"K", "functor"}, {"X", "set functor"}, {"H", "set functor on B"}, {"direction", "left or right"}}},
        {"adjunction", "decide whether L is left adjoint to R", {{"L", "functor A -> B"}, {"R", "functor B -> A"}}},
        {"codensity", "codensity monad of a set functor", {{"G", "set functor"}}},
        {"yoneda", "Yoneda reduction at an object", {{"X", "set functor"}, {"a", "object"}}},
        {"coyoneda", "co-Yoneda reduction at an object", {{"X", "set functor"}, {"a", "object"}}},
        {"density", "reconstruct a presheaf from representables", {{"F", "set functor on an opposite category"}}},
        {"nerve", "nerve and realization", {{"F", "functor C -> E"}, {"X", "presheaf on C"}, {"e", "object of E"}}},
        {"order-ext", "extensions of a monotone map between chains",
         {{"Q", "subchain"}, {"R", "chain"}, {"X", "monotone map Q -> V"}}},
        {"preserve", "preservation by an endofunctor of Set",
         {{"K", "functor"}, {"X", "set functor"}, {"G", "identity or hom:<n>"}, {"max-c", "check hom(c,-) for |c| <= n"},
          {"direction", "left or right"}}},
    };
    return table;
}

bool use_color()
{
    return std::getenv("NO_COLOR") == nullptr && ::isatty(STDERR_FILENO);
}

void note(const std::string& tag, const std::string& message)
{
    if (use_color())
        std::cerr << (tag == "error" ? "\033[31m" : "\033[33m") << tag << "\033[0m: " << message << "\n";
    else
        std::cerr << tag << ": " << message << "\n";
}

void print_diagnostics(const json& doc)
{
    if (!doc.contains("error"))
        return;
    const auto& e = doc["error"];
    note(doc.value("status", "error") == "fails" ? "fails" : "error", e.value("message", ""));
    if (e.contains("diagnostics"))
        for (const auto& d : e["diagnostics"])
            note("  " + d.value("code", ""),
                 d.value("file", "") + ":" + std::to_string(d.value("line", 0)) + ": " + d.value("message", ""));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Kan extensions over finite categories"};
    app.require_subcommand(1);
    app.fallthrough();

    std::vector<std::string> inputs;
    double nathom_cap = 1e6;
    std::string dot_path;
    int indent = 2;
    app.add_option("-i,--input", inputs, "workspace JSON file (repeatable)")->check(CLI::ExistingFile);
    app.add_option("--guard-nathom", nathom_cap, "cap on candidate transformations")->capture_default_str();
    app.add_option("--dot", dot_path, "write a Graphviz rendering here");
    app.add_option("--json-indent", indent, "indentation of the JSON output (-1 for one line)")->capture_default_str();

    std::map<std::string, std::map<std::string, std::string>> values;
    std::vector<std::size_t> probes;
    for (const auto& c : command_table()) {
        auto* sub = app.add_subcommand(c.name, c.help);
        for (const auto& [flag, desc] : c.flags)
            sub->add_option("--" + flag, values[c.name][flag], desc);
        if (c.name == "codensity")
            sub->add_option("--probe", probes, "sizes of probe sets (default 0 1 2)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        json doc = {{"status", "error"}, {"error", {{"code", "usage"}, {"message", e.what()}}}};
        std::cout << kanext::io::render(doc, indent);
        note("error", e.what());
        return 2;
    }

    kanext::io::Request req;
    req.command = app.get_subcommands().front()->get_name();
    req.args = values[req.command];
    req.probes = probes;

    kanext::Guards guards;
    guards.nat_hom_cap = nathom_cap;

    kanext::io::Response res;
    try {
        auto ws = kanext::io::load(inputs, guards);
        res = kanext::io::run_command(ws, req);
    } catch (const kanext::Error& e) {
        res = {2, kanext::io::detail::error_doc(e), {}};
    }

    std::cout << kanext::io::render(res.doc, indent);
    print_diagnostics(res.doc);
    if (!dot_path.empty() && !res.dot.empty()) {
        std::ofstream out(dot_path);
        if (!out) {
            note("error", "cannot write " + dot_path);
            return 2;
        }
        out << res.dot;
    }
    return res.exit_code;
}
