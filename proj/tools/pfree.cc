#include "pfree/corpus.hh"
#include "pfree/gadgets.hh"
#include "pfree/io.hh"
#include "pfree/kernel.hh"
#include "pfree/solvers.hh"
#include "pfree/structure.hh"
#include "pfree/verify.hh"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

using namespace pfree;
using nlohmann::json;

namespace {

enum Exit { Yes = 0, No = 1, Error = 2 };

struct CommandResult {
    int code = Yes;
    std::string text;
    json payload;
    std::vector<std::pair<std::string, std::string>> files;   // written only once the command succeeded
};

std::string vertices_text(std::span<const Vertex> vs)
{
    std::string s;
    for (Vertex v : vs)
        s += (s.empty() ? "" : " ") + std::to_string(v);
    return s;
}

json witness_json(const PrisonWitness &w)
{
    json j;
    j["vertices"] = w.vertices;
    j["non_edges"] = json::array({edge_to_json(w.non_edges[0]), edge_to_json(w.non_edges[1])});
    return j;
}

std::string witness_text(const PrisonWitness &w)
{
    return "prison on " + vertices_text(w.vertices) + ", missing " + to_string(w.non_edges[0]) + " " +
           to_string(w.non_edges[1]);
}

json edges_json(const EdgeSet &es)
{
    json a = json::array();
    for (const auto &e : es)
        a.push_back(edge_to_json(e));
    return a;
}

CommandResult cmd_check(const std::string &path)
{
    auto ag = read_graph_file(path);
    CommandResult r;
    auto w = find_prison(ag.graph);
    r.payload["prison_free"] = !w;
    if (!w) {
        r.text = "prison-free\n";
        return r;
    }
    r.code = No;
    r.payload["witness"] = witness_json(*w);
    r.text = witness_text(*w) + "\n";
    return r;
}

CommandResult cmd_enumerate(const std::string &path)
{
    auto ag = read_graph_file(path);
    CommandResult r;
    r.payload = json::array();
    for (const auto &w : enumerate_prisons(ag.graph)) {
        r.payload.push_back(witness_json(w));
        r.text += witness_text(w) + "\n";
    }
    r.text += std::to_string(r.payload.size()) + " prisons\n";
    return r;
}

CommandResult cmd_decompose(const std::string &path, std::size_t p)
{
    auto ag = read_graph_file(path);
    CommandResult r;
    r.payload = json::array();
    for (const auto &f : cmd(ag.graph, p)) {
        r.payload.push_back({{"vertices", f.vertices}, {"classes", f.classes}});
        std::string line = "component";
        for (const auto &cls : f.classes)
            line += " [" + vertices_text(cls) + "]";
        r.text += line + "\n";
    }
    r.text += std::to_string(r.payload.size()) + " components with at least " + std::to_string(p) + " classes\n";
    return r;
}

CommandResult cmd_kernelize(const std::string &path, int k, const std::string &out, const std::string &trace)
{
    auto ag = read_graph_file(path);
    auto res = kernelize(ag.graph, k);
    CommandResult r;
    if (auto *no = std::get_if<NoInstance>(&res)) {
        r.code = No;
        r.text = "no-instance: " + no->reason + "\n";
        r.payload = {{"answer", "no"}, {"reason", no->reason}};
        if (!trace.empty())
            r.files.emplace_back(trace, trace_to_json(no->trace).dump(2) + "\n");
        return r;
    }
    const auto &kr = std::get<KernelResult>(res);
    std::ostringstream text;
    text << "kernel: n=" << kr.graph.order() << " m=" << kr.graph.size() << " k=" << kr.budget
         << " |S|=" << kr.modulator.vertices.size() << " |F|=" << kr.family.members.size()
         << (kr.trivial ? " (trivial)" : "") << "\n";
    r.text = text.str();
    r.payload = {{"answer", "kernel"},
                 {"n", kr.graph.order()},
                 {"m", kr.graph.size()},
                 {"k", kr.budget},
                 {"trivial", kr.trivial},
                 {"kept", kr.kept},
                 {"modulator", kr.modulator.vertices},
                 {"family", kr.family.members.size()}};
    if (!out.empty()) {
        if (out.ends_with(".json")) {
            AnnotatedGraph kg(kr.graph);
            kg.k = kr.budget;
            r.files.emplace_back(out, write_annotated(kg));
        }
        else {
            r.files.emplace_back(out, "# budget " + std::to_string(kr.budget) + "\n" + write_edge_list(kr.graph));
        }
    }
    if (!trace.empty())
        r.files.emplace_back(trace, trace_to_json(kr.trace).dump(2) + "\n");
    return r;
}

CommandResult cmd_solve(const std::string &path, const std::string &mode, int k)
{
    auto ag = read_graph_file(path);
    auto sol = mode == "del" ? branch_deletion(ag.graph, k) : branch_completion(ag, k);
    CommandResult r;
    if (!sol) {
        r.code = No;
        r.text = "no solution of size at most " + std::to_string(k) + "\n";
        r.payload = {{"feasible", false}};
        return r;
    }
    r.payload = {{"feasible", true}, {"size", sol->size()}, {"edits", edges_json(sol->edits)}};
    r.text = std::string(mode == "del" ? "delete" : "add") + " " + std::to_string(sol->size()) + ":";
    for (const auto &e : sol->edits)
        r.text += " " + to_string(e);
    r.text += "\n";
    return r;
}

CommandResult written(const AnnotatedGraph &ag, const std::string &out, const std::string &what)
{
    ag.validate();
    CommandResult r;
    const auto body = write_annotated(ag);
    r.payload = to_json(ag);
    r.text = what + ": n=" + std::to_string(ag.graph.order()) + " m=" + std::to_string(ag.graph.size()) +
             " forbidden=" + std::to_string(ag.forbidden.size()) + "\n";
    if (out.empty())
        r.text += body;
    else
        r.files.emplace_back(out, body);
    return r;
}

CommandResult cmd_gadget(const std::string &type, std::size_t len, const std::string &out)
{
    AnnotatedGraph host;
    GadgetHandle h;
    if (type == "prop")
        h = build_propagational(host);
    else if (type == "clone")
        h = build_cloning(host, len);
    else
        h = build_disjoint_propagational(host);
    for (const auto &[label, e] : h.labels)
        host.name(label, e);
    host.meta = {{"gadget", type}, {"roles", h.roles}};
    return written(host, out, type + " gadget");
}

CommandResult cmd_reduce_vc(const std::string &path, int t, int ell, const std::string &out)
{
    auto h = read_graph_file(path);
    auto gi = reduce_vc_to_gap({h.graph, t}, ell);
    return written(gi.graph, out, "gap instance k=" + std::to_string(gi.k) + " g=" + std::to_string(gi.g));
}

CommandResult cmd_compose(const std::vector<std::string> &paths, const std::string &out)
{
    std::vector<GapInstance> ins;
    for (const auto &p : paths)
        ins.push_back(GapInstance::from_annotated(read_graph_file(p)));
    auto ci = compose(ins);
    if (auto problem = composition_problem(ci); !problem.empty())
        throw InvariantViolation(problem);
    return written(ci.graph, out,
                   "composition h=" + std::to_string(ci.h) + " k=" + std::to_string(ci.k) + " g=" +
                       std::to_string(ci.graph.g.value_or(0)));
}

CommandResult cmd_verify(const std::string &suite, std::uint64_t seed)
{
    CommandResult r;
    r.payload = json::array();
    for (const auto &c : run_suite(suite, seed)) {
        r.text += format_result(c) + "\n";
        r.payload.push_back({{"id", c.id},
                             {"name", c.name},
                             {"passed", c.passed},
                             {"detail", c.detail},
                             {"checks", c.checks},
                             {"seconds", c.seconds}});
        if (!c.passed)
            r.code = No;
    }
    return r;
}

}

int main(int argc, char **argv)
{
    CLI::App app{"Prison-free graph toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    std::uint64_t seed = corpus_seed();
    app.add_flag("--json", as_json, "Print the JSON payload instead of the text report");
    app.add_option("--seed", seed, "Corpus seed (default: PFREE_SEED or a fixed value)");

    std::string path, out, trace, mode = "del", type, suite = "all";
    std::vector<std::string> paths;
    int k = 0, t = 0, ell = 0;
    std::size_t p = 4, len = 4;

    auto *check = app.add_subcommand("check", "Exit 0 if the graph is prison-free, else print a witness");
    check->add_option("file", path, "Edge list or JSON graph")->required();
    auto *enumerate = app.add_subcommand("enumerate", "List every induced prison");
    enumerate->add_option("file", path)->required();
    auto *decompose = app.add_subcommand("decompose", "Maximal complete multipartite components");
    decompose->add_option("file", path)->required();
    decompose->add_option("--p", p, "Minimum number of classes")->check(CLI::PositiveNumber);
    auto *kern = app.add_subcommand("kernelize", "Kernel for edge deletion with budget k");
    kern->add_option("file", path)->required();
    kern->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
    kern->add_option("--out", out, "Kernel graph (JSON if the name ends in .json)");
    kern->add_option("--trace", trace, "Rule trace as JSON");
    auto *solve = app.add_subcommand("solve", "Minimum deletion or completion set of size at most k");
    solve->add_option("file", path)->required();
    solve->add_option("--mode", mode)->check(CLI::IsMember({"del", "comp"}));
    solve->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
    auto *gadget = app.add_subcommand("gadget", "Build a gadget as annotated JSON");
    gadget->add_option("--type", type)->required()->check(CLI::IsMember({"prop", "clone", "dpc"}));
    gadget->add_option("--len", len, "Cloning length");
    gadget->add_option("--out", out);
    auto *reduce = app.add_subcommand("reduce-vc", "Gap instance from a cubic vertex cover instance");
    reduce->add_option("file", path)->required();
    reduce->add_option("--t", t)->required()->check(CLI::PositiveNumber);
    reduce->add_option("--l", ell)->required();
    reduce->add_option("--out", out);
    auto *comp = app.add_subcommand("compose", "Compose gap instances");
    comp->add_option("files", paths)->required();
    comp->add_option("--out", out);
    auto *verify = app.add_subcommand("verify", "Run acceptance checks");
    verify->add_option("--suite", suite)
        ->check(CLI::IsMember({"structure", "kernel", "solvers", "gadgets", "reductions", "all"}));

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e) {
        app.exit(e);
        return Error;
    }

    CommandResult r;
    try {
        if (*check)
            r = cmd_check(path);
        else if (*enumerate)
            r = cmd_enumerate(path);
        else if (*decompose)
            r = cmd_decompose(path, p);
        else if (*kern)
            r = cmd_kernelize(path, k, out, trace);
        else if (*solve)
            r = cmd_solve(path, mode, k);
        else if (*gadget)
            r = cmd_gadget(type, len, out);
        else if (*reduce)
            r = cmd_reduce_vc(path, t, ell, out);
        else if (*comp)
            r = cmd_compose(paths, out);
        else
            r = cmd_verify(suite, seed);
        for (const auto &[file, body] : r.files)
            write_text_file(file, body);
    }
    catch (const GuardExceeded &e) {
        std::cerr << "error: guard " << e.guard() << " exceeded: " << e.what() << "\n";
        return Error;
    }
    catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Error;
    }
    if (as_json)
        std::cout << r.payload.dump(2) << "\n";
    else
        std::cout << r.text;
    return r.code;
}
