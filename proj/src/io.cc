#include "pfree/io.hh"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pfree {

ParseError::ParseError(const std::string &source, std::size_t line, const std::string &what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line)
{
}

namespace {

bool blank_or_comment(const std::string &line)
{
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

std::vector<long long> read_ints(const std::string &line, const std::string &source, std::size_t lineno)
{
    std::istringstream ss(line);
    std::vector<long long> out;
    std::string tok;
    while (ss >> tok) {
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(tok, &used);
        }
        catch (const std::exception &) {
            throw ParseError(source, lineno, "expected integer, got '" + tok + "'");
        }
        if (used != tok.size())
            throw ParseError(source, lineno, "expected integer, got '" + tok + "'");
        out.push_back(value);
    }
    return out;
}

}

Graph parse_edge_list(std::istream &in, const std::string &source)
{
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    long long n = 0, m = 0, seen = 0;
    Graph g;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank_or_comment(line))
            continue;
        auto ints = read_ints(line, source, lineno);
        if (ints.size() != 2)
            throw ParseError(source, lineno, have_header ? "expected \"u v\"" : "expected header \"n m\"");
        if (!have_header) {
            n = ints[0];
            m = ints[1];
            if (n < 0 || m < 0)
                throw ParseError(source, lineno, "negative count in header");
            g = Graph(static_cast<std::size_t>(n));
            have_header = true;
            continue;
        }
        if (seen == m)
            throw ParseError(source, lineno, "more than " + std::to_string(m) + " edge lines");
        auto u = ints[0], v = ints[1];
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError(source, lineno, "vertex id out of range 0.." + std::to_string(n - 1));
        if (u == v)
            throw ParseError(source, lineno, "self-loop at " + std::to_string(u));
        g.set_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), true);
        ++seen;
    }
    if (!have_header)
        throw ParseError(source, lineno, "missing header \"n m\"");
    if (seen != m)
        throw ParseError(source, lineno, "expected " + std::to_string(m) + " edges, found " + std::to_string(seen));
    return g;
}

Graph parse_edge_list(const std::string &text)
{
    std::istringstream in(text);
    return parse_edge_list(in);
}

std::string write_edge_list(const Graph &g)
{
    std::ostringstream out;
    out << g.order() << " " << g.size() << "\n";
    for (const auto &e : g.edges())
        out << e.u << " " << e.v << "\n";
    return out.str();
}

nlohmann::json edge_to_json(const Edge &e)
{
    return nlohmann::json::array({e.u, e.v});
}

Edge edge_from_json(const nlohmann::json &j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned())
        throw std::invalid_argument("expected a pair [u,v] of vertex ids, got " + j.dump());
    return Edge(j[0].get<Vertex>(), j[1].get<Vertex>());
}

nlohmann::json to_json(const AnnotatedGraph &ag)
{
    using nlohmann::json;
    json j;
    j["n"] = ag.graph.order();
    json edges = json::array();
    for (const auto &e : ag.graph.edges())
        edges.push_back(edge_to_json(e));
    j["edges"] = std::move(edges);
    json forbidden = json::array();
    for (const auto &e : ag.forbidden)
        forbidden.push_back(edge_to_json(e));
    j["forbidden"] = std::move(forbidden);
    json named = json::object();
    for (const auto &[label, e] : ag.named)
        named[label] = edge_to_json(e);
    j["named"] = std::move(named);
    j["activation"] = ag.activation ? edge_to_json(*ag.activation) : json(nullptr);
    j["k"] = ag.k ? json(*ag.k) : json(nullptr);
    j["g"] = ag.g ? json(*ag.g) : json(nullptr);
    if (!ag.meta.is_null())
        j["meta"] = ag.meta;
    return j;
}

AnnotatedGraph annotated_from_json(const nlohmann::json &j)
{
    if (!j.is_object())
        throw std::invalid_argument("annotated graph must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_unsigned())
        throw std::invalid_argument("field 'n' missing or not a non-negative integer");
    AnnotatedGraph ag(Graph(j["n"].get<std::size_t>()));
    if (j.contains("edges"))
        for (const auto &p : j["edges"]) {
            auto e = edge_from_json(p);
            ag.graph.set_edge(e.u, e.v, true);
        }
    if (j.contains("forbidden"))
        for (const auto &p : j["forbidden"])
            ag.forbid(edge_from_json(p));
    if (j.contains("named"))
        for (const auto &[label, p] : j["named"].items())
            ag.name(label, edge_from_json(p));
    auto opt_int = [&](const char *key) -> std::optional<std::int64_t> {
        if (!j.contains(key) || j[key].is_null())
            return std::nullopt;
        if (!j[key].is_number_integer())
            throw std::invalid_argument(std::string("field '") + key + "' must be an integer or null");
        return j[key].get<std::int64_t>();
    };
    if (j.contains("activation") && !j["activation"].is_null())
        ag.activation = edge_from_json(j["activation"]);
    ag.k = opt_int("k");
    ag.g = opt_int("g");
    if (j.contains("meta"))
        ag.meta = j["meta"];
    ag.validate();
    return ag;
}

std::string write_annotated(const AnnotatedGraph &ag)
{
    return to_json(ag).dump(1) + "\n";
}

AnnotatedGraph parse_annotated(const std::string &text, const std::string &source)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error &err) {
        // byte offset -> line number for the diagnostic
        std::size_t upto = std::min<std::size_t>(err.byte, text.size());
        std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
        throw ParseError(source, line, err.what());
    }
    try {
        return annotated_from_json(j);
    }
    catch (const std::invalid_argument &err) {
        throw ParseError(source, 0, err.what());
    }
    catch (const std::out_of_range &err) {
        throw ParseError(source, 0, err.what());
    }
}

AnnotatedGraph read_graph_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return parse_annotated(text, path);
    std::istringstream ss(text);
    return AnnotatedGraph(parse_edge_list(ss, path));
}

void write_text_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out)
        throw std::runtime_error("write failed for " + path);
}

}
