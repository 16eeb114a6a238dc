#pragma once

#include "pfree/graph.hh"

#include <istream>
#include <stdexcept>
#include <string>

namespace pfree {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &source, std::size_t line, const std::string &what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Edge-list text: '#' comments, "n m" header, then m lines "u v".
Graph parse_edge_list(std::istream &in, const std::string &source = "<input>");
Graph parse_edge_list(const std::string &text);
std::string write_edge_list(const Graph &g);

nlohmann::json edge_to_json(const Edge &e);
Edge edge_from_json(const nlohmann::json &j);

nlohmann::json to_json(const AnnotatedGraph &ag);
AnnotatedGraph annotated_from_json(const nlohmann::json &j);
std::string write_annotated(const AnnotatedGraph &ag);
AnnotatedGraph parse_annotated(const std::string &text, const std::string &source = "<input>");

// Reads either format; JSON is recognised by a leading '{'.
AnnotatedGraph read_graph_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}
