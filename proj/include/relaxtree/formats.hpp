#pragma once

// Tree and path documents.
//
//   tree: {"k": 3, "sink": 1, "nodes": [{"label": 2, "children":
//            [{"type": "spine", "target": 1}, {"type": "pointer", "target": 1}, ...]}, ...]}
//   path: {"k": 3, "steps": [{"type": "U"}, {"type": "H", "cross": 1}, ...]}
//
// Field order is preserved on output; dump_* emit two-space indented JSON
// followed by a newline, so equal structures give byte-identical files.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "relaxtree/error.hpp"
#include "relaxtree/path.hpp"
#include "relaxtree/tree.hpp"

namespace relaxtree {

using ojson = nlohmann::ordered_json;

inline ojson tree_to_json(const RelaxedTree& t) {
  ojson nodes = ojson::array();
  for (const auto& node : t.nodes()) {
    ojson children = ojson::array();
    for (const auto& c : node.children)
      children.push_back({{"type", c.kind == EdgeKind::spine ? "spine" : "pointer"}, {"target", c.target}});
    nodes.push_back({{"label", node.label}, {"children", std::move(children)}});
  }
  return {{"k", t.arity()}, {"sink", kSinkLabel}, {"nodes", std::move(nodes)}};
}

inline ojson path_to_json(const DecoratedPath& p) {
  ojson steps = ojson::array();
  for (const auto& s : p.steps()) {
    if (s.is_up())
      steps.push_back({{"type", "U"}});
    else
      steps.push_back({{"type", "H"}, {"cross", s.cross}});
  }
  return {{"k", p.arity()}, {"steps", std::move(steps)}};
}

namespace detail {

template <class J>
const J& require(const J& obj, const char* field) {
  if (!obj.is_object() || !obj.contains(field)) throw Error("parse-error", std::string("missing field \"") + field + "\"");
  return obj.at(field);
}

template <class J>
int require_int(const J& obj, const char* field) {
  const J& v = require(obj, field);
  if (!v.is_number_integer()) throw Error("parse-error", std::string("field \"") + field + "\" must be an integer");
  return v.template get<int>();
}

template <class J>
std::string require_string(const J& obj, const char* field) {
  const J& v = require(obj, field);
  if (!v.is_string()) throw Error("parse-error", std::string("field \"") + field + "\" must be a string");
  return v.template get<std::string>();
}

}  // namespace detail

inline RelaxedTree tree_from_json(const ojson& doc) {
  const int k = detail::require_int(doc, "k");
  if (detail::require_int(doc, "sink") != kSinkLabel) throw Error("parse-error", "sink must be 1");
  const auto& nodes = detail::require(doc, "nodes");
  if (!nodes.is_array()) throw Error("parse-error", "\"nodes\" must be an array");
  std::vector<InternalNode> out;
  for (const auto& n : nodes) {
    InternalNode node{detail::require_int(n, "label"), {}};
    const auto& children = detail::require(n, "children");
    if (!children.is_array()) throw Error("parse-error", "\"children\" must be an array");
    for (const auto& c : children) {
      const std::string type = detail::require_string(c, "type");
      const int target = detail::require_int(c, "target");
      if (type == "spine")
        node.children.push_back(ChildRef::spine(target));
      else if (type == "pointer")
        node.children.push_back(ChildRef::pointer(target));
      else
        throw Error("parse-error", "child type must be \"spine\" or \"pointer\"");
    }
    out.push_back(std::move(node));
  }
  return RelaxedTree(k, std::move(out));
}

inline DecoratedPath path_from_json(const ojson& doc) {
  const int k = detail::require_int(doc, "k");
  const auto& steps = detail::require(doc, "steps");
  if (!steps.is_array()) throw Error("parse-error", "\"steps\" must be an array");
  std::vector<Step> out;
  for (const auto& s : steps) {
    const std::string type = detail::require_string(s, "type");
    if (type == "U")
      out.push_back(Step::up());
    else if (type == "H")
      out.push_back(Step::horizontal(detail::require_int(s, "cross")));
    else
      throw Error("parse-error", "step type must be \"U\" or \"H\"");
  }
  return DecoratedPath(k, std::move(out));
}

inline ojson parse_document(const std::string& text) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("parse-error", e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io-error", "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string dump_document(const ojson& doc) { return doc.dump(2) + "\n"; }
inline std::string dump_tree(const RelaxedTree& t) { return dump_document(tree_to_json(t)); }
inline std::string dump_path(const DecoratedPath& p) { return dump_document(path_to_json(p)); }

inline RelaxedTree load_tree_file(const std::string& path) { return tree_from_json(parse_document(read_file(path))); }
inline DecoratedPath load_path_file(const std::string& path) { return path_from_json(parse_document(read_file(path))); }

}  // namespace relaxtree
