#include "rlat/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rlat {

using nlohmann::json;

namespace {

json parse_document(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw LatticeError(Errc::bad_document, "not valid JSON");
  }
  return doc;
}

std::vector<std::string> string_array(const json& node, const char* what) {
  if (!node.is_array()) {
    throw LatticeError(Errc::bad_document, std::string(what) + " must be an array");
  }
  std::vector<std::string> out;
  out.reserve(node.size());
  for (const auto& item : node) {
    if (!item.is_string()) {
      throw LatticeError(Errc::bad_document, std::string(what) + " entries must be strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

Relation relation_from_obj(const UniversePtr& u, const json& doc) {
  if (!doc.is_object() || !doc.contains("header") || !doc.contains("tuples")) {
    throw LatticeError(Errc::bad_document,
                       "relation document needs \"header\" and \"tuples\" arrays");
  }
  std::vector<std::string> header = string_array(doc["header"], "header");
  if (!doc["tuples"].is_array()) {
    throw LatticeError(Errc::bad_document, "\"tuples\" must be an array");
  }
  std::vector<std::vector<Value>> rows;
  rows.reserve(doc["tuples"].size());
  for (const auto& t : doc["tuples"]) {
    rows.push_back(string_array(t, "tuple"));
  }
  return make_relation(u, header, rows);
}

}  // namespace

UniversePtr universe_from_json(const std::string& text) {
  json doc = parse_document(text);
  if (!doc.is_object() || !doc.contains("attributes")) {
    throw LatticeError(Errc::bad_document, "universe document needs an \"attributes\" array");
  }
  const json& attrs = doc["attributes"];
  if (!attrs.is_array()) {
    throw LatticeError(Errc::bad_document, "\"attributes\" must be an array");
  }
  std::vector<Universe::AttrDecl> decls;
  decls.reserve(attrs.size());
  for (const auto& a : attrs) {
    if (!a.is_object() || !a.contains("name") || !a["name"].is_string() || !a.contains("domain")) {
      throw LatticeError(Errc::bad_document,
                         "each attribute needs a \"name\" string and a \"domain\" array");
    }
    decls.emplace_back(a["name"].get<std::string>(), string_array(a["domain"], "domain"));
  }
  return std::make_shared<const Universe>(std::move(decls));
}

std::string universe_to_json(const Universe& u) {
  json attrs = json::array();
  for (std::size_t i = 0; i < u.size(); ++i) {
    json a;
    a["name"] = u.name(i);
    a["domain"] = u.domain(i);
    attrs.push_back(std::move(a));
  }
  json doc;
  doc["attributes"] = std::move(attrs);
  return doc.dump();
}

Relation relation_from_json(const UniversePtr& u, const std::string& text) {
  return relation_from_obj(u, parse_document(text));
}

std::string relation_to_json(const Relation& r) {
  json doc;
  doc["header"] = r.header_names();
  json tuples = json::array();
  const auto ids = r.header().indices();
  for (const Tuple& t : r.body()) {
    json row = json::array();
    for (std::size_t p : r.name_positions()) {
      row.push_back(r.universe()->domain(ids[p])[t[p]]);
    }
    tuples.push_back(std::move(row));
  }
  doc["tuples"] = std::move(tuples);
  return doc.dump();
}

std::map<std::string, Relation> catalog_from_json(const UniversePtr& u, const std::string& text) {
  json doc = parse_document(text);
  if (!doc.is_object()) {
    throw LatticeError(Errc::bad_document, "catalog document must be an object");
  }
  std::map<std::string, Relation> out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    out.emplace(it.key(), relation_from_obj(u, it.value()));
  }
  return out;
}

std::string catalog_to_json(const std::map<std::string, Relation>& relations) {
  json doc = json::object();
  for (const auto& [name, rel] : relations) {
    doc[name] = json::parse(relation_to_json(rel));
  }
  return doc.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw LatticeError(Errc::bad_document, "cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw LatticeError(Errc::bad_document, "cannot write '" + path + "'");
  }
  out << text;
}

}  // namespace rlat
