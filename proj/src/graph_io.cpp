#include "gconf/graph_io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <openssl/sha.h>

#include "gconf/catalog.hpp"

namespace gconf {

namespace {

std::string fresh_label(const Graph& g, std::string base) {
  while (g.find_vertex(base)) base += "'";
  return base;
}

}  // namespace

Graph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw GraphError("graph document must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw GraphError("graph document needs a \"vertices\" array");
  if (doc.contains("edges") && !doc["edges"].is_array())
    throw GraphError("\"edges\" must be an array");

  Graph g(0);
  std::map<std::string, std::size_t> index;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw GraphError("vertex names must be strings");
    const std::string name = v.get<std::string>();
    if (name.empty()) throw GraphError("empty vertex name");
    if (index.count(name)) throw GraphError("duplicate vertex name " + name);
    index[name] = g.add_vertex(name);
  }
  auto lookup = [&](const nlohmann::json& x) {
    if (!x.is_string()) throw GraphError("edge endpoints must be vertex names");
    auto it = index.find(x.get<std::string>());
    if (it == index.end()) throw GraphError("edge references unknown vertex " + x.get<std::string>());
    return it->second;
  };

  // Multi-edge copies and loops are collected first so that subdivision
  // vertices never shadow later document vertices.
  std::map<std::pair<std::size_t, std::size_t>, int> copies;
  std::vector<std::pair<std::size_t, std::size_t>> simple, extra;
  if (doc.contains("edges"))
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2) throw GraphError("each edge must be a pair of vertex names");
      const std::size_t x = lookup(e[0]);
      const std::size_t y = lookup(e[1]);
      const auto key = std::make_pair(std::min(x, y), std::max(x, y));
      if (x != y && copies[key]++ == 0)
        simple.push_back(key);
      else
        extra.push_back(key);
    }
  for (const auto& [x, y] : simple) g.add_edge(x, y);
  std::map<std::pair<std::size_t, std::size_t>, int> seq;
  for (const auto& [x, y] : extra) {
    const int n = seq[{x, y}]++;
    const std::string base = g.label(x) + "|" + g.label(y) + "#" + std::to_string(n);
    if (x == y) {
      const std::size_t p = g.add_vertex(fresh_label(g, base + ".1"));
      const std::size_t q = g.add_vertex(fresh_label(g, base + ".2"));
      g.add_edge(x, p);
      g.add_edge(p, q);
      g.add_edge(q, x);
    } else {
      const std::size_t m = g.add_vertex(fresh_label(g, base));
      g.add_edge(x, m);
      g.add_edge(m, y);
    }
  }

  if (doc.contains("marked") && !doc["marked"].is_null()) {
    const auto& m = doc["marked"];
    if (!m.is_object() || !m.contains("u") || !m.contains("v"))
      throw GraphError("\"marked\" must be an object with \"u\" and \"v\"");
    g.set_marked(MarkedPair{lookup(m["u"]), lookup(m["v"])});
  }
  return g;
}

Graph load_graph(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GraphError(std::string("malformed graph document: ") + e.what());
  }
  return graph_from_json(doc);
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json doc;
  doc["vertices"] = g.labels();
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({g.label(e.a), g.label(e.b)});
  doc["edges"] = std::move(edges);
  if (g.marked()) doc["marked"] = {{"u", g.label(g.marked()->u)}, {"v", g.label(g.marked()->v)}};
  return doc;
}

std::string emit_graph(const Graph& g) { return graph_to_json(g).dump(); }

Graph resolve_graph(const std::string& spec) {
  if (spec.rfind("gen:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(4));
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty() || parts[0].empty()) throw GraphError("empty generator specifier");
    std::vector<long> params;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      try {
        std::size_t used = 0;
        params.push_back(std::stol(parts[i], &used));
        if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
      } catch (const std::exception&) {
        throw GraphError("generator parameter is not an integer: " + parts[i]);
      }
    }
    return generate(parts[0], params);
  }
  std::ifstream in(spec);
  if (!in) throw GraphError("cannot open graph file " + spec);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_graph(buf.str());
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  std::ostringstream os;
  for (unsigned char b : digest) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(b);
  return os.str();
}

std::string fingerprint(const Graph& g) { return sha256_hex(emit_graph(g)); }

}  // namespace gconf
