#include "gconf/structure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace gconf {

bool is_planar(const Graph& g) {
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BoostGraph bg(g.vertex_count());
  for (const Edge& e : g.edges()) boost::add_edge(e.a, e.b, bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Components of g after deleting `removed`; -1 marks removed vertices.
std::vector<long> components_without(const Graph& g, const std::vector<std::size_t>& removed,
                                     std::size_t& count) {
  std::vector<long> comp(g.vertex_count(), -2);
  for (std::size_t r : removed) comp[r] = -1;
  count = 0;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] != -2) continue;
    const long id = static_cast<long>(count++);
    comp[s] = id;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y : g.neighbors(x))
        if (comp[y] == -2) {
          comp[y] = id;
          queue.push_back(y);
        }
    }
  }
  return comp;
}

// Connected subgraph given by an edge set; arc = tree with max degree <= 2.
bool edges_form_arc(const Graph& host, const std::vector<std::size_t>& edges) {
  std::map<std::size_t, std::size_t> deg;
  for (std::size_t e : edges) {
    ++deg[host.edge(e).a];
    ++deg[host.edge(e).b];
  }
  if (edges.empty() || edges.size() + 1 != deg.size()) return false;
  return std::all_of(deg.begin(), deg.end(), [](const auto& kv) { return kv.second <= 2; });
}

bool edges_connected(const Graph& host, const std::vector<std::size_t>& edges) {
  if (edges.empty()) return false;
  std::map<std::size_t, std::vector<std::size_t>> adj;
  for (std::size_t e : edges) {
    adj[host.edge(e).a].push_back(host.edge(e).b);
    adj[host.edge(e).b].push_back(host.edge(e).a);
  }
  std::set<std::size_t> seen{adj.begin()->first};
  std::deque<std::size_t> queue{adj.begin()->first};
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y : adj[x])
      if (seen.insert(y).second) queue.push_back(y);
  }
  return seen.size() == adj.size();
}

std::set<std::size_t> edge_vertices(const Graph& host, const std::vector<std::size_t>& edges) {
  std::set<std::size_t> out;
  for (std::size_t e : edges) {
    out.insert(host.edge(e).a);
    out.insert(host.edge(e).b);
  }
  return out;
}

struct Piece {
  std::vector<std::size_t> edges;
  bool touches_first = false;
  bool touches_second = false;
};

// Pieces of host split at `cut`: each component of host - cut with its edges
// into the cut, plus every edge with both ends in the cut on its own.
std::vector<Piece> pieces_at(const Graph& host, const std::vector<std::size_t>& cut) {
  std::size_t count = 0;
  const auto comp = components_without(host, cut, count);
  std::vector<Piece> pieces(count);
  for (std::size_t e = 0; e < host.edge_count(); ++e) {
    const Edge& ed = host.edge(e);
    const long ca = comp[ed.a], cb = comp[ed.b];
    if (ca < 0 && cb < 0) {
      Piece p;
      p.edges.push_back(e);
      p.touches_first = true;
      p.touches_second = true;
      pieces.push_back(std::move(p));
      continue;
    }
    Piece& p = pieces[static_cast<std::size_t>(ca >= 0 ? ca : cb)];
    p.edges.push_back(e);
    for (std::size_t v : {ed.a, ed.b}) {
      if (v == cut[0]) p.touches_first = true;
      if (cut.size() > 1 && v == cut[1]) p.touches_second = true;
    }
  }
  return pieces;
}

std::optional<WedgeWitness> split_pieces(const Graph& host, const std::vector<std::size_t>& cut) {
  const auto pieces = pieces_at(host, cut);
  const std::size_t k = pieces.size();
  if (k < 2) return std::nullopt;

  auto side_ok = [&](const std::vector<std::size_t>& members, std::vector<std::size_t>& edges) {
    edges.clear();
    bool bridging = cut.size() == 1;
    for (std::size_t i : members) {
      edges.insert(edges.end(), pieces[i].edges.begin(), pieces[i].edges.end());
      if (pieces[i].touches_first && pieces[i].touches_second) bridging = true;
    }
    if (!bridging) return false;
    std::sort(edges.begin(), edges.end());
    const auto verts = edge_vertices(host, edges);
    for (std::size_t c : cut)
      if (!verts.count(c)) return false;
    return edges_connected(host, edges) && !edges_form_arc(host, edges);
  };

  auto try_split = [&](const std::vector<std::size_t>& side1) -> std::optional<WedgeWitness> {
    std::vector<bool> in1(k, false);
    for (std::size_t i : side1) in1[i] = true;
    std::vector<std::size_t> side2;
    for (std::size_t i = 0; i < k; ++i)
      if (!in1[i]) side2.push_back(i);
    if (side1.empty() || side2.empty()) return std::nullopt;
    WedgeWitness w;
    w.cut = cut;
    if (side_ok(side1, w.side1_edges) && side_ok(side2, w.side2_edges)) return w;
    return std::nullopt;
  };

  if (k <= 16) {
    // The last piece always lies in side 2, so each split is visited once.
    for (std::size_t mask = 1; mask < (std::size_t{1} << (k - 1)); ++mask) {
      std::vector<std::size_t> side1;
      for (std::size_t i = 0; i + 1 < k; ++i)
        if (mask & (std::size_t{1} << i)) side1.push_back(i);
      if (auto w = try_split(side1)) return w;
    }
    return std::nullopt;
  }
  // FIXME: with more than 16 pieces only splits taking one or two pieces to a side are tried.
  for (std::size_t i = 0; i < k; ++i) {
    if (auto w = try_split({i})) return w;
    for (std::size_t j = i + 1; j < k; ++j)
      if (auto w = try_split({i, j})) return w;
  }
  return std::nullopt;
}

std::vector<std::size_t> articulation_points(const Graph& g) {
  std::vector<std::size_t> out;
  const std::size_t base = component_count(g);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < 2) continue;
    std::size_t count = 0;
    components_without(g, {v}, count);
    if (count > base) out.push_back(v);
  }
  return out;
}

}  // namespace

TopologicalReduction reduce_topology(const Graph& g) {
  if (!is_connected(g)) throw GraphError("topological reduction requires a connected graph");
  if (g.edge_count() == 0) throw GraphError("topological reduction of a point");
  if (is_circle(g)) throw GraphError("topological reduction of a circle has no essential vertex");

  TopologicalReduction r;
  std::vector<std::size_t> host_index(g.vertex_count(), kNone);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != 2) {
      r.essential.push_back(v);
      host_index[v] = r.host.add_vertex(g.label(v));
      r.host_to_input.push_back(v);
      r.host_description.push_back(g.label(v));
    }

  std::vector<bool> used(g.edge_count(), false);
  for (std::size_t v : r.essential)
    for (std::size_t e0 : g.incident_edges(v)) {
      if (used[e0]) continue;
      ReducedEdge re;
      re.from = v;
      std::size_t e = e0;
      std::size_t x = v;
      for (;;) {
        used[e] = true;
        re.chain.push_back(e);
        x = g.opposite(e, x);
        if (g.degree(x) != 2) break;
        const auto& inc = g.incident_edges(x);
        e = inc[0] == e ? inc[1] : inc[0];
      }
      re.to = x;
      const std::string name = g.label(re.from) + "~" + g.label(re.to) + "#" + std::to_string(r.reduced_edges.size());
      std::string chain_desc = "interior of chain";
      for (std::size_t ce : re.chain) chain_desc += " " + g.label(g.edge(ce).a) + "-" + g.label(g.edge(ce).b);
      std::size_t prev = host_index[re.from];
      for (int i = 1; i <= 2; ++i) {
        std::string label = name + "." + std::to_string(i);
        while (r.host.find_vertex(label)) label += "'";
        const std::size_t m = r.host.add_vertex(label);
        r.host_to_input.push_back(std::nullopt);
        r.host_description.push_back(chain_desc);
        r.host.add_edge(prev, m);
        prev = m;
      }
      r.host.add_edge(prev, host_index[re.to]);
      r.reduced_edges.push_back(std::move(re));
    }
  return r;
}

bool witness_is_valid(const Graph& host, const WedgeWitness& w, std::size_t cut_size) {
  if (w.cut.size() != cut_size) return false;
  std::vector<std::size_t> all = w.side1_edges;
  all.insert(all.end(), w.side2_edges.begin(), w.side2_edges.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;  // shared edge
  if (all.size() != host.edge_count()) return false;
  const auto v1 = edge_vertices(host, w.side1_edges);
  const auto v2 = edge_vertices(host, w.side2_edges);
  std::vector<std::size_t> common;
  std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(common));
  std::vector<std::size_t> cut = w.cut;
  std::sort(cut.begin(), cut.end());
  if (common != cut) return false;
  // every vertex of the host is covered
  std::set<std::size_t> covered = v1;
  covered.insert(v2.begin(), v2.end());
  if (covered.size() != host.vertex_count()) return false;
  return edges_connected(host, w.side1_edges) && edges_connected(host, w.side2_edges) &&
         !edges_form_arc(host, w.side1_edges) && !edges_form_arc(host, w.side2_edges);
}

StructureReport structure(const Graph& g) {
  StructureReport s;
  s.component_count = component_count(g);
  s.articulation_vertices = articulation_points(g);
  s.planar = is_planar(g);
  s.arc = is_arc(g);
  s.circle = is_circle(g);
  if (!s.arc)
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (g.degree(v) == 1) s.univalent_vertices.push_back(v);
  if (s.component_count != 1 || s.arc || s.circle || g.edge_count() == 0) return s;

  const TopologicalReduction red = reduce_topology(g);
  const Graph& host = red.host;
  s.host = host;

  std::map<std::pair<std::size_t, std::size_t>, int> parallel;
  for (const auto& re : red.reduced_edges)
    if (re.from != re.to && ++parallel[{std::min(re.from, re.to), std::max(re.from, re.to)}] > 1)
      s.double_edge = true;

  auto describe = [&](WedgeWitness w) {
    for (std::size_t c : w.cut) w.cut_description.push_back(red.host_description[c]);
    return w;
  };

  for (std::size_t v = 0; v < host.vertex_count() && !s.wedge; ++v)
    if (auto w = split_pieces(host, {v})) s.wedge = describe(*w);

  const std::size_t ne = red.essential.size();
  // Separation pairs of the reduced multigraph: at least two separation
  // classes, except a class plus a single edge, or a bond of three edges.
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = i + 1; j < ne; ++j) {
      const auto classes = pieces_at(host, {i, j});
      std::size_t single = 0;
      for (const auto& p : classes) {
        bool interior_only = p.touches_first && p.touches_second;
        for (std::size_t e : p.edges)
          for (std::size_t v : {host.edge(e).a, host.edge(e).b})
            if (v != i && v != j && red.host_to_input[v]) interior_only = false;
        if (interior_only) ++single;
      }
      const std::size_t k = classes.size();
      if (k >= 2 && !(k == 2 && single >= 1) && !(k == 3 && single == 3))
        s.two_cuts.emplace_back(red.essential[i], red.essential[j]);
    }

  for (std::size_t x = 0; x < host.vertex_count() && !s.double_wedge; ++x)
    for (std::size_t y = x + 1; y < host.vertex_count(); ++y)
      if (auto w = split_pieces(host, {x, y})) {
        s.double_wedge = describe(*w);
        break;
      }

  for (std::size_t e = 0; e < host.edge_count(); ++e) {
    std::size_t count = 0;
    components_without(host, {host.edge(e).a, host.edge(e).b}, count);
    if (count >= 2) {
      s.separating_edge = e;
      break;
    }
  }
  return s;
}

}  // namespace gconf
