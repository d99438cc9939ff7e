#pragma once

// Finite simplicial graphs presenting right-angled Artin monoids.  Vertices
// are the monoid generators; an edge {u,v} declares the relation uv = vu.
// All later modules fix the total order on generators as the lexicographic
// order of their names, so the vertex table is sorted once here and every
// generator is referred to by its index into that table.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "artin/errors.hpp"

namespace artin {

using Gen = int;

class PresentationGraph {
 public:
  // Adjacency is kept as one 64-bit mask per vertex.
  static constexpr std::size_t max_vertices = 64;

  PresentationGraph(std::vector<std::string> vertices,
                    const std::vector<std::pair<std::string, std::string>>& edges) {
    for (const auto& v : vertices) validate_name(v);
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
      throw input_error("duplicate vertex name");
    if (vertices.size() > max_vertices)
      throw input_error("graphs with more than 64 vertices are not supported");
    names_ = std::move(vertices);
    adj_.assign(names_.size(), 0);
    for (const auto& [a, b] : edges) add_edge(a, b);
  }

  std::size_t size() const { return names_.size(); }

  const std::string& name(Gen v) const { return names_[static_cast<std::size_t>(v)]; }

  const std::vector<std::string>& names() const { return names_; }

  std::optional<Gen> find_vertex(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<Gen>(it - names_.begin());
  }

  Gen vertex(std::string_view name) const {
    if (auto v = find_vertex(name)) return *v;
    throw input_error("unknown generator: " + std::string(name));
  }

  bool adjacent(Gen u, Gen v) const { return (adj_[u] >> v) & 1u; }

  std::uint64_t neighbours(Gen v) const { return adj_[v]; }

  std::uint64_t vertex_mask() const {
    return size() == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << size()) - 1;
  }

  std::vector<std::pair<Gen, Gen>> edges() const {
    std::vector<std::pair<Gen, Gen>> out;
    for (Gen u = 0; u < static_cast<Gen>(size()); ++u)
      for (Gen v = u + 1; v < static_cast<Gen>(size()); ++v)
        if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
  }

  PresentationGraph opposite() const {
    PresentationGraph o(names_, {});
    for (Gen u = 0; u < static_cast<Gen>(size()); ++u)
      o.adj_[u] = ~adj_[u] & vertex_mask() & ~(std::uint64_t(1) << u);
    return o;
  }

  friend bool operator==(const PresentationGraph& a, const PresentationGraph& b) {
    return a.names_ == b.names_ && a.adj_ == b.adj_;
  }

  // Generator names must not collide with the tokens "1" (empty word) and
  // "INF" (failed join) used by the word syntax.
  static void validate_name(std::string_view name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front())))
      throw input_error("invalid vertex name: '" + std::string(name) +
                        "' (must start with a letter)");
    for (char c : name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw input_error("invalid vertex name: '" + std::string(name) + "'");
    if (name == "INF") throw input_error("'INF' is reserved and cannot name a vertex");
  }

 private:
  void add_edge(std::string_view a, std::string_view b) {
    Gen u = vertex(a), v = vertex(b);
    if (u == v) throw input_error("loop at vertex '" + std::string(a) + "'");
    if (adjacent(u, v))
      throw input_error("duplicate edge {" + std::string(a) + ", " + std::string(b) + "}");
    adj_[u] |= std::uint64_t(1) << v;
    adj_[v] |= std::uint64_t(1) << u;
  }

  std::vector<std::string> names_;   // sorted; index = generator id
  std::vector<std::uint64_t> adj_;
};

using GraphPtr = std::shared_ptr<const PresentationGraph>;

inline GraphPtr make_graph(std::vector<std::string> vertices,
                           const std::vector<std::pair<std::string, std::string>>& edges) {
  return std::make_shared<const PresentationGraph>(std::move(vertices), edges);
}

// Two traces may interoperate when their graphs are the same object or are
// structurally equal (tests routinely rebuild the same graph).
inline bool same_graph(const GraphPtr& a, const GraphPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_graph(const GraphPtr& a, const GraphPtr& b) {
  if (!same_graph(a, b))
    throw input_error("operands are built over different presentation graphs");
}

// ---------------------------------------------------------------------------
// Text format:
//
//   vertices: a b c
//   edge: a b
//   edge: b c
//
// '#' starts a comment.  export_graph_text() emits the canonical form
// (sorted vertex list, edges sorted by endpoint names), and parsing the
// export reproduces it byte for byte.

inline PresentationGraph parse_graph_text(std::string_view text) {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  bool seen_vertices = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw input_error("graph parse error (line " + std::to_string(lineno) + "): " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "vertices:") {
      if (seen_vertices) fail("repeated 'vertices:' line");
      seen_vertices = true;
      std::string v;
      while (ls >> v) vertices.push_back(v);
    } else if (head == "edge:") {
      if (!seen_vertices) fail("'edge:' before 'vertices:'");
      std::string a, b, extra;
      if (!(ls >> a >> b)) fail("expected 'edge: u v'");
      if (ls >> extra) fail("trailing tokens after 'edge: u v'");
      edges.emplace_back(a, b);
    } else {
      fail("expected 'vertices:' or 'edge:', got '" + head + "'");
    }
  }
  if (!seen_vertices) throw input_error("graph parse error: missing 'vertices:' line");
  try {
    return PresentationGraph(std::move(vertices), edges);
  } catch (const input_error& e) {
    throw input_error(std::string("graph parse error: ") + e.what());
  }
}

inline std::string export_graph_text(const PresentationGraph& g) {
  std::ostringstream out;
  out << "vertices:";
  for (const auto& n : g.names()) out << ' ' << n;
  out << '\n';
  for (auto [u, v] : g.edges()) out << "edge: " << g.name(u) << ' ' << g.name(v) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Connected components of the opposite graph.  These index the direct-sum
// decomposition of the monoid and the basic relation sets; they are listed
// in order of their least vertex.

struct ComponentDecomposition {
  GraphPtr graph;                        // the original graph, not its opposite
  std::vector<std::vector<Gen>> components;
  std::vector<int> component_of;         // per generator
  std::vector<Gen> isolated;             // vertices isolated in the opposite graph

  std::size_t count() const { return components.size(); }

  // Components are named after their least vertex.
  const std::string& component_name(std::size_t c) const {
    return graph->name(components[c].front());
  }

  std::size_t component_by_name(std::string_view name) const {
    Gen v = graph->vertex(name);
    return static_cast<std::size_t>(component_of[v]);
  }
};

inline ComponentDecomposition opp_components(const GraphPtr& g) {
  const PresentationGraph opp = g->opposite();
  const int n = static_cast<int>(g->size());
  ComponentDecomposition d;
  d.graph = g;
  d.component_of.assign(n, -1);
  for (Gen v = 0; v < n; ++v) {
    if (d.component_of[v] >= 0) continue;
    const int c = static_cast<int>(d.components.size());
    std::vector<Gen> comp, stack{v};
    d.component_of[v] = c;
    while (!stack.empty()) {
      Gen u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (std::uint64_t m = opp.neighbours(u); m;) {
        Gen w = std::countr_zero(m);
        m &= m - 1;
        if (d.component_of[w] < 0) {
          d.component_of[w] = c;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    d.components.push_back(std::move(comp));
  }
  for (const auto& comp : d.components)
    if (comp.size() == 1) d.isolated.push_back(comp.front());
  return d;
}

// Generators adjacent to every other vertex: these are central in the monoid
// and isolated in the opposite graph.
inline std::vector<Gen> core_generators(const PresentationGraph& g) {
  std::vector<Gen> out;
  for (Gen v = 0; v < static_cast<Gen>(g.size()); ++v)
    if (g.neighbours(v) == (g.vertex_mask() & ~(std::uint64_t(1) << v))) out.push_back(v);
  return out;
}

inline int centre_rank(const PresentationGraph& g) {
  return static_cast<int>(core_generators(g).size());
}

inline bool is_centre_trivial(const PresentationGraph& g) { return centre_rank(g) == 0; }

// The monoid splits as a direct sum along opposite-graph components; it is
// irreducible exactly when the opposite graph is connected.
inline bool is_graph_irreducible(const GraphPtr& g) {
  return opp_components(g).count() == 1;
}

// Euler characteristic of the clique complex: every clique spans a simplex,
// and a clique on k vertices contributes (-1)^(k+1).
inline long long clique_euler(const PresentationGraph& g) {
  long long chi = 0;
  auto rec = [&](auto&& self, std::uint64_t cand, int size) -> void {
    while (cand) {
      Gen v = std::countr_zero(cand);
      cand &= cand - 1;
      chi += (size % 2 == 0) ? 1 : -1;
      // extend only by larger vertices adjacent to the whole clique
      self(self, cand & g.neighbours(v), size + 1);
    }
  };
  rec(rec, g.vertex_mask(), 0);
  return chi;
}

}  // namespace artin
