#pragma once

#include <random>
#include <string>
#include <vector>

#include "artin/graph.hpp"
#include "artin/trace.hpp"

namespace testutil {

using namespace artin;

// The four standing test graphs.
inline GraphPtr free2() { return make_graph({"a", "b"}, {}); }
inline GraphPtr z2() { return make_graph({"a", "b"}, {{"a", "b"}}); }
inline GraphPtr k22() {
  return make_graph({"a1", "a2", "b1", "b2"},
                    {{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a2", "b2"}});
}
inline GraphPtr path4() {
  return make_graph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
}
inline GraphPtr free_n(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return make_graph(std::move(names), {});
}

inline std::vector<GraphPtr> standard_graphs() { return {free2(), z2(), k22(), path4()}; }

inline GraphPtr random_graph(std::mt19937& rng, int n, double edge_prob = 0.4) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::pair<std::string, std::string>> edges;
  std::bernoulli_distribution flip(edge_prob);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (flip(rng)) edges.emplace_back(names[i], names[j]);
  return make_graph(std::move(names), edges);
}

inline std::vector<Gen> random_word(std::mt19937& rng, const GraphPtr& g, std::size_t len) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(g->size()) - 1);
  std::vector<Gen> w(len);
  for (auto& a : w) a = pick(rng);
  return w;
}

inline Trace random_trace(std::mt19937& rng, const GraphPtr& g, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> pick_len(0, max_len);
  return Trace::from_letters(g, random_word(rng, g, pick_len(rng)));
}

}  // namespace testutil
