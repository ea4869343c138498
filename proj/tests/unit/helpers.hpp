#pragma once

#include <random>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sandpile/config.hpp"
#include "sandpile/dynamics.hpp"
#include "sandpile/explorer.hpp"

namespace testutil {

using namespace sandpile;

inline Configuration cfg(std::string_view text) { return parse_config(text); }

/// Left-right reflection: column i goes to -i.
inline Configuration mirrored(const Configuration& c) {
  std::vector<Height> rev(c.heights().rbegin(), c.heights().rend());
  return Configuration::from_heights(-(c.end_col() - 1), std::move(rev));
}

/// Independent regular-language oracle for the weakly-close pattern. The
/// product path decides by prefix sums; this one runs a backtracking regex
/// over the translated string. The all-zero difference reads as the empty
/// word, which belongs to the starred language.
inline bool regex_weakly_close(std::span<const Height> values) {
  static const std::regex pattern("(z*mz*pz*)*");
  std::string text;
  bool nonzero = false;
  for (Height v : values) {
    text += v == 0 ? 'z' : (v == -1 ? 'm' : 'p');
    if (v != 0) nonzero = true;
  }
  if (!nonzero) return true;
  return std::regex_match(text, pattern);
}

/// Random canonical configuration for round-trip and relation properties.
inline Configuration random_config(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> width(0, 6);
  std::uniform_int_distribution<Height> height(0, 4);
  std::uniform_int_distribution<Column> origin(-5, 5);
  const int w = width(rng);
  std::vector<Height> heights(static_cast<std::size_t>(w));
  for (auto& h : heights) h = height(rng);
  return Configuration::from_heights(origin(rng), std::move(heights));
}

/// Preferred step read directly off the diagram edges: follow the edge
/// carrying the preferred label if one exists, any edge otherwise, stay put
/// on a sink. The test-side definition that step_left/step_right must match.
inline Configuration edge_step(const TransitionDiagram& d, std::uint32_t id, Rule prefer) {
  const EdgeLabel preferred = prefer == Rule::Left ? EdgeLabel::Left : EdgeLabel::Right;
  const TransitionDiagram::Edge* fallback = nullptr;
  for (const auto& e : d.edges) {
    if (e.src != id) continue;
    if (e.label == preferred || e.label == EdgeLabel::Both) return d.nodes[e.dst];
    fallback = &e;
  }
  return fallback ? d.nodes[fallback->dst] : d.nodes[id];
}

/// Distinct successor states per node (collapses edge labels).
inline std::vector<std::vector<std::uint32_t>> state_adjacency(const TransitionDiagram& d) {
  std::vector<std::vector<std::uint32_t>> adj(d.nodes.size());
  for (const auto& e : d.edges) {
    auto& row = adj[e.src];
    if (row.empty() || row.back() != e.dst) row.push_back(e.dst);
  }
  return adj;
}

/// Visits every root-to-sink state path of the diagram.
template <typename Visit>
void for_each_path(const TransitionDiagram& d, Visit&& visit) {
  const auto adj = state_adjacency(d);
  std::vector<std::uint32_t> path{d.root};
  auto dfs = [&](auto&& self, std::uint32_t u) -> void {
    if (adj[u].empty()) {
      visit(std::span<const std::uint32_t>(path));
      return;
    }
    for (std::uint32_t v : adj[u]) {
      path.push_back(v);
      self(self, v);
      path.pop_back();
    }
  };
  dfs(dfs, d.root);
}

}  // namespace testutil
