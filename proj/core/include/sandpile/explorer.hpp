#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sandpile/config.hpp"
#include "sandpile/dynamics.hpp"

namespace sandpile {

enum class ModelKind : std::uint8_t { Sspm, Psspm };

std::string_view model_name(ModelKind m);
ModelKind parse_model(std::string_view name);  // "sspm" | "psspm"

/// Edge annotation. Choice edges carry the rule picked; a forced parallel
/// move is stored once with Both (it stands for the pair of identically
/// routed Left/Right edges of the labeled multigraph).
enum class EdgeLabel : std::uint8_t { Left, Right, Both };

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t visited, std::size_t cap);

  std::size_t visited;
  std::size_t cap;
};

class CycleDetected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExploreOptions {
  std::size_t node_cap = 5'000'000;
};

/// The reachable state space from the single stack of n grains under one
/// model's global rule. Nodes are held in lexicographic order and edges
/// sorted by (src, dst, label), so equal inputs serialize identically.
struct TransitionDiagram {
  struct Edge {
    std::uint32_t src;
    std::uint32_t dst;
    EdgeLabel label;

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  ModelKind model = ModelKind::Psspm;
  Height grains = 0;
  std::vector<Configuration> nodes;
  std::vector<Edge> edges;
  std::uint32_t root = 0;
};

/// Breadth-first closure of the global rule from the initial stack.
/// Throws CapExceeded once more than opts.node_cap states are interned.
TransitionDiagram bfs_reachable(Height n, ModelKind model, const ExploreOptions& opts = {});

/// Sink nodes of the diagram, in lexicographic order. Verifies that every
/// sink satisfies is_fixed and throws std::logic_error otherwise.
std::vector<Configuration> fixed_points_of(const TransitionDiagram& d);

/// Some configuration reachable sequentially but not in parallel (the
/// lexicographically smallest, for reproducibility), or nullopt when the two
/// reachable sets coincide.
std::optional<Configuration> strict_inclusion_witness(Height n, const ExploreOptions& opts = {});

/// GraphViz rendering. Choice edges are labeled L/R; a forced move is drawn
/// as a single unlabeled edge. Fixed points get a double border.
std::string to_dot(const TransitionDiagram& d);

struct DiagramStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;  // stored edges; a forced move counts once
  std::size_t fixed_point_count = 0;
  std::size_t max_path_length = 0;  // longest root-to-sink path, in steps
};

/// Counts plus the longest path, computed in topological order. Throws
/// CycleDetected if the diagram is not acyclic (grain potential strictly
/// drops each step, so a cycle would mean a model bug).
DiagramStats diagram_stats(const TransitionDiagram& d);

}  // namespace sandpile
