#include "sandpile/explorer.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace sandpile {

std::string_view model_name(ModelKind m) {
  return m == ModelKind::Sspm ? "sspm" : "psspm";
}

ModelKind parse_model(std::string_view name) {
  if (name == "sspm") return ModelKind::Sspm;
  if (name == "psspm") return ModelKind::Psspm;
  throw ParseError("unknown model '" + std::string(name) + "' (expected sspm or psspm)");
}

CapExceeded::CapExceeded(std::size_t visited_, std::size_t cap_)
    : std::runtime_error("state-space cap exceeded: visited " + std::to_string(visited_) +
                         " states, cap " + std::to_string(cap_)),
      visited(visited_),
      cap(cap_) {}

TransitionDiagram bfs_reachable(Height n, ModelKind model, const ExploreOptions& opts) {
  if (n < 0) throw std::invalid_argument("grain count must be nonnegative");

  std::unordered_map<Configuration, std::uint32_t> index;
  std::vector<Configuration> nodes;
  std::vector<TransitionDiagram::Edge> edges;
  std::deque<std::uint32_t> frontier;

  auto intern = [&](Configuration c) -> std::uint32_t {
    auto [it, fresh] = index.try_emplace(std::move(c), static_cast<std::uint32_t>(nodes.size()));
    if (fresh) {
      if (nodes.size() >= opts.node_cap) throw CapExceeded(nodes.size() + 1, opts.node_cap);
      nodes.push_back(it->first);
      frontier.push_back(it->second);
    }
    return it->second;
  };

  intern(Configuration::single(n));

  while (!frontier.empty()) {
    const std::uint32_t id = frontier.front();
    frontier.pop_front();
    const Configuration cur = nodes[id];  // copy: nodes may grow while expanding

    if (model == ModelKind::Psspm) {
      if (is_fixed(cur)) continue;
      if (choice_column(cur)) {
        const std::uint32_t l = intern(psspm_step(cur, Rule::Left));
        const std::uint32_t r = intern(psspm_step(cur, Rule::Right));
        edges.push_back({id, l, EdgeLabel::Left});
        edges.push_back({id, r, EdgeLabel::Right});
      } else {
        const std::uint32_t t = intern(psspm_step(cur, Rule::Left));
        edges.push_back({id, t, EdgeLabel::Both});
      }
    } else {
      for (const SequentialMove& mv : sspm_successors(cur)) {
        const std::uint32_t t = intern(mv.target);
        edges.push_back({id, t, mv.rule == Rule::Left ? EdgeLabel::Left : EdgeLabel::Right});
      }
    }
  }

  // renumber nodes lexicographically so serialized output is canonical
  std::vector<std::uint32_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return lex_less(nodes[a], nodes[b]);
  });
  std::vector<std::uint32_t> rank(nodes.size());
  for (std::uint32_t k = 0; k < order.size(); ++k) rank[order[k]] = k;

  TransitionDiagram d;
  d.model = model;
  d.grains = n;
  d.nodes.resize(nodes.size());
  for (std::uint32_t old = 0; old < nodes.size(); ++old)
    d.nodes[rank[old]] = std::move(nodes[old]);
  d.edges.reserve(edges.size());
  for (const auto& e : edges) d.edges.push_back({rank[e.src], rank[e.dst], e.label});
  std::sort(d.edges.begin(), d.edges.end(), [](const auto& a, const auto& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    return static_cast<int>(a.label) < static_cast<int>(b.label);
  });
  d.edges.erase(std::unique(d.edges.begin(), d.edges.end()), d.edges.end());
  d.root = rank[0];
  return d;
}

std::vector<Configuration> fixed_points_of(const TransitionDiagram& d) {
  std::vector<bool> has_out(d.nodes.size(), false);
  for (const auto& e : d.edges) has_out[e.src] = true;
  std::vector<Configuration> sinks;
  for (std::uint32_t id = 0; id < d.nodes.size(); ++id) {
    if (!has_out[id]) {
      if (!is_fixed(d.nodes[id]))
        throw std::logic_error("diagram sink is not a fixed point: " + format_config(d.nodes[id]));
      sinks.push_back(d.nodes[id]);
    }
  }
  return sinks;
}

std::optional<Configuration> strict_inclusion_witness(Height n, const ExploreOptions& opts) {
  const TransitionDiagram par = bfs_reachable(n, ModelKind::Psspm, opts);
  const TransitionDiagram seq = bfs_reachable(n, ModelKind::Sspm, opts);
  std::unordered_set<Configuration> parallel(par.nodes.begin(), par.nodes.end());
  for (const Configuration& c : seq.nodes)  // lex-ascending
    if (!parallel.contains(c)) return c;
  return std::nullopt;
}

std::string to_dot(const TransitionDiagram& d) {
  std::vector<bool> has_out(d.nodes.size(), false);
  for (const auto& e : d.edges) has_out[e.src] = true;

  std::string out;
  out += "digraph ";
  out += model_name(d.model);
  out += "_";
  out += std::to_string(d.grains);
  out += " {\n";
  out += "  rankdir=TB;\n";
  out += "  node [shape=box, fontname=\"monospace\"];\n";
  for (std::uint32_t id = 0; id < d.nodes.size(); ++id) {
    out += "  n" + std::to_string(id) + " [label=\"" + format_config(d.nodes[id]) + "\"";
    if (!has_out[id]) out += ", peripheries=2";
    out += "];\n";
  }
  for (const auto& e : d.edges) {
    out += "  n" + std::to_string(e.src) + " -> n" + std::to_string(e.dst);
    if (e.label != EdgeLabel::Both) {
      out += " [label=\"";
      out += rule_char(e.label == EdgeLabel::Left ? Rule::Left : Rule::Right);
      out += "\"]";
    }
    out += ";\n";
  }
  out += "}\n";
  return out;
}

DiagramStats diagram_stats(const TransitionDiagram& d) {
  DiagramStats s;
  s.node_count = d.nodes.size();
  s.edge_count = d.edges.size();

  std::vector<std::uint32_t> indegree(d.nodes.size(), 0);
  for (const auto& e : d.edges) ++indegree[e.dst];

  // edges are sorted by src; build offsets for adjacency scans
  std::vector<std::size_t> first(d.nodes.size() + 1, d.edges.size());
  for (std::size_t k = d.edges.size(); k-- > 0;) first[d.edges[k].src] = k;
  for (std::size_t id = d.nodes.size(); id-- > 0;)
    if (first[id] == d.edges.size()) first[id] = first[id + 1];

  std::vector<std::uint32_t> topo;
  topo.reserve(d.nodes.size());
  for (std::uint32_t id = 0; id < d.nodes.size(); ++id)
    if (indegree[id] == 0) topo.push_back(id);
  for (std::size_t head = 0; head < topo.size(); ++head) {
    const std::uint32_t u = topo[head];
    for (std::size_t k = first[u]; k < first[u + 1]; ++k)
      if (--indegree[d.edges[k].dst] == 0) topo.push_back(d.edges[k].dst);
  }
  if (topo.size() != d.nodes.size())
    throw CycleDetected("transition diagram contains a cycle");

  std::vector<std::int64_t> dist(d.nodes.size(), -1);
  dist[d.root] = 0;
  for (std::uint32_t u : topo) {
    if (dist[u] < 0) continue;
    for (std::size_t k = first[u]; k < first[u + 1]; ++k) {
      const std::uint32_t v = d.edges[k].dst;
      dist[v] = std::max(dist[v], dist[u] + 1);
    }
  }
  for (std::uint32_t id = 0; id < d.nodes.size(); ++id) {
    if (first[id] == first[id + 1]) {  // sink
      ++s.fixed_point_count;
      if (dist[id] > static_cast<std::int64_t>(s.max_path_length))
        s.max_path_length = static_cast<std::size_t>(dist[id]);
    }
  }
  return s;
}

}  // namespace sandpile
