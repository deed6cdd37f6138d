#include "txnet/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "txnet/rng.hpp"

namespace txnet::sampling {

namespace {

void validate(const WeightedDigraph& g, const SamplerConfig& cfg) {
  if (g.node_count() == 0) throw EmptyGraph("sample");
  if (cfg.target_nodes == 0) throw ConfigError("target_nodes must be > 0");
  if (cfg.target_nodes > g.node_count()) throw TargetTooLarge(cfg.target_nodes, g.node_count());
  if (!(cfg.p >= 0.0 && cfg.p < 1.0)) throw ConfigError("p must lie in [0, 1)");
  if (!(cfg.ff_forward_prob > 0.0 && cfg.ff_forward_prob < 1.0))
    throw ConfigError("ff_forward_prob must lie in (0, 1)");
  if (cfg.sb_depth < 1) throw ConfigError("sb_depth must be >= 1");
}

// Shared sampling state: visited set, first-visit order, traversed arcs.
struct Collector {
  explicit Collector(const WeightedDigraph& g, const SamplerConfig& cfg)
      : graph(g), config(cfg), visited(g.node_count(), false) {
    order.reserve(cfg.target_nodes);
  }

  const WeightedDigraph& graph;
  const SamplerConfig& config;
  std::vector<bool> visited;
  std::vector<NodeId> order;
  std::vector<std::pair<NodeId, NodeId>> traversed;
  std::uint64_t restarts = 0;
  std::uint64_t steps = 0;

  bool full() const { return order.size() >= config.target_nodes; }

  // Returns true when the node was new.
  bool visit(NodeId u) {
    if (visited[u]) return false;
    visited[u] = true;
    order.push_back(u);
    return true;
  }

  void cross(NodeId u, NodeId v) {
    if (config.subgraph_mode == SubgraphMode::TraversedEdges) traversed.push_back({u, v});
  }

  // Uniform over unvisited nodes (rejection; an unvisited node exists
  // whenever the sample is not full, since target_nodes <= node_count).
  NodeId fresh_node(Rng& rng) {
    for (;;) {
      const NodeId u = static_cast<NodeId>(rng.index(graph.node_count()));
      if (!visited[u]) return u;
    }
  }

  SampleResult finish() {
    SampleResult result;
    result.visited_order = order;
    result.node_map = WeightedDigraph::induced_order(order);
    result.restarts = restarts;
    result.steps_taken = steps;
    if (config.subgraph_mode == SubgraphMode::Induced) {
      result.subgraph = graph.induced_subgraph(order);
    } else {
      // Keep traversed arcs whose endpoints both survived, deduplicated,
      // with original collapsed weights.
      std::vector<NodeId> new_id(graph.node_count(), 0);
      for (std::size_t i = 0; i < result.node_map.size(); ++i)
        new_id[result.node_map[i]] = static_cast<NodeId>(i);
      std::sort(traversed.begin(), traversed.end());
      traversed.erase(std::unique(traversed.begin(), traversed.end()), traversed.end());
      std::vector<WeightedEdge> edges;
      edges.reserve(traversed.size());
      for (const auto& [u, v] : traversed) {
        if (!visited[u] || !visited[v]) continue;
        edges.push_back({new_id[u], new_id[v], graph.edge_weight(u, v)});
      }
      std::vector<std::string> labels;
      labels.reserve(result.node_map.size());
      for (const NodeId orig : result.node_map) labels.push_back(graph.label(orig));
      result.subgraph =
          build_graph(result.node_map.size(), std::move(edges), std::move(labels));
    }
    return result;
  }
};

// Random walk engine: RWFB for p > 0, the classic walk for p = 0. Deadlocked
// or stagnant walks continue from a fresh unvisited node.
SampleResult walk_sample(const WeightedDigraph& g, const SamplerConfig& cfg, double p) {
  Collector col(g, cfg);
  Rng rng(cfg.seed);
  const std::size_t stall_limit = stall_step_limit(g);

  NodeId current = static_cast<NodeId>(rng.index(g.node_count()));
  NodeId origin = current;
  col.visit(current);
  std::uint64_t last_new_step = 0;

  while (!col.full()) {
    const bool deadlock = g.out_degree(current) == 0;
    const bool stalled = col.steps - last_new_step > stall_limit;
    if (deadlock || stalled) {
      current = col.fresh_node(rng);
      origin = current;
      col.restarts++;
      col.visit(current);
      last_new_step = col.steps;
      continue;
    }
    col.steps++;
    if (p > 0.0 && rng.next_unit() < p) {
      // Fly-back event; no edge is crossed.
      if (cfg.restart_policy == RestartPolicy::RestartToStart) current = origin;
      continue;
    }
    auto nbrs = g.out(current);
    const NodeId next = nbrs[rng.index(nbrs.size())].node;
    col.cross(current, next);
    if (col.visit(next)) last_new_step = col.steps;
    current = next;
  }
  return col.finish();
}

}  // namespace

std::size_t stall_step_limit(const WeightedDigraph& g) {
  return std::max<std::size_t>(1000, g.node_count());
}

SampleResult sample_rwfb(const WeightedDigraph& g, const SamplerConfig& cfg) {
  validate(g, cfg);
  return walk_sample(g, cfg, cfg.p);
}

SampleResult sample_rws(const WeightedDigraph& g, const SamplerConfig& cfg) {
  validate(g, cfg);
  return walk_sample(g, cfg, 0.0);
}

SampleResult sample_rn(const WeightedDigraph& g, const SamplerConfig& cfg) {
  validate(g, cfg);
  Collector col(g, cfg);
  Rng rng(cfg.seed);
  std::vector<NodeId> ids(g.node_count());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  rng.partial_shuffle(ids, cfg.target_nodes);
  for (std::size_t i = 0; i < cfg.target_nodes; ++i) {
    col.visit(ids[i]);
    col.steps++;
  }
  return col.finish();
}

SampleResult sample_re(const WeightedDigraph& g, const SamplerConfig& cfg) {
  validate(g, cfg);
  Collector col(g, cfg);
  Rng rng(cfg.seed);

  // Uniform collapsed arcs without replacement until the endpoint set is
  // full; arcs run out on sparse graphs, in which case the remainder is
  // filled with fresh uniform nodes.
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (const Neighbor& nb : g.out(u)) arcs.push_back({u, nb.node});

  for (std::size_t drawn = 0; drawn < arcs.size() && !col.full(); ++drawn) {
    const std::size_t pick = drawn + rng.index(arcs.size() - drawn);
    std::swap(arcs[drawn], arcs[pick]);
    const auto [u, v] = arcs[drawn];
    col.steps++;
    col.visit(u);
    if (col.full()) break;
    col.visit(v);
    col.cross(u, v);
  }
  while (!col.full()) {
    col.visit(col.fresh_node(rng));
    col.restarts++;
  }
  return col.finish();
}

SampleResult sample_ff(const WeightedDigraph& g, const SamplerConfig& cfg) {
  validate(g, cfg);
  Collector col(g, cfg);
  Rng rng(cfg.seed);

  std::vector<NodeId> queue;
  std::size_t head = 0;
  std::vector<NodeId> candidates;

  while (!col.full()) {
    if (head >= queue.size()) {
      // Fire died out (or first seed): ignite a fresh node.
      const NodeId seed_node = col.fresh_node(rng);
      if (!queue.empty()) col.restarts++;
      col.visit(seed_node);
      queue.push_back(seed_node);
      if (col.full()) break;
    }
    const NodeId u = queue[head++];
    // Geometric number of out-burns with mean p/(1-p), drawn as a Bernoulli
    // chain so the distribution is exact.
    std::size_t burns = 0;
    while (rng.next_unit() < cfg.ff_forward_prob) ++burns;
    col.steps++;
    if (burns == 0) continue;
    candidates.clear();
    for (const Neighbor& nb : g.out(u))
      if (!col.visited[nb.node]) candidates.push_back(nb.node);
    rng.partial_shuffle(candidates, std::min(burns, candidates.size()));
    for (std::size_t i = 0; i < std::min(burns, candidates.size()) && !col.full(); ++i) {
      const NodeId v = candidates[i];
      col.visit(v);
      col.cross(u, v);
      queue.push_back(v);
    }
  }
  return col.finish();
}

SampleResult sample_sb(const WeightedDigraph& g, const SamplerConfig& cfg) {
  validate(g, cfg);
  Collector col(g, cfg);
  Rng rng(cfg.seed);

  std::vector<NodeId> frontier;
  std::vector<std::pair<NodeId, NodeId>> expansion;  // (parent, child) of next frontier
  while (!col.full()) {
    const NodeId seed_node = col.fresh_node(rng);
    if (!col.order.empty()) col.restarts++;
    col.visit(seed_node);
    if (col.full()) break;
    frontier.assign(1, seed_node);

    for (std::size_t depth = 0; depth < cfg.sb_depth && !frontier.empty() && !col.full();
         ++depth) {
      expansion.clear();
      for (const NodeId u : frontier) {
        for (const Neighbor& nb : g.out(u)) {
          if (col.visited[nb.node]) continue;
          bool pending = false;
          for (const auto& [parent, child] : expansion)
            if (child == nb.node) {
              pending = true;
              break;
            }
          if (!pending) expansion.push_back({u, nb.node});
        }
        col.steps++;
      }
      const std::size_t room = cfg.target_nodes - col.order.size();
      if (expansion.size() > room) rng.partial_shuffle(expansion, room);
      frontier.clear();
      for (std::size_t i = 0; i < std::min(expansion.size(), room); ++i) {
        const auto [parent, child] = expansion[i];
        col.visit(child);
        col.cross(parent, child);
        frontier.push_back(child);
      }
    }
  }
  return col.finish();
}

SampleResult sample(const WeightedDigraph& g, const SamplerConfig& cfg) {
  switch (cfg.method) {
    case Method::Rwfb: return sample_rwfb(g, cfg);
    case Method::Rws: return sample_rws(g, cfg);
    case Method::Rn: return sample_rn(g, cfg);
    case Method::Re: return sample_re(g, cfg);
    case Method::Ff: return sample_ff(g, cfg);
    case Method::Sb: return sample_sb(g, cfg);
  }
  throw ConfigError("unknown sampling method");
}

const char* method_name(Method method) {
  switch (method) {
    case Method::Rwfb: return "rwfb";
    case Method::Rws: return "rws";
    case Method::Rn: return "rn";
    case Method::Re: return "re";
    case Method::Ff: return "ff";
    case Method::Sb: return "sb";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "rwfb") return Method::Rwfb;
  if (name == "rws") return Method::Rws;
  if (name == "rn") return Method::Rn;
  if (name == "re") return Method::Re;
  if (name == "ff") return Method::Ff;
  if (name == "sb") return Method::Sb;
  throw ConfigError("unknown sampling method '" + name + "'");
}

}  // namespace txnet::sampling
