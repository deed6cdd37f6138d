#include "txnet/reference_graphs.hpp"

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "txnet/rng.hpp"

namespace txnet::refgraph {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

WeightedDigraph from_undirected_pairs(std::size_t n,
                                      const std::vector<std::pair<NodeId, NodeId>>& pairs,
                                      const std::vector<double>* weights = nullptr) {
  std::vector<WeightedEdge> edges;
  edges.reserve(pairs.size() * 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double w = weights ? (*weights)[i] : 1.0;
    edges.push_back({pairs[i].first, pairs[i].second, w});
    edges.push_back({pairs[i].second, pairs[i].first, w});
  }
  return build_graph(n, std::move(edges), {}, /*symmetric=*/true);
}

}  // namespace

WeightedDigraph er_random(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::size_t max_m = n < 2 ? 0 : n * (n - 1) / 2;
  if (m > max_m) throw TooManyEdges(m, max_m);

  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(m);

  if (m == 0) return from_undirected_pairs(n, pairs);

  if (m * 10 >= max_m * 7) {
    // Dense request: draw the complement by rejection, then enumerate.
    std::unordered_set<std::uint64_t> excluded;
    excluded.reserve((max_m - m) * 2);
    while (excluded.size() < max_m - m) {
      NodeId a = static_cast<NodeId>(rng.index(n));
      NodeId b = static_cast<NodeId>(rng.index(n - 1));
      if (b >= a) ++b;
      if (a > b) std::swap(a, b);
      excluded.insert(pair_key(a, b));
    }
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b)
        if (!excluded.count(pair_key(a, b))) pairs.push_back({a, b});
  } else {
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(m * 2);
    while (pairs.size() < m) {
      NodeId a = static_cast<NodeId>(rng.index(n));
      NodeId b = static_cast<NodeId>(rng.index(n - 1));
      if (b >= a) ++b;
      if (a > b) std::swap(a, b);
      if (chosen.insert(pair_key(a, b)).second) pairs.push_back({a, b});
    }
  }
  return from_undirected_pairs(n, pairs);
}

WeightedDigraph ring_lattice(std::size_t n, std::size_t mean_degree, std::uint64_t /*seed*/) {
  if (mean_degree % 2 != 0) throw InvalidDegree("ring lattice degree must be even");
  if (n > 0 && mean_degree >= n)
    throw InvalidDegree("ring lattice degree must be smaller than the node count");

  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(n * mean_degree / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 1; d <= mean_degree / 2; ++d)
      pairs.push_back({static_cast<NodeId>(i), static_cast<NodeId>((i + d) % n)});
  return from_undirected_pairs(n, pairs);
}

std::size_t default_rewire_attempts(const WeightedDigraph& g) {
  const std::size_t m =
      g.is_symmetric() ? (g.edge_count() - g.self_loop_count()) / 2 : g.edge_count();
  return 100 * m;
}

namespace {

WeightedDigraph rewire_undirected(const WeightedDigraph& g, std::size_t attempts, Rng& rng) {
  // Work on unordered pairs; self-loops (should not occur in symmetric
  // inputs built by projection) are kept fixed.
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<double> weights;
  std::vector<std::pair<NodeId, NodeId>> loops;
  std::vector<double> loop_weights;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const Neighbor& nb : g.out(u)) {
      if (nb.node == u) {
        loops.push_back({u, u});
        loop_weights.push_back(nb.weight);
      } else if (u < nb.node) {
        pairs.push_back({u, nb.node});
        weights.push_back(nb.weight);
      }
    }
  }
  std::unordered_set<std::uint64_t> present;
  present.reserve(pairs.size() * 2);
  for (const auto& [a, b] : pairs) present.insert(pair_key(a, b));

  auto canon = [](NodeId a, NodeId b) {
    return a < b ? std::pair<NodeId, NodeId>{a, b} : std::pair<NodeId, NodeId>{b, a};
  };

  for (std::size_t t = 0; t < attempts && pairs.size() >= 2; ++t) {
    const std::size_t e1 = rng.index(pairs.size());
    const std::size_t e2 = rng.index(pairs.size());
    if (e1 == e2) continue;
    auto [a, b] = pairs[e1];
    auto [c, d] = pairs[e2];
    if (rng.bernoulli(0.5)) std::swap(c, d);
    // Proposed: {a, d} and {c, b}.
    if (a == d || c == b) continue;
    const auto p1 = canon(a, d);
    const auto p2 = canon(c, b);
    if (p1 == p2) continue;
    if (present.count(pair_key(p1.first, p1.second)) ||
        present.count(pair_key(p2.first, p2.second)))
      continue;
    present.erase(pair_key(pairs[e1].first, pairs[e1].second));
    present.erase(pair_key(pairs[e2].first, pairs[e2].second));
    present.insert(pair_key(p1.first, p1.second));
    present.insert(pair_key(p2.first, p2.second));
    pairs[e1] = p1;
    pairs[e2] = p2;
  }

  std::vector<WeightedEdge> edges;
  edges.reserve(pairs.size() * 2 + loops.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    edges.push_back({pairs[i].first, pairs[i].second, weights[i]});
    edges.push_back({pairs[i].second, pairs[i].first, weights[i]});
  }
  for (std::size_t i = 0; i < loops.size(); ++i)
    edges.push_back({loops[i].first, loops[i].second, loop_weights[i]});

  std::vector<std::string> labels;
  if (g.has_labels())
    for (NodeId u = 0; u < g.node_count(); ++u) labels.push_back(g.label(u));
  return build_graph(g.node_count(), std::move(edges), std::move(labels), true);
}

WeightedDigraph rewire_directed(const WeightedDigraph& g, std::size_t attempts, Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> arcs;
  std::vector<double> weights;
  arcs.reserve(g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const Neighbor& nb : g.out(u)) {
      arcs.push_back({u, nb.node});
      weights.push_back(nb.weight);
    }
  }
  std::unordered_set<std::uint64_t> present;
  present.reserve(arcs.size() * 2);
  for (const auto& [a, b] : arcs) present.insert(pair_key(a, b));

  for (std::size_t t = 0; t < attempts && arcs.size() >= 2; ++t) {
    const std::size_t e1 = rng.index(arcs.size());
    const std::size_t e2 = rng.index(arcs.size());
    if (e1 == e2) continue;
    const auto [a, b] = arcs[e1];
    const auto [c, d] = arcs[e2];
    // Proposed: a->d and c->b.
    if (a == d || c == b) continue;
    if ((a == c && d == b)) continue;
    if (present.count(pair_key(a, d)) || present.count(pair_key(c, b))) continue;
    present.erase(pair_key(a, b));
    present.erase(pair_key(c, d));
    present.insert(pair_key(a, d));
    present.insert(pair_key(c, b));
    arcs[e1] = {a, d};
    arcs[e2] = {c, b};
  }

  std::vector<WeightedEdge> edges;
  edges.reserve(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i)
    edges.push_back({arcs[i].first, arcs[i].second, weights[i]});
  std::vector<std::string> labels;
  if (g.has_labels())
    for (NodeId u = 0; u < g.node_count(); ++u) labels.push_back(g.label(u));
  return build_graph(g.node_count(), std::move(edges), std::move(labels), false);
}

}  // namespace

WeightedDigraph degree_preserving_rewire(const WeightedDigraph& g, std::size_t attempts,
                                         std::uint64_t seed) {
  if (g.edge_count() < 2) throw ConfigError("rewiring needs at least 2 edges");
  Rng rng(seed);
  return g.is_symmetric() ? rewire_undirected(g, attempts, rng)
                          : rewire_directed(g, attempts, rng);
}

WeightedDigraph synthetic_scale_free(std::size_t n, std::size_t attach_m, std::uint64_t seed) {
  if (attach_m < 1) throw ConfigError("attach_m must be >= 1");
  if (n < attach_m + 1) throw ConfigError("need at least attach_m + 1 nodes");

  Rng rng(seed);
  std::vector<WeightedEdge> arcs;
  // Endpoint multiset: each node appears once per incident edge, which makes
  // uniform draws from it degree-proportional.
  std::vector<NodeId> endpoints;

  auto add_edge = [&](NodeId a, NodeId b) {
    // Transaction-like orientation mix: most fund flows are one-way, some
    // pairs trade in both directions.
    const double u = rng.next_unit();
    if (u < kOneWayShare) {
      arcs.push_back({a, b, 1.0});
    } else if (u < 2.0 * kOneWayShare) {
      arcs.push_back({b, a, 1.0});
    } else {
      arcs.push_back({a, b, 1.0});
      arcs.push_back({b, a, 1.0});
    }
    endpoints.push_back(a);
    endpoints.push_back(b);
  };

  const std::size_t m0 = attach_m + 1;
  for (NodeId a = 0; a < m0; ++a)
    for (NodeId b = a + 1; b < m0; ++b) add_edge(a, b);

  std::vector<NodeId> targets;
  for (std::size_t v = m0; v < n; ++v) {
    targets.clear();
    while (targets.size() < attach_m) {
      const NodeId t = endpoints[rng.index(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (const NodeId t : targets) add_edge(t, static_cast<NodeId>(v));
  }
  return build_graph(n, std::move(arcs));
}

}  // namespace txnet::refgraph
