#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace oracle {

using txnet::NodeId;
using txnet::WeightedDigraph;

Dense Dense::from(const WeightedDigraph& g) {
  Dense d;
  d.n = g.node_count();
  d.adj.assign(d.n, std::vector<bool>(d.n, false));
  for (NodeId u = 0; u < d.n; ++u)
    for (const txnet::Neighbor& nb : g.out(u)) d.adj[u][nb.node] = true;
  return d;
}

Dense Dense::symmetrized_no_loops() const {
  Dense s;
  s.n = n;
  s.adj.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (adj[i][j] || adj[j][i])) {
        s.adj[i][j] = true;
        s.adj[j][i] = true;
      }
  return s;
}

std::vector<std::vector<int>> fw_distances(const Dense& d) {
  const int inf = 1 << 20;
  std::vector<std::vector<int>> dist(d.n, std::vector<int>(d.n, inf));
  for (std::size_t i = 0; i < d.n; ++i) dist[i][i] = 0;
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = 0; j < d.n; ++j)
      if (i != j && d.adj[i][j]) dist[i][j] = 1;
  for (std::size_t k = 0; k < d.n; ++k)
    for (std::size_t i = 0; i < d.n; ++i)
      for (std::size_t j = 0; j < d.n; ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
  for (auto& row : dist)
    for (int& v : row)
      if (v >= inf) v = kUnreachable;
  return dist;
}

namespace {

void walk_paths(const Dense& d, const std::vector<std::vector<int>>& dist, std::size_t v,
                std::vector<std::size_t>& path, PathCensus& census) {
  const std::size_t x = path.back();
  if (x == v) {
    census.total++;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) census.through[path[i]]++;
    return;
  }
  for (std::size_t w = 0; w < d.n; ++w) {
    if (w == x || !d.adj[x][w]) continue;
    if (dist[w][v] == kUnreachable || dist[x][v] == kUnreachable) continue;
    if (dist[w][v] != dist[x][v] - 1) continue;
    path.push_back(w);
    walk_paths(d, dist, v, path, census);
    path.pop_back();
  }
}

}  // namespace

PathCensus enumerate_shortest_paths(const Dense& d, const std::vector<std::vector<int>>& dist,
                                    std::size_t u, std::size_t v) {
  PathCensus census;
  census.through.assign(d.n, 0);
  if (dist[u][v] == kUnreachable) return census;
  std::vector<std::size_t> path{u};
  walk_paths(d, dist, v, path, census);
  return census;
}

std::vector<double> betweenness(const WeightedDigraph& g) {
  const Dense d = Dense::from(g);
  const auto dist = fw_distances(d);
  std::vector<double> result(d.n, 0.0);
  for (std::size_t u = 0; u < d.n; ++u) {
    for (std::size_t v = 0; v < d.n; ++v) {
      if (u == v || dist[u][v] == kUnreachable) continue;
      const PathCensus census = enumerate_shortest_paths(d, dist, u, v);
      for (std::size_t i = 0; i < d.n; ++i) {
        if (i == u || i == v || census.through[i] == 0) continue;
        result[i] += static_cast<double>(census.through[i]) / static_cast<double>(census.total);
      }
    }
  }
  return result;
}

std::vector<double> closeness_standard(const WeightedDigraph& g) {
  const Dense d = Dense::from(g);
  const auto dist = fw_distances(d);
  std::vector<double> result(d.n, 0.0);
  for (std::size_t i = 0; i < d.n; ++i) {
    double sum = 0.0, reach = 0.0;
    for (std::size_t j = 0; j < d.n; ++j) {
      if (j == i || dist[j][i] == kUnreachable) continue;
      sum += dist[j][i];
      reach += 1.0;
    }
    if (reach > 0.0 && sum > 0.0) result[i] = reach / sum;
  }
  return result;
}

std::vector<double> closeness_wf(const WeightedDigraph& g) {
  const Dense d = Dense::from(g);
  const auto dist = fw_distances(d);
  std::vector<double> result(d.n, 0.0);
  for (std::size_t i = 0; i < d.n; ++i) {
    double sum = 0.0, reach = 0.0;
    for (std::size_t j = 0; j < d.n; ++j) {
      if (j == i || dist[j][i] == kUnreachable) continue;
      sum += dist[j][i];
      reach += 1.0;
    }
    if (reach > 0.0 && sum > 0.0 && d.n > 1)
      result[i] = reach * reach / (static_cast<double>(d.n - 1) * sum);
  }
  return result;
}

Clustering clustering(const WeightedDigraph& g) {
  const Dense s = Dense::from(g).symmetrized_no_loops();
  Clustering result;
  result.per_node.assign(s.n, 0.0);
  for (std::size_t i = 0; i < s.n; ++i) {
    std::vector<std::size_t> nbrs;
    for (std::size_t j = 0; j < s.n; ++j)
      if (s.adj[i][j]) nbrs.push_back(j);
    const std::size_t k = nbrs.size();
    if (k < 2) continue;
    std::size_t triangles = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (s.adj[nbrs[a]][nbrs[b]]) ++triangles;
    result.per_node[i] =
        static_cast<double>(triangles) / (static_cast<double>(k) * (k - 1) / 2.0);
  }
  for (const double c : result.per_node) result.average += c;
  if (s.n > 0) result.average /= static_cast<double>(s.n);
  return result;
}

namespace {

// Connected components of a dense graph (as node sets, by smallest member).
std::vector<std::vector<std::size_t>> closure_components(const Dense& d) {
  const auto dist = fw_distances(d);
  std::vector<bool> assigned(d.n, false);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t i = 0; i < d.n; ++i) {
    if (assigned[i]) continue;
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < d.n; ++j)
      if (!assigned[j] && dist[i][j] != kUnreachable) {
        comp.push_back(j);
        assigned[j] = true;
      }
    comps.push_back(comp);
  }
  return comps;
}

}  // namespace

double avg_shortest_path(const WeightedDigraph& g) {
  const Dense s = Dense::from(g).symmetrized_no_loops();
  const auto comps = closure_components(s);
  std::vector<std::size_t> best;
  for (const auto& comp : comps)
    if (comp.size() > best.size()) best = comp;  // first max keeps smallest ids
  if (best.size() < 2) return 0.0;
  const auto dist = fw_distances(s);
  double sum = 0.0;
  for (const std::size_t i : best)
    for (const std::size_t j : best)
      if (i != j) sum += dist[i][j];
  return sum / (static_cast<double>(best.size()) * static_cast<double>(best.size() - 1));
}

Components components(const WeightedDigraph& g) {
  const Dense d = Dense::from(g);
  const auto dist = fw_distances(d);
  Components result;

  std::vector<bool> assigned(d.n, false);
  for (std::size_t i = 0; i < d.n; ++i) {
    if (assigned[i]) continue;
    std::size_t size = 0;
    for (std::size_t j = 0; j < d.n; ++j)
      if (!assigned[j] && dist[i][j] != kUnreachable && dist[j][i] != kUnreachable) {
        assigned[j] = true;
        ++size;
      }
    result.scc_count++;
    result.largest_scc = std::max(result.largest_scc, size);
  }

  const auto wccs = closure_components(Dense::from(g).symmetrized_no_loops());
  result.wcc_count = wccs.size();
  for (const auto& comp : wccs) result.largest_wcc = std::max(result.largest_wcc, comp.size());
  // Symmetrization drops self-loops, which cannot merge or split components.
  return result;
}

std::optional<double> assortativity(const WeightedDigraph& g) {
  std::int64_t m = 0;
  std::int64_t s_prod = 0, s_lin = 0, s_sq = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const txnet::Neighbor& nb : g.out(u)) {
      const std::int64_t ki = static_cast<std::int64_t>(g.out_degree(u));
      const std::int64_t kj = static_cast<std::int64_t>(g.in_degree(nb.node));
      s_prod += ki * kj;
      s_lin += ki + kj;
      s_sq += ki * ki + kj * kj;
      ++m;
    }
  }
  if (m < 2) return std::nullopt;
  const std::int64_t num = 4 * m * s_prod - s_lin * s_lin;
  const std::int64_t den = 2 * m * s_sq - s_lin * s_lin;
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> rich_club(const WeightedDigraph& g, std::int64_t k) {
  const Dense s = Dense::from(g).symmetrized_no_loops();
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < s.n; ++i) {
    std::int64_t deg = 0;
    for (std::size_t j = 0; j < s.n; ++j)
      if (s.adj[i][j]) ++deg;
    if (deg > k) members.push_back(i);
  }
  if (members.size() < 2) return std::nullopt;
  std::size_t edges = 0;
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (s.adj[members[a]][members[b]]) ++edges;
  const double nk = static_cast<double>(members.size());
  return 2.0 * static_cast<double>(edges) / (nk * (nk - 1.0));
}

double sp_kernel_delta(const WeightedDigraph& g1, const WeightedDigraph& g2) {
  const Dense d1 = Dense::from(g1), d2 = Dense::from(g2);
  const auto dist1 = fw_distances(d1), dist2 = fw_distances(d2);
  double sum = 0.0;
  for (std::size_t u = 0; u < d1.n; ++u)
    for (std::size_t v = 0; v < d1.n; ++v) {
      if (u == v || dist1[u][v] == kUnreachable) continue;
      for (std::size_t w = 0; w < d2.n; ++w)
        for (std::size_t z = 0; z < d2.n; ++z) {
          if (w == z || dist2[w][z] == kUnreachable) continue;
          if (g1.total_degree(static_cast<NodeId>(u)) != g2.total_degree(static_cast<NodeId>(w)))
            continue;
          if (g1.total_degree(static_cast<NodeId>(v)) != g2.total_degree(static_cast<NodeId>(z)))
            continue;
          if (dist1[u][v] != dist2[w][z]) continue;
          sum += 1.0;
        }
    }
  return sum;
}

WeightedDigraph random_digraph(txnet::Rng& rng, std::size_t max_nodes, bool allow_self_loops) {
  const std::size_t n = 1 + rng.index(max_nodes);
  const double edge_prob = 0.08 + 0.42 * rng.next_unit();
  std::vector<txnet::WeightedEdge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) {
        if (allow_self_loops && rng.next_unit() < 0.05)
          edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), 1.0});
        continue;
      }
      if (rng.next_unit() < edge_prob)
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v),
                         static_cast<double>(1 + rng.index(100)) / 8.0});
    }
  return txnet::build_graph(n, std::move(edges));
}

WeightedDigraph make_graph(std::size_t n,
                           const std::vector<std::tuple<int, int, double>>& arcs) {
  std::vector<txnet::WeightedEdge> edges;
  edges.reserve(arcs.size());
  for (const auto& [u, v, w] : arcs)
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
  return txnet::build_graph(n, std::move(edges));
}

}  // namespace oracle
