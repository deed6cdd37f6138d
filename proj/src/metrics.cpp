#include "txnet/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "txnet/parallel.hpp"
#include "txnet/reference_graphs.hpp"
#include "txnet/rng.hpp"

namespace txnet::metrics {

namespace {

constexpr std::int32_t kUnreached = -1;

// Forward BFS over hop counts; returns the number of reached nodes
// (source included). dist must be node_count long.
std::size_t bfs_forward(const WeightedDigraph& g, NodeId source, std::vector<std::int32_t>& dist,
                        std::vector<NodeId>& order) {
  std::fill(dist.begin(), dist.end(), kUnreached);
  order.clear();
  dist[source] = 0;
  order.push_back(source);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeId u = order[head];
    for (const Neighbor& nb : g.out(u)) {
      if (dist[nb.node] == kUnreached) {
        dist[nb.node] = dist[u] + 1;
        order.push_back(nb.node);
      }
    }
  }
  return order.size();
}

std::vector<NodeId> sample_distinct_sorted(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  Rng rng(seed);
  rng.partial_shuffle(ids, count);
  ids.resize(std::min(count, n));
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::size_t betweenness_block_cap(std::size_t n) {
  // Keep per-block partial vectors (8 bytes per node each) under ~200 MB.
  const std::size_t budget = (200ull << 20) / (8 * std::max<std::size_t>(n, 1));
  return std::clamp<std::size_t>(budget, 4, 256);
}

}  // namespace

DegreeDistribution degree_distribution(const WeightedDigraph& g, DegreeMode mode) {
  if (g.node_count() == 0) throw EmptyGraph("degree_distribution");
  std::map<std::int64_t, std::int64_t> counts;
  for (NodeId u = 0; u < g.node_count(); ++u)
    counts[static_cast<std::int64_t>(degree(g, u, mode))]++;

  DegreeDistribution dist;
  dist.mode = mode;
  const double n = static_cast<double>(g.node_count());
  for (const auto& [k, c] : counts) {
    dist.support.push_back(k);
    dist.counts.push_back(c);
    dist.pmf.push_back(static_cast<double>(c) / n);
  }
  return dist;
}

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q >= 1.0)) throw ConfigError("hurwitz_zeta requires s > 1, q >= 1");
  // Euler-Maclaurin: direct terms plus integral, midpoint and Bernoulli
  // corrections at a = q + N.
  constexpr int kDirect = 14;
  double sum = 0.0;
  for (int k = 0; k < kDirect; ++k) sum += std::pow(q + k, -s);
  const double a = q + kDirect;
  sum += std::pow(a, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(a, -s);
  const double t1 = s * std::pow(a, -s - 1.0) / 12.0;
  const double t2 = s * (s + 1.0) * (s + 2.0) * std::pow(a, -s - 3.0) / 720.0;
  const double t3 =
      s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * std::pow(a, -s - 5.0) / 30240.0;
  return sum + t1 - t2 + t3;
}

namespace {

constexpr std::size_t kMinTailObservations = 50;
constexpr std::size_t kMaxXminCandidates = 200;
constexpr std::size_t kMaxKsEvaluations = 512;

struct TailView {
  std::vector<std::int64_t> values;      // distinct degrees >= 1, ascending
  std::vector<std::int64_t> counts;      // per distinct value
  std::vector<std::int64_t> suffix_n;    // observations at or above values[i]
  std::vector<double> suffix_log_sum;    // sum of count * ln(value) from i on
};

double mle_alpha(const TailView& tail, std::size_t from, std::int64_t xmin) {
  const double n = static_cast<double>(tail.suffix_n[from]);
  const double log_sum = tail.suffix_log_sum[from];
  auto neg_log_lik = [&](double alpha) {
    return n * std::log(hurwitz_zeta(alpha, static_cast<double>(xmin))) + alpha * log_sum;
  };
  // Golden-section minimization; the discrete power-law likelihood is
  // unimodal in alpha.
  double lo = 1.0001, hi = 12.0;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = neg_log_lik(x1), f2 = neg_log_lik(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-10; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = neg_log_lik(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = neg_log_lik(x2);
    }
  }
  return (lo + hi) / 2.0;
}

double tail_ks(const TailView& tail, std::size_t from, std::int64_t xmin, double alpha) {
  const double n_tail = static_cast<double>(tail.suffix_n[from]);
  const double z_min = hurwitz_zeta(alpha, static_cast<double>(xmin));
  const std::size_t points = tail.values.size() - from;
  const std::size_t step = std::max<std::size_t>(1, points / kMaxKsEvaluations);
  double d = 0.0;
  std::int64_t cum = 0;
  std::size_t next_eval = from;
  for (std::size_t i = from; i < tail.values.size(); ++i) {
    cum += tail.counts[i];
    if (i == next_eval || i + 1 == tail.values.size()) {
      const double emp = static_cast<double>(cum) / n_tail;
      const double fit =
          1.0 - hurwitz_zeta(alpha, static_cast<double>(tail.values[i]) + 1.0) / z_min;
      d = std::max(d, std::abs(emp - fit));
      next_eval += step;
    }
  }
  return d;
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<std::int64_t>& observations) {
  TailView tail;
  {
    std::vector<std::int64_t> vals;
    vals.reserve(observations.size());
    for (std::int64_t v : observations)
      if (v >= 1) vals.push_back(v);
    std::sort(vals.begin(), vals.end());
    for (std::size_t i = 0; i < vals.size();) {
      std::size_t j = i;
      while (j < vals.size() && vals[j] == vals[i]) ++j;
      tail.values.push_back(vals[i]);
      tail.counts.push_back(static_cast<std::int64_t>(j - i));
      i = j;
    }
  }
  const std::size_t distinct = tail.values.size();
  tail.suffix_n.assign(distinct + 1, 0);
  tail.suffix_log_sum.assign(distinct + 1, 0.0);
  for (std::size_t i = distinct; i-- > 0;) {
    tail.suffix_n[i] = tail.suffix_n[i + 1] + tail.counts[i];
    tail.suffix_log_sum[i] =
        tail.suffix_log_sum[i + 1] +
        static_cast<double>(tail.counts[i]) * std::log(static_cast<double>(tail.values[i]));
  }

  // Candidate xmin values: distinct degrees with enough tail mass and at
  // least two distinct tail values, thinned to a bounded set.
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i + 1 < distinct; ++i)
    if (static_cast<std::size_t>(tail.suffix_n[i]) >= kMinTailObservations) candidates.push_back(i);
  if (candidates.empty())
    throw InsufficientData(
        "power-law fit needs >= 50 observations above some threshold with >= 2 distinct values");
  if (candidates.size() > kMaxXminCandidates) {
    std::vector<std::size_t> thinned;
    const double stride =
        static_cast<double>(candidates.size() - 1) / static_cast<double>(kMaxXminCandidates - 1);
    for (std::size_t j = 0; j < kMaxXminCandidates; ++j)
      thinned.push_back(candidates[static_cast<std::size_t>(j * stride + 0.5)]);
    thinned.erase(std::unique(thinned.begin(), thinned.end()), thinned.end());
    candidates = std::move(thinned);
  }

  PowerLawFit best;
  double best_ks = std::numeric_limits<double>::infinity();
  for (std::size_t idx : candidates) {
    const std::int64_t xmin = tail.values[idx];
    const double alpha = mle_alpha(tail, idx, xmin);
    const double ks = tail_ks(tail, idx, xmin, alpha);
    if (ks < best_ks) {
      best_ks = ks;
      best = {alpha, xmin, ks, static_cast<std::size_t>(tail.suffix_n[idx])};
    }
  }
  return best;
}

PowerLawFit fit_power_law(const DegreeDistribution& dist) {
  std::vector<std::int64_t> obs;
  for (std::size_t i = 0; i < dist.support.size(); ++i)
    for (std::int64_t c = 0; c < dist.counts[i]; ++c) obs.push_back(dist.support[i]);
  return fit_power_law(obs);
}

ClusteringResult clustering(const WeightedDigraph& g) {
  const WeightedDigraph proj = undirected_projection(g);
  const std::size_t n = proj.node_count();
  ClusteringResult result;
  result.per_node.assign(n, 0.0);
  if (n == 0) return result;

  std::vector<bool> marked(n, false);
  double total = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    const std::size_t k = proj.out_degree(u);
    if (k < 2) continue;
    for (const Neighbor& nb : proj.out(u)) marked[nb.node] = true;
    std::size_t wedge_hits = 0;  // ordered neighbor pairs that are adjacent
    for (const Neighbor& nb : proj.out(u))
      for (const Neighbor& nb2 : proj.out(nb.node))
        if (nb2.node != u && marked[nb2.node]) ++wedge_hits;
    for (const Neighbor& nb : proj.out(u)) marked[nb.node] = false;
    result.per_node[u] =
        static_cast<double>(wedge_hits) / (static_cast<double>(k) * static_cast<double>(k - 1));
    total += result.per_node[u];
  }
  result.average = total / static_cast<double>(n);
  return result;
}

namespace {

// Largest-WCC member list of a symmetric graph, ascending ids.
std::vector<NodeId> largest_component_members(const WeightedDigraph& sym) {
  ComponentStats comps = connected_components(sym);
  NodeId target = 0;
  std::vector<std::size_t> sizes;
  for (NodeId u = 0; u < sym.node_count(); ++u) {
    if (comps.wcc_id[u] >= sizes.size()) sizes.resize(comps.wcc_id[u] + 1, 0);
    sizes[comps.wcc_id[u]]++;
  }
  std::size_t best = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c)
    if (sizes[c] > best) {
      best = sizes[c];
      target = static_cast<NodeId>(c);
    }
  std::vector<NodeId> members;
  members.reserve(best);
  for (NodeId u = 0; u < sym.node_count(); ++u)
    if (comps.wcc_id[u] == target) members.push_back(u);
  return members;
}

}  // namespace

AvgPathResult avg_shortest_path(const WeightedDigraph& g, const Approx& approx,
                                bool restrict_to_lwcc) {
  if (g.node_count() == 0) throw EmptyGraph("avg_shortest_path");
  WeightedDigraph proj = undirected_projection(g);
  WeightedDigraph domain;
  if (restrict_to_lwcc) {
    std::vector<NodeId> members = largest_component_members(proj);
    domain = proj.induced_subgraph(members);
  } else {
    domain = std::move(proj);
  }
  const std::size_t n = domain.node_count();
  if (n < 2)
    throw InsufficientData("average shortest-path length needs >= 2 connected nodes");
  if (approx.exact && n > kExactNodeCap) throw GraphTooLargeForExact(n, kExactNodeCap);

  std::vector<NodeId> sources;
  if (approx.exact) {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), NodeId{0});
  } else {
    if (approx.sources == 0) throw ConfigError("pivot mode needs at least one source");
    sources = sample_distinct_sorted(n, approx.sources, approx.seed);
  }

  std::vector<std::int64_t> per_source_sum(sources.size(), 0);
  std::vector<std::size_t> per_source_reached(sources.size(), 0);
  parallel_blocks(sources.size(), 256, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> order;
    order.reserve(n);
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t reached = bfs_forward(domain, sources[i], dist, order);
      std::int64_t sum = 0;
      for (const NodeId v : order) sum += dist[v];
      per_source_sum[i] = sum;
      per_source_reached[i] = reached;
    }
  });

  if (!restrict_to_lwcc)
    for (std::size_t i = 0; i < sources.size(); ++i)
      if (per_source_reached[i] != n)
        throw DisconnectedInput("graph has unreachable pairs; enable the largest-WCC restriction");

  AvgPathResult result;
  result.lwcc_size = n;
  result.sources = sources.size();
  result.exact = approx.exact;
  if (approx.exact) {
    std::int64_t total = 0;
    for (const std::int64_t s : per_source_sum) total += s;
    result.average = static_cast<double>(total) /
                     (static_cast<double>(n) * static_cast<double>(n - 1));
  } else {
    std::vector<double> means(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i)
      means[i] = static_cast<double>(per_source_sum[i]) / static_cast<double>(n - 1);
    double mean = 0.0;
    for (const double m : means) mean += m;
    mean /= static_cast<double>(means.size());
    double var = 0.0;
    for (const double m : means) var += (m - mean) * (m - mean);
    result.average = mean;
    result.std_error = means.size() > 1
                           ? std::sqrt(var / static_cast<double>(means.size() - 1)) /
                                 std::sqrt(static_cast<double>(means.size()))
                           : 0.0;
  }
  return result;
}

ComponentStats connected_components(const WeightedDigraph& g) {
  const std::size_t n = g.node_count();
  ComponentStats stats;
  stats.scc_id.assign(n, 0);
  stats.wcc_id.assign(n, 0);
  if (n == 0) return stats;

  // Strongly connected components: iterative Tarjan.
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnset), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  struct Frame {
    NodeId v;
    std::size_t next_edge;
  };
  std::vector<Frame> frames;
  std::uint32_t counter = 0;
  std::uint32_t scc_counter = 0;
  std::vector<std::size_t> scc_sizes;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    frames.push_back({root, 0});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto nbrs = g.out(f.v);
      if (f.next_edge < nbrs.size()) {
        const NodeId w = nbrs[f.next_edge++].node;
        if (index[w] == kUnset) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        const NodeId v = f.v;
        frames.pop_back();
        if (!frames.empty()) lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
        if (lowlink[v] == index[v]) {
          std::size_t size = 0;
          for (;;) {
            const NodeId w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            stats.scc_id[w] = scc_counter;
            ++size;
            if (w == v) break;
          }
          scc_sizes.push_back(size);
          ++scc_counter;
        }
      }
    }
  }
  stats.scc_count = scc_sizes.size();
  stats.largest_scc = *std::max_element(scc_sizes.begin(), scc_sizes.end());

  // Weakly connected components: union-find over the symmetrized edge set.
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  std::vector<std::uint32_t> rank(n, 0);
  auto find = [&](NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank[a] < rank[b]) std::swap(a, b);
    parent[b] = a;
    if (rank[a] == rank[b]) ++rank[a];
  };
  for (NodeId u = 0; u < n; ++u)
    for (const Neighbor& nb : g.out(u)) unite(u, nb.node);

  std::vector<NodeId> dense(n, std::numeric_limits<NodeId>::max());
  std::vector<std::size_t> wcc_sizes;
  for (NodeId u = 0; u < n; ++u) {
    const NodeId r = find(u);
    if (dense[r] == std::numeric_limits<NodeId>::max()) {
      dense[r] = static_cast<NodeId>(wcc_sizes.size());
      wcc_sizes.push_back(0);
    }
    stats.wcc_id[u] = dense[r];
    wcc_sizes[dense[r]]++;
  }
  stats.wcc_count = wcc_sizes.size();
  stats.largest_wcc = *std::max_element(wcc_sizes.begin(), wcc_sizes.end());
  return stats;
}

std::vector<double> closeness(const WeightedDigraph& g, ClosenessVariant variant,
                              const Approx& approx) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  if (approx.exact && n > kExactNodeCap) throw GraphTooLargeForExact(n, kExactNodeCap);

  std::vector<NodeId> sources;
  if (approx.exact) {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), NodeId{0});
  } else {
    if (approx.sources == 0) throw ConfigError("pivot mode needs at least one source");
    sources = sample_distinct_sorted(n, approx.sources, approx.seed);
  }
  std::vector<bool> is_source(n, false);
  for (const NodeId s : sources) is_source[s] = true;

  // Forward BFS from each source scatters d(s, t) into per-target sums.
  // Hop counts are integers, so atomic accumulation stays exact and
  // order-independent.
  std::unique_ptr<std::atomic<std::int64_t>[]> dist_sum(new std::atomic<std::int64_t>[n]);
  std::unique_ptr<std::atomic<std::int64_t>[]> reach_cnt(new std::atomic<std::int64_t>[n]);
  for (std::size_t i = 0; i < n; ++i) {
    dist_sum[i].store(0, std::memory_order_relaxed);
    reach_cnt[i].store(0, std::memory_order_relaxed);
  }
  parallel_blocks(sources.size(), 256, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> order;
    order.reserve(n);
    for (std::size_t i = begin; i < end; ++i) {
      const NodeId s = sources[i];
      bfs_forward(g, s, dist, order);
      for (const NodeId t : order) {
        if (t == s) continue;
        dist_sum[t].fetch_add(dist[t], std::memory_order_relaxed);
        reach_cnt[t].fetch_add(1, std::memory_order_relaxed);
      }
    }
  });

  std::vector<double> result(n, 0.0);
  const std::size_t s_total = sources.size();
  for (NodeId i = 0; i < n; ++i) {
    const double m = static_cast<double>(reach_cnt[i].load(std::memory_order_relaxed));
    const double sum = static_cast<double>(dist_sum[i].load(std::memory_order_relaxed));
    if (m <= 0.0 || sum <= 0.0) continue;
    if (variant == ClosenessVariant::Standard) {
      result[i] = m / sum;
    } else {
      // Scaled form; the per-node source population excludes the node itself.
      const double s_i = static_cast<double>(s_total - (is_source[i] ? 1 : 0));
      if (s_i > 0.0) result[i] = (m * m) / (s_i * sum);
    }
  }
  return result;
}

std::vector<double> betweenness(const WeightedDigraph& g, const Approx& approx) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  if (approx.exact && n > kExactNodeCap) throw GraphTooLargeForExact(n, kExactNodeCap);

  std::vector<NodeId> sources;
  if (approx.exact) {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), NodeId{0});
  } else {
    if (approx.sources == 0) throw ConfigError("pivot mode needs at least one source");
    sources = sample_distinct_sorted(n, approx.sources, approx.seed);
  }

  // Brandes accumulation with per-block partial vectors, reduced in block
  // order so the float sums do not depend on the worker count.
  const std::size_t max_blocks = betweenness_block_cap(n);
  const std::size_t blocks =
      std::max<std::size_t>(1, std::min(max_blocks, sources.size()));
  std::vector<std::vector<double>> partial(blocks);

  parallel_blocks(sources.size(), max_blocks, [&](std::size_t block, std::size_t begin,
                                                  std::size_t end) {
    std::vector<double>& acc = partial[block];
    acc.assign(n, 0.0);
    std::vector<std::int32_t> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<NodeId> order;
    order.reserve(n);
    for (std::size_t i = begin; i < end; ++i) {
      const NodeId s = sources[i];
      std::fill(dist.begin(), dist.end(), kUnreached);
      std::fill(sigma.begin(), sigma.end(), 0.0);
      std::fill(delta.begin(), delta.end(), 0.0);
      order.clear();
      dist[s] = 0;
      sigma[s] = 1.0;
      order.push_back(s);
      for (std::size_t head = 0; head < order.size(); ++head) {
        const NodeId u = order[head];
        for (const Neighbor& nb : g.out(u)) {
          if (dist[nb.node] == kUnreached) {
            dist[nb.node] = dist[u] + 1;
            order.push_back(nb.node);
          }
          if (dist[nb.node] == dist[u] + 1) sigma[nb.node] += sigma[u];
        }
      }
      for (std::size_t k = order.size(); k-- > 0;) {
        const NodeId w = order[k];
        const double coeff = (1.0 + delta[w]) / sigma[w];
        for (const Neighbor& nb : g.in(w))
          if (dist[nb.node] == dist[w] - 1) delta[nb.node] += sigma[nb.node] * coeff;
        if (w != s) acc[w] += delta[w];
      }
    }
  });

  std::vector<double> result(n, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    if (partial[b].empty()) continue;
    for (std::size_t i = 0; i < n; ++i) result[i] += partial[b][i];
  }
  const double scale = static_cast<double>(n) / static_cast<double>(sources.size());
  if (scale != 1.0)
    for (double& v : result) v *= scale;
  return result;
}

double pearson_assortativity(const WeightedDigraph& g) {
  const std::size_t m = g.edge_count();
  if (m < 2) throw DegenerateVariance("assortativity needs at least 2 edges");

  // Endpoint degrees are integers; exact integer moments make the
  // degenerate-variance test exact as well.
  __int128 sum_prod = 0, sum_lin = 0, sum_sq = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::int64_t k_out = static_cast<std::int64_t>(g.out_degree(u));
    for (const Neighbor& nb : g.out(u)) {
      const std::int64_t k_in = static_cast<std::int64_t>(g.in_degree(nb.node));
      sum_prod += static_cast<__int128>(k_out) * k_in;
      sum_lin += k_out + k_in;
      sum_sq += static_cast<__int128>(k_out) * k_out + static_cast<__int128>(k_in) * k_in;
    }
  }
  const __int128 edges = static_cast<__int128>(m);
  const __int128 numerator = 4 * edges * sum_prod - sum_lin * sum_lin;
  const __int128 denominator = 2 * edges * sum_sq - sum_lin * sum_lin;
  if (denominator == 0)
    throw DegenerateVariance("all edge-endpoint degrees are equal; assortativity undefined");
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

KnnCurves knn_in_curve(const WeightedDigraph& g) {
  const std::size_t n = g.node_count();
  std::map<std::int64_t, std::pair<double, std::int64_t>> groups;  // k_out -> (sum knn, count)
  std::map<std::int64_t, std::int64_t> out_counts;                 // over all nodes, for P(k)
  for (NodeId u = 0; u < n; ++u) {
    const std::int64_t k_out = static_cast<std::int64_t>(g.out_degree(u));
    out_counts[k_out]++;
    if (k_out == 0) continue;
    std::int64_t in_sum = 0;
    for (const Neighbor& nb : g.out(u)) in_sum += static_cast<std::int64_t>(g.in_degree(nb.node));
    auto& [sum, cnt] = groups[k_out];
    sum += static_cast<double>(in_sum) / static_cast<double>(k_out);
    cnt += 1;
  }
  KnnCurves curves;
  const double dn = static_cast<double>(n);
  for (const auto& [k_out, group] : groups) {
    const auto& [sum, cnt] = group;
    const double p_k = static_cast<double>(out_counts[k_out]) / dn;
    curves.normalized.push_back({static_cast<double>(k_out), (sum / dn) * p_k});
    curves.conventional.push_back({static_cast<double>(k_out), sum / static_cast<double>(cnt)});
  }
  return curves;
}

namespace {

// phi(k) for every integer threshold 0 .. max_degree-1 with N_{>k} >= 2,
// computed in one descending sweep over degree-sorted nodes.
std::vector<SeriesPoint> rich_club_sweep(const WeightedDigraph& proj) {
  const std::size_t n = proj.node_count();
  std::vector<SeriesPoint> series;
  if (n == 0) return series;

  std::vector<std::int64_t> deg(n);
  std::int64_t max_deg = 0;
  for (NodeId u = 0; u < n; ++u) {
    deg[u] = static_cast<std::int64_t>(proj.out_degree(u));
    max_deg = std::max(max_deg, deg[u]);
  }
  std::vector<NodeId> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), NodeId{0});
  std::sort(by_degree.begin(), by_degree.end(), [&](NodeId a, NodeId b) {
    if (deg[a] != deg[b]) return deg[a] > deg[b];
    return a < b;
  });

  std::vector<bool> member(n, false);
  std::size_t member_count = 0;
  std::int64_t internal_edges = 0;
  std::size_t cursor = 0;
  for (std::int64_t k = max_deg - 1; k >= 0; --k) {
    while (cursor < n && deg[by_degree[cursor]] > k) {
      const NodeId u = by_degree[cursor++];
      for (const Neighbor& nb : proj.out(u))
        if (member[nb.node]) ++internal_edges;
      member[u] = true;
      ++member_count;
    }
    if (member_count >= 2) {
      const double nk = static_cast<double>(member_count);
      series.push_back({static_cast<double>(k),
                        2.0 * static_cast<double>(internal_edges) / (nk * (nk - 1.0))});
    }
  }
  std::reverse(series.begin(), series.end());
  return series;
}

std::vector<SeriesPoint> filter_thresholds(const std::vector<SeriesPoint>& sweep,
                                           const std::vector<std::int64_t>& k_values) {
  if (k_values.empty()) return sweep;
  std::vector<std::int64_t> wanted = k_values;
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  std::vector<SeriesPoint> out;
  for (const std::int64_t k : wanted)
    for (const SeriesPoint& pt : sweep)
      if (static_cast<std::int64_t>(pt.x) == k) {
        out.push_back(pt);
        break;
      }
  return out;
}

}  // namespace

std::vector<SeriesPoint> rich_club(const WeightedDigraph& g,
                                   const std::vector<std::int64_t>& k_values) {
  return filter_thresholds(rich_club_sweep(undirected_projection(g)), k_values);
}

std::vector<SeriesPoint> normalized_rich_club(const WeightedDigraph& g,
                                              const std::vector<std::int64_t>& k_values,
                                              std::size_t replicates, std::uint64_t seed) {
  if (replicates == 0) throw ConfigError("normalized rich-club needs >= 1 replicate");
  const WeightedDigraph proj = undirected_projection(g);
  const std::vector<SeriesPoint> base = filter_thresholds(rich_club_sweep(proj), k_values);

  std::map<std::int64_t, std::pair<double, std::size_t>> baseline;  // k -> (sum, count)
  SplitMix64 seeder(seed);
  for (std::size_t r = 0; r < replicates; ++r) {
    const WeightedDigraph rewired =
        refgraph::degree_preserving_rewire(proj, refgraph::default_rewire_attempts(proj),
                                           seeder.next());
    for (const SeriesPoint& pt : rich_club_sweep(rewired)) {
      auto& [sum, cnt] = baseline[static_cast<std::int64_t>(pt.x)];
      sum += pt.y;
      cnt += 1;
    }
  }

  std::vector<SeriesPoint> result;
  for (const SeriesPoint& pt : base) {
    auto it = baseline.find(static_cast<std::int64_t>(pt.x));
    if (it == baseline.end() || it->second.second != replicates) continue;
    const double mean_rand = it->second.first / static_cast<double>(replicates);
    if (mean_rand <= 0.0) continue;
    result.push_back({pt.x, pt.y / mean_rand});
  }
  return result;
}

SmallWorldResult small_world_omega(const WeightedDigraph& g, std::size_t replicates,
                                   std::uint64_t seed, const Approx& approx) {
  if (replicates == 0) throw ConfigError("small-world omega needs >= 1 replicate");
  const WeightedDigraph proj = undirected_projection(g);
  const std::vector<NodeId> members = largest_component_members(proj);
  const WeightedDigraph lwcc = proj.induced_subgraph(members);

  SmallWorldResult result;
  result.n = lwcc.node_count();
  result.m = lwcc.edge_count() / 2;  // symmetric arcs -> undirected edges
  if (result.n < 3 || result.m < 2)
    throw InsufficientData("small-world omega needs a largest WCC with >= 3 nodes");

  auto approx_for = [&](std::size_t nodes) {
    return approx.exact && nodes > kExactNodeCap
               ? Approx::pivot(approx.sources == 0 ? 2000 : approx.sources, approx.seed)
               : approx;
  };

  result.clustering_avg = clustering(lwcc).average;
  result.path_length = avg_shortest_path(lwcc, approx_for(result.n)).average;

  // Equivalent lattice: same n, mean degree 2m/n rounded to the nearest even
  // integer (clamped to a legal lattice degree). Its clustering is
  // deterministic, so one instance serves all replicates.
  std::size_t latt_deg = static_cast<std::size_t>(
      2 * std::llround(static_cast<double>(result.m) / static_cast<double>(result.n)));
  if (latt_deg < 2) latt_deg = 2;
  if (latt_deg >= result.n) latt_deg = (result.n - 1) & ~std::size_t{1};
  result.lattice_degree = latt_deg;
  const WeightedDigraph lattice = refgraph::ring_lattice(result.n, latt_deg, 0);
  result.c_latt_mean = clustering(lattice).average;
  if (result.c_latt_mean <= 0.0)
    throw InsufficientData(
        "equivalent lattice has zero clustering (degree < 4); omega undefined");

  SplitMix64 seeder(seed);
  double l_rand_sum = 0.0;
  for (std::size_t r = 0; r < replicates; ++r) {
    const WeightedDigraph er = refgraph::er_random(result.n, result.m, seeder.next());
    l_rand_sum += avg_shortest_path(er, approx_for(er.node_count())).average;
  }
  result.l_rand_mean = l_rand_sum / static_cast<double>(replicates);
  result.omega =
      result.l_rand_mean / result.path_length - result.clustering_avg / result.c_latt_mean;
  return result;
}

MetricReport full_report(const WeightedDigraph& g, const ReportOptions& options) {
  if (g.node_count() == 0) throw EmptyGraph("metric report");
  MetricReport report;
  const std::size_t n = g.node_count();
  const Approx approx = options.approx;

  report.scalars["nodes"] = static_cast<double>(n);
  report.scalars["edges"] = static_cast<double>(g.edge_count());
  report.scalars["self_loops"] = static_cast<double>(g.self_loop_count());
  report.scalars["total_weight"] = g.total_weight();

  // Degree distributions and power-law fits.
  const struct {
    DegreeMode mode;
    const char* name;
  } modes[] = {{DegreeMode::Total, "total"}, {DegreeMode::In, "in"}, {DegreeMode::Out, "out"}};
  std::vector<double> deg_total(n), deg_in(n), deg_out(n);
  for (NodeId u = 0; u < n; ++u) {
    deg_total[u] = static_cast<double>(g.total_degree(u));
    deg_in[u] = static_cast<double>(g.in_degree(u));
    deg_out[u] = static_cast<double>(g.out_degree(u));
  }
  for (const auto& [mode, name] : modes) {
    DegreeDistribution dist = degree_distribution(g, mode);
    std::vector<SeriesPoint> pmf;
    for (std::size_t i = 0; i < dist.support.size(); ++i)
      pmf.push_back({static_cast<double>(dist.support[i]), dist.pmf[i]});
    report.series[std::string("degree_pmf_") + name] = std::move(pmf);
    try {
      const PowerLawFit fit = fit_power_law(dist);
      report.scalars[std::string("alpha_") + name] = fit.alpha;
      report.scalars[std::string("alpha_") + name + "_xmin"] = static_cast<double>(fit.xmin);
      report.scalars[std::string("alpha_") + name + "_ks"] = fit.ks_gof;
    } catch (const InsufficientData& e) {
      report.notes[std::string("alpha_") + name] = e.what();
    }
  }

  const ClusteringResult clus = clustering(g);
  report.scalars["C"] = clus.average;

  try {
    const AvgPathResult path = avg_shortest_path(g, approx);
    report.scalars["L"] = path.average;
    if (!path.exact) report.scalars["L_std_error"] = path.std_error;
    report.scalars["L_lwcc_size"] = static_cast<double>(path.lwcc_size);
    report.notes["L"] = "computed on the largest WCC of the undirected projection";
  } catch (const Error& e) {
    report.notes["L"] = e.what();
  }

  const ComponentStats comps = connected_components(g);
  report.scalars["scc_count"] = static_cast<double>(comps.scc_count);
  report.scalars["largest_scc"] = static_cast<double>(comps.largest_scc);
  report.scalars["wcc_count"] = static_cast<double>(comps.wcc_count);
  report.scalars["largest_wcc"] = static_cast<double>(comps.largest_wcc);

  try {
    report.scalars["rho"] = pearson_assortativity(g);
  } catch (const DegenerateVariance& e) {
    report.notes["rho"] = e.what();
  }

  const KnnCurves knn = knn_in_curve(g);
  report.series["knn_in"] = knn.normalized;
  report.series["knn_in_conventional"] = knn.conventional;
  report.series["rich_club"] = rich_club(g);

  SplitMix64 seeder(options.seed);
  const std::uint64_t richclub_seed = seeder.next();
  const std::uint64_t omega_seed = seeder.next();
  if (g.edge_count() >= 2)
    report.series["rich_club_norm"] =
        normalized_rich_club(g, {}, options.richclub_replicates, richclub_seed);

  try {
    const SmallWorldResult sw = small_world_omega(g, options.omega_replicates, omega_seed, approx);
    report.scalars["omega"] = sw.omega;
    report.scalars["L_rand"] = sw.l_rand_mean;
    report.scalars["C_latt"] = sw.c_latt_mean;
    report.scalars["lattice_degree"] = static_cast<double>(sw.lattice_degree);
  } catch (const Error& e) {
    report.notes["omega"] = e.what();
  }

  if (options.include_per_node) {
    report.per_node["degree_total"] = std::move(deg_total);
    report.per_node["degree_in"] = std::move(deg_in);
    report.per_node["degree_out"] = std::move(deg_out);
    report.per_node["clustering"] = clus.per_node;
    report.per_node["closeness"] = closeness(g, ClosenessVariant::Standard, approx);
    report.per_node["wf_closeness"] = closeness(g, ClosenessVariant::WassermanFaust, approx);
    report.per_node["betweenness"] = betweenness(g, approx);
    std::vector<double> scc_ids(n), wcc_ids(n);
    for (NodeId u = 0; u < n; ++u) {
      scc_ids[u] = static_cast<double>(comps.scc_id[u]);
      wcc_ids[u] = static_cast<double>(comps.wcc_id[u]);
    }
    report.per_node["scc_id"] = std::move(scc_ids);
    report.per_node["wcc_id"] = std::move(wcc_ids);
  }
  return report;
}

}  // namespace txnet::metrics
