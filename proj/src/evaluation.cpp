#include "txnet/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "txnet/sampling.hpp"

namespace txnet::eval {

double ks_d(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw EmptySample("K-S statistic needs two non-empty samples");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  double d = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < sa.size() && ib < sb.size()) {
    const double x = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] <= x) ++ia;
    while (ib < sb.size() && sb[ib] <= x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  return d;
}

namespace {

// (deg_u, deg_v, dist) packed 22/22/20 bits; sufficient for any graph under
// the kernel size cap.
std::uint64_t pack_triple(std::uint64_t deg_u, std::uint64_t deg_v, std::uint64_t dist) {
  return (deg_u << 42) | (deg_v << 20) | dist;
}

double base_kernel(BaseKernel kind, double sigma, double x, double y) {
  if (kind == BaseKernel::Delta) return x == y ? 1.0 : 0.0;
  const double d = (x - y) / sigma;
  return std::exp(-0.5 * d * d);
}

void unpack_triple(std::uint64_t key, double& deg_u, double& deg_v, double& dist) {
  deg_u = static_cast<double>(key >> 42);
  deg_v = static_cast<double>((key >> 20) & ((1ull << 22) - 1));
  dist = static_cast<double>(key & ((1ull << 20) - 1));
}

bool all_delta(const KernelConfig& cfg) {
  return cfg.degree_kernel == BaseKernel::Delta && cfg.length_kernel == BaseKernel::Delta;
}

}  // namespace

KernelProfile kernel_profile(const WeightedDigraph& g, const KernelConfig& cfg) {
  const std::size_t n = g.node_count();
  if (n > cfg.size_cap) throw GraphTooLarge(n, cfg.size_cap);

  std::unordered_map<std::uint64_t, std::int64_t> hist;
  std::vector<std::int32_t> dist(n);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();
    dist[s] = 0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId u = order[head];
      for (const Neighbor& nb : g.out(u)) {
        if (dist[nb.node] == -1) {
          dist[nb.node] = dist[u] + 1;
          order.push_back(nb.node);
        }
      }
    }
    const std::uint64_t deg_s = g.total_degree(s);
    for (const NodeId t : order) {
      if (t == s) continue;
      hist[pack_triple(deg_s, g.total_degree(t), static_cast<std::uint64_t>(dist[t]))]++;
    }
  }

  KernelProfile profile;
  profile.keys.reserve(hist.size());
  for (const auto& [key, count] : hist) profile.keys.push_back(key);
  std::sort(profile.keys.begin(), profile.keys.end());
  profile.counts.reserve(profile.keys.size());
  for (const std::uint64_t key : profile.keys) profile.counts.push_back(hist[key]);
  profile.self_kernel = kernel_from_profiles(profile, profile, cfg);
  return profile;
}

double kernel_from_profiles(const KernelProfile& a, const KernelProfile& b,
                            const KernelConfig& cfg) {
  if (all_delta(cfg)) {
    // Exact integer accumulation over matching triples; order-free.
    __int128 sum = 0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.keys.size() && ib < b.keys.size()) {
      if (a.keys[ia] < b.keys[ib]) {
        ++ia;
      } else if (a.keys[ia] > b.keys[ib]) {
        ++ib;
      } else {
        sum += static_cast<__int128>(a.counts[ia]) * b.counts[ib];
        ++ia;
        ++ib;
      }
    }
    return static_cast<double>(sum);
  }
  // Gaussian factors: dense cross-product over compressed triples, summed in
  // key order for determinism.
  double sum = 0.0;
  for (std::size_t ia = 0; ia < a.keys.size(); ++ia) {
    double du1, dv1, l1;
    unpack_triple(a.keys[ia], du1, dv1, l1);
    const double ca = static_cast<double>(a.counts[ia]);
    for (std::size_t ib = 0; ib < b.keys.size(); ++ib) {
      double du2, dv2, l2;
      unpack_triple(b.keys[ib], du2, dv2, l2);
      const double k = base_kernel(cfg.degree_kernel, cfg.sigma_degree, du1, du2) *
                       base_kernel(cfg.degree_kernel, cfg.sigma_degree, dv1, dv2) *
                       base_kernel(cfg.length_kernel, cfg.sigma_length, l1, l2);
      sum += ca * static_cast<double>(b.counts[ib]) * k;
    }
  }
  return sum;
}

double kernel_normalized_from_profiles(const KernelProfile& a, const KernelProfile& b,
                                       const KernelConfig& cfg) {
  const double k11 = a.self_kernel, k22 = b.self_kernel;
  if (k11 <= 0.0 || k22 <= 0.0) return 0.0;
  const double k12 = kernel_from_profiles(a, b, cfg);
  if (k12 == k11 && k12 == k22) return 1.0;  // identical operands
  return k12 / std::sqrt(k11 * k22);
}

double sp_graph_kernel(const WeightedDigraph& g1, const WeightedDigraph& g2,
                       const KernelConfig& cfg) {
  return kernel_from_profiles(kernel_profile(g1, cfg), kernel_profile(g2, cfg), cfg);
}

double kernel_normalized(const WeightedDigraph& g1, const WeightedDigraph& g2,
                         const KernelConfig& cfg) {
  return kernel_normalized_from_profiles(kernel_profile(g1, cfg), kernel_profile(g2, cfg), cfg);
}

WeightedDigraph kernel_capped(const WeightedDigraph& g, std::size_t cap, std::uint64_t seed) {
  if (g.node_count() <= cap) return g;
  sampling::SamplerConfig cfg;
  cfg.method = sampling::Method::Rn;
  cfg.target_nodes = cap;
  cfg.seed = seed;
  return sampling::sample(g, cfg).subgraph;
}

MetricVectors fidelity_vectors(const WeightedDigraph& g, const metrics::Approx& approx) {
  const metrics::Approx eff = approx.exact && g.node_count() > metrics::kExactNodeCap
                                  ? metrics::Approx::pivot(approx.sources, approx.seed)
                                  : approx;
  MetricVectors vectors;
  vectors.degree.reserve(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u)
    vectors.degree.push_back(static_cast<double>(g.total_degree(u)));
  vectors.clustering = metrics::clustering(g).per_node;
  vectors.betweenness = metrics::betweenness(g, eff);
  vectors.closeness = metrics::closeness(g, metrics::ClosenessVariant::Standard, eff);
  return vectors;
}

FidelityScore fidelity_against(const MetricVectors& reference, const WeightedDigraph& sampled,
                               const metrics::Approx& approx) {
  const MetricVectors sv = fidelity_vectors(sampled, approx);
  FidelityScore score;
  score.d_degree = ks_d(reference.degree, sv.degree);
  score.d_clustering = ks_d(reference.clustering, sv.clustering);
  score.d_betweenness = ks_d(reference.betweenness, sv.betweenness);
  score.d_closeness = ks_d(reference.closeness, sv.closeness);
  score.d_avg =
      (score.d_degree + score.d_clustering + score.d_betweenness + score.d_closeness) / 4.0;
  return score;
}

FidelityScore fidelity(const WeightedDigraph& original, const WeightedDigraph& sampled,
                       const metrics::Approx& approx) {
  if (original.node_count() == 0 || sampled.node_count() == 0)
    throw EmptyGraph("fidelity");
  return fidelity_against(fidelity_vectors(original, approx), sampled, approx);
}

std::vector<SweepPoint> p_sweep(const WeightedDigraph& g, const std::vector<double>& p_values,
                                const PSweepConfig& cfg) {
  if (p_values.empty()) throw ConfigError("p_sweep needs at least one p value");
  if (cfg.seeds.empty()) throw ConfigError("p_sweep needs at least one seed");

  const WeightedDigraph reference = kernel_capped(g, cfg.kernel.size_cap, cfg.ref_seed);
  const KernelProfile ref_profile = kernel_profile(reference, cfg.kernel);

  std::vector<SweepPoint> series;
  series.reserve(p_values.size());
  for (const double p : p_values) {
    std::vector<double> kernels;
    kernels.reserve(cfg.seeds.size());
    for (const std::uint64_t seed : cfg.seeds) {
      sampling::SamplerConfig scfg;
      scfg.method = sampling::Method::Rwfb;
      scfg.target_nodes = cfg.target_nodes;
      scfg.p = p;
      scfg.seed = seed;
      const WeightedDigraph sampled_graph = sampling::sample(g, scfg).subgraph;
      const WeightedDigraph capped =
          kernel_capped(sampled_graph, cfg.kernel.size_cap, cfg.ref_seed);
      const KernelProfile sample_profile = kernel_profile(capped, cfg.kernel);
      kernels.push_back(kernel_normalized_from_profiles(sample_profile, ref_profile, cfg.kernel));
    }
    double mean = 0.0;
    for (const double k : kernels) mean += k;
    mean /= static_cast<double>(kernels.size());
    double var = 0.0;
    for (const double k : kernels) var += (k - mean) * (k - mean);
    const double se = kernels.size() > 1
                          ? std::sqrt(var / static_cast<double>(kernels.size() - 1)) /
                                std::sqrt(static_cast<double>(kernels.size()))
                          : 0.0;
    series.push_back({p, mean, se, kernels.size()});
  }
  return series;
}

}  // namespace txnet::eval
