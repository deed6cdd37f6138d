#pragma once

// Sample-fidelity scoring: per-metric two-sample Kolmogorov-Smirnov
// D-statistics against a reference graph, and a shortest-path graph kernel
// over (degree, degree, path length) triples with delta or Gaussian base
// kernels. Kernel evaluation is exact all-pairs and therefore size-capped;
// oversized operands are reduced to fixed-seed uniform induced subsamples.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "txnet/graph.hpp"
#include "txnet/metrics.hpp"

namespace txnet::eval {

// Two-sample K-S statistic: sup |F_a - F_b| over the empirical CDFs.
// Throws EmptySample.
double ks_d(std::span<const double> a, std::span<const double> b);

enum class BaseKernel { Delta, Gaussian };

struct KernelConfig {
  BaseKernel degree_kernel = BaseKernel::Delta;
  double sigma_degree = 1.0;  // Gaussian width for degree comparison
  BaseKernel length_kernel = BaseKernel::Delta;
  double sigma_length = 1.0;  // Gaussian width for path-length comparison
  std::size_t size_cap = 2'000;
};

// Shortest-path graph kernel: sum over ordered vertex pairs (u, v) of g1 and
// (w, z) of g2, u != v, w != z, both reachable, of
// K_D(k(u), k(w)) * K_D(k(v), k(z)) * K_L(d(u, v), d(w, z)),
// with k the total degree and d the directed hop distance.
// Throws GraphTooLarge beyond cfg.size_cap.
double sp_graph_kernel(const WeightedDigraph& g1, const WeightedDigraph& g2,
                       const KernelConfig& cfg = {});

// K(g1, g2) / sqrt(K(g1, g1) K(g2, g2)), in [0, 1]; 0 when either
// self-kernel vanishes, exactly 1 for identical operands.
double kernel_normalized(const WeightedDigraph& g1, const WeightedDigraph& g2,
                         const KernelConfig& cfg = {});

// Precomputed pair-triple histogram of one graph, reusable across kernel
// evaluations against many counterparts.
struct KernelProfile {
  std::vector<std::uint64_t> keys;  // packed (deg_u, deg_v, dist), sorted
  std::vector<std::int64_t> counts;
  double self_kernel = 0.0;
};
KernelProfile kernel_profile(const WeightedDigraph& g, const KernelConfig& cfg = {});
double kernel_from_profiles(const KernelProfile& a, const KernelProfile& b,
                            const KernelConfig& cfg = {});
double kernel_normalized_from_profiles(const KernelProfile& a, const KernelProfile& b,
                                       const KernelConfig& cfg = {});

// Reduces a graph to at most cap nodes via a seeded uniform induced
// subsample (identity when it already fits).
WeightedDigraph kernel_capped(const WeightedDigraph& g, std::size_t cap, std::uint64_t seed);

// Default seed for reducing oversized kernel references.
inline constexpr std::uint64_t kKernelRefSeed = 0x7ef1d2c3;

struct FidelityScore {
  double d_degree = 0.0;
  double d_clustering = 0.0;
  double d_betweenness = 0.0;
  double d_closeness = 0.0;
  double d_avg = 0.0;  // mean of the four D-statistics
  std::optional<double> kernel;  // normalized kernel, when requested
  std::size_t kernel_cap = 0;    // cap + seed used for kernel reduction
  std::uint64_t kernel_ref_seed = 0;
};

// Per-node metric vectors entering the K-S comparison (total degree, local
// clustering, betweenness, standard closeness).
struct MetricVectors {
  std::vector<double> degree;
  std::vector<double> clustering;
  std::vector<double> betweenness;
  std::vector<double> closeness;
};

// approx applies when the graph exceeds the exact cap; smaller graphs are
// evaluated exactly.
MetricVectors fidelity_vectors(const WeightedDigraph& g, const metrics::Approx& approx);

// Scores sampled against a reference whose vectors were precomputed.
FidelityScore fidelity_against(const MetricVectors& reference, const WeightedDigraph& sampled,
                               const metrics::Approx& approx);

// Convenience wrapper computing both sides.
FidelityScore fidelity(const WeightedDigraph& original, const WeightedDigraph& sampled,
                       const metrics::Approx& approx);

struct SweepPoint {
  double p = 0.0;
  double mean_kernel = 0.0;
  double std_error = 0.0;
  std::size_t seeds = 0;
};

struct PSweepConfig {
  std::size_t target_nodes = 0;
  std::vector<std::uint64_t> seeds;  // shared across all p values
  KernelConfig kernel;
  std::uint64_t ref_seed = kKernelRefSeed;
};

// RWFB normalized-kernel response over a grid of flying-back probabilities:
// for each p, samples once per seed and compares against a fixed capped
// reference subsample of g. The seed list is held fixed across p values.
std::vector<SweepPoint> p_sweep(const WeightedDigraph& g, const std::vector<double>& p_values,
                                const PSweepConfig& cfg);

}  // namespace txnet::eval
