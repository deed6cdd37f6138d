#pragma once

// Whole-graph and per-node network metrics: degree distributions with
// discrete power-law fits, clustering, shortest-path statistics, the
// small-world measurement, connected components, closeness (standard and
// Wasserman-Faust), betweenness, degree assortativity, nearest-neighbor
// in-degree curves, and rich-club coefficients.
//
// Conventions: clustering, path lengths and rich-club densities are computed
// on the undirected projection (self-loops removed); shortest-path averages
// are restricted to the largest weakly connected component; centralities and
// degree mixing stay on the directed graph; all distances are unweighted hop
// counts. Exact all-pairs algorithms are capped at kExactNodeCap nodes;
// beyond that, source-sampled (pivot) estimators with reported scaling are
// used. Every metric is deterministic given its seed, independent of the
// worker count.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "txnet/graph.hpp"

namespace txnet::metrics {

// Largest node count for which exact all-pairs computations are attempted.
inline constexpr std::size_t kExactNodeCap = 20'000;

// Exact vs. source-sampled estimation of all-pairs quantities.
struct Approx {
  bool exact = true;
  std::size_t sources = 2'000;
  std::uint64_t seed = 0;

  static Approx exact_mode() { return {true, 0, 0}; }
  static Approx pivot(std::size_t sources, std::uint64_t seed) { return {false, sources, seed}; }
  // Exact when the graph fits under the cap, pivot otherwise.
  static Approx auto_mode(std::size_t node_count, std::size_t sources = 2'000,
                          std::uint64_t seed = 0) {
    return node_count <= kExactNodeCap ? exact_mode() : pivot(sources, seed);
  }
};

struct PowerLawFit {
  double alpha = 0.0;
  std::int64_t xmin = 1;
  double ks_gof = 0.0;       // K-S distance of the fitted tail
  std::size_t tail_count = 0;
};

struct DegreeDistribution {
  DegreeMode mode = DegreeMode::Total;
  std::vector<std::int64_t> support;  // sorted realized degrees
  std::vector<std::int64_t> counts;   // aligned with support
  std::vector<double> pmf;            // counts / node_count, sums to 1
  std::optional<PowerLawFit> fit;
};

// Empirical degree pmf over all nodes (degree-0 nodes included).
// Throws EmptyGraph.
DegreeDistribution degree_distribution(const WeightedDigraph& g, DegreeMode mode);

// Discrete power-law fit: maximum-likelihood alpha with xmin chosen by
// minimizing the K-S distance between the empirical tail and the fitted
// distribution. Candidate xmin values need >= 50 tail observations.
// Throws InsufficientData on degenerate input.
PowerLawFit fit_power_law(const DegreeDistribution& dist);
PowerLawFit fit_power_law(const std::vector<std::int64_t>& observations);

// Hurwitz zeta for s > 1, q >= 1 (normalization of the discrete power law).
double hurwitz_zeta(double s, double q);

struct ClusteringResult {
  std::vector<double> per_node;  // triangles / (k (k-1) / 2); 0 when k < 2
  double average = 0.0;          // mean over all nodes
};

// Local clustering on the undirected projection.
ClusteringResult clustering(const WeightedDigraph& g);

struct AvgPathResult {
  double average = 0.0;
  double std_error = 0.0;   // 0 in exact mode
  std::size_t sources = 0;  // BFS sources used
  std::size_t lwcc_size = 0;
  bool exact = true;
};

// Mean shortest-path length over ordered reachable pairs of the undirected
// projection, restricted to the largest weakly connected component unless
// restrict_to_lwcc is false (in which case any unreachable pair throws
// DisconnectedInput). Sampled mode draws BFS sources without replacement and
// reports the standard error over sources. Throws GraphTooLargeForExact.
AvgPathResult avg_shortest_path(const WeightedDigraph& g, const Approx& approx,
                                bool restrict_to_lwcc = true);

struct ComponentStats {
  std::size_t scc_count = 0;
  std::size_t largest_scc = 0;
  std::size_t wcc_count = 0;
  std::size_t largest_wcc = 0;
  std::vector<NodeId> scc_id;  // per-node component ids, dense
  std::vector<NodeId> wcc_id;
};

// Strongly connected components (iterative Tarjan) and weakly connected
// components (union over the symmetrized edge set).
ComponentStats connected_components(const WeightedDigraph& g);

enum class ClosenessVariant { Standard, WassermanFaust };

// Closeness over incoming distances d(j, i): standard (n-1)/sum d, or the
// Wasserman-Faust variant scaled by (n-1)/(N-1) for disconnected graphs.
// Nodes reached by no one score 0. Pivot mode with sources = N reproduces
// exact mode bit for bit.
std::vector<double> closeness(const WeightedDigraph& g, ClosenessVariant variant,
                              const Approx& approx);

// Unnormalized shortest-path betweenness over directed unweighted paths
// (endpoints excluded). Pivot mode scales partial dependencies by N/sources.
std::vector<double> betweenness(const WeightedDigraph& g, const Approx& approx);

// Degree assortativity: Pearson correlation over edges of (source out-degree,
// target in-degree), evaluated in exact integer arithmetic.
// Throws DegenerateVariance when the endpoint-degree variance is zero.
double pearson_assortativity(const WeightedDigraph& g);

struct SeriesPoint {
  double x = 0.0;
  double y = 0.0;
};

struct KnnCurves {
  // Normalized form: sum over nodes of out-degree k of (mean neighbor
  // in-degree / N), weighted by P(k).
  std::vector<SeriesPoint> normalized;
  // Plain average of mean neighbor in-degree per out-degree value.
  std::vector<SeriesPoint> conventional;
};

// Average in-degree of out-neighbors versus node out-degree (adjacency taken
// as a 0/1 indicator). Nodes with out-degree 0 are excluded.
KnnCurves knn_in_curve(const WeightedDigraph& g);

// Rich-club coefficient phi(k) = 2 E_{>k} / (N_{>k} (N_{>k}-1)) on the
// undirected projection with total degree; thresholds with fewer than two
// qualifying nodes are omitted. k_values empty selects all realized degree
// thresholds.
std::vector<SeriesPoint> rich_club(const WeightedDigraph& g,
                                   const std::vector<std::int64_t>& k_values = {});

// phi(k) divided by the mean phi of `replicates` degree-preserving rewirings
// of the projection. Thresholds where the baseline is 0 are omitted.
std::vector<SeriesPoint> normalized_rich_club(const WeightedDigraph& g,
                                              const std::vector<std::int64_t>& k_values,
                                              std::size_t replicates, std::uint64_t seed);

struct SmallWorldResult {
  double omega = 0.0;
  double clustering_avg = 0.0;  // C of the graph (largest-WCC projection)
  double path_length = 0.0;     // L of the graph (largest-WCC projection)
  double l_rand_mean = 0.0;     // over equivalent random graphs
  double c_latt_mean = 0.0;     // over equivalent lattices
  std::size_t lattice_degree = 0;
  std::size_t n = 0;  // size of the compared largest WCC
  std::size_t m = 0;  // undirected edge count of the compared largest WCC
};

// Small-world measurement omega = L_rand / L - C / C_latt against
// `replicates` equivalent random graphs and ring lattices (lattice degree =
// 2m/n rounded to the nearest even integer).
SmallWorldResult small_world_omega(const WeightedDigraph& g, std::size_t replicates,
                                   std::uint64_t seed, const Approx& approx);

// Aggregated report: named scalars, per-node vectors and plot series, plus
// free-form notes for undefined or restricted quantities.
struct MetricReport {
  std::map<std::string, double> scalars;
  std::map<std::string, std::string> notes;
  std::map<std::string, std::vector<double>> per_node;
  std::map<std::string, std::vector<SeriesPoint>> series;
};

struct ReportOptions {
  Approx approx;
  std::size_t omega_replicates = 5;
  std::size_t richclub_replicates = 5;
  std::uint64_t seed = 0;
  bool include_per_node = true;
};

// Computes the full metric suite. Quantities that are undefined on the input
// (degenerate assortativity, unfittable degree tails, sub-2-node components)
// are omitted from scalars and explained in notes.
MetricReport full_report(const WeightedDigraph& g, const ReportOptions& options);

}  // namespace txnet::metrics
