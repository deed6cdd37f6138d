#pragma once

// Brute-force reference implementations for small graphs, kept deliberately
// independent of the library's algorithms: dense adjacency matrices,
// Floyd-Warshall distances, explicit shortest-path enumeration, transitive
// closures, and pair censuses. Everything here is O(n^3) or worse and only
// meant for graphs with a handful of nodes.

#include <cstdint>
#include <optional>
#include <vector>

#include "txnet/graph.hpp"
#include "txnet/rng.hpp"

namespace oracle {

constexpr int kUnreachable = -1;

struct Dense {
  std::size_t n = 0;
  std::vector<std::vector<bool>> adj;  // directed, self-loops possible

  static Dense from(const txnet::WeightedDigraph& g);
  Dense symmetrized_no_loops() const;
};

// All-pairs hop distances via Floyd-Warshall (self-loops ignored for paths).
std::vector<std::vector<int>> fw_distances(const Dense& d);

// Shortest-path counts by explicit enumeration.
struct PathCensus {
  std::int64_t total = 0;                  // sigma(u, v)
  std::vector<std::int64_t> through;       // paths with node i strictly inside
};
PathCensus enumerate_shortest_paths(const Dense& d, const std::vector<std::vector<int>>& dist,
                                    std::size_t u, std::size_t v);

std::vector<double> betweenness(const txnet::WeightedDigraph& g);
std::vector<double> closeness_standard(const txnet::WeightedDigraph& g);
std::vector<double> closeness_wf(const txnet::WeightedDigraph& g);

struct Clustering {
  std::vector<double> per_node;
  double average = 0.0;
};
Clustering clustering(const txnet::WeightedDigraph& g);

// Mean shortest-path length on the largest component of the symmetrized
// graph (ties broken toward the component containing the smallest node id).
double avg_shortest_path(const txnet::WeightedDigraph& g);

struct Components {
  std::size_t scc_count = 0;
  std::size_t largest_scc = 0;
  std::size_t wcc_count = 0;
  std::size_t largest_wcc = 0;
};
Components components(const txnet::WeightedDigraph& g);

// nullopt when the printed formula's denominator is exactly zero.
std::optional<double> assortativity(const txnet::WeightedDigraph& g);

// nullopt when fewer than two nodes exceed degree k.
std::optional<double> rich_club(const txnet::WeightedDigraph& g, std::int64_t k);

// Quadruple-loop shortest-path kernel with delta base kernels over
// (total degree, total degree, directed hop distance).
double sp_kernel_delta(const txnet::WeightedDigraph& g1, const txnet::WeightedDigraph& g2);

// Seeded random digraph with 1..max_nodes nodes; edge probability and
// self-loop rate drawn per graph.
txnet::WeightedDigraph random_digraph(txnet::Rng& rng, std::size_t max_nodes,
                                      bool allow_self_loops = true);

// Convenience: graph from explicit arcs with unit/explicit weights.
txnet::WeightedDigraph make_graph(std::size_t n,
                                  const std::vector<std::tuple<int, int, double>>& arcs);

}  // namespace oracle
