#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracle.hpp"
#include "txnet/metrics.hpp"
#include "txnet/reference_graphs.hpp"

using namespace txnet;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> degree_sequence(const WeightedDigraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> seq(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) seq[u] = {g.out_degree(u), g.in_degree(u)};
  return seq;
}

std::set<std::pair<NodeId, NodeId>> undirected_pairs(const WeightedDigraph& g) {
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (const Neighbor& nb : g.out(u))
      if (u < nb.node) pairs.insert({u, nb.node});
  return pairs;
}

}  // namespace

TEST_CASE("er_random produces exact node and edge counts") {
  const WeightedDigraph g = refgraph::er_random(100, 300, 5);
  CHECK(g.node_count() == 100);
  CHECK(g.edge_count() == 600);  // two arcs per undirected edge
  CHECK(g.is_symmetric());
  CHECK(g.self_loop_count() == 0);

  CHECK(refgraph::er_random(10, 0, 1).edge_count() == 0);
  CHECK_THROWS_AS(refgraph::er_random(4, 7, 1), TooManyEdges);
}

TEST_CASE("er_random with the maximum edge count is complete") {
  const WeightedDigraph k4 = refgraph::er_random(4, 6, 9);
  CHECK(k4.edge_count() == 12);
  for (NodeId u = 0; u < 4; ++u) CHECK(k4.out_degree(u) == 3);
}

TEST_CASE("er_random is deterministic and seed-sensitive") {
  CHECK(refgraph::er_random(50, 120, 7) == refgraph::er_random(50, 120, 7));
  CHECK(!(refgraph::er_random(50, 120, 7) == refgraph::er_random(50, 120, 8)));
}

TEST_CASE("er_random clustering matches the density expectation") {
  const std::size_t n = 10'000, m = 50'000;
  const WeightedDigraph g = refgraph::er_random(n, m, 13);
  double degree_sum = 0.0;
  for (NodeId u = 0; u < n; ++u) degree_sum += static_cast<double>(g.out_degree(u));
  CHECK(degree_sum / n == doctest::Approx(10.0));  // mean degree 2m/n exactly

  const double p = static_cast<double>(m) / (static_cast<double>(n) * (n - 1) / 2.0);
  const double c = metrics::clustering(g).average;
  CHECK(c > p / 3.0);
  CHECK(c < p * 3.0);
}

TEST_CASE("ring lattice canonical cases") {
  const WeightedDigraph c5 = refgraph::ring_lattice(5, 2, 0);
  CHECK(c5.edge_count() == 10);
  for (NodeId u = 0; u < 5; ++u) CHECK(c5.out_degree(u) == 2);
  CHECK(metrics::clustering(c5).average == doctest::Approx(0.0));

  const WeightedDigraph l8 = refgraph::ring_lattice(8, 4, 0);
  for (NodeId u = 0; u < 8; ++u) CHECK(l8.out_degree(u) == 4);
  // Triangle census value for the k=4 ring lattice.
  CHECK(metrics::clustering(l8).average == doctest::Approx(0.5));
  CHECK(metrics::clustering(l8).average ==
        doctest::Approx(oracle::clustering(l8).average).epsilon(1e-12));

  CHECK_THROWS_AS(refgraph::ring_lattice(6, 3, 0), InvalidDegree);
  CHECK_THROWS_AS(refgraph::ring_lattice(6, 6, 0), InvalidDegree);
}

TEST_CASE("ring lattice path length scales like n / (2k)") {
  const std::size_t n = 1'000, k = 10;
  const WeightedDigraph lattice = refgraph::ring_lattice(n, k, 0);
  const double l = metrics::avg_shortest_path(lattice, metrics::Approx::exact_mode()).average;
  const double expected = static_cast<double>(n) / (2.0 * static_cast<double>(k));
  CHECK(l > 0.8 * expected);
  CHECK(l < 1.3 * expected);
}

TEST_CASE("rewiring preserves degree sequences exactly") {
  const WeightedDigraph directed = oracle::make_graph(
      6, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 0, 1}, {0, 3, 1}, {2, 5, 1}});
  const WeightedDigraph rd = refgraph::degree_preserving_rewire(directed, 500, 3);
  CHECK(degree_sequence(rd) == degree_sequence(directed));
  CHECK(!rd.is_symmetric());

  const WeightedDigraph sym = refgraph::er_random(60, 150, 11);
  const WeightedDigraph rs = refgraph::degree_preserving_rewire(sym, 2'000, 5);
  CHECK(degree_sequence(rs) == degree_sequence(sym));
  CHECK(rs.is_symmetric());
}

TEST_CASE("rewiring a complete graph changes nothing") {
  const WeightedDigraph k4 = refgraph::er_random(4, 6, 1);
  const WeightedDigraph r = refgraph::degree_preserving_rewire(k4, 1'000, 2);
  CHECK(r == k4);
}

TEST_CASE("rewiring mixes the edge set") {
  const WeightedDigraph g = refgraph::er_random(500, 1'000, 21);
  const WeightedDigraph r = refgraph::degree_preserving_rewire(g, 100'000, 22);
  const auto before = undirected_pairs(g);
  const auto after = undirected_pairs(r);
  std::size_t overlap = 0;
  for (const auto& pair : after) overlap += before.count(pair);
  CHECK(static_cast<double>(overlap) / static_cast<double>(before.size()) < 0.6);
}

TEST_CASE("preferential attachment: seed clique and heavy tail") {
  // With n = attach_m + 1 only the seed remains: complete as a projection.
  const WeightedDigraph seed_only = refgraph::synthetic_scale_free(4, 3, 0);
  const WeightedDigraph seed_proj = undirected_projection(seed_only);
  CHECK(seed_proj.edge_count() == 12);  // K4 in the projection
  for (NodeId u = 0; u < 4; ++u) CHECK(seed_proj.out_degree(u) == 3);

  const WeightedDigraph g = refgraph::synthetic_scale_free(10'000, 3, 77);
  CHECK(g.node_count() == 10'000);
  double mean = 0.0;
  std::size_t max_deg = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    mean += static_cast<double>(g.total_degree(u));
    max_deg = std::max(max_deg, g.total_degree(u));
  }
  mean /= static_cast<double>(g.node_count());
  CHECK(static_cast<double>(max_deg) > 20.0 * mean);

  // Transaction-like orientation: dead ends exist, and far fewer node pairs
  // are strongly than weakly connected.
  std::size_t dead_ends = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) dead_ends += g.out_degree(u) == 0;
  CHECK(dead_ends > 0);
  const auto comps = metrics::connected_components(g);
  CHECK(comps.wcc_count == 1);  // attachment keeps the projection connected
  CHECK(comps.scc_count > 100);

  std::vector<std::int64_t> degrees;
  for (NodeId u = 0; u < g.node_count(); ++u)
    degrees.push_back(static_cast<std::int64_t>(g.total_degree(u)));
  const auto fit = metrics::fit_power_law(degrees);
  CHECK(fit.alpha > 2.2);
  CHECK(fit.alpha < 3.2);

  CHECK_THROWS_AS(refgraph::synthetic_scale_free(2, 3, 0), ConfigError);
}
