#pragma once

// Null-model and synthetic-graph generators: equivalent Erdos-Renyi graphs
// and ring lattices for the small-world measurement, degree-preserving
// rewirings for the normalized rich-club baseline, and preferential-
// attachment graphs used as sampler test beds. All generators are pure
// functions of their parameters and seed.

#include <cstdint>

#include "txnet/graph.hpp"

namespace txnet::refgraph {

// Uniform simple undirected graph with exactly n nodes and m edges,
// represented as a symmetric digraph with unit weights.
// Throws TooManyEdges when m > n(n-1)/2.
WeightedDigraph er_random(std::size_t n, std::size_t m, std::uint64_t seed);

// Ring lattice: each node is connected to mean_degree/2 neighbors on each
// side. mean_degree must be even and < n. The construction is deterministic;
// seed is accepted for interface uniformity and ignored.
WeightedDigraph ring_lattice(std::size_t n, std::size_t mean_degree, std::uint64_t seed);

// Degree-preserving randomization by double-edge swaps; proposals creating
// self-loops or duplicate edges are rejected. Symmetric graphs are rewired
// with undirected swaps (symmetry preserved); directed graphs with directed
// swaps (in- and out-degree sequences preserved exactly). Weights travel
// with their surviving source endpoint pairing.
WeightedDigraph degree_preserving_rewire(const WeightedDigraph& g, std::size_t attempts,
                                         std::uint64_t seed);

// Default swap-attempt budget for rewiring: 100 per edge.
std::size_t default_rewire_attempts(const WeightedDigraph& g);

// Share of attachment edges kept one-way in each direction by
// synthetic_scale_free; the remainder become bidirectional pairs.
inline constexpr double kOneWayShare = 0.4;

// Preferential-attachment transaction-graph test bed: a complete seed of
// attach_m + 1 nodes, then each new node attaches to attach_m distinct
// existing nodes with probability proportional to degree. Attachment edges
// are oriented like fund flows (mostly one-way, some bidirectional), so the
// result has heavy-tailed total degrees, dead-end nodes, and far fewer
// strongly than weakly connected node pairs. Unit weights.
WeightedDigraph synthetic_scale_free(std::size_t n, std::size_t attach_m, std::uint64_t seed);

}  // namespace txnet::refgraph
