#pragma once

// Graph samplers: the flying-back random walk (RWFB) and five baselines
// (classic random walk, random node, random edge, forest fire, snowball).
// Every sampler visits exactly target_nodes distinct nodes of a seeded
// random stream and returns, by default, the induced subgraph on the
// visited set with original weights. Identical (graph, config) pairs
// reproduce identical results bit for bit.

#include <cstdint>
#include <string>
#include <vector>

#include "txnet/graph.hpp"

namespace txnet::sampling {

enum class Method { Rwfb, Rws, Rn, Re, Ff, Sb };

// Interpretation of the fly-back event: jump to the walk's current origin,
// or stay in place for one step (lazy walk).
enum class RestartPolicy { RestartToStart, StayAtCurrent };

// Induced: all original edges among visited nodes. TraversedEdges: only
// edges the sampler actually crossed (walk steps, burns, expansions).
enum class SubgraphMode { Induced, TraversedEdges };

struct SamplerConfig {
  Method method = Method::Rwfb;
  std::size_t target_nodes = 0;
  double p = 0.3;                // flying-back probability (RWFB only), in [0, 1)
  double ff_forward_prob = 0.7;  // forest-fire burn probability, in (0, 1)
  std::size_t sb_depth = 2;      // snowball BFS depth, >= 1
  std::uint64_t seed = 0;
  RestartPolicy restart_policy = RestartPolicy::RestartToStart;
  SubgraphMode subgraph_mode = SubgraphMode::Induced;
};

struct SampleResult {
  WeightedDigraph subgraph;           // node ids renumbered; labels preserved
  std::vector<NodeId> node_map;       // subgraph id -> original id (ascending)
  std::vector<NodeId> visited_order;  // original ids in first-visit order
  std::uint64_t restarts = 0;         // deadlock / die-out / re-seed events
  std::uint64_t steps_taken = 0;      // elementary sampler steps
};

// Walks that stop finding new nodes restart at a fresh unvisited node after
// this many stagnant steps (trap escape; deadlocks restart immediately).
std::size_t stall_step_limit(const WeightedDigraph& g);

// Runs the configured sampler. Throws EmptyGraph, TargetTooLarge, or
// ConfigError on invalid parameters.
SampleResult sample(const WeightedDigraph& g, const SamplerConfig& cfg);

// Individual methods (cfg.method is ignored).
SampleResult sample_rwfb(const WeightedDigraph& g, const SamplerConfig& cfg);
SampleResult sample_rws(const WeightedDigraph& g, const SamplerConfig& cfg);
SampleResult sample_rn(const WeightedDigraph& g, const SamplerConfig& cfg);
SampleResult sample_re(const WeightedDigraph& g, const SamplerConfig& cfg);
SampleResult sample_ff(const WeightedDigraph& g, const SamplerConfig& cfg);
SampleResult sample_sb(const WeightedDigraph& g, const SamplerConfig& cfg);

const char* method_name(Method method);
Method method_from_name(const std::string& name);  // throws ConfigError

}  // namespace txnet::sampling
