#pragma once

// Weighted directed transaction graph: multi-input/multi-output transaction
// expansion into weighted edges, a compact immutable adjacency representation
// with both edge directions, and the structural queries shared by the
// sampling, metrics and evaluation layers.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "txnet/errors.hpp"

namespace txnet {

using NodeId = std::uint32_t;

// Smallest currency units per coin. Amounts are carried as 64-bit integers in
// smallest units during ingestion; edge weights are coin-denominated reals.
inline constexpr std::int64_t kCoin = 100'000'000;

struct Neighbor {
  NodeId node;
  double weight;
};

struct WeightedEdge {
  NodeId src;
  NodeId dst;
  double weight;
};

// One transaction: input and output (address, amount) pairs, amounts in
// smallest currency units. A record must have at least one entry per side.
struct TransactionRecord {
  std::string tx_id;
  std::vector<std::pair<std::string, std::int64_t>> inputs;
  std::vector<std::pair<std::string, std::int64_t>> outputs;

  std::int64_t input_sum() const;
  std::int64_t output_sum() const;
};

// Edge produced by transaction expansion, still keyed by address string.
struct AddressEdge {
  std::string src;
  std::string dst;
  double weight;  // coin units
};

// Expands a transaction with x inputs and y outputs into x*y directed edges:
// weight(i -> j) = (input_i / sum inputs) * output_j, expressed in coins.
// Column sums reproduce each output amount up to floating rounding.
// Throws EmptySide / ZeroInputSum / InvalidAmount.
std::vector<AddressEdge> expand_transaction(const TransactionRecord& tx);

enum class DegreeMode { In, Out, Total };

// Immutable directed graph with collapsed parallel edges.
//
// Parallel (src, dst) pairs are collapsed at build time by summing weights;
// the collapse multiplicity is kept per edge. Self-loops are retained and
// counted. Both adjacency directions are stored, each sorted by neighbor id.
// Instances are safe for concurrent reads once built.
class WeightedDigraph {
public:
  WeightedDigraph() = default;

  std::size_t node_count() const { return node_count_; }
  // Distinct directed (src, dst) pairs, self-loops included.
  std::size_t edge_count() const { return out_nbrs_.size(); }
  std::size_t self_loop_count() const { return self_loops_; }
  double total_weight() const { return total_weight_; }

  std::span<const Neighbor> out(NodeId u) const {
    return {out_nbrs_.data() + out_off_[u], out_off_[u + 1] - out_off_[u]};
  }
  std::span<const Neighbor> in(NodeId u) const {
    return {in_nbrs_.data() + in_off_[u], in_off_[u + 1] - in_off_[u]};
  }
  // Collapse counts aligned with out(u).
  std::span<const std::uint32_t> out_multiplicity(NodeId u) const {
    return {out_mult_.data() + out_off_[u], out_off_[u + 1] - out_off_[u]};
  }

  std::size_t out_degree(NodeId u) const { return out_off_[u + 1] - out_off_[u]; }
  std::size_t in_degree(NodeId u) const { return in_off_[u + 1] - in_off_[u]; }
  // In-degree + out-degree; a self-loop counts once in each direction.
  std::size_t total_degree(NodeId u) const { return out_degree(u) + in_degree(u); }

  bool has_edge(NodeId u, NodeId v) const;
  // Collapsed weight of u -> v, 0 when the edge is absent.
  double edge_weight(NodeId u, NodeId v) const;
  bool has_self_loop(NodeId u) const { return has_edge(u, u); }

  // True when the graph was constructed as an undirected (symmetric) graph.
  bool is_symmetric() const { return symmetric_; }

  bool has_labels() const { return !labels_.empty(); }
  // Stored node label, or the decimal id for label-free graphs.
  std::string label(NodeId u) const;

  // Induced subgraph on the given original node ids (need not be sorted,
  // must be distinct). Result ids follow ascending original id; labels are
  // carried over so node identity survives re-indexing.
  WeightedDigraph induced_subgraph(std::span<const NodeId> nodes) const;
  // Original node ids in induced-subgraph id order (ascending).
  static std::vector<NodeId> induced_order(std::span<const NodeId> nodes);

  bool operator==(const WeightedDigraph& other) const;

private:
  friend WeightedDigraph build_graph(std::size_t, std::vector<WeightedEdge>,
                                     std::vector<std::string>, bool);
  friend WeightedDigraph transpose(const WeightedDigraph&);

  std::size_t node_count_ = 0;
  std::vector<std::size_t> out_off_{0};
  std::vector<std::size_t> in_off_{0};
  std::vector<Neighbor> out_nbrs_;
  std::vector<Neighbor> in_nbrs_;
  std::vector<std::uint32_t> out_mult_;
  std::vector<std::string> labels_;
  std::size_t self_loops_ = 0;
  double total_weight_ = 0.0;
  bool symmetric_ = false;
};

// Builds a graph from an edge stream. Duplicate (src, dst) pairs are summed
// (multiplicity recorded); edges are canonically sorted first, so any
// permutation of the input yields a bit-identical graph. labels, when given,
// must have node_count entries. symmetric marks graphs whose edge set is
// undirected by construction.
WeightedDigraph build_graph(std::size_t node_count, std::vector<WeightedEdge> edges,
                            std::vector<std::string> labels = {}, bool symmetric = false);

// Unweighted collapsed-edge degree. Throws NodeOutOfRange.
std::size_t degree(const WeightedDigraph& g, NodeId node, DegreeMode mode);

// Graph with all edges reversed. transpose(transpose(g)) == g.
WeightedDigraph transpose(const WeightedDigraph& g);

// Symmetric graph with edge {i, j} iff i->j or j->i exists, weighted by the
// sum of both directions. Self-loops are dropped. Projecting an already
// symmetric graph returns it unchanged (idempotent).
WeightedDigraph undirected_projection(const WeightedDigraph& g);

// Label-respecting equality: same node set (by label) and same collapsed
// adjacency, with weights compared to a relative tolerance. Multiplicities
// and node numbering are ignored.
bool graphs_equivalent(const WeightedDigraph& a, const WeightedDigraph& b,
                       double weight_rel_tol = 0.0);

// Densifying address -> NodeId map (bijective by construction).
class AddressIndex {
public:
  NodeId intern(std::string_view address);
  const std::string& address(NodeId id) const { return addresses_[id]; }
  bool contains(std::string_view address) const {
    return ids_.find(std::string(address)) != ids_.end();
  }
  std::size_t size() const { return addresses_.size(); }
  std::vector<std::string> take_addresses() { return std::move(addresses_); }

private:
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> addresses_;
};

// Accumulates address-keyed edges (directly or via transaction expansion)
// and builds the final graph. Single-writer; build() consumes the buffer.
class GraphAssembler {
public:
  // Expands and appends one transaction's edges.
  void add_transaction(const TransactionRecord& tx);
  void add_edge(std::string_view src, std::string_view dst, double weight);

  std::size_t pending_edges() const { return edges_.size(); }
  std::size_t address_count() const { return addresses_.size(); }

  WeightedDigraph build();

private:
  AddressIndex addresses_;
  std::vector<WeightedEdge> edges_;
};

}  // namespace txnet
