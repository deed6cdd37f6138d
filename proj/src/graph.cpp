#include "txnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace txnet {

std::int64_t TransactionRecord::input_sum() const {
  std::int64_t sum = 0;
  for (const auto& [addr, amount] : inputs) sum += amount;
  return sum;
}

std::int64_t TransactionRecord::output_sum() const {
  std::int64_t sum = 0;
  for (const auto& [addr, amount] : outputs) sum += amount;
  return sum;
}

std::vector<AddressEdge> expand_transaction(const TransactionRecord& tx) {
  if (tx.inputs.empty() || tx.outputs.empty()) throw EmptySide(tx.tx_id);
  for (const auto& [addr, amount] : tx.inputs)
    if (amount < 0) throw InvalidAmount("transaction '" + tx.tx_id + "': negative input amount");
  for (const auto& [addr, amount] : tx.outputs)
    if (amount < 0) throw InvalidAmount("transaction '" + tx.tx_id + "': negative output amount");

  const std::int64_t total_in = tx.input_sum();
  if (total_in == 0) throw ZeroInputSum(tx.tx_id);

  std::vector<AddressEdge> edges;
  edges.reserve(tx.inputs.size() * tx.outputs.size());
  const double denom = static_cast<double>(total_in);
  for (const auto& [in_addr, in_amount] : tx.inputs) {
    const double in_part = static_cast<double>(in_amount);
    for (const auto& [out_addr, out_amount] : tx.outputs) {
      // Multiply before dividing: keeps integer-valued products exact.
      const double w =
          in_part * static_cast<double>(out_amount) / denom / static_cast<double>(kCoin);
      edges.push_back({in_addr, out_addr, w});
    }
  }
  return edges;
}

WeightedDigraph build_graph(std::size_t node_count, std::vector<WeightedEdge> edges,
                            std::vector<std::string> labels, bool symmetric) {
  if (!labels.empty() && labels.size() != node_count)
    throw ConfigError("label table size does not match node count");
  for (const WeightedEdge& e : edges) {
    if (e.src >= node_count || e.dst >= node_count)
      throw NodeOutOfRange(std::max(e.src, e.dst), node_count);
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      throw ConfigError("edge weight must be finite and non-negative");
  }

  // Canonical order (src, dst, weight) makes construction independent of the
  // input permutation, including the float summation order of duplicates.
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.weight < b.weight;
  });

  WeightedDigraph g;
  g.node_count_ = node_count;
  g.labels_ = std::move(labels);
  g.symmetric_ = symmetric;
  g.out_off_.assign(node_count + 1, 0);
  g.in_off_.assign(node_count + 1, 0);

  std::size_t i = 0;
  while (i < edges.size()) {
    std::size_t j = i;
    double w = 0.0;
    while (j < edges.size() && edges[j].src == edges[i].src && edges[j].dst == edges[i].dst) {
      w += edges[j].weight;
      ++j;
    }
    g.out_nbrs_.push_back({edges[i].dst, w});
    g.out_mult_.push_back(static_cast<std::uint32_t>(j - i));
    g.out_off_[edges[i].src + 1]++;
    g.in_off_[edges[i].dst + 1]++;
    g.total_weight_ += w;
    if (edges[i].src == edges[i].dst) g.self_loops_++;
    i = j;
  }
  for (std::size_t u = 0; u < node_count; ++u) {
    g.out_off_[u + 1] += g.out_off_[u];
    g.in_off_[u + 1] += g.in_off_[u];
  }

  // Transposed adjacency via counting sort; a second pass per source keeps
  // in-lists sorted by source id because collapsed edges are already sorted.
  g.in_nbrs_.resize(g.out_nbrs_.size());
  std::vector<std::size_t> cursor(g.in_off_.begin(), g.in_off_.end() - 1);
  std::size_t edge_idx = 0;
  for (std::size_t u = 0; u < node_count; ++u) {
    for (std::size_t k = g.out_off_[u]; k < g.out_off_[u + 1]; ++k, ++edge_idx) {
      const Neighbor& nb = g.out_nbrs_[k];
      g.in_nbrs_[cursor[nb.node]++] = {static_cast<NodeId>(u), nb.weight};
    }
  }
  return g;
}

bool WeightedDigraph::has_edge(NodeId u, NodeId v) const {
  auto nbrs = out(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                             [](const Neighbor& n, NodeId id) { return n.node < id; });
  return it != nbrs.end() && it->node == v;
}

double WeightedDigraph::edge_weight(NodeId u, NodeId v) const {
  auto nbrs = out(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                             [](const Neighbor& n, NodeId id) { return n.node < id; });
  return (it != nbrs.end() && it->node == v) ? it->weight : 0.0;
}

std::string WeightedDigraph::label(NodeId u) const {
  if (u >= node_count_) throw NodeOutOfRange(u, node_count_);
  return labels_.empty() ? std::to_string(u) : labels_[u];
}

std::vector<NodeId> WeightedDigraph::induced_order(std::span<const NodeId> nodes) {
  std::vector<NodeId> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

WeightedDigraph WeightedDigraph::induced_subgraph(std::span<const NodeId> nodes) const {
  std::vector<NodeId> sorted = induced_order(nodes);
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k)
    if (sorted[k] == sorted[k + 1]) throw ConfigError("induced_subgraph: duplicate node id");
  if (!sorted.empty() && sorted.back() >= node_count_)
    throw NodeOutOfRange(sorted.back(), node_count_);

  std::vector<NodeId> new_id(node_count_, std::numeric_limits<NodeId>::max());
  for (std::size_t k = 0; k < sorted.size(); ++k) new_id[sorted[k]] = static_cast<NodeId>(k);

  std::vector<WeightedEdge> edges;
  std::vector<std::string> labels;
  labels.reserve(sorted.size());
  for (NodeId orig : sorted) labels.push_back(label(orig));
  // Collect surviving edges with their collapse counts replayed, so the
  // subgraph keeps original weights and multiplicities.
  std::vector<std::uint32_t> mult;
  for (NodeId orig : sorted) {
    auto nbrs = out(orig);
    auto mults = out_multiplicity(orig);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (new_id[nbrs[k].node] == std::numeric_limits<NodeId>::max()) continue;
      edges.push_back({new_id[orig], new_id[nbrs[k].node], nbrs[k].weight});
      mult.push_back(mults[k]);
    }
  }
  WeightedDigraph sub = build_graph(sorted.size(), std::move(edges), std::move(labels), symmetric_);
  // Edges were already collapsed and emitted in canonical order.
  sub.out_mult_ = std::move(mult);
  return sub;
}

bool WeightedDigraph::operator==(const WeightedDigraph& other) const {
  if (node_count_ != other.node_count_) return false;
  if (out_off_ != other.out_off_ || in_off_ != other.in_off_) return false;
  if (out_mult_ != other.out_mult_) return false;
  if (out_nbrs_.size() != other.out_nbrs_.size()) return false;
  for (std::size_t k = 0; k < out_nbrs_.size(); ++k)
    if (out_nbrs_[k].node != other.out_nbrs_[k].node ||
        out_nbrs_[k].weight != other.out_nbrs_[k].weight)
      return false;
  if (labels_ != other.labels_) return false;
  return symmetric_ == other.symmetric_;
}

std::size_t degree(const WeightedDigraph& g, NodeId node, DegreeMode mode) {
  if (node >= g.node_count()) throw NodeOutOfRange(node, g.node_count());
  switch (mode) {
    case DegreeMode::In: return g.in_degree(node);
    case DegreeMode::Out: return g.out_degree(node);
    default: return g.total_degree(node);
  }
}

WeightedDigraph transpose(const WeightedDigraph& g) {
  std::vector<WeightedEdge> edges;
  edges.reserve(g.edge_count());
  std::vector<std::uint32_t> mult;
  mult.reserve(g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto nbrs = g.out(u);
    auto mults = g.out_multiplicity(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      edges.push_back({nbrs[k].node, u, nbrs[k].weight});
      mult.push_back(mults[k]);
    }
  }
  std::vector<std::string> labels;
  if (g.has_labels())
    for (NodeId u = 0; u < g.node_count(); ++u) labels.push_back(g.label(u));

  // Rebuild, then restore multiplicities in the transposed canonical order.
  std::vector<std::size_t> order(edges.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (edges[a].src != edges[b].src) return edges[a].src < edges[b].src;
    return edges[a].dst < edges[b].dst;
  });
  std::vector<WeightedEdge> sorted_edges(edges.size());
  std::vector<std::uint32_t> sorted_mult(edges.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted_edges[k] = edges[order[k]];
    sorted_mult[k] = mult[order[k]];
  }
  WeightedDigraph t =
      build_graph(g.node_count(), std::move(sorted_edges), std::move(labels), g.is_symmetric());
  // build_graph cannot merge anything here (pairs were distinct), so the
  // canonical edge order matches sorted_mult; restore the collapse counts.
  t.out_mult_ = std::move(sorted_mult);
  return t;
}

WeightedDigraph undirected_projection(const WeightedDigraph& g) {
  if (g.is_symmetric() && g.self_loop_count() == 0) return g;

  std::vector<WeightedEdge> edges;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const Neighbor& nb : g.out(u)) {
      const NodeId v = nb.node;
      if (v == u) continue;  // self-loops dropped
      if (v < u && g.has_edge(v, u)) continue;  // already emitted from (v, u)
      const double w = nb.weight + g.edge_weight(v, u);
      edges.push_back({u, v, w});
      edges.push_back({v, u, w});
    }
  }
  std::vector<std::string> labels;
  if (g.has_labels())
    for (NodeId u = 0; u < g.node_count(); ++u) labels.push_back(g.label(u));
  return build_graph(g.node_count(), std::move(edges), std::move(labels), true);
}

bool graphs_equivalent(const WeightedDigraph& a, const WeightedDigraph& b,
                       double weight_rel_tol) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;

  std::unordered_map<std::string, NodeId> b_ids;
  b_ids.reserve(b.node_count());
  for (NodeId u = 0; u < b.node_count(); ++u)
    if (!b_ids.emplace(b.label(u), u).second) return false;

  std::vector<NodeId> map_ab(a.node_count());
  for (NodeId u = 0; u < a.node_count(); ++u) {
    auto it = b_ids.find(a.label(u));
    if (it == b_ids.end()) return false;
    map_ab[u] = it->second;
  }

  auto weights_close = [weight_rel_tol](double x, double y) {
    const double diff = std::abs(x - y);
    return diff <= weight_rel_tol * std::max({std::abs(x), std::abs(y), 1e-300});
  };

  for (NodeId u = 0; u < a.node_count(); ++u) {
    auto nbrs = a.out(u);
    if (nbrs.size() != b.out_degree(map_ab[u])) return false;
    for (const Neighbor& nb : nbrs) {
      const NodeId bv = map_ab[nb.node];
      if (!b.has_edge(map_ab[u], bv)) return false;
      if (!weights_close(nb.weight, b.edge_weight(map_ab[u], bv))) return false;
    }
  }
  return true;
}

NodeId AddressIndex::intern(std::string_view address) {
  auto [it, inserted] = ids_.emplace(std::string(address), static_cast<NodeId>(addresses_.size()));
  if (inserted) addresses_.push_back(it->first);
  return it->second;
}

void GraphAssembler::add_transaction(const TransactionRecord& tx) {
  for (const AddressEdge& e : expand_transaction(tx)) add_edge(e.src, e.dst, e.weight);
}

void GraphAssembler::add_edge(std::string_view src, std::string_view dst, double weight) {
  if (src.find_first_of("\t\n\r") != std::string_view::npos ||
      dst.find_first_of("\t\n\r") != std::string_view::npos)
    throw ConfigError("addresses must not contain tab or newline characters");
  edges_.push_back({addresses_.intern(src), addresses_.intern(dst), weight});
}

WeightedDigraph GraphAssembler::build() {
  const std::size_t n = addresses_.size();
  return build_graph(n, std::move(edges_), addresses_.take_addresses());
}

}  // namespace txnet
