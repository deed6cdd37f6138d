#pragma once

// Transaction-dump parsing and the canonical on-disk edge-list format.
//
// Transaction files come in two layouts, both with coin-denominated amounts:
//   jsonl  one JSON object per line:
//          {"tx":"t1","in":[["A",2],["B",8]],"out":[["C",2],["D",3],["E",4]]}
//   csv    header "tx,side,address,amount"; one row per transaction entry,
//          side is "in" or "out", rows of one transaction are contiguous.
// Edge lists are TSV "src<TAB>dst<TAB>weight" in UTF-8; '#'-prefixed comment
// lines are ignored. Isolated nodes are not representable in an edge list.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "txnet/graph.hpp"

namespace txnet::ingest {

enum class TxFormat { Jsonl, Csv };

struct IngestStats {
  std::uint64_t transactions_read = 0;      // accepted records
  std::uint64_t transactions_rejected = 0;  // malformed or invalid records
  std::uint64_t edges_emitted = 0;          // sum of |inputs|*|outputs| over accepted
  std::uint64_t distinct_addresses = 0;     // over accepted records
  std::vector<std::string> warnings;
};

using TransactionSink = std::function<void(TransactionRecord&&)>;

// Streams records from a transaction dump into sink, in file order.
// Malformed records are counted and skipped; the stream never aborts after
// the first valid record. Throws IoError when the file cannot be read and
// FormatError when the CSV header or the first record is unparseable.
IngestStats parse_transactions(const std::filesystem::path& path, TxFormat format,
                               const TransactionSink& sink);

// Exact decimal-coin parse into smallest units, e.g. "2.5" -> 250000000.
// At most 8 fractional digits; throws InvalidAmount on anything else.
std::int64_t parse_decimal_amount(std::string_view text);

// Reads a TSV edge list; addresses are densified in order of first
// appearance and duplicate lines collapse by weight summation.
// Throws IoError / MalformedLine.
WeightedDigraph read_edge_list(const std::filesystem::path& path);

// Writes the canonical edge list: one comment header, then one line per
// collapsed edge sorted by (src, dst), weights with 12 significant digits.
// Output is deterministic; read_edge_list(write_edge_list(g)) reproduces g
// up to node numbering, collapse counts, and weight serialization precision.
void write_edge_list(const WeightedDigraph& g, const std::filesystem::path& path);

}  // namespace txnet::ingest
