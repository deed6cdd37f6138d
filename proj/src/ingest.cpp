#include "txnet/ingest.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <unordered_set>

#include <json.hpp>

namespace txnet::ingest {

namespace {

constexpr std::size_t kMaxStoredWarnings = 100;

void warn(IngestStats& stats, std::string message) {
  if (stats.warnings.size() < kMaxStoredWarnings) stats.warnings.push_back(std::move(message));
}

void check_fee(const TransactionRecord& tx, IngestStats& stats) {
  const std::int64_t in_sum = tx.input_sum();
  if (in_sum > 0 && tx.output_sum() > in_sum)
    warn(stats, "tx '" + tx.tx_id + "': outputs exceed inputs by " +
                    std::to_string(tx.output_sum() - in_sum) + " units");
}

bool valid_record(const TransactionRecord& tx) {
  if (tx.inputs.empty() || tx.outputs.empty()) return false;
  for (const auto& [addr, amount] : tx.inputs)
    if (amount < 0 || addr.empty() || addr.find_first_of("\t\n\r") != std::string::npos)
      return false;
  for (const auto& [addr, amount] : tx.outputs)
    if (amount < 0 || addr.empty() || addr.find_first_of("\t\n\r") != std::string::npos)
      return false;
  return tx.input_sum() > 0;
}

void accept(TransactionRecord&& tx, IngestStats& stats,
            std::unordered_set<std::string>& addresses, const TransactionSink& sink) {
  stats.transactions_read++;
  stats.edges_emitted += tx.inputs.size() * tx.outputs.size();
  for (const auto& [addr, amount] : tx.inputs) addresses.insert(addr);
  for (const auto& [addr, amount] : tx.outputs) addresses.insert(addr);
  check_fee(tx, stats);
  sink(std::move(tx));
}

// Amount fields may be JSON integers, reals, or decimal strings; integers and
// strings convert exactly, reals round to the nearest smallest unit.
std::int64_t amount_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_decimal_amount(v.get<std::string>());
  if (v.is_number_integer()) {
    const std::int64_t coins = v.get<std::int64_t>();
    if (coins < 0 || coins > std::numeric_limits<std::int64_t>::max() / kCoin)
      throw InvalidAmount("amount out of range");
    return coins * kCoin;
  }
  if (v.is_number_float()) {
    const double units = v.get<double>() * static_cast<double>(kCoin);
    if (!(units >= 0.0) || units >= 9.2e18) throw InvalidAmount("amount out of range");
    return std::llround(units);
  }
  throw InvalidAmount("amount must be a number or decimal string");
}

bool side_from_json(const nlohmann::json& arr,
                    std::vector<std::pair<std::string, std::int64_t>>& side) {
  if (!arr.is_array()) return false;
  for (const auto& entry : arr) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string()) return false;
    try {
      side.emplace_back(entry[0].get<std::string>(), amount_from_json(entry[1]));
    } catch (const InvalidAmount&) {
      return false;
    }
  }
  return true;
}

IngestStats parse_jsonl(std::istream& input, const TransactionSink& sink) {
  IngestStats stats;
  std::unordered_set<std::string> addresses;
  std::string line;
  std::size_t line_no = 0;
  bool seen_any = false;
  while (std::getline(input, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json doc = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    bool ok = doc.is_object() && doc.contains("tx") && doc["tx"].is_string() &&
              doc.contains("in") && doc.contains("out");
    TransactionRecord tx;
    if (ok) {
      tx.tx_id = doc["tx"].get<std::string>();
      ok = side_from_json(doc["in"], tx.inputs) && side_from_json(doc["out"], tx.outputs) &&
           valid_record(tx);
    }
    if (!ok) {
      if (!seen_any)
        throw FormatError("line " + std::to_string(line_no) + ": first record unparseable");
      stats.transactions_rejected++;
      continue;
    }
    seen_any = true;
    accept(std::move(tx), stats, addresses, sink);
  }
  stats.distinct_addresses = addresses.size();
  return stats;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

IngestStats parse_csv(std::istream& input, const TransactionSink& sink) {
  IngestStats stats;
  std::unordered_set<std::string> addresses;
  std::string line;
  if (!std::getline(input, line)) return stats;  // empty file
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "tx,side,address,amount")
    throw FormatError("csv header must be 'tx,side,address,amount'");

  TransactionRecord current;
  bool tainted = false;
  bool open = false;

  auto flush = [&]() {
    if (!open) return;
    if (!tainted && valid_record(current)) {
      accept(std::move(current), stats, addresses, sink);
    } else {
      stats.transactions_rejected++;
    }
    current = TransactionRecord{};
    tainted = false;
    open = false;
  };

  while (std::getline(input, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    bool row_ok = fields.size() == 4 && !fields[0].empty() &&
                  (fields[1] == "in" || fields[1] == "out");
    std::int64_t amount = 0;
    if (row_ok) {
      try {
        amount = parse_decimal_amount(fields[3]);
      } catch (const InvalidAmount&) {
        row_ok = false;
      }
    }
    const std::string& tx_id = fields.empty() ? line : fields[0];
    if (open && tx_id != current.tx_id) flush();
    if (!open) {
      current.tx_id = tx_id;
      open = true;
    }
    if (!row_ok) {
      tainted = true;
      continue;
    }
    auto& side = (fields[1] == "in") ? current.inputs : current.outputs;
    side.emplace_back(fields[2], amount);
  }
  flush();
  stats.distinct_addresses = addresses.size();
  return stats;
}

}  // namespace

std::int64_t parse_decimal_amount(std::string_view text) {
  if (text.empty()) throw InvalidAmount("empty amount");
  std::size_t pos = 0;
  std::int64_t whole = 0;
  bool any_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    const int digit = text[pos] - '0';
    if (whole > (std::numeric_limits<std::int64_t>::max() - digit) / 10)
      throw InvalidAmount("amount out of range: '" + std::string(text) + "'");
    whole = whole * 10 + digit;
    any_digit = true;
    ++pos;
  }
  std::int64_t frac = 0;
  int frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (++frac_digits > 8)
        throw InvalidAmount("more than 8 fractional digits: '" + std::string(text) + "'");
      frac = frac * 10 + (text[pos] - '0');
      any_digit = true;
      ++pos;
    }
  }
  if (!any_digit || pos != text.size())
    throw InvalidAmount("malformed amount: '" + std::string(text) + "'");
  for (int d = frac_digits; d < 8; ++d) frac *= 10;
  if (whole > (std::numeric_limits<std::int64_t>::max() - frac) / kCoin)
    throw InvalidAmount("amount out of range: '" + std::string(text) + "'");
  return whole * kCoin + frac;
}

IngestStats parse_transactions(const std::filesystem::path& path, TxFormat format,
                               const TransactionSink& sink) {
  std::ifstream input(path);
  if (!input) throw IoError("cannot open '" + path.string() + "'");
  return format == TxFormat::Jsonl ? parse_jsonl(input, sink) : parse_csv(input, sink);
}

WeightedDigraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream input(path);
  if (!input) throw IoError("cannot open '" + path.string() + "'");

  GraphAssembler assembler;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos)
      throw MalformedLine(line_no, "expected 'src<TAB>dst<TAB>weight'");
    const std::string src = line.substr(0, t1);
    const std::string dst = line.substr(t1 + 1, t2 - t1 - 1);
    const std::string wtext = line.substr(t2 + 1);
    if (src.empty() || dst.empty()) throw MalformedLine(line_no, "empty address");

    char* end = nullptr;
    const double w = std::strtod(wtext.c_str(), &end);
    if (end != wtext.c_str() + wtext.size() || wtext.empty() || !std::isfinite(w) || w < 0.0)
      throw MalformedLine(line_no, "bad weight '" + wtext + "'");
    assembler.add_edge(src, dst, w);
  }
  return assembler.build();
}

void write_edge_list(const WeightedDigraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "# src\tdst\tweight\n";
  char buf[64];
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const Neighbor& nb : g.out(u)) {
      std::snprintf(buf, sizeof(buf), "%.12g", nb.weight);
      out << g.label(u) << '\t' << g.label(nb.node) << '\t' << buf << '\n';
    }
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace txnet::ingest
