#pragma once

#include <stdexcept>
#include <string>

namespace txnet {

// Broad failure categories; the CLI maps them to exit codes
// (config -> 2, size -> 3, io -> 4, data -> 2).
enum class ErrorKind { Config, Data, Size, Io };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};
struct DataError : Error {
  explicit DataError(const std::string& w) : Error(ErrorKind::Data, w) {}
};
struct SizeError : Error {
  explicit SizeError(const std::string& w) : Error(ErrorKind::Size, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};

// graph-core
struct EmptySide : DataError {
  explicit EmptySide(const std::string& tx)
      : DataError("transaction '" + tx + "' has an empty input or output side") {}
};
struct ZeroInputSum : DataError {
  explicit ZeroInputSum(const std::string& tx)
      : DataError("transaction '" + tx + "' has zero total input; edge weights undefined") {}
};
struct InvalidAmount : DataError {
  explicit InvalidAmount(const std::string& w) : DataError(w) {}
};
struct NodeOutOfRange : ConfigError {
  NodeOutOfRange(std::size_t node, std::size_t count)
      : ConfigError("node " + std::to_string(node) + " out of range (node count " +
                    std::to_string(count) + ")") {}
};

// ingest
struct FormatError : DataError {
  explicit FormatError(const std::string& w) : DataError(w) {}
};
struct MalformedLine : DataError {
  MalformedLine(std::size_t line_no, const std::string& w)
      : DataError("line " + std::to_string(line_no) + ": " + w), line(line_no) {}
  std::size_t line;
};

// sampling
struct TargetTooLarge : ConfigError {
  TargetTooLarge(std::size_t target, std::size_t nodes)
      : ConfigError("target_nodes " + std::to_string(target) + " exceeds graph size " +
                    std::to_string(nodes)) {}
};
struct EmptyGraph : ConfigError {
  explicit EmptyGraph(const std::string& op)
      : ConfigError(op + ": graph has no nodes") {}
};

// metrics
struct InsufficientData : DataError {
  explicit InsufficientData(const std::string& w) : DataError(w) {}
};
struct GraphTooLargeForExact : SizeError {
  GraphTooLargeForExact(std::size_t nodes, std::size_t cap)
      : SizeError("exact mode limited to " + std::to_string(cap) + " nodes, graph has " +
                  std::to_string(nodes) + "; use pivot/sampled mode") {}
};
struct DisconnectedInput : DataError {
  explicit DisconnectedInput(const std::string& w) : DataError(w) {}
};
struct DegenerateVariance : DataError {
  explicit DegenerateVariance(const std::string& w) : DataError(w) {}
};

// reference graphs
struct TooManyEdges : ConfigError {
  TooManyEdges(std::size_t m, std::size_t max_m)
      : ConfigError("requested " + std::to_string(m) + " edges, maximum is " +
                    std::to_string(max_m)) {}
};
struct InvalidDegree : ConfigError {
  explicit InvalidDegree(const std::string& w) : ConfigError(w) {}
};

// evaluation
struct EmptySample : DataError {
  explicit EmptySample(const std::string& w) : DataError(w) {}
};
struct GraphTooLarge : SizeError {
  GraphTooLarge(std::size_t nodes, std::size_t cap)
      : SizeError("graph with " + std::to_string(nodes) +
                  " nodes exceeds the kernel size cap " + std::to_string(cap) +
                  "; pre-sample it first") {}
};

}  // namespace txnet
