#ifndef SMX_ERROR_HPP
#define SMX_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace smx {

enum class ErrorKind {
  Lookup,          // unknown node, class or predicate identifier
  Parse,           // malformed input line
  Classification,  // node used with incompatible roles
  Resolution,      // identifier in a side file not present in the graph
  EmptyGraph,      // graph without any class
  Cycle,           // subClassOf cycle
  Usage,           // annotation statistics missing or zero where required
  InfiniteIC,      // extrinsic IC of a class without instances
  Degenerate,      // estimator undefined on this taxonomy (e.g. |C| = 1)
  Ordering,        // pair expected to be ordered by subsumption is not
  Contract,        // parameter or argument outside the operation's contract
  Polarity,        // similarity/distance mismatch
  Redundancy,      // path-based measure on a taxonomy with redundant edges
  Unreachable,     // no path between two nodes
  Divergence,      // random walk does not reach its target almost surely
};

[[nodiscard]] constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Lookup: return "lookup error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Classification: return "classification error";
    case ErrorKind::Resolution: return "resolution error";
    case ErrorKind::EmptyGraph: return "empty graph";
    case ErrorKind::Cycle: return "cycle error";
    case ErrorKind::Usage: return "usage error";
    case ErrorKind::InfiniteIC: return "infinite IC";
    case ErrorKind::Degenerate: return "degenerate taxonomy";
    case ErrorKind::Ordering: return "ordering error";
    case ErrorKind::Contract: return "contract error";
    case ErrorKind::Polarity: return "polarity error";
    case ErrorKind::Redundancy: return "redundant taxonomy";
    case ErrorKind::Unreachable: return "unreachable";
    case ErrorKind::Divergence: return "divergence";
  }
  return "error";
}

/// Every data or contract failure raised by the library. The CLI maps these
/// to exit status 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_{kind} {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Error tied to a position in an input stream (1-based line).
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, const std::string& message)
      : Error(kind, "line " + std::to_string(line) + ": " + message), line_{line} {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace smx

#endif  // SMX_ERROR_HPP
