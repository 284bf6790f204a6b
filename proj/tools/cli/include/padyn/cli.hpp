#pragma once

// Experiment spec files and the command runner behind the `padyn` tool.
// The file grammar is documented in docs/spec-format.md and the record
// stream in docs/report-format.md.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "padyn/criteria.hpp"
#include "padyn/seq.hpp"

namespace padyn::cli {

struct Diagnostic {
  /// 1-based; 0 when the problem is not tied to a line.
  int line = 0;
  /// "section.key", or empty.
  std::string key;
  std::string message;
};

/// Carries every diagnostic found; what() lists them one per line.
class SpecError : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation };
  SpecError(Kind kind, std::vector<Diagnostic> diagnostics);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  Kind kind_;
  std::vector<Diagnostic> diagnostics_;
};

std::string_view to_string(SpecError::Kind k);

enum class OperatorKind {
  Identity,
  Scalar,
  UnilateralShift,
  BilateralShift,
  ForwardShift,
  ForwardShiftBilateral,
  LambdaMu,
  RightInverse,
  FiniteDim,
};
std::string_view to_string(OperatorKind k);

enum class PropertyChoice { Hypercyclic, Supercyclic, Both };
std::string_view to_string(PropertyChoice p);

/// (index, value) pairs in file order; indices are distinct.
using VectorLiteral = std::vector<std::pair<std::int64_t, mpq_class>>;

/// One of forward.prefix, forward.period, backward.prefix, backward.period:
/// either valuations (weights p^v) or explicit rational weights.
struct WeightList {
  std::optional<std::vector<std::int64_t>> valuations;
  std::optional<std::vector<mpq_class>> values;

  bool present() const { return valuations || values; }
  friend bool operator==(const WeightList&, const WeightList&) = default;
};

struct WeightSection {
  WeightList forward_prefix;
  WeightList forward_period;
  WeightList backward_prefix;
  WeightList backward_period;

  bool present() const;
  friend bool operator==(const WeightSection&, const WeightSection&) = default;
};

struct BallSpec {
  std::optional<VectorLiteral> center;
  /// Exponent e of the radius p^e.
  std::optional<std::int64_t> radius;
  std::optional<bool> closed;
  friend bool operator==(const BallSpec&, const BallSpec&) = default;
};

struct ExperimentSpec {
  struct Field {
    std::optional<std::int64_t> prime;
    std::optional<std::int64_t> precision;
    friend bool operator==(const Field&, const Field&) = default;
  } field;

  struct Operator {
    std::optional<OperatorKind> kind;
    std::optional<mpq_class> lambda;
    std::optional<mpq_class> mu;
    std::optional<IndexDomain> domain;
    std::optional<std::int64_t> dim;
    friend bool operator==(const Operator&, const Operator&) = default;
  } op;

  WeightSection weights;
  WeightSection perturbation;

  struct Command {
    std::optional<std::string> name;
    std::optional<PropertyChoice> property;
    std::optional<std::string> target;
    std::optional<VectorLiteral> vector;
    std::optional<std::int64_t> n_max;
    std::optional<std::int64_t> depth;
    std::optional<std::int64_t> basis_bound;
    std::optional<std::int64_t> max_threshold;
    std::optional<std::int64_t> multiplier;
    std::optional<std::int64_t> k_max;
    std::optional<std::int64_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<mpq_class> det;
    BallSpec u;
    BallSpec v;
    std::vector<std::pair<VectorLiteral, VectorLiteral>> pairs;
    friend bool operator==(const Command&, const Command&) = default;
  } command;

  /// "section.key" -> line of its definition; not part of equality.
  std::map<std::string, int> lines;

  friend bool operator==(const ExperimentSpec& a, const ExperimentSpec& b) {
    return a.field == b.field && a.op == b.op && a.weights == b.weights && a.perturbation == b.perturbation &&
           a.command == b.command;
  }
};

/// Syntax only: sections, keys, literal shapes. Throws SpecError(Parse).
ExperimentSpec parse_spec_syntax(const std::string& text);
/// Cross-field checks (primality, nonzero weights, required keys for the
/// operator kind). Throws SpecError(Validation).
void validate_spec(const ExperimentSpec& spec);
/// parse_spec_syntax followed by validate_spec.
ExperimentSpec parse_spec(const std::string& text);
/// Canonical text; parse_spec(serialize_spec(s)) == s.
std::string serialize_spec(const ExperimentSpec& spec);

inline const char* const kCommands[] = {"decide", "orbit", "witness", "verify-criterion", "obstruct", "selftest"};

enum class Format { Human, Records };

struct RunOptions {
  std::string command;
  Format format = Format::Human;
  /// Overrides command.seed.
  std::optional<std::uint64_t> seed;
  /// Upper bound on n (orbit, witness, obstruct) and on k (verify-criterion).
  std::optional<std::int64_t> budget;
};

inline constexpr int kExitCompleted = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

struct RunOutput {
  int exit_code = kExitCompleted;
  std::string human;
  /// Line-delimited JSON records, each line terminated by '\n'.
  std::string records;
};

/// Never throws for library or spec errors; they become an error record
/// and exit code 1.
RunOutput run(const ExperimentSpec& spec, const RunOptions& options);

/// The library operator described by the spec (weights summed with the
/// perturbation when one is given). Throws for FiniteDim.
OperatorSpec build_operator(const ExperimentSpec& spec);

}  // namespace padyn::cli
