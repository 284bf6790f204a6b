#pragma once

// Reference implementation over plain rationals. It shares no code with the
// library beyond conversion of inputs: operators are applied one step at a
// time from their defining formulas and valuations come from trial division.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "padyn/ops.hpp"

namespace padyn::oracle {

using Q = mpq_class;
using QVec = std::map<std::int64_t, Q>;

inline constexpr std::int64_t kInf = INT64_MAX;

std::int64_t val(const mpz_class& n, unsigned p);
/// kInf for zero.
std::int64_t val(const Q& q, unsigned p);
/// max over entries of -val; empty for the zero vector.
std::optional<std::int64_t> norm_exp(const QVec& x, unsigned p);

struct QSeq {
  std::vector<Q> prefix;
  std::vector<Q> period;
  const Q& at(std::uint64_t pos) const;
};

/// a_n from forward (n >= 1) and backward (n <= 0) lists.
struct QWeights {
  QSeq forward;
  std::optional<QSeq> backward;
  const Q& at(std::int64_t n) const;
};

enum class Kind { Identity, Scalar, BilateralBackward, UnilateralBackward, Forward, ForwardBilateral, LambdaMu, RightInverse };

struct QOp {
  Kind kind;
  Q lambda;
  Q mu;
  QWeights weights;
  bool integers = false;
};

/// One application; RightInverse is evaluated on indices <= window_hi only.
QVec step(const QOp& op, const QVec& x, std::int64_t window_hi);
QVec iterate(const QOp& op, std::int64_t n, QVec x, std::int64_t window_hi);

/// C(n, j) lambda^{n-j} mu^j summed against x_{i+j}, straight from the definition.
Q lambda_mu_power_coordinate(const Q& lambda, const Q& mu, std::int64_t n, const QVec& x, std::int64_t i);

QVec from_lib(const FinVector& x);
Q from_lib(const PadicScalar& s);
PadicScalar to_lib(const FieldConfig& f, const Q& q);
FinVector to_lib(const FieldConfig& f, IndexDomain d, const QVec& x);
/// The library operator built from the same data.
OperatorSpec to_lib(const FieldConfig& f, const QOp& op);
WeightModel to_lib(const FieldConfig& f, const QWeights& w);

}  // namespace padyn::oracle
