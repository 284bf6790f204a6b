#pragma once

// Sequences that are eventually "geometric times polynomial":
//
//   x_i = head_i                                   for i <  start
//   x_i = ratio^i * sum_k c_k * C(i - start, k)    for i >= start
//
// The right inverse of lambda*I + mu*B maps c00 into exactly this class
// (ratio = -lambda/mu), and lambda*I + mu*B maps it back, so composing the
// two can be carried out without truncation. The binomial basis makes the
// forward difference and the discrete antiderivative index shifts.

#include <map>
#include <optional>
#include <string>

#include "padyn/seq.hpp"

namespace padyn {

class GeometricTail {
 public:
  using Coefficients = std::map<std::int64_t, PadicScalar>;

  /// `ratio` must be nonzero; zero coefficients are dropped.
  GeometricTail(Index start, PadicScalar ratio, Coefficients coeffs);

  Index start() const noexcept { return start_; }
  const PadicScalar& ratio() const noexcept { return ratio_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::int64_t min_degree() const;
  std::int64_t degree() const;
  NormExp max_coefficient_norm() const;

  /// sum_k c_k C(i - start, k); requires i >= start.
  PadicScalar poly(Index i) const;
  /// ratio^i * poly(i); requires i >= start.
  PadicScalar value(Index i) const;

  /// The same sequence with the tail starting at `new_start` >= start; the
  /// values at [start, new_start) are returned through `spill`.
  GeometricTail rebased(Index new_start, FinVector& spill) const;

  friend bool operator==(const GeometricTail&, const GeometricTail&) = default;

 private:
  Index start_;
  PadicScalar ratio_;
  Coefficients coeffs_;
};

class TailedVector {
 public:
  /// A finitely supported vector.
  TailedVector(FinVector head);  // NOLINT(google-explicit-constructor)
  /// `head` must be supported below `tail.start()`.
  TailedVector(FinVector head, GeometricTail tail);

  const FieldConfig& field() const noexcept { return head_.field(); }
  IndexDomain domain() const noexcept { return head_.domain(); }
  const FinVector& head() const noexcept { return head_; }
  const std::optional<GeometricTail>& tail() const noexcept { return tail_; }
  bool finitely_supported() const noexcept { return !tail_.has_value(); }
  /// The head; throws InfiniteSupport when a tail is present.
  const FinVector& to_finite() const;

  PadicScalar at(Index i) const;

  /// Both vectors rebased so that their tails (if any) start at a common index.
  friend bool operator==(const TailedVector& a, const TailedVector& b);

  std::string str() const;

 private:
  FinVector head_;
  std::optional<GeometricTail> tail_;
};

/// Exact sup norm. Throws NotInC0 when a nonzero tail has |ratio| >= 1.
NormExp sup_norm(const TailedVector& x);
TailedVector vec_add(const TailedVector& x, const TailedVector& y);
TailedVector vec_sub(const TailedVector& x, const TailedVector& y);
TailedVector vec_scale(const PadicScalar& lambda, const TailedVector& x);
NormExp dist(const FinVector& x, const TailedVector& y);
bool ball_contains(const Ball& b, const TailedVector& x);

/// C(m, k) for m >= 0, k >= 0 as an exact integer (0 when k > m).
mpz_class binomial_integer(std::int64_t m, std::int64_t k);

}  // namespace padyn
