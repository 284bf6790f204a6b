#pragma once

// Finitely supported vectors of c0(N) and c0(Z) with the sup norm.

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "padyn/field.hpp"

namespace padyn {

using Index = std::int64_t;

/// Naturals are the indices >= 1; Integers is all of Z.
enum class IndexDomain { Naturals, Integers };

std::string_view to_string(IndexDomain d);
bool in_domain(Index i, IndexDomain d);

/// Element of c00: a finite map index -> nonzero scalar.
class FinVector {
 public:
  using Entries = std::map<Index, PadicScalar>;

  FinVector(FieldConfig field, IndexDomain domain) : field_(field), domain_(domain) {}

  static FinVector basis(FieldConfig field, Index n, IndexDomain domain);

  const FieldConfig& field() const noexcept { return field_; }
  IndexDomain domain() const noexcept { return domain_; }
  const Entries& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }
  std::size_t support_size() const noexcept { return entries_.size(); }
  Index min_index() const;
  Index max_index() const;

  /// Coordinate i; zero when absent.
  PadicScalar at(Index i) const;
  /// Sets coordinate i, erasing it when `value` is zero.
  void set(Index i, const PadicScalar& value);
  /// Adds `value` into coordinate i.
  void accumulate(Index i, const PadicScalar& value);

  friend bool operator==(const FinVector& a, const FinVector& b) {
    return a.field_ == b.field_ && a.domain_ == b.domain_ && a.entries_ == b.entries_;
  }

  /// "1:1/1 4:5/1"; "0" for the zero vector.
  std::string str() const;

 private:
  void check_index(Index i) const;

  FieldConfig field_;
  IndexDomain domain_;
  Entries entries_;
};

NormExp sup_norm(const FinVector& x);
FinVector vec_add(const FinVector& x, const FinVector& y);
FinVector vec_sub(const FinVector& x, const FinVector& y);
FinVector vec_scale(const PadicScalar& lambda, const FinVector& x);
FinVector basis(FieldConfig field, Index n, IndexDomain domain);
NormExp dist(const FinVector& x, const FinVector& y);

/// Closed ball B(center, p^e) or open ball B(center, (p^e)^-).
struct Ball {
  Ball(FinVector center, NormExp radius, bool closed = true);

  FinVector center;
  NormExp radius;
  bool closed = true;

  /// Whether a distance value lies inside this ball's radius.
  bool admits(const NormExp& distance) const {
    return closed ? distance <= radius : distance < radius;
  }
  std::string str() const;
};

bool ball_contains(const Ball& b, const FinVector& x);

}  // namespace padyn
