#pragma once

#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "padyn/error.hpp"

namespace padyn::test {

// Runs `f` and checks that it throws padyn::Error with `code`.
template <class F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    FAIL("expected " << to_string(code));
  } catch (const Error& e) {
    CHECK_MESSAGE(e.code() == code, e.what());
  }
}

inline PadicScalar q(const FieldConfig& f, long num, long den = 1) { return PadicScalar::from_rational(f, num, den); }

inline FinVector vec(const FieldConfig& f, IndexDomain d, std::initializer_list<std::pair<Index, PadicScalar>> xs) {
  FinVector v(f, d);
  for (const auto& [i, s] : xs) v.set(i, s);
  return v;
}

inline oracle::Q random_q(std::mt19937_64& rng, unsigned p, int vlo, int vhi) {
  std::uniform_int_distribution<long> digit(1, 99);
  std::uniform_int_distribution<int> val(vlo, vhi);
  long a = 0;
  long b = 0;
  do a = digit(rng);
  while (a % static_cast<long>(p) == 0);
  do b = digit(rng);
  while (b % static_cast<long>(p) == 0);
  oracle::Q r(a, b);
  r.canonicalize();
  const int v = val(rng);
  mpz_class pv;
  mpz_ui_pow_ui(pv.get_mpz_t(), p, static_cast<unsigned long>(v < 0 ? -v : v));
  if (v >= 0) r *= pv;
  else r /= pv;
  return (rng() & 1U) ? oracle::Q(-r) : r;
}

}  // namespace padyn::test
