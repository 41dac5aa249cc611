#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace qsrlab {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Largest power of p dividing v.
inline BigInt p_part(BigInt v, unsigned p) {
  BigInt r = 1;
  if (v == 0) return r;
  while (v % p == 0) {
    v /= p;
    r *= p;
  }
  return r;
}

}  // namespace qsrlab
