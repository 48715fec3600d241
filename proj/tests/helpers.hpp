#pragma once

#include <initializer_list>

#include "db/poly.hpp"

namespace testing_helpers {

using namespace db;

inline std::uint16_t bits(std::initializer_list<int> idx) {
  std::uint16_t m = 0;
  for (int i : idx) m |= static_cast<std::uint16_t>(1u << i);
  return m;
}

// Coordinates are 0-based here: x_1 is variable 0.
inline Multivector mv(const Dims& d, const Poly& c, std::initializer_list<int> idx) { return Multivector(d, c, bits(idx)); }
inline Form form(const Dims& d, const Poly& c, std::initializer_list<int> idx) { return Form(d, c, bits(idx)); }
inline Poly one() { return poly_const(Scalar(1)); }
inline Poly var(int i) { return poly_var(i); }
inline Poly cst(long n, long den = 1) { return poly_const(Scalar(n, den)); }

}  // namespace testing_helpers
