#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "db/poly.hpp"
#include "db/qgeom.hpp"

namespace db {

// Seeded generator for reproducible samples; coefficients are drawn from {-3..3}.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }
  bool coin() { return uniform(0, 1) == 1; }
  Scalar coef() { return Scalar(uniform(-3, 3)); }
  Scalar nonzero_coef() {
    int c = uniform(1, 6);
    return Scalar(c <= 3 ? c : 3 - c);
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v.at(static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1)));
  }
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

Monomial random_monomial(Rng& rng, int var_from, int var_to, int max_degree);
Poly random_poly(Rng& rng, int var_from, int var_to, int max_degree, int terms);
std::uint16_t random_mask(Rng& rng, int from, int to, int arity);

// Random element with the given wedge arity; coefficients in the coordinate variables.
template <class K>
AltPoly<K> random_alt(Rng& rng, const Dims& d, int arity, int max_degree, int terms);

inline Multivector random_multivector(Rng& rng, const Dims& d, int arity, int max_degree, int terms = 3) {
  return random_alt<VectorKind>(rng, d, arity, max_degree, terms);
}
inline Form random_form(Rng& rng, const Dims& d, int degree, int max_degree, int terms = 3) {
  return random_alt<FormKind>(rng, d, degree, max_degree, terms);
}

// Random SuperPoly of fixed total degree with at most max_even even-variable degree.
SuperPoly random_superpoly(Rng& rng, int m, int degree, int max_even, int terms = 3);

}  // namespace db
