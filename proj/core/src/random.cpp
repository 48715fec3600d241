#include "db/random.hpp"

#include <stdexcept>

namespace db {

Monomial random_monomial(Rng& rng, int var_from, int var_to, int max_degree) {
  Monomial m;
  if (var_to <= var_from) return m;
  const int deg = rng.uniform(0, max_degree);
  for (int k = 0; k < deg; ++k) ++m.e[rng.uniform(var_from, var_to - 1)];
  return m;
}

Poly random_poly(Rng& rng, int var_from, int var_to, int max_degree, int terms) {
  Poly p;
  for (int k = 0; k < terms; ++k) p.add(random_monomial(rng, var_from, var_to, max_degree), rng.nonzero_coef());
  return p;
}

std::uint16_t random_mask(Rng& rng, int from, int to, int arity) {
  const int n = to - from;
  if (arity < 0 || arity > n) throw std::invalid_argument("random_mask: arity out of range");
  std::vector<int> idx;
  for (int i = from; i < to; ++i) idx.push_back(i);
  std::uint16_t m = 0;
  for (int k = 0; k < arity; ++k) {
    const int j = rng.uniform(0, static_cast<int>(idx.size()) - 1);
    m |= static_cast<std::uint16_t>(1u << idx[j]);
    idx.erase(idx.begin() + j);
  }
  return m;
}

template <class K>
AltPoly<K> random_alt(Rng& rng, const Dims& d, int arity, int max_degree, int terms) {
  AltPoly<K> a(d);
  if (arity < 0 || arity > d.coords()) return a;
  for (int k = 0; k < terms; ++k)
    a.add(AltKey{random_monomial(rng, 0, d.coords(), max_degree), random_mask(rng, 0, d.coords(), arity)},
          rng.nonzero_coef());
  return a;
}

template AltPoly<VectorKind> random_alt(Rng&, const Dims&, int, int, int);
template AltPoly<FormKind> random_alt(Rng&, const Dims&, int, int, int);

SuperPoly random_superpoly(Rng& rng, int m, int degree, int max_even, int terms) {
  SuperPoly f(m);
  for (int k = 0; k < terms; ++k) {
    // choose the number of P's, then odd variables to fill the degree
    const int max_p = std::min(degree / 2, max_even);
    const int np = rng.uniform(0, max_p);
    const int odd = degree - 2 * np;
    if (odd > 2 * m) continue;
    AltKey key;
    key.wedge = random_mask(rng, 0, 2 * m, odd);
    for (int i = 0; i < np; ++i) ++key.mono.e[m + rng.uniform(0, m - 1)];
    const int nx = rng.uniform(0, max_even - np);
    for (int i = 0; i < nx; ++i) ++key.mono.e[rng.uniform(0, m - 1)];
    f.add(key, rng.nonzero_coef());
  }
  return f;
}

}  // namespace db
