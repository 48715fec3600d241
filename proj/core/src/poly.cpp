#include "db/poly.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace db {

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) {
    const int e = a.e[i] + b.e[i];
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    m.e[i] = static_cast<std::uint8_t>(e);
  }
  return m;
}

Poly poly_const(const Scalar& c) { return Poly(Monomial{}, c); }

Poly poly_var(int i, const Scalar& c) {
  if (i < 0 || i >= kMaxVars) throw std::invalid_argument("variable index out of range");
  Monomial m;
  m.e[i] = 1;
  return Poly(m, c);
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) out.add(ma * mb, ca * cb);
  return out;
}

Poly power(const Poly& a, int k) {
  Poly r = poly_const(1);
  for (int i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

Poly derivative(const Poly& a, int var) {
  Poly out;
  for (const auto& [m, c] : a) {
    if (m.e[var] == 0) continue;
    Monomial n = m;
    --n.e[var];
    out.add(n, c * Scalar(m.e[var]));
  }
  return out;
}

Poly substitute(const Poly& a, const std::vector<Poly>& images) {
  std::map<std::pair<int, int>, Poly> cache;
  auto pw = [&](int var, int k) -> const Poly& {
    auto key = std::make_pair(var, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, power(images[var], k)).first->second;
  };
  Poly out;
  const int n = static_cast<int>(images.size());
  for (const auto& [m, c] : a) {
    Monomial keep = m;
    Poly term = poly_const(c);
    for (int i = 0; i < n; ++i) {
      if (m.e[i] == 0) continue;
      keep.e[i] = 0;
      term = mul(term, pw(i, m.e[i]));
    }
    out += mul(term, Poly(keep, Scalar(1)));
  }
  return out;
}

Poly set_zero(const Poly& a, int from, int to) {
  Poly out;
  for (const auto& [m, c] : a)
    if (m.degree_in(from, to) == 0) out.add(m, c);
  return out;
}

bool depends_only_on(const Poly& a, int from, int to) {
  for (const auto& [m, c] : a)
    if (m.total() != m.degree_in(from, to)) return false;
  return true;
}

Poly integrate_param(const Poly& a, int s, int t) {
  Poly out;
  for (const auto& [m, c] : a) {
    Monomial n = m;
    const int k = m.e[s];
    n.e[s] = 0;
    if (n.e[t] + k + 1 > 255) throw std::overflow_error("monomial exponent overflow");
    n.e[t] = static_cast<std::uint8_t>(n.e[t] + k + 1);
    out.add(n, c * Scalar(1, k + 1));
  }
  return out;
}

Poly replace_var(const Poly& a, int from, int to) {
  Poly out;
  for (const auto& [m, c] : a) {
    Monomial n = m;
    n.e[from] = 0;
    n.e[to] = static_cast<std::uint8_t>(n.e[to] + m.e[from]);
    out.add(n, c);
  }
  return out;
}

std::string var_name(const Dims& d, int i) {
  if (i < d.base) return "x" + std::to_string(i + 1);
  if (i < d.coords()) return "p" + std::to_string(i - d.base + 1);
  const int j = i - d.coords();
  static const char* names[] = {"t", "s", "u", "r"};
  return j < 4 ? names[j] : "t" + std::to_string(j);
}

int merge_sign(std::uint16_t a, std::uint16_t b) {
  if (a & b) return 0;
  // Count pairs (i in a, j in b) with i > j.
  int inv = 0;
  for (int j = 0; j < 16; ++j)
    if (b & (1u << j)) inv += popcount(static_cast<std::uint16_t>(a >> (j + 1)));
  return inv % 2 ? -1 : 1;
}

template <class K>
AltPoly<K>::AltPoly(Dims d, const Poly& coef, std::uint16_t wedge) : dims_(d) {
  for (const auto& [m, c] : coef) terms_.add(AltKey{m, wedge}, c);
}

template <class K>
AltPoly<K> AltPoly<K>::term(Dims d, const Monomial& m, std::uint16_t wedge, const Scalar& c) {
  AltPoly a(d);
  a.terms_.add(AltKey{m, wedge}, c);
  return a;
}

template <class K>
std::optional<int> AltPoly<K>::arity() const {
  std::optional<int> r;
  for (const auto& [k, c] : terms_) {
    const int a = popcount(k.wedge);
    if (r && *r != a) return std::nullopt;
    r = a;
  }
  return r;
}

template <class K>
Poly AltPoly<K>::coefficient(std::uint16_t wedge) const {
  Poly p;
  for (const auto& [k, c] : terms_)
    if (k.wedge == wedge) p.add(k.mono, c);
  return p;
}

template <class K>
void AltPoly<K>::adopt(const Dims& d) {
  if (dims_ == d) return;
  if (dims_ == Dims{}) {
    dims_ = d;
    return;
  }
  if (d == Dims{}) return;
  throw std::invalid_argument("ambient dimension mismatch");
}

template <class K>
AltPoly<K>& AltPoly<K>::operator+=(const AltPoly& o) {
  adopt(o.dims_);
  terms_ += o.terms_;
  return *this;
}

template <class K>
AltPoly<K>& AltPoly<K>::operator-=(const AltPoly& o) {
  adopt(o.dims_);
  terms_ -= o.terms_;
  return *this;
}

namespace {
Dims common_dims(const Dims& a, const Dims& b) {
  if (a == b || b == Dims{}) return a;
  if (a == Dims{}) return b;
  throw std::invalid_argument("ambient dimension mismatch");
}
}  // namespace

template <class K>
AltPoly<K> wedge(const AltPoly<K>& a, const AltPoly<K>& b) {
  AltPoly<K> out(common_dims(a.dims(), b.dims()));
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      const int s = merge_sign(ka.wedge, kb.wedge);
      if (s == 0) continue;
      out.add(AltKey{ka.mono * kb.mono, static_cast<std::uint16_t>(ka.wedge | kb.wedge)}, Scalar(s) * ca * cb);
    }
  return out;
}

template <class K>
AltPoly<K> scale_by(const Poly& f, const AltPoly<K>& a) {
  AltPoly<K> out(a.dims());
  for (const auto& [m, c] : f)
    for (const auto& [k, ck] : a) out.add(AltKey{m * k.mono, k.wedge}, c * ck);
  return out;
}

template <class K>
AltPoly<K> map_coefficients(const AltPoly<K>& a, const std::function<Poly(const Poly&)>& f) {
  std::map<std::uint16_t, Poly> by_wedge;
  for (const auto& [k, c] : a) by_wedge[k.wedge].add(k.mono, c);
  AltPoly<K> out(a.dims());
  for (const auto& [w, p] : by_wedge) out += AltPoly<K>(a.dims(), f(p), w);
  return out;
}

template <class K>
AltPoly<K> d_param(const AltPoly<K>& a, int param) {
  const int v = a.dims().param_var(param);
  return map_coefficients<K>(a, [v](const Poly& p) { return derivative(p, v); });
}

template <class K>
AltPoly<K> at_param(const AltPoly<K>& a, int param, const Scalar& value) {
  const int v = a.dims().param_var(param);
  std::vector<Poly> images(v + 1);
  for (int i = 0; i < v; ++i) images[i] = poly_var(i);
  images[v] = poly_const(value);
  return map_coefficients<K>(a, [&](const Poly& p) { return substitute(p, images); });
}

template <class K>
std::vector<std::pair<int, AltPoly<K>>> param_expansion(const AltPoly<K>& a, int param) {
  const int v = a.dims().param_var(param);
  std::map<int, AltPoly<K>> parts;
  for (const auto& [k, c] : a) {
    AltKey key = k;
    const int e = key.mono.e[v];
    key.mono.e[v] = 0;
    auto it = parts.try_emplace(e, AltPoly<K>(a.dims())).first;
    it->second.add(key, c);
  }
  return {parts.begin(), parts.end()};
}

template <class K>
int max_param_degree(const AltPoly<K>& a, int param) {
  const int v = a.dims().param_var(param);
  int d = 0;
  for (const auto& [k, c] : a) d = std::max<int>(d, k.mono.e[v]);
  return d;
}

std::string to_string(const Poly& p, const Dims& d) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p) {
    Scalar cc = c;
    if (!first) {
      os << (cc.sign() < 0 ? " - " : " + ");
      if (cc.sign() < 0) cc = -cc;
    }
    first = false;
    bool has_var = m.total() > 0;
    if (!has_var || !(cc == Scalar(1))) {
      if (cc == Scalar(-1) && has_var) {
        os << "-";
      } else {
        os << cc;
        if (has_var) os << "*";
      }
    }
    bool first_var = true;
    for (int i = 0; i < d.vars(); ++i) {
      if (m.e[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << var_name(d, i);
      if (m.e[i] > 1) os << "^" << static_cast<int>(m.e[i]);
    }
  }
  return os.str();
}

template <class K>
std::string to_string(const AltPoly<K>& a) {
  if (a.is_zero()) return "0";
  constexpr bool vec = std::is_same_v<K, VectorKind>;
  std::map<std::uint16_t, Poly> by_wedge;
  for (const auto& [k, c] : a) by_wedge[k.wedge].add(k.mono, c);
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, p] : by_wedge) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(p, a.dims()) << ")";
    for (int i = 0; i < a.dims().coords(); ++i)
      if (w & (1u << i)) os << (vec ? "*d/d" : "*d") << var_name(a.dims(), i);
  }
  return os.str();
}

template class AltPoly<VectorKind>;
template class AltPoly<FormKind>;
template Multivector wedge(const Multivector&, const Multivector&);
template Form wedge(const Form&, const Form&);
template Multivector scale_by(const Poly&, const Multivector&);
template Form scale_by(const Poly&, const Form&);
template Multivector map_coefficients(const Multivector&, const std::function<Poly(const Poly&)>&);
template Form map_coefficients(const Form&, const std::function<Poly(const Poly&)>&);
template Multivector d_param(const Multivector&, int);
template Form d_param(const Form&, int);
template Multivector at_param(const Multivector&, int, const Scalar&);
template Form at_param(const Form&, int, const Scalar&);
template std::vector<std::pair<int, Multivector>> param_expansion(const Multivector&, int);
template std::vector<std::pair<int, Form>> param_expansion(const Form&, int);
template int max_param_degree(const Multivector&, int);
template int max_param_degree(const Form&, int);
template std::string to_string(const Multivector&);
template std::string to_string(const Form&);

}  // namespace db
