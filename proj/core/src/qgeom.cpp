#include "db/qgeom.hpp"

#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace db {

namespace {

std::uint16_t bit(int i) { return static_cast<std::uint16_t>(1u << i); }

void check_dim(int m) {
  if (m < 1 || 2 * m > kMaxVars || 2 * m > 16) throw std::invalid_argument("qgeom: unsupported dimension");
}

int even_var(int m, CoordRef c) { return c.kind == Coord::X ? c.j : m + c.j; }
int odd_bit(int m, CoordRef c) { return c.kind == Coord::SmallP ? c.j : m + c.j; }
bool is_odd(CoordRef c) { return c.kind == Coord::SmallP || c.kind == Coord::V; }

// {z_a, z_b} on coordinates, generated from the two defining relations and
// graded antisymmetry {a,b} = -(-1)^{|a||b|}{b,a}.
int coord_bracket(CoordRef a, CoordRef b) {
  if (a.j != b.j) return 0;
  auto base = [](Coord l, Coord r) { return (l == Coord::BigP && r == Coord::X) || (l == Coord::SmallP && r == Coord::V); };
  if (base(a.kind, b.kind)) return 1;
  if (base(b.kind, a.kind)) {
    const int pa = is_odd(a) ? 1 : 0, pb = is_odd(b) ? 1 : 0;
    return (pa * pb) % 2 ? 1 : -1;
  }
  return 0;
}

}  // namespace

SuperPoly::SuperPoly(int m) : m_(m) { check_dim(m); }

SuperPoly SuperPoly::constant(int m, const Scalar& c) {
  SuperPoly f(m);
  f.add(AltKey{}, c);
  return f;
}

SuperPoly coordinate(int m, CoordRef c) {
  SuperPoly f(m);
  if (c.j < 0 || c.j >= m) throw std::invalid_argument("qgeom: coordinate index out of range");
  AltKey k;
  if (is_odd(c)) {
    k.wedge = bit(odd_bit(m, c));
  } else {
    k.mono.e[even_var(m, c)] = 1;
  }
  f.add(k, 1);
  return f;
}

SuperPoly SuperPoly::x(int m, int j) { return coordinate(m, {Coord::X, j}); }
SuperPoly SuperPoly::P(int m, int j) { return coordinate(m, {Coord::BigP, j}); }
SuperPoly SuperPoly::p(int m, int j) { return coordinate(m, {Coord::SmallP, j}); }
SuperPoly SuperPoly::v(int m, int j) { return coordinate(m, {Coord::V, j}); }

int SuperPoly::term_degree(int m, const AltKey& k) { return popcount(k.wedge) + 2 * k.mono.degree_in(m, 2 * m); }

std::optional<int> SuperPoly::degree() const {
  std::optional<int> d;
  for (const auto& [k, c] : terms_) {
    const int t = term_degree(m_, k);
    if (d && *d != t) return std::nullopt;
    d = t;
  }
  return d;
}

void SuperPoly::adopt(int m) {
  if (m == m_ || m == 0) return;
  if (m_ == 0) {
    m_ = m;
    return;
  }
  throw std::invalid_argument("qgeom: dimension mismatch");
}

SuperPoly& SuperPoly::operator+=(const SuperPoly& o) {
  adopt(o.m_);
  terms_ += o.terms_;
  return *this;
}

SuperPoly& SuperPoly::operator-=(const SuperPoly& o) {
  adopt(o.m_);
  terms_ -= o.terms_;
  return *this;
}

SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
  const int m = a.dim() ? a.dim() : b.dim();
  if (a.dim() && b.dim() && a.dim() != b.dim()) throw std::invalid_argument("qgeom: dimension mismatch");
  SuperPoly out(m);
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      const int s = merge_sign(ka.wedge, kb.wedge);
      if (s == 0) continue;
      out.add(AltKey{ka.mono * kb.mono, static_cast<std::uint16_t>(ka.wedge | kb.wedge)}, Scalar(s) * ca * cb);
    }
  return out;
}

namespace {

SuperPoly derivative_impl(const SuperPoly& f, CoordRef c, bool right) {
  const int m = f.dim();
  SuperPoly out(m);
  if (is_odd(c)) {
    const int b = odd_bit(m, c);
    for (const auto& [k, v] : f) {
      if (!(k.wedge & bit(b))) continue;
      const int crossings = right ? popcount(static_cast<std::uint16_t>(k.wedge >> (b + 1)))
                                  : popcount(static_cast<std::uint16_t>(k.wedge & (bit(b) - 1)));
      out.add(AltKey{k.mono, static_cast<std::uint16_t>(k.wedge & ~bit(b))}, crossings % 2 ? -v : v);
    }
  } else {
    const int e = even_var(m, c);
    for (const auto& [k, v] : f) {
      if (k.mono.e[e] == 0) continue;
      AltKey n = k;
      --n.mono.e[e];
      out.add(n, v * Scalar(k.mono.e[e]));
    }
  }
  return out;
}

}  // namespace

SuperPoly left_derivative(const SuperPoly& f, CoordRef c) { return derivative_impl(f, c, false); }
SuperPoly right_derivative(const SuperPoly& f, CoordRef c) { return derivative_impl(f, c, true); }

SuperPoly super_bracket(const SuperPoly& f, const SuperPoly& g) {
  if (f.dim() && g.dim() && f.dim() != g.dim()) throw std::invalid_argument("super_bracket: dimension mismatch");
  const int m = f.dim() ? f.dim() : g.dim();
  SuperPoly out(m ? m : 1);
  if (f.is_zero() || g.is_zero()) return out;
  const Coord kinds[] = {Coord::X, Coord::BigP, Coord::SmallP, Coord::V};
  for (Coord ka : kinds)
    for (Coord kb : kinds)
      for (int j = 0; j < m; ++j) {
        const CoordRef a{ka, j}, b{kb, j};
        const int w = coord_bracket(a, b);
        if (w == 0) continue;
        SuperPoly fa = right_derivative(f, a);
        if (fa.is_zero()) continue;
        SuperPoly gb = left_derivative(g, b);
        if (gb.is_zero()) continue;
        out += Scalar(w) * (fa * gb);
      }
  return out;
}

SuperPoly canonical_delta(int m) {
  SuperPoly d(m);
  for (int i = 0; i < m; ++i) d += SuperPoly::P(m, i) * SuperPoly::v(m, i);
  return d;
}

SuperPoly eval_on_base(const SuperPoly& f) {
  const int m = f.dim();
  SuperPoly out(m ? m : 1);
  const std::uint16_t vmask = static_cast<std::uint16_t>(((1u << m) - 1) << m);
  for (const auto& [k, c] : f)
    if (k.mono.degree_in(m, 2 * m) == 0 && (k.wedge & vmask) == 0) out.add(k, c);
  return out;
}

namespace {

void require_plain(const Dims& d) {
  if (d.fiber != 0 || d.params != 0) throw std::invalid_argument("qgeom dictionary: expected plain R^m data");
  if (d.base < 1) throw std::invalid_argument("qgeom dictionary: unknown dimension");
}

}  // namespace

SuperPoly mv_to_super(const Multivector& u) {
  require_plain(u.dims());
  SuperPoly f(u.dims().base);
  for (const auto& [k, c] : u) f.add(k, c);
  return f;
}

SuperPoly form_to_super(const Form& w) {
  require_plain(w.dims());
  const int m = w.dims().base;
  SuperPoly f(m);
  for (const auto& [k, c] : w) f.add(AltKey{k.mono, static_cast<std::uint16_t>(k.wedge << m)}, c);
  return f;
}

Multivector super_to_mv(const SuperPoly& f) {
  const int m = f.dim();
  Multivector u(Dims{m, 0, 0});
  for (const auto& [k, c] : f) {
    if (k.mono.degree_in(m, 2 * m) != 0 || (k.wedge >> m) != 0)
      throw std::domain_error("super_to_mv: element involves P or v: " + to_string(f));
    u.add(k, c);
  }
  return u;
}

Form super_to_form(const SuperPoly& f) {
  const int m = f.dim();
  Form w(Dims{m, 0, 0});
  const std::uint16_t pmask = static_cast<std::uint16_t>((1u << m) - 1);
  for (const auto& [k, c] : f) {
    if (k.mono.degree_in(m, 2 * m) != 0 || (k.wedge & pmask) != 0)
      throw std::domain_error("super_to_form: element involves P or p: " + to_string(f));
    w.add(AltKey{k.mono, static_cast<std::uint16_t>(k.wedge >> m)}, c);
  }
  return w;
}

std::string to_string(const SuperPoly& f) {
  if (f.is_zero()) return "0";
  const int m = f.dim();
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : f) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int i = 0; i < 2 * m; ++i)
      if (k.mono.e[i]) {
        os << "*" << (i < m ? "x" : "P") << (i % m + 1);
        if (k.mono.e[i] > 1) os << "^" << static_cast<int>(k.mono.e[i]);
      }
    for (int i = 0; i < 2 * m; ++i)
      if (k.wedge & bit(i)) os << "*" << (i < m ? "p" : "v") << (i % m + 1);
  }
  return os.str();
}

VData<SuperPoissonAlgebra> qgeom_vdata(int m, int basis_degree) {
  check_dim(m);
  auto L = std::make_shared<const SuperPoissonAlgebra>(SuperPoissonAlgebra{m});
  auto in_a = [m](const SuperPoly& f) { return eval_on_base(f) == f && (f.dim() == m || f.is_zero()); };
  auto V = make_vdata<SuperPoissonAlgebra>("qgeom", L, eval_on_base, in_a, canonical_delta(m));
  // Monomials in the even variables up to basis_degree, times all odd subsets.
  std::vector<Monomial> monos{Monomial{}};
  for (int deg = 1; deg <= basis_degree; ++deg) {
    std::vector<Monomial> next;
    for (const auto& mono : monos) {
      if (mono.total() != deg - 1) continue;
      int last = 0;
      for (int i = 0; i < 2 * m; ++i)
        if (mono.e[i]) last = i;
      for (int i = last; i < 2 * m; ++i) {
        Monomial n = mono;
        ++n.e[i];
        next.push_back(n);
      }
    }
    monos.insert(monos.end(), next.begin(), next.end());
  }
  for (unsigned w = 0; w < (1u << (2 * m)); ++w)
    for (const auto& mono : monos) {
      SuperPoly f(m);
      f.add(AltKey{mono, static_cast<std::uint16_t>(w)}, 1);
      V.basis.push_back(f);
      if (eval_on_base(f) == f) V.a_basis.push_back(f);
    }
  VFiltration<SuperPoly> F;
  F.weight = [m](const SuperPoly& f) -> std::optional<int> {
    std::optional<int> w;
    const std::uint16_t pmask = static_cast<std::uint16_t>((1u << m) - 1);
    for (const auto& [k, c] : f) {
      const int t = popcount(static_cast<std::uint16_t>(k.wedge & pmask)) + k.mono.degree_in(m, 2 * m) - 1;
      w = w ? std::min(*w, t) : t;
    }
    return w;
  };
  F.top_L = [m](int d) -> std::optional<int> {
    const int total = d + 2;
    if (total < 0) return std::nullopt;
    const int ps = std::min(total, m);
    return ps + (total - ps) / 2 - 1;
  };
  F.top_a = [m](int d) -> std::optional<int> {
    const int total = d + 2;
    if (total < 0 || total > m) return std::nullopt;
    return total - 1;
  };
  V.filtration = F;
  return V;
}

}  // namespace db
