#include "db/polygeo.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace db {

namespace {

std::uint16_t bit(int i) { return static_cast<std::uint16_t>(1u << i); }

int bits_below(std::uint16_t mask, int i) { return popcount(static_cast<std::uint16_t>(mask & (bit(i) - 1))); }
int bits_above(std::uint16_t mask, int i) { return popcount(static_cast<std::uint16_t>(mask >> (i + 1))); }

std::uint16_t fiber_mask(const Dims& d) {
  std::uint16_t m = 0;
  for (int i = d.base; i < d.coords(); ++i) m |= bit(i);
  return m;
}

Dims common(const Dims& a, const Dims& b) {
  if (a == b || b == Dims{}) return a;
  if (a == Dims{}) return b;
  throw std::invalid_argument("ambient dimension mismatch");
}

// sum over i of (u d<-/dxi_i)(d/dx_i v), termwise.
void half_schouten(const Multivector& u, const Multivector& v, const Scalar& s, bool swap_parity, Multivector& out) {
  const int n = out.dims().coords();
  for (const auto& [ku, cu] : u) {
    const int a = popcount(ku.wedge);
    for (const auto& [kv, cv] : v) {
      const int b = popcount(kv.wedge);
      Scalar sgn = s;
      if (swap_parity && ((a - 1) * (b - 1)) % 2 != 0) sgn = -sgn;
      for (int i = 0; i < n; ++i) {
        if (!(ku.wedge & bit(i)) || kv.mono.e[i] == 0) continue;
        const std::uint16_t rest = ku.wedge & ~bit(i);
        const int ms = merge_sign(rest, kv.wedge);
        if (ms == 0) continue;
        Monomial dm = kv.mono;
        --dm.e[i];
        const int rs = bits_above(ku.wedge, i) % 2 ? -1 : 1;
        out.add(AltKey{ku.mono * dm, static_cast<std::uint16_t>(rest | kv.wedge)},
                sgn * cu * cv * Scalar(rs * ms * kv.mono.e[i]));
      }
    }
  }
}

}  // namespace

Multivector schouten(const Multivector& u, const Multivector& v) {
  Multivector out(common(u.dims(), v.dims()));
  // [u,v] = sum_i (u d<-xi_i)(d_i v) - (-1)^{(a-1)(b-1)} (v d<-xi_i)(d_i u)
  half_schouten(u, v, Scalar(1), false, out);
  half_schouten(v, u, Scalar(-1), true, out);
  return out;
}

Form de_rham(const Form& w) {
  Form out(w.dims());
  const int n = w.dims().coords();
  for (const auto& [k, c] : w)
    for (int i = 0; i < n; ++i) {
      if (k.mono.e[i] == 0 || (k.wedge & bit(i))) continue;
      Monomial dm = k.mono;
      --dm.e[i];
      const int s = merge_sign(bit(i), k.wedge);
      out.add(AltKey{dm, static_cast<std::uint16_t>(k.wedge | bit(i))}, c * Scalar(s * k.mono.e[i]));
    }
  return out;
}

Multivector sharp(const Multivector& pi, const Form& xi) {
  if (!xi.is_zero() && xi.arity() != 1) throw std::invalid_argument("sharp: argument must be a 1-form");
  Multivector out(common(pi.dims(), xi.dims()));
  for (const auto& [kp, cp] : pi)
    for (const auto& [kx, cx] : xi) {
      if (!(kp.wedge & kx.wedge)) continue;
      const int j = std::countr_zero(static_cast<unsigned>(kx.wedge));
      const int s = bits_below(kp.wedge, j) % 2 ? -1 : 1;
      out.add(AltKey{kp.mono * kx.mono, static_cast<std::uint16_t>(kp.wedge & ~kx.wedge)}, Scalar(s) * cp * cx);
    }
  return out;
}

Multivector multi_sharp(const std::vector<Multivector>& pis, const Form& w) {
  const int n = static_cast<int>(pis.size());
  if (n == 0) throw std::invalid_argument("multi_sharp: need at least one multivector");
  Dims d = w.dims();
  for (const auto& p : pis) d = common(d, p.dims());
  if (!w.is_zero() && w.arity() != n) throw std::invalid_argument("multi_sharp: form degree must equal the number of multivectors");
  for (const auto& p : pis)
    if (!p.is_zero() && p.arity() == 0) return Multivector(d);
  // sharp(pi_i, dx_j) for all i, j
  std::vector<std::vector<Multivector>> table(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d.coords(); ++j) table[i].push_back(sharp(pis[i], Form::term(d, Monomial{}, bit(j), 1)));
  Multivector out(d);
  std::map<std::uint16_t, Multivector> cache;
  for (const auto& [k, c] : w) {
    auto it = cache.find(k.wedge);
    if (it == cache.end()) {
      std::vector<int> J;
      for (int j = 0; j < d.coords(); ++j)
        if (k.wedge & bit(j)) J.push_back(j);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      Multivector sum(d);
      do {
        int inv = 0;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            if (perm[a] > perm[b]) ++inv;
        Multivector prod = table[0][J[perm[0]]];
        for (int i = 1; i < n && !prod.is_zero(); ++i) prod = wedge(prod, table[i][J[perm[i]]]);
        if (inv % 2) {
          sum -= prod;
        } else {
          sum += prod;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      it = cache.emplace(k.wedge, sum).first;
    }
    out += scale_by(Poly(k.mono, c), it->second);
  }
  return out;
}

Multivector wedge_power_sharp(int k, const Multivector& pi, const Form& w) {
  return inverse_factorial(k) * multi_sharp(std::vector<Multivector>(k, pi), w);
}

Form interior(const Multivector& X, const Form& w) {
  if (!X.is_zero() && X.arity() != 1) throw std::invalid_argument("interior: expected a vector field");
  Form out(common(X.dims(), w.dims()));
  for (const auto& [kx, cx] : X) {
    const int j = std::countr_zero(static_cast<unsigned>(kx.wedge));
    for (const auto& [kw, cw] : w) {
      if (!(kw.wedge & kx.wedge)) continue;
      const int s = bits_below(kw.wedge, j) % 2 ? -1 : 1;
      out.add(AltKey{kx.mono * kw.mono, static_cast<std::uint16_t>(kw.wedge & ~kx.wedge)}, Scalar(s) * cx * cw);
    }
  }
  return out;
}

Poly apply_vector(const Multivector& X, const Poly& f) {
  Poly out;
  for (const auto& [kx, cx] : X) {
    if (popcount(kx.wedge) != 1) throw std::invalid_argument("apply_vector: expected a vector field");
    const int j = std::countr_zero(static_cast<unsigned>(kx.wedge));
    out += mul(Poly(kx.mono, cx), derivative(f, j));
  }
  return out;
}

Form lie_derivative(const Multivector& X, const Form& w) { return interior(X, de_rham(w)) + de_rham(interior(X, w)); }

std::optional<int> pol_degree(const Multivector& u) {
  std::optional<int> r;
  const auto& d = u.dims();
  const std::uint16_t fm = fiber_mask(d);
  for (const auto& [k, c] : u) {
    const int p = k.mono.degree_in(d.base, d.coords()) - popcount(static_cast<std::uint16_t>(k.wedge & fm));
    r = r ? std::max(*r, p) : p;
  }
  return r;
}

Multivector coiso_projection(const Multivector& u) {
  const auto& d = u.dims();
  const std::uint16_t fm = fiber_mask(d);
  Multivector out(d);
  for (const auto& [k, c] : u)
    if (k.mono.degree_in(d.base, d.coords()) == 0 && (k.wedge & ~fm) == 0) out.add(k, c);
  return out;
}

bool is_section_of_normal_bundle(const Multivector& u) {
  const auto& d = u.dims();
  const std::uint16_t fm = fiber_mask(d);
  for (const auto& [k, c] : u)
    if (k.mono.degree_in(d.base, d.coords()) != 0 || (k.wedge & ~fm) != 0) return false;
  return true;
}

Multivector fiber_translate(const Multivector& u, const Multivector& phi) {
  if (!phi.is_zero() && (phi.arity() != 1 || !is_section_of_normal_bundle(phi)))
    throw std::invalid_argument("fiber_translate: phi must be a vertical vector field with base coefficients");
  const Dims d = common(u.dims(), phi.dims());
  std::vector<Poly> images(d.coords());
  for (int i = 0; i < d.coords(); ++i) images[i] = poly_var(i);
  std::vector<Poly> comp(d.fiber);
  for (int j = 0; j < d.fiber; ++j) {
    comp[j] = phi.coefficient(bit(d.base + j));
    images[d.base + j] -= comp[j];
  }
  // Y_i = d/dx_i + sum_j (d_i phi_j) d/dp_j
  std::vector<Multivector> Y(d.coords());
  for (int i = 0; i < d.coords(); ++i) {
    Y[i] = Multivector::term(d, Monomial{}, bit(i), 1);
    if (i < d.base)
      for (int j = 0; j < d.fiber; ++j) Y[i] += Multivector(d, derivative(comp[j], i), bit(d.base + j));
  }
  std::map<std::uint16_t, Multivector> frames;
  auto frame = [&](std::uint16_t w) -> const Multivector& {
    auto it = frames.find(w);
    if (it != frames.end()) return it->second;
    Multivector f = Multivector::term(d, Monomial{}, 0, 1);
    for (int i = 0; i < d.coords(); ++i)
      if (w & bit(i)) f = wedge(f, Y[i]);
    return frames.emplace(w, f).first->second;
  };
  Multivector out(d);
  for (const auto& [k, c] : u) out += scale_by(substitute(Poly(k.mono, c), images), frame(k.wedge));
  return out;
}

Multivector exp_ad(const Multivector& u, const Multivector& phi, int cap) {
  Multivector total = u;
  Multivector term = u;
  for (int k = 1; !term.is_zero() && !phi.is_zero(); ++k) {
    if (k > cap) throw std::runtime_error("exp_ad: series does not terminate");
    term = Scalar(1, k) * schouten(term, phi);
    total += term;
  }
  return total;
}

namespace {

void monomials_upto(int nvars, int offset, int max_degree, std::vector<Monomial>& out) {
  std::vector<Monomial> cur{Monomial{}};
  out.push_back(Monomial{});
  for (int deg = 1; deg <= max_degree; ++deg) {
    std::vector<Monomial> next;
    for (const auto& m : cur)
      for (int i = 0; i < nvars; ++i) {
        // extend only at or after the last used variable to avoid duplicates
        bool later = false;
        for (int j = i + 1; j < nvars; ++j)
          if (m.e[offset + j]) later = true;
        if (later) continue;
        Monomial n = m;
        ++n.e[offset + i];
        next.push_back(n);
      }
    out.insert(out.end(), next.begin(), next.end());
    cur = std::move(next);
  }
}

}  // namespace

std::vector<Multivector> multivector_basis(const Dims& d, int max_degree) {
  std::vector<Monomial> monos;
  monomials_upto(d.coords(), 0, max_degree, monos);
  std::vector<Multivector> out;
  for (unsigned w = 0; w < (1u << d.coords()); ++w)
    for (const auto& m : monos) out.push_back(Multivector::term(d, m, static_cast<std::uint16_t>(w), 1));
  return out;
}

std::vector<Multivector> normal_section_basis(const Dims& d, int max_degree) {
  std::vector<Monomial> monos;
  monomials_upto(d.base, 0, max_degree, monos);
  std::vector<Multivector> out;
  for (unsigned w = 0; w < (1u << d.fiber); ++w)
    for (const auto& m : monos)
      out.push_back(Multivector::term(d, m, static_cast<std::uint16_t>(w << d.base), 1));
  return out;
}

VData<SchoutenAlgebra> coiso_vdata(const Multivector& pi, const SubmanifoldSplit& split, int basis_degree) {
  const Dims d = split.dims();
  if (!(pi.dims() == d)) throw std::invalid_argument("coiso_vdata: pi lives on a different space");
  if (!pi.is_zero() && pi.arity() != 2) throw std::invalid_argument("coiso_vdata: pi must be a bivector");
  Multivector jac = schouten(pi, pi);
  if (!jac.is_zero()) throw std::invalid_argument("coiso_vdata: [pi,pi] != 0: " + to_string(jac));
  auto L = std::make_shared<const SchoutenAlgebra>(SchoutenAlgebra{d});
  auto V = make_vdata<SchoutenAlgebra>("coiso", L, coiso_projection, is_section_of_normal_bundle, pi);
  V.basis = multivector_basis(d, basis_degree);
  V.a_basis = normal_section_basis(d, basis_degree);
  VFiltration<Multivector> F;
  F.weight = [](const Multivector& u) -> std::optional<int> {
    auto p = pol_degree(u);
    return p ? std::optional<int>(-*p) : std::nullopt;
  };
  F.top_L = [d](int deg) -> std::optional<int> {
    const int r = deg + 1;
    if (r < 0 || r > d.coords()) return std::nullopt;
    return std::min(r, d.fiber);
  };
  F.top_a = [d](int deg) -> std::optional<int> {
    const int r = deg + 1;
    if (r < 0 || r > d.fiber) return std::nullopt;
    return r;
  };
  V.filtration = F;
  return V;
}

AffineMap AffineMap::identity(const Dims& d) {
  AffineMap f;
  f.dims = d;
  f.A.assign(d.coords(), std::vector<Poly>(d.coords()));
  f.b.assign(d.coords(), Poly());
  for (int i = 0; i < d.coords(); ++i) f.A[i][i] = poly_const(1);
  return f;
}

std::vector<Poly> AffineMap::images() const {
  std::vector<Poly> im(dims.coords());
  for (int i = 0; i < dims.coords(); ++i) {
    im[i] = b[i];
    for (int j = 0; j < dims.coords(); ++j) im[i] += mul(A[i][j], poly_var(j));
  }
  return im;
}

bool AffineMap::is_constant() const {
  for (const auto& row : A)
    for (const auto& e : row)
      if (!depends_only_on(e, 0, 0)) return false;
  for (const auto& e : b)
    if (!depends_only_on(e, 0, 0)) return false;
  return true;
}

AffineMap compose(const AffineMap& f, const AffineMap& g) {
  const int n = f.dims.coords();
  AffineMap h;
  h.dims = f.dims;
  h.A.assign(n, std::vector<Poly>(n));
  h.b = f.b;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) h.A[i][j] += mul(f.A[i][k], g.A[k][j]);
      h.b[i] += mul(f.A[i][j], g.b[j]);
    }
  return h;
}

AffineMap inverse(const AffineMap& f) {
  if (!f.is_constant()) throw std::invalid_argument("inverse: only constant affine maps are supported");
  const int n = f.dims.coords();
  auto cst = [](const Poly& p) { return p.coefficient(Monomial{}); };
  std::vector<std::vector<Scalar>> M(n, std::vector<Scalar>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M[i][j] = cst(f.A[i][j]);
    M[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && M[piv][c].is_zero()) ++piv;
    if (piv == n) throw std::invalid_argument("inverse: matrix is singular");
    std::swap(M[piv], M[c]);
    const Scalar inv = Scalar(1) / M[c][c];
    for (auto& x : M[c]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || M[r][c].is_zero()) continue;
      const Scalar k = M[r][c];
      for (int j = 0; j < 2 * n; ++j) M[r][j] -= k * M[c][j];
    }
  }
  AffineMap g;
  g.dims = f.dims;
  g.A.assign(n, std::vector<Poly>(n));
  g.b.assign(n, Poly());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.A[i][j] = poly_const(M[i][n + j]);
      g.b[i] -= poly_const(M[i][n + j] * cst(f.b[j]));
    }
  return g;
}

Form pullback(const AffineMap& f, const Form& w) {
  const Dims d = common(f.dims, w.dims());
  const auto im = f.images();
  std::vector<Form> dxs(d.coords());
  for (int j = 0; j < d.coords(); ++j) {
    dxs[j] = Form(d);
    for (int k = 0; k < d.coords(); ++k) dxs[j] += Form(d, f.A[j][k], bit(k));
  }
  Form out(d);
  for (const auto& [k, c] : w) {
    Form frame = Form::term(d, Monomial{}, 0, 1);
    for (int j = 0; j < d.coords(); ++j)
      if (k.wedge & bit(j)) frame = wedge(frame, dxs[j]);
    out += scale_by(substitute(Poly(k.mono, c), im), frame);
  }
  return out;
}

Multivector pushforward(const AffineMap& f, const AffineMap& finv, const Multivector& u) {
  const Dims d = common(f.dims, u.dims());
  const auto im = finv.images();
  std::vector<Multivector> vs(d.coords());
  for (int j = 0; j < d.coords(); ++j) {
    vs[j] = Multivector(d);
    for (int i = 0; i < d.coords(); ++i) vs[j] += Multivector(d, f.A[i][j], bit(i));
  }
  Multivector out(d);
  for (const auto& [k, c] : u) {
    Multivector frame = Multivector::term(d, Monomial{}, 0, 1);
    for (int j = 0; j < d.coords(); ++j)
      if (k.wedge & bit(j)) frame = wedge(frame, vs[j]);
    out += scale_by(substitute(Poly(k.mono, c), im), frame);
  }
  return out;
}

}  // namespace db
