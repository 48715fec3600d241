#include "db/tpois.hpp"

#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace db {

namespace {

std::uint16_t bit(int i) { return static_cast<std::uint16_t>(1u << i); }

Dims dims_of(std::span<const TPois> args) {
  for (const auto& a : args) {
    if (!(a.form.dims() == Dims{})) return a.form.dims();
    if (!(a.mv.dims() == Dims{})) return a.mv.dims();
  }
  return Dims{};
}

// {H, pi_1, ..., pi_n}
Multivector bracket_c(const Form& H, const std::vector<Multivector>& pis) {
  const int n = static_cast<int>(pis.size());
  if (H.arity() != n) return Multivector(H.dims());
  long e = 0;
  for (int i = 1; i <= n; ++i) e += static_cast<long>(*pis[i - 1].arity()) * (n - i);
  return sign_of(e % 2 != 0) * multi_sharp(pis, H);
}

using Matrix = std::vector<std::vector<Poly>>;

Poly det(const Matrix& M) {
  const int n = static_cast<int>(M.size());
  if (n == 0) return poly_const(1);
  if (n == 1) return M[0][0];
  Poly out;
  for (int j = 0; j < n; ++j) {
    if (M[0][j].is_zero()) continue;
    Matrix minor;
    for (int r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (int c = 0; c < n; ++c)
        if (c != j) row.push_back(M[r][c]);
      minor.push_back(std::move(row));
    }
    Poly t = mul(M[0][j], det(minor));
    if (j % 2) {
      out -= t;
    } else {
      out += t;
    }
  }
  return out;
}

Matrix adjugate(const Matrix& M) {
  const int n = static_cast<int>(M.size());
  Matrix adj(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix minor;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Poly> row;
        for (int c = 0; c < n; ++c)
          if (c != i) row.push_back(M[r][c]);
        minor.push_back(std::move(row));
      }
      Poly d = det(minor);
      adj[i][j] = (i + j) % 2 ? Scalar(-1) * d : d;
    }
  return adj;
}

// pi^{ij}: coefficient of d_i ^ d_j, antisymmetric.
template <class K>
Poly entry(const AltPoly<K>& a, int i, int j) {
  if (i == j) return Poly();
  Poly c = a.coefficient(static_cast<std::uint16_t>(bit(i) | bit(j)));
  return i < j ? c : Scalar(-1) * c;
}

Poly times_param(const Poly& p, int var) { return mul(p, poly_var(var)); }

}  // namespace

std::optional<int> tpois_degree(const TPois& e) {
  std::optional<int> d;
  if (!e.form.is_zero()) {
    auto q = e.form.arity();
    if (!q) return std::nullopt;
    d = *q - 3;
  }
  if (!e.mv.is_zero()) {
    auto s = e.mv.arity();
    if (!s || (d && *d != *s - 2)) return std::nullopt;
    d = *s - 2;
  }
  return d;
}

std::string to_string(const TPois& e) {
  std::ostringstream os;
  os << "(" << to_string(e.form) << ", " << to_string(e.mv) << ")";
  return os.str();
}

TPois tpois_bracket(std::span<const TPois> args) {
  const int N = static_cast<int>(args.size());
  const Dims d = dims_of(args);
  TPois out{Form(d), Multivector(d)};
  if (N == 0) return out;
  std::vector<int> deg;
  for (const auto& a : args) {
    if (a.is_zero()) return out;
    auto dg = tpois_degree(a);
    if (!dg) throw std::invalid_argument("tpois_bracket: argument is not homogeneous");
    deg.push_back(*dg);
  }
  if (N == 1) {
    out.form -= de_rham(args[0].form);
    return out;
  }
  if (N == 2 && !args[0].mv.is_zero() && !args[1].mv.is_zero()) {
    const int a1 = deg[0] + 2;
    out.mv += sign_of(a1 % 2 == 0) * schouten(args[0].mv, args[1].mv);
  }
  for (int k = 0; k < N; ++k) {
    if (args[k].form.is_zero()) continue;
    std::vector<Multivector> pis;
    long parity = 0;
    bool ok = true;
    for (int j = 0; j < N; ++j) {
      if (j == k) continue;
      if (args[j].mv.is_zero()) {
        ok = false;
        break;
      }
      if (j < k) parity += static_cast<long>(deg[k]) * deg[j];
      pis.push_back(args[j].mv);
    }
    if (!ok) continue;
    out.mv += sign_of(parity % 2 != 0) * bracket_c(args[k].form, pis);
  }
  return out;
}

TPois tpois_bracket(std::initializer_list<TPois> args) {
  return tpois_bracket(std::span<const TPois>(args.begin(), args.size()));
}

LInftyOne<TPois> tpois_algebra(int m) {
  LInftyOne<TPois> A;
  A.name = "tpois(R^" + std::to_string(m) + ")";
  A.zero = TPois{Form(Dims{m, 0, 0}), Multivector(Dims{m, 0, 0})};
  A.degree = tpois_degree;
  A.bracket = [](std::span<const TPois> args) { return tpois_bracket(args); };
  A.arity_bound = m + 1;
  return A;
}

namespace {

BigElem<SuperPoly> to_big(const TPois& e, int m) {
  BigElem<SuperPoly> b{SuperPoly(m), SuperPoly(m)};
  if (!e.form.is_zero()) b.x = form_to_super(e.form);
  if (!e.mv.is_zero()) b.a = mv_to_super(e.mv);
  return b;
}

}  // namespace

TPois oracle_bracket(std::span<const TPois> args) {
  const Dims d = dims_of(args);
  if (d.base < 1) return TPois{};
  const int m = d.base;
  static thread_local std::map<int, LInftyOne<BigElem<SuperPoly>>> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, big_algebra(qgeom_vdata(m, 0))).first;
  std::vector<BigElem<SuperPoly>> big;
  for (const auto& a : args) big.push_back(to_big(a, m));
  auto r = it->second.m(std::span<const BigElem<SuperPoly>>(big));
  TPois out{super_to_form(r.x), super_to_mv(r.a)};
  return out;
}

LInftyOne<TPois> oracle_algebra(int m) {
  LInftyOne<TPois> A = tpois_algebra(m);
  A.name = "oracle(R^" + std::to_string(m) + ")";
  A.bracket = [](std::span<const TPois> args) { return oracle_bracket(args); };
  return A;
}

std::pair<Form, Multivector> tpois_mc_residual(const Form& H, const Multivector& pi) {
  Form dH = de_rham(H);
  Multivector r = schouten(pi, pi);
  if (!pi.is_zero() && !H.is_zero()) r -= Scalar(2) * wedge_power_sharp(3, pi, H);
  return {dH, r};
}

std::pair<Form, Multivector> mc_residual_derivative(const Form& H, const Multivector& pi, const Form& dH,
                                                    const Multivector& dpi) {
  Multivector r = schouten(pi, dpi) + schouten(dpi, pi);
  // wedge^3 pi~ H = (1/6) multi_sharp(pi, pi, pi; H), trilinear in pi and linear in H
  Multivector cubic(pi.dims());
  if (!pi.is_zero()) {
    if (!dpi.is_zero() && !H.is_zero()) {
      cubic += multi_sharp({dpi, pi, pi}, H);
      cubic += multi_sharp({pi, dpi, pi}, H);
      cubic += multi_sharp({pi, pi, dpi}, H);
    }
    if (!dH.is_zero()) cubic += multi_sharp({pi, pi, pi}, dH);
  }
  r -= Scalar(1, 3) * cubic;
  return {de_rham(dH), r};
}

std::pair<Form, Multivector> gauge_Y(const Form& B, const Multivector& X, const Form& H, const Multivector& pi) {
  Form beta = B + interior(X, H);
  Multivector v = schouten(X, pi);
  if (!beta.is_zero() && !pi.is_zero()) v += wedge_power_sharp(2, pi, beta);
  return {-de_rham(B), v};
}

std::pair<Form, Multivector> generator_Z(const Form& B, const Multivector& X, const Form& H, const Multivector& pi) {
  Multivector v = -schouten(X, pi);
  if (!B.is_zero() && !pi.is_zero()) v += wedge_power_sharp(2, pi, B);
  return {-de_rham(interior(X, H) + B), v};
}

std::pair<Form, Multivector> generator_by_flow(const Form& B, const Multivector& X, const Form& H,
                                               const Multivector& pi) {
  const int m = pi.dims().coords() ? pi.dims().coords() : H.dims().coords();
  const Dims d{m, 0, 0};
  const Dims D{m, 0, 1};
  const int t = D.param_var(0);
  const Form B1 = lift(B, D), H1 = lift(H, D);
  const Multivector X1 = lift(X, D), pi1 = lift(pi, D);
  const AffineMap fwd = affine_flow(X1, D, 0, 1), back = affine_flow(X1, D, 0, -1);
  const Form Ht = pullback(back, H1) - scale_by(poly_var(t), de_rham(B1));
  const RationalBivector R = e_b_pi_rational(scale_by(poly_var(t), B1), pushforward(fwd, back, pi1), false);
  std::vector<Poly> at0(t + 1);
  for (int i = 0; i < t; ++i) at0[i] = poly_var(i);
  const Poly d0 = substitute(R.denominator, at0);
  const Poly d1 = substitute(derivative(R.denominator, t), at0);
  if (d0.size() != 1 || d0.begin()->first.total() != 0) throw std::logic_error("generator_by_flow: det(1 + tB pi) at t = 0");
  const Scalar c0 = d0.begin()->second;
  // (N/delta)' at 0 = N'(0)/delta(0) - N(0) delta'(0)/delta(0)^2
  Multivector v = (Scalar(1) / c0) * at_param(d_param(R.numerator, 0), 0, 0) -
                  (Scalar(1) / (c0 * c0)) * scale_by(d1, at_param(R.numerator, 0, 0));
  auto drop = [&d](const auto& a) {
    std::decay_t<decltype(a)> out(d);
    for (const auto& [k, c] : a) out.add(k, c);
    return out;
  };
  return {drop(at_param(d_param(Ht, 0), 0, 0)), drop(v)};
}

GeneratorReport generator_match(const Form& B, const Multivector& X, const Form& H, const Multivector& pi) {
  auto r = tpois_mc_residual(H, pi);
  if (!r.first.is_zero() || !r.second.is_zero())
    throw NotMaurerCartan("generator_match: (H, pi) is not Maurer-Cartan");
  GeneratorReport rep;
  rep.z = generator_Z(B + interior(X, H), -X, H, pi);
  rep.y = gauge_Y(B, X, H, pi);
  return rep;
}

RationalBivector e_b_pi_rational(const Form& B, const Multivector& pi, bool polynomial_only) {
  if (!B.is_zero() && B.arity() != 2) throw std::invalid_argument("e_b_pi: B must be a 2-form");
  if (!pi.is_zero() && pi.arity() != 2) throw std::invalid_argument("e_b_pi: pi must be a bivector");
  const Dims d = (pi.dims() == Dims{}) ? B.dims() : pi.dims();
  const int n = d.coords();
  // Matrices acting on covector components: (pi^# xi)_i = sum_j xi_j pi^{ji},
  // (B^flat v)_k = sum_i v_i B_{ik}.
  Matrix Pi(n, std::vector<Poly>(n)), Bm(n, std::vector<Poly>(n)), M(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Pi[i][j] = entry(pi, j, i);
      Bm[i][j] = entry(B, j, i);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      M[i][j] = i == j ? poly_const(1) : Poly();
      for (int k = 0; k < n; ++k) M[i][j] += mul(Bm[i][k], Pi[k][j]);
    }
  Poly delta = det(M);
  if (delta.is_zero()) throw std::domain_error("e_b_pi: not a graph (det(1 + B pi) = 0)");
  if (polynomial_only && !depends_only_on(delta, d.coords(), d.vars()))
    throw std::domain_error("e_b_pi: graph transform leaves the polynomial category");
  Matrix adj = adjugate(M);
  Matrix out(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out[i][j] += mul(Pi[i][k], adj[k][j]);
  RationalBivector r{Multivector(d), delta};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!(out[i][j] == Scalar(-1) * out[j][i])) throw std::logic_error("e_b_pi: result is not antisymmetric");
      r.numerator += Multivector(d, out[j][i], static_cast<std::uint16_t>(bit(i) | bit(j)));
    }
  return r;
}

Multivector e_b_pi(const Form& B, const Multivector& pi) {
  auto r = e_b_pi_rational(B, pi);
  if (r.denominator.size() != 1 || r.denominator.begin()->first.total() != 0)
    throw std::domain_error("e_b_pi: graph transform leaves the polynomial category");
  return (Scalar(1) / r.denominator.begin()->second) * r.numerator;
}

GroupElement group_compose(const GroupElement& g1, const GroupElement& g2) {
  return {g1.B + pullback(inverse(g1.phi), g2.B), compose(g1.phi, g2.phi)};
}

std::pair<Form, Multivector> group_act(const GroupElement& g, const Form& H, const Multivector& pi) {
  AffineMap finv = inverse(g.phi);
  Form H2 = pullback(finv, H) - de_rham(g.B);
  Multivector pushed = pushforward(g.phi, finv, pi);
  return {H2, e_b_pi(g.B, pushed)};
}

Form lift(const Form& w, const Dims& d) {
  if (w.dims().coords() != d.coords() && !(w.dims() == Dims{})) throw std::invalid_argument("lift: coordinate mismatch");
  Form out(d);
  for (const auto& [k, c] : w) out.add(k, c);
  return out;
}

Multivector lift(const Multivector& u, const Dims& d) {
  if (u.dims().coords() != d.coords() && !(u.dims() == Dims{})) throw std::invalid_argument("lift: coordinate mismatch");
  Multivector out(d);
  for (const auto& [k, c] : u) out.add(k, c);
  return out;
}

AffineMap affine_flow(const Multivector& Y, const Dims& d, int param, int sign) {
  const int n = d.coords();
  std::vector<std::vector<Scalar>> A(n, std::vector<Scalar>(n));
  std::vector<Scalar> b(n);
  for (const auto& [k, c] : Y) {
    if (popcount(k.wedge) != 1) throw std::invalid_argument("affine_flow: expected a vector field");
    const int i = std::countr_zero(static_cast<unsigned>(k.wedge));
    const int tot = k.mono.total();
    if (tot == 0) {
      b[i] += c;
    } else if (tot == 1 && k.mono.degree_in(0, n) == 1) {
      int j = 0;
      while (k.mono.e[j] == 0) ++j;
      A[i][j] += c;
    } else {
      throw std::invalid_argument("affine_flow: unsupported vector field (flow is not polynomial)");
    }
  }
  // A must be nilpotent: A^n = 0.
  std::vector<std::vector<std::vector<Scalar>>> powers{std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n))};
  for (int i = 0; i < n; ++i) powers[0][i][i] = 1;
  for (int k = 1; k <= n; ++k) {
    auto next = std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) next[i][j] += powers.back()[i][l] * A[l][j];
    powers.push_back(next);
  }
  for (const auto& row : powers[n])
    for (const auto& x : row)
      if (!x.is_zero()) throw std::invalid_argument("affine_flow: unsupported vector field (linear part is not nilpotent)");
  const int tv = d.param_var(param);
  const Poly tau = poly_var(tv, Scalar(sign));
  AffineMap f = AffineMap::identity(d);
  for (int i = 0; i < n; ++i) {
    f.A[i][i] = Poly();
    f.b[i] = Poly();
  }
  // e^{tau A} and sum_{k>=1} tau^k A^{k-1} b / k!
  for (int k = 0; k <= n; ++k) {
    const Poly tk = mul(power(tau, k), poly_const(inverse_factorial(k)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        if (!powers[k][i][j].is_zero()) f.A[i][j] += mul(tk, poly_const(powers[k][i][j]));
      if (k >= 1) {
        Scalar s;
        for (int j = 0; j < n; ++j) s += powers[k - 1][i][j] * b[j];
        if (!s.is_zero()) f.b[i] += mul(tk, poly_const(s));
      }
    }
  }
  return f;
}

FlowCurve flow_curve(const Form& B, const Multivector& X, const Form& H, const Multivector& pi) {
  const int m = pi.dims().coords() ? pi.dims().coords() : H.dims().coords();
  const Dims D{m, 0, 2};
  const int t = D.param_var(0), s = D.param_var(1);
  const Multivector Y = -lift(X, D);
  const Form B1 = lift(B, D), H1 = lift(H, D);
  const Multivector pi1 = lift(pi, D);
  const AffineMap flow_s = affine_flow(Y, D, 1, 1);
  Form integrand = pullback(flow_s, B1 - interior(Y, H1));
  Form dD = pullback(flow_s, interior(Y, de_rham(B1)));
  dD = map_coefficients<FormKind>(dD, [s](const Poly& p) { return times_param(p, s); });
  Form C = map_coefficients<FormKind>(integrand + dD, [s, t](const Poly& p) { return integrate_param(p, s, t); });
  RationalBivector R = e_b_pi_rational(C, pi1);
  FlowCurve c;
  c.dims = D;
  c.H = H1 - scale_by(poly_var(t), de_rham(B1));
  c.numerator = pushforward(affine_flow(Y, D, 0, 1), affine_flow(Y, D, 0, -1), R.numerator);
  c.denominator = R.denominator;
  c.C = C;
  c.generator = Y;
  return c;
}

FlowCheck check_flow_curve(const FlowCurve& c, const Form& B, const Multivector& X, const Form& H,
                           const Multivector& pi) {
  const Dims D = c.dims;
  const int t = D.param_var(0);
  FlowCheck r;
  const Form B1 = lift(B, D), H1 = lift(H, D);
  const Multivector X1 = lift(X, D), pi1 = lift(pi, D);
  const Multivector& N = c.numerator;
  const Poly& den = c.denominator;
  const Poly dden = derivative(den, t);
  const Multivector dN = d_param(N, 0);
  auto at0 = [&](const Poly& p) {
    std::vector<Poly> im(t + 1);
    for (int i = 0; i < t; ++i) im[i] = poly_var(i);
    im[t] = Poly();
    return substitute(p, im);
  };
  const Multivector lhs = scale_by(den, dN) - scale_by(dden, N);
  {
    Multivector N0 = at_param(N, 0, 0);
    r.starts_at_point = at_param(c.H, 0, 0) == H1 && N0 == scale_by(at0(den), pi1);
  }
  {
    Form beta = pullback(affine_flow(c.generator, D, 0, -1), d_param(c.C, 0));
    Multivector rhs = -scale_by(den, schouten(c.generator, N));
    if (!beta.is_zero() && !N.is_zero()) rhs += wedge_power_sharp(2, N, beta);
    r.transport_ode = lhs == rhs;
  }
  {
    Form beta = B1 + interior(X1, c.H);
    Multivector rhs = scale_by(den, schouten(X1, N));
    if (!beta.is_zero() && !N.is_zero()) rhs += wedge_power_sharp(2, N, beta);
    r.integral_curve = lhs == rhs && d_param(c.H, 0) == -de_rham(B1);
  }
  {
    auto y = gauge_Y(B1, X1, H1, pi1);
    const Poly d0 = at0(den);
    const Multivector v0 = at_param(lhs, 0, 0);
    // v0 / d0^2 == y.second
    r.initial_velocity = at_param(d_param(c.H, 0), 0, 0) == y.first && v0 == scale_by(mul(d0, d0), y.second);
  }
  return r;
}

}  // namespace db
