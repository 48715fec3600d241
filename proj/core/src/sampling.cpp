#include "db/sampling.hpp"

namespace db {

namespace {

std::uint16_t bit(int i) { return static_cast<std::uint16_t>(1u << i); }

Multivector random_constant_bivector(Rng& rng, const Dims& d) {
  Multivector c(d);
  for (int i = 0; i < d.coords(); ++i)
    for (int j = i + 1; j < d.coords(); ++j) c += Multivector(d, poly_const(rng.coef()), bit(i) | bit(j));
  return c;
}

}  // namespace

Vec random_vec(Rng& rng, const StructureGLA& L, int degree) {
  Vec v;
  for (int i = 0; i < L.dim(); ++i)
    if (L.degree(i) == degree) v += rng.coef() * L.basis_vector(i);
  return v;
}

AffineMap random_affine(Rng& rng, const Dims& d) {
  const int n = d.coords();
  std::vector<std::vector<Scalar>> lo(n, std::vector<Scalar>(n)), up(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i) {
    lo[i][i] = up[i][i] = 1;
    for (int j = 0; j < i; ++j) {
      lo[i][j] = rng.uniform(-1, 1);
      up[j][i] = rng.uniform(-1, 1);
    }
  }
  AffineMap f = AffineMap::identity(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Scalar s;
      for (int k = 0; k < n; ++k) s += lo[i][k] * up[k][j];
      f.A[i][j] = poly_const(s);
    }
    f.b[i] = poly_const(rng.coef());
  }
  return f;
}

TPoisPoint random_mc_r3(Rng& rng, int max_degree) {
  const Dims d{3, 0, 0};
  Multivector c = random_constant_bivector(rng, d);
  if (c.is_zero()) c = Multivector(d, poly_const(1), bit(0) | bit(1));
  Poly g = random_poly(rng, 0, 3, max_degree, 2);
  Poly h = random_poly(rng, 0, 3, max_degree, 2);
  return {Form(d, h, bit(0) | bit(1) | bit(2)), scale_by(g, c)};
}

TPoisPoint random_mc_r4(Rng& rng, int max_degree) {
  const Dims d{4, 0, 0};
  Multivector pi0 = Multivector(d, poly_const(1), bit(0) | bit(1)) + Multivector(d, poly_const(1), bit(2) | bit(3));
  Form B(d, random_poly(rng, 0, 4, max_degree, 2), bit(0) | bit(2));
  auto step = group_act(GroupElement{B, AffineMap::identity(d)}, Form(d), pi0);
  auto out = group_act(GroupElement{Form(d), random_affine(rng, d)}, step.first, step.second);
  return {out.first, out.second};
}

TPoisPoint perturb(Rng& rng, const TPoisPoint& p, int max_degree) {
  const Dims d = p.pi.dims() == Dims{} ? p.H.dims() : p.pi.dims();
  TPoisPoint q = p;
  if (rng.coin()) {
    q.H += random_form(rng, d, 3, max_degree, 2);
  } else {
    q.pi += random_multivector(rng, d, 2, max_degree, 2);
  }
  return q;
}

Multivector random_coiso_poisson(Rng& rng, int max_degree, bool on_C) {
  const Dims d{1, 2, 0};
  Multivector c = random_constant_bivector(rng, d);
  if (c.is_zero()) c = Multivector(d, poly_const(1), bit(0) | bit(1));
  Poly f = random_poly(rng, 0, 3, max_degree, 2);
  Multivector pi = scale_by(f, c);
  if (on_C && !coiso_projection(pi).is_zero()) pi = scale_by(poly_var(rng.uniform(1, 2)), pi);
  return pi;
}

Multivector random_section(Rng& rng, int max_degree) {
  const Dims d{1, 2, 0};
  Multivector s(d);
  for (int j = 1; j <= 2; ++j) s += Multivector(d, random_poly(rng, 0, 1, max_degree, 2), bit(j));
  return s;
}

}  // namespace db
