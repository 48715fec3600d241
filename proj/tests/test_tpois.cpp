#include <doctest.h>

#include "db/qgeom.hpp"
#include "db/random.hpp"
#include "db/sampling.hpp"
#include "db/tpois.hpp"
#include "helpers.hpp"

using namespace db;
using namespace testing_helpers;

namespace {

const Dims R2{2, 0, 0};
const Dims R3{3, 0, 0};
const Dims R4{4, 0, 0};

Scalar ksign(const SuperPoly& f, const SuperPoly& g) {
  int a = *f.degree() - 2, b = *g.degree() - 2;
  return sign_of((a * b) % 2 != 0);
}

TPois tp(const Form& H, const Multivector& pi) { return TPois{H, pi}; }

}  // namespace

TEST_CASE("super bracket on coordinates") {
  const int m = 2;
  CHECK(super_bracket(SuperPoly::P(m, 0), SuperPoly::x(m, 0)) == SuperPoly::constant(m, 1));
  CHECK(super_bracket(SuperPoly::p(m, 0), SuperPoly::v(m, 0)) == SuperPoly::constant(m, 1));
  CHECK(super_bracket(SuperPoly::p(m, 0), SuperPoly::p(m, 1)).is_zero());
  CHECK(super_bracket(SuperPoly::P(m, 0), SuperPoly::x(m, 1)).is_zero());
  for (int k = 1; k <= 4; ++k) {
    auto D = canonical_delta(k);
    CHECK(D.degree() == 3);
    CHECK(super_bracket(D, D).is_zero());
  }
}

TEST_CASE("super bracket: graded antisymmetry and Jacobi on random cubics") {
  Rng rng(41);
  for (int t = 0; t < 40; ++t) {
    const int m = rng.uniform(1, 3);
    auto f = random_superpoly(rng, m, rng.uniform(0, 4), 3);
    auto g = random_superpoly(rng, m, rng.uniform(0, 4), 3);
    auto h = random_superpoly(rng, m, rng.uniform(0, 4), 3);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    CHECK(super_bracket(f, g) == Scalar(-1) * (ksign(f, g) * super_bracket(g, f)));
    auto lhs = super_bracket(f, super_bracket(g, h));
    auto rhs = super_bracket(super_bracket(f, g), h) + ksign(f, g) * super_bracket(g, super_bracket(f, h));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("evaluation on the base and the dictionaries") {
  const int m = 2;
  auto x1 = SuperPoly::x(m, 0);
  auto p1 = SuperPoly::p(m, 0), p2 = SuperPoly::p(m, 1);
  CHECK(eval_on_base(x1 * p1 * SuperPoly::P(m, 1)).is_zero());
  CHECK(eval_on_base(x1 * p1 * p2) == x1 * p1 * p2);
  CHECK(eval_on_base(canonical_delta(m)).is_zero());
  CHECK(mv_to_super(mv(R2, one(), {0, 1})) == p1 * p2);
  auto v = [&](int j) { return SuperPoly::v(3, j); };
  CHECK(form_to_super(form(R3, one(), {0, 1, 2})) == v(0) * v(1) * v(2));
  CHECK(mv_to_super(Multivector(R2, var(0), 0)) == x1);
  CHECK(super_to_mv(x1) == Multivector(R2, var(0), 0));
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    auto u = random_multivector(rng, R3, rng.uniform(0, 3), 2);
    auto w = random_form(rng, R3, rng.uniform(1, 3), 2);
    CHECK(super_to_mv(mv_to_super(u)) == u);
    CHECK(super_to_form(form_to_super(w)) == w);
    CHECK(eval_on_base(form_to_super(w)).is_zero());
    auto a = random_superpoly(rng, 2, rng.uniform(1, 4), 2);
    auto b = random_superpoly(rng, 2, rng.uniform(1, 4), 2);
    auto ka = a - eval_on_base(a), kb = b - eval_on_base(b);
    CHECK(eval_on_base(super_bracket(ka, kb)).is_zero());
  }
  CHECK_THROWS_AS(super_to_mv(SuperPoly::P(2, 0)), std::domain_error);
}

TEST_CASE("qgeom V-data validates with its filtration") {
  for (int m = 1; m <= 2; ++m) {
    auto V = qgeom_vdata(m, 1);
    CHECK_FALSE(V.curved);
    CHECK(validate_vdata(V).ok());
    CHECK(check_filtration(V).ok());
  }
}

TEST_CASE("tpois brackets: closed-form examples") {
  auto H = form(R3, var(0), {1, 2});
  CHECK(tpois_bracket({TPois::of_form(H)}) == TPois::of_form(-de_rham(H)));
  auto p1 = mv(R3, var(2), {0, 1});
  auto p2 = mv(R3, var(0), {1, 2});
  CHECK(tpois_bracket({TPois::of_mv(p1), TPois::of_mv(p2)}) == TPois::of_mv(-schouten(p1, p2)));
  // with one bivector only 1-forms contract to something nonzero; the 3-form gives 0
  auto vol = form(R3, one(), {0, 1, 2});
  auto pi = mv(R3, one(), {0, 1});
  auto c = tpois_bracket({TPois::of_form(vol), TPois::of_mv(pi)});
  CHECK(c.is_zero());
  CHECK(oracle_bracket(std::vector<TPois>{TPois::of_form(vol), TPois::of_mv(pi)}).is_zero());
  auto c1 = tpois_bracket({TPois::of_form(form(R3, var(0), {0})), TPois::of_mv(pi)});
  CHECK(c1 == TPois::of_mv(mv(R3, var(0), {1})));
}

TEST_CASE("closed-form brackets agree with the derived brackets of the super-Poisson model") {
  Rng rng(101);
  for (int t = 0; t < 60; ++t) {
    const int m = rng.uniform(1, 3);
    const Dims d{m, 0, 0};
    const int n = rng.uniform(1, 3);
    std::vector<TPois> args;
    const int form_at = rng.uniform(0, n);  // n means no form
    for (int i = 0; i < n; ++i) {
      if (i == form_at) {
        args.push_back(TPois::of_form(random_form(rng, d, rng.uniform(1, m), 3, 2)));
      } else {
        args.push_back(TPois::of_mv(random_multivector(rng, d, rng.uniform(0, m), 3, 2)));
      }
    }
    std::span<const TPois> sp(args);
    CHECK(tpois_bracket(sp) == oracle_bracket(sp));
  }
}

TEST_CASE("tpois relations on random tuples over R^3") {
  Rng rng(55);
  auto A = tpois_algebra(3);
  for (int t = 0; t < 40; ++t) {
    const int n = rng.uniform(1, 4);
    std::vector<TPois> args;
    for (int i = 0; i < n; ++i) {
      if (rng.uniform(0, 3) == 0) {
        args.push_back(TPois::of_form(random_form(rng, R3, rng.uniform(1, 3), 2, 2)));
      } else {
        args.push_back(TPois::of_mv(random_multivector(rng, R3, rng.uniform(0, 3), 2, 2)));
      }
    }
    CHECK(relations_residual(A, std::span<const TPois>(args)).is_zero());
  }
}

TEST_CASE("MC residual: closed form and series") {
  auto r = tpois_mc_residual(Form(R3), mv(R3, one(), {0, 1}));
  CHECK(r.first.is_zero());
  CHECK(r.second.is_zero());
  r = tpois_mc_residual(form(R3, one(), {0, 1, 2}), mv(R3, one(), {0, 1}));
  CHECK(r.first.is_zero());
  CHECK(r.second.is_zero());
  r = tpois_mc_residual(form(R4, one(), {0, 1, 2}), mv(R4, one(), {0, 1}) + mv(R4, one(), {2, 3}));
  CHECK(r.first.is_zero());
  CHECK_FALSE(r.second.is_zero());
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const Dims d = t % 2 ? R3 : R4;
    auto H = random_form(rng, d, 3, 2, 2);
    auto pi = random_multivector(rng, d, 2, 2, 2);
    auto series = mc_residual(tpois_algebra(d.base), tp(H, pi));
    CHECK(series.terminated_by == "bound");
    auto closed = tpois_mc_residual(H, pi);
    CHECK(series.residual.form == -closed.first);
    CHECK(series.residual.mv == Scalar(-1, 2) * closed.second);
  }
}

TEST_CASE("sampled MC points are MC") {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    auto p = random_mc_r3(rng, 2);
    auto q = random_mc_r4(rng, 1);
    CHECK(is_mc(tpois_algebra(3), tp(p.H, p.pi)));
    CHECK(is_mc(tpois_algebra(4), tp(q.H, q.pi)));
  }
}

TEST_CASE("some sampled R^4 points are genuinely twisted") {
  Rng rng(12);
  int twisted = 0;
  for (int t = 0; t < 10; ++t) {
    auto q = random_mc_r4(rng, 1);
    if (!wedge_power_sharp(3, q.pi, q.H).is_zero()) ++twisted;
  }
  CHECK(twisted > 0);
}

TEST_CASE("gauge vector field") {
  auto pi = mv(R3, var(0), {0, 1});
  auto H = form(R3, var(1), {0, 1, 2});
  auto z = gauge_Y(Form(R3), Multivector(R3), H, pi);
  CHECK(z.first.is_zero());
  CHECK(z.second.is_zero());
  auto X = mv(R3, var(2), {0});
  z = gauge_Y(Form(R3), X, Form(R3), pi);
  CHECK(z.first.is_zero());
  CHECK(z.second == schouten(X, pi));
  Rng rng(77);
  for (int t = 0; t < 12; ++t) {
    auto p = t % 2 ? random_mc_r3(rng, 2) : random_mc_r4(rng, 1);
    const Dims d = p.pi.dims();
    auto B = random_form(rng, d, 2, 2, 2);
    auto Xr = random_multivector(rng, d, 1, 2, 2);
    auto Y = gauge_Y(B, Xr, p.H, p.pi);
    auto series = gauge_field(tpois_algebra(d.base), tp(B, Xr), tp(p.H, p.pi));
    CHECK(series.value == tp(Y.first, Y.second));
    auto tangent = mc_residual_derivative(p.H, p.pi, Y.first, Y.second);
    CHECK(tangent.first.is_zero());
    CHECK(tangent.second.is_zero());
    CHECK(generator_match(B, Xr, p.H, p.pi).match());
  }
}

TEST_CASE("the B - i_X H variant of the gauge field is not tangent") {
  Rng rng(78);
  int failures = 0;
  for (int t = 0; t < 12; ++t) {
    auto p = random_mc_r4(rng, 1);
    const Dims d = p.pi.dims();
    auto B = random_form(rng, d, 2, 1, 2);
    auto X = random_multivector(rng, d, 1, 1, 2);
    Form beta = B - interior(X, p.H);
    Multivector v = schouten(X, p.pi) + wedge_power_sharp(2, p.pi, beta);
    auto tangent = mc_residual_derivative(p.H, p.pi, -de_rham(B), v);
    if (!tangent.second.is_zero()) ++failures;
  }
  CHECK(failures > 0);
}

TEST_CASE("generator identity for trivial cases") {
  auto pi = mv(R3, one(), {0, 1});
  auto H = form(R3, var(2), {0, 1, 2});
  auto B = form(R3, var(0), {0, 2});
  auto r = generator_match(B, Multivector(R3), H, pi);
  CHECK(r.match());
  auto Z = generator_Z(B, Multivector(R3), H, pi);
  auto Y = gauge_Y(B, Multivector(R3), H, pi);
  CHECK(Z.first == Y.first);
  CHECK(Z.second == Y.second);
  CHECK(generator_match(B, mv(R3, one(), {1}), Form(R3), pi).match());
  CHECK_THROWS_AS(generator_match(B, Multivector(R3), H, mv(R3, var(0), {0, 2}) + mv(R3, one(), {0, 1})),
                  NotMaurerCartan);
}

TEST_CASE("e^B pi") {
  auto pi = mv(R2, one(), {0, 1});
  CHECK(e_b_pi(Form(R2), pi) == pi);
  auto r = e_b_pi(form(R2, cst(1, 2), {0, 1}), pi);
  CHECK(r == Scalar(2) * pi);
  auto pi4 = mv(R4, one(), {0, 1});
  CHECK(e_b_pi(form(R4, one(), {2, 3}), pi4) == pi4);
  CHECK_THROWS_WITH_AS(e_b_pi(form(R2, var(0), {0, 1}), pi), "e_b_pi: graph transform leaves the polynomial category",
                       std::domain_error);
  CHECK_THROWS_WITH_AS(e_b_pi(form(R2, one(), {0, 1}), pi), "e_b_pi: not a graph (det(1 + B pi) = 0)",
                       std::domain_error);
  // (e^B pi)^# (1 + B^flat pi^#) = pi^#, checked on coordinate covectors
  auto B = form(R4, var(1), {0, 2});
  auto p0 = pi4 + mv(R4, one(), {2, 3});
  auto e = e_b_pi(B, p0);
  for (int j = 0; j < 4; ++j) {
    Form xi = form(R4, one(), {j});
    Multivector v = sharp(p0, xi);
    // B^flat(v) = -i_v B in this contraction convention: (B^flat v)_k = sum_i v_i B_{ik}
    Form bv = interior(v, B);
    CHECK(sharp(e, xi + bv) == v);
  }
}

TEST_CASE("group action") {
  Rng rng(19);
  auto H = form(R3, var(0), {0, 1, 2});
  auto pi = mv(R3, var(2), {0, 1});
  auto id = GroupElement{Form(R3), AffineMap::identity(R3)};
  auto r = group_act(id, H, pi);
  CHECK(r.first == H);
  CHECK(r.second == pi);
  auto B = form(R3, cst(1, 3), {0, 1}) + form(R3, var(1), {1, 2});
  auto pc = mv(R3, one(), {0, 1});
  r = group_act(GroupElement{B, AffineMap::identity(R3)}, H, pc);
  CHECK(r.first == H - de_rham(B));
  CHECK(r.second == e_b_pi(B, pc));
  for (int t = 0; t < 10; ++t) {
    Multivector c = mv(R3, cst(rng.uniform(-2, 2)), {0, 1}) + mv(R3, cst(rng.uniform(-2, 2)), {0, 2}) +
                    mv(R3, cst(rng.uniform(-2, 2)), {1, 2});
    auto Hr = random_form(rng, R3, 3, 2, 2);
    GroupElement g1{form(R3, cst(rng.uniform(-2, 2), 5), {0, 1}) + form(R3, cst(rng.uniform(-2, 2), 7), {1, 2}),
                    random_affine(rng, R3)};
    GroupElement g2{form(R3, cst(rng.uniform(-2, 2), 3), {0, 2}), random_affine(rng, R3)};
    auto lhs = group_act(g2, Hr, c);
    lhs = group_act(g1, lhs.first, lhs.second);
    auto rhs = group_act(group_compose(g1, g2), Hr, c);
    CHECK(lhs.first == rhs.first);
    CHECK(lhs.second == rhs.second);
    auto p = random_mc_r3(rng, 1);
    auto moved = group_act(GroupElement{Form(R3), random_affine(rng, R3)}, p.H, p.pi);
    auto res = tpois_mc_residual(moved.first, moved.second);
    CHECK(res.first.is_zero());
    CHECK(res.second.is_zero());
  }
}

TEST_CASE("flow curves") {
  Rng rng(29);
  for (int t = 0; t < 8; ++t) {
    const bool moving = t % 2 == 1;
    Multivector pi = mv(R3, one(), {0, 1});
    Form B = form(R3, cst(rng.uniform(-2, 2)), {0, 1}) + form(R3, random_poly(rng, 0, 3, 2, 2), {0, 2}) +
             form(R3, random_poly(rng, 0, 3, 2, 2), {1, 2});
    Form H = form(R3, random_poly(rng, 0, 3, 2, 2), {0, 1, 2});
    Multivector X(R3);
    if (moving) X = mv(R3, cst(rng.uniform(1, 3)), {0}) + mv(R3, cst(rng.uniform(-2, 2)), {1});
    auto c = flow_curve(B, X, H, pi);
    auto chk = check_flow_curve(c, B, X, H, pi);
    CHECK(chk.starts_at_point);
    CHECK(chk.transport_ode);
    CHECK(chk.integral_curve);
    CHECK(chk.initial_velocity);
    if (!moving) {
      const Dims D = c.dims;
      const Poly tt = poly_var(D.param_var(0));
      auto direct = e_b_pi_rational(scale_by(tt, lift(B, D)), lift(pi, D));
      CHECK(c.H == lift(H, D) - scale_by(tt, de_rham(lift(B, D))));
      CHECK(c.numerator == direct.numerator);
      CHECK(c.denominator == direct.denominator);
    }
  }
  CHECK_THROWS_AS(flow_curve(Form(R3), mv(R3, var(0), {0}), Form(R3), mv(R3, one(), {0, 1})), std::invalid_argument);
}

TEST_CASE("the action generator matches differentiation of the group action") {
  Rng rng(88);
  for (int t = 0; t < 8; ++t) {
    auto p = t % 2 ? random_mc_r3(rng, 2) : random_mc_r4(rng, 1);
    const Dims d = p.pi.dims();
    auto B = random_form(rng, d, 2, 2, 2);
    Multivector X(d);
    for (int i = 0; i < d.base; ++i) X += mv(d, cst(rng.uniform(-2, 2)), {i});
    if (t % 4 == 3) X += mv(d, var(0), {1});  // nilpotent linear part
    auto Z = generator_Z(B, X, p.H, p.pi);
    auto F = generator_by_flow(B, X, p.H, p.pi);
    CHECK(Z.first == F.first);
    CHECK(Z.second == F.second);
  }
}
