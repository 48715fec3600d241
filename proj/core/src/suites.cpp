#include "db/suites.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "db/io.hpp"
#include "db/polygeo.hpp"
#include "db/qgeom.hpp"
#include "db/samples.hpp"
#include "db/sampling.hpp"
#include "db/tpois.hpp"
#include "db/vdata.hpp"

namespace db {

using json = nlohmann::json;

int SuiteReport::failures() const {
  int n = 0;
  for (const auto& s : samples) n += !s.ok;
  return n;
}

json to_json(const SuiteReport& r) {
  json groups = json::object();
  json failed = json::array();
  for (const auto& s : r.samples) {
    auto& g = groups[s.group];
    if (g.is_null()) g = {{"samples", 0}, {"failures", 0}};
    g["samples"] = g["samples"].get<int>() + 1;
    if (!s.ok) {
      g["failures"] = g["failures"].get<int>() + 1;
      failed.push_back({{"group", s.group}, {"index", s.index}, {"witness", s.detail}});
    }
  }
  return json{{"suite", r.name},
              {"config",
               {{"seed", r.config.seed},
                {"samples", r.config.samples},
                {"max_arity", r.config.max_arity},
                {"max_degree", r.config.max_degree},
                {"max_terms", r.config.max_terms},
                {"inject_fault", r.config.inject_fault}}},
              {"ok", r.ok()},
              {"total", r.samples.size()},
              {"failures", r.failures()},
              {"groups", groups},
              {"summary", r.summary},
              {"failed", failed}};
}

namespace {

const Dims kB12{1, 2, 0};
const Dims kR3{3, 0, 0};

std::uint16_t bit(int i) { return static_cast<std::uint16_t>(1u << i); }

struct Ctx {
  const SuiteConfig& cfg;
  Rng rng;
  SuiteReport& rep;
  std::map<std::string, int> counters;

  void record(const std::string& group, bool ok, json detail = json::object()) {
    int idx = counters[group]++;
    rep.samples.push_back({group, idx, ok, ok ? json::object() : std::move(detail)});
  }
};

// ---- setting (a): the nilpotent sample ----

json vj(const Vec& v, const StructureGLA& L) { return io::vec_to_json(v, L.basis()); }
json bj(const BigElem<Vec>& b, const StructureGLA& L) { return json{{"l", vj(b.x, L)}, {"a", vj(b.a, L)}}; }

Scalar nonzero(Rng& rng) { return rng.nonzero_coef(); }

VData<StructureGLA> random_nilpotent(Rng& rng) { return nilpotent_vdata(nonzero(rng), nonzero(rng)); }

Vec a_elem(Rng& rng, const VData<StructureGLA>& V, int d) {
  Vec v = V.P(random_vec(rng, *V.L, d));
  if (!v.is_zero()) return v;
  for (const auto& b : V.a_basis)
    if (V.degree(b) == d) return b;
  return v;
}

BigElem<Vec> big_elem(Rng& rng, const VData<StructureGLA>& V, int d) {
  BigElem<Vec> b{random_vec(rng, *V.L, d + 1), V.P(random_vec(rng, *V.L, d))};
  if (b.is_zero()) {
    for (int i = 0; i < V.L->dim(); ++i)
      if (V.L->degree(i) == d + 1) return {V.L->basis_vector(i), {}};
    b.a = a_elem(rng, V, d);
  }
  return b;
}

// An MC element (Dt[1], Pt) of the big algebra: Dt in span(d, c, r) corrected along r.
BigElem<Vec> engineered_alpha(Rng& rng, const VData<StructureGLA>& V, const Vec& phi) {
  const auto& L = *V.L;
  Vec pt = rng.coef() * L.basis_vector(0);
  Vec dt = rng.coef() * L.basis_vector(1) + rng.coef() * L.basis_vector(3) + rng.coef() * L.basis_vector(6);
  dt -= p_phi(V, phi + pt)(V.delta + dt);
  return {dt, pt};
}

// ---- coisotropic backend ----

json mj(const Multivector& u) { return io::to_json(u); }

// f c with c a constant bivector, f cubic (quartic when c is purely vertical), so |pi|_pol = 2.
Multivector pol2_poisson(Rng& rng) {
  if (rng.coin()) {
    Poly f = random_poly(rng, 0, 3, 4, 3);
    if (f.is_zero()) f = poly_const(1);
    return Multivector(kB12, f, bit(1) | bit(2));
  }
  Multivector c = Multivector(kB12, poly_const(rng.nonzero_coef()), bit(0) | bit(1)) +
                  Multivector(kB12, poly_const(rng.coef()), bit(0) | bit(2)) +
                  Multivector(kB12, poly_const(rng.coef()), bit(1) | bit(2));
  Poly f = random_poly(rng, 0, 3, 3, 3);
  if (f.is_zero()) f = poly_const(1);
  return scale_by(f, c);
}

Multivector section_elem(Rng& rng, int arity, int max_degree) {
  Multivector s(kB12);
  for (unsigned w = 0; w < 8; ++w) {
    auto m = static_cast<std::uint16_t>(w);
    if ((m & 1u) || popcount(m) != arity) continue;
    s += Multivector(kB12, random_poly(rng, 0, 1, max_degree, 2), m);
  }
  if (s.is_zero()) s = Multivector(kB12, poly_const(1), arity == 0 ? 0 : (arity == 1 ? bit(1) : bit(1) | bit(2)));
  return s;
}

Multivector l_elem(Rng& rng, int arity, int max_degree) {
  auto u = random_multivector(rng, kB12, arity, max_degree, 2);
  if (u.is_zero()) u = Multivector(kB12, poly_const(1), arity == 0 ? 0 : static_cast<std::uint16_t>((1u << arity) - 1));
  return u;
}

// ---- tpois ----

json tj(const TPois& e) { return io::to_json(e); }

TPois tpois_elem(Rng& rng, const Dims& d, int deg, int max_degree) {
  const int q = deg + 3, s = deg + 2;
  const bool can_form = q >= 1 && q <= d.coords();
  const bool can_mv = s >= 0 && s <= d.coords();
  TPois e{Form(d), Multivector(d)};
  int kind = rng.uniform(0, 2);
  if ((kind != 1 || !can_mv) && can_form) e.form = random_form(rng, d, q, max_degree, 2);
  if ((kind != 0 || !can_form) && can_mv) e.mv = random_multivector(rng, d, s, max_degree, 2);
  if (e.is_zero()) {
    if (can_mv) {
      e.mv = Multivector(d, poly_const(1), static_cast<std::uint16_t>((1u << s) - 1));
    } else {
      e.form = Form(d, poly_const(1), static_cast<std::uint16_t>((1u << q) - 1));
    }
  }
  return e;
}

json pair_json(const std::pair<Form, Multivector>& p) { return json{{"form", io::to_json(p.first)}, {"multivector", io::to_json(p.second)}}; }

// ---- generic relations check ----

template <class W, class Ser>
void relations_group(Ctx& c, const std::string& group, const std::vector<LInftyOne<W>>& algebras,
                     const std::function<std::vector<W>(Rng&, int)>& tuple, Ser ser) {
  for (int n = 1; n <= c.cfg.max_arity; ++n)
    for (int s = 0; s < c.cfg.samples; ++s) {
      const auto& A = algebras[static_cast<std::size_t>(s) % algebras.size()];
      auto args = tuple(c.rng, n);
      W r = relations_residual(A, std::span<const W>(args));
      auto& nz = c.rep.summary["nonzero_top_bracket"][group + "/arity" + std::to_string(n)];
      if (nz.is_null()) nz = 0;
      if (!A.m(std::span<const W>(args)).is_zero()) nz = nz.get<int>() + 1;
      json detail;
      if (!r.is_zero()) {
        detail["arity"] = n;
        detail["algebra"] = A.name;
        for (const auto& a : args) detail["args"].push_back(ser(a));
        detail["residual"] = ser(r);
      }
      c.record(group + "/arity" + std::to_string(n), r.is_zero(), detail);
    }
}

LInftyOne<BigElem<Vec>> flip_crochet(LInftyOne<BigElem<Vec>> G) {
  auto inner = G.bracket;
  G.name += "_fault";
  G.bracket = [inner](std::span<const BigElem<Vec>> args) {
    auto r = inner(args);
    if (args.size() == 2 && !args[0].x.is_zero() && !args[1].x.is_zero()) {
      // remove the crochet term and add it back with the opposite sign
      auto only_x = inner(std::vector<BigElem<Vec>>{{args[0].x, {}}, {args[1].x, {}}});
      r.x -= Scalar(2) * only_x.x;
    }
    return r;
  };
  return G;
}

void suite_jacobi(Ctx& c) {
  const int deg = c.cfg.max_degree;
  constexpr int kAlgebras = 4;
  // (a)
  {
    std::vector<VData<StructureGLA>> Vs;
    for (int i = 0; i < kAlgebras; ++i) Vs.push_back(random_nilpotent(c.rng));
    const auto& L = *Vs[0].L;
    std::vector<LInftyOne<Vec>> small;
    std::vector<LInftyOne<BigElem<Vec>>> big, twisted;
    for (const auto& V : Vs) {
      small.push_back(small_algebra(V));
      auto G = big_algebra(V);
      big.push_back(c.cfg.inject_fault ? flip_crochet(G) : G);
      twisted.push_back(twist(G, engineered_alpha(c.rng, V, Vec()), true, c.cfg.max_terms));
    }
    const auto& V0 = Vs[0];
    relations_group<Vec>(
        c, "a/small", small,
        [&](Rng& r, int n) {
          std::vector<Vec> v;
          for (int i = 0; i < n; ++i) v.push_back(a_elem(r, V0, r.uniform(0, 2)));
          return v;
        },
        [&](const Vec& v) { return vj(v, L); });
    auto big_tuple = [&](Rng& r, int n) {
      std::vector<BigElem<Vec>> v;
      for (int i = 0; i < n; ++i) v.push_back(big_elem(r, V0, r.uniform(-1, 2)));
      return v;
    };
    relations_group<BigElem<Vec>>(c, "a/big", big, big_tuple, [&](const BigElem<Vec>& b) { return bj(b, L); });
    relations_group<BigElem<Vec>>(c, "a/twisted", twisted, big_tuple, [&](const BigElem<Vec>& b) { return bj(b, L); });
  }
  // (b)
  {
    std::vector<LInftyOne<Multivector>> small, twisted;
    std::vector<LInftyOne<BigElem<Multivector>>> big;
    for (int i = 0; i < kAlgebras; ++i) {
      auto Vc = coiso_vdata(pol2_poisson(c.rng), SubmanifoldSplit{});
      small.push_back(small_algebra(Vc));
      auto Vn = coiso_vdata(random_coiso_poisson(c.rng, 1, true), SubmanifoldSplit{});
      big.push_back(big_algebra(Vn));
      // twist the small algebra of a curved V-data by an MC section
      Multivector phi = random_section(c.rng, 1);
      auto Vt = coiso_vdata(fiber_translate(random_coiso_poisson(c.rng, 1, true), -phi), SubmanifoldSplit{});
      twisted.push_back(twist(small_algebra(Vt), phi, true, c.cfg.max_terms));
    }
    auto sec_tuple = [&](Rng& r, int n) {
      std::vector<Multivector> v;
      for (int i = 0; i < n; ++i) v.push_back(section_elem(r, r.uniform(0, 2), deg));
      return v;
    };
    relations_group<Multivector>(c, "b/small", small, sec_tuple, mj);
    relations_group<Multivector>(c, "b/twisted", twisted, sec_tuple, mj);
    relations_group<BigElem<Multivector>>(
        c, "b/big", big,
        [&](Rng& r, int n) {
          std::vector<BigElem<Multivector>> v;
          for (int i = 0; i < n; ++i) {
            int d = r.uniform(-1, 1);
            BigElem<Multivector> b{Multivector(kB12), Multivector(kB12)};
            if (r.uniform(0, 2) != 1) b.x = l_elem(r, d + 2, deg);
            if (b.x.is_zero() || r.coin()) b.a = section_elem(r, d + 1, deg);
            v.push_back(b);
          }
          return v;
        },
        [](const BigElem<Multivector>& b) { return json{{"l", mj(b.x)}, {"a", mj(b.a)}}; });
  }
  // (c)
  {
    std::vector<LInftyOne<TPois>> plain{tpois_algebra(3)}, twisted;
    for (int i = 0; i < kAlgebras; ++i) {
      auto p = random_mc_r3(c.rng, deg);
      twisted.push_back(twist(tpois_algebra(3), TPois{p.H, p.pi}, true, c.cfg.max_terms));
    }
    auto tuple = [&](Rng& r, int n) {
      std::vector<TPois> v;
      if (n >= 2 && r.coin()) {
        // a (n-1)-form among n-1 multivectors: the shape on which m_n can be nonzero
        for (int i = 0; i + 1 < n; ++i) v.push_back(TPois::of_mv(random_multivector(r, kR3, r.uniform(1, 2), deg, 2)));
        v.insert(v.begin() + r.uniform(0, n - 1), TPois::of_form(random_form(r, kR3, n - 1, deg, 2)));
        for (auto& e : v)
          if (e.is_zero()) e = tpois_elem(r, kR3, r.uniform(-2, 1), deg);
        return v;
      }
      for (int i = 0; i < n; ++i) v.push_back(tpois_elem(r, kR3, r.uniform(-2, 1), deg));
      return v;
    };
    relations_group<TPois>(c, "c/tpois", plain, tuple, tj);
    relations_group<TPois>(c, "c/twisted", twisted, tuple, tj);
  }
}

void suite_machine(Ctx& c) {
  int both = 0;
  for (int s = 0; s < c.cfg.samples; ++s) {
    auto V = random_nilpotent(c.rng);
    const auto& L = *V.L;
    const Vec& D = V.delta;
    // Phi = k phi is MC iff k (2y - x k) = 0
    Scalar x = D.coefficient(1), y = D.coefficient(3);
    Vec phi = s % 3 == 0 ? Vec() : (Scalar(2) * y / x) * L.basis_vector(0);
    Vec pt = c.rng.coef() * L.basis_vector(0);
    Vec dt;
    const bool engineered = s % 2 == 0;
    if (engineered) {
      dt = c.rng.coef() * L.basis_vector(1) + c.rng.coef() * L.basis_vector(3) + c.rng.coef() * L.basis_vector(6);
      dt -= p_phi(V, phi + pt)(D + dt);
    } else {
      dt = random_vec(c.rng, L, 1);
    }
    auto r = machine_check(V, phi, dt, pt, c.cfg.max_terms);
    bool ok = r.agree() && (!engineered || r.left_vanishes());
    both += r.left_vanishes();
    c.record("a", ok,
             {{"delta", vj(D, L)}, {"phi", vj(phi, L)}, {"dtilde", vj(dt, L)}, {"ptilde", vj(pt, L)},
              {"left_square", vj(r.left_square, L)}, {"left_mc", vj(r.left_mc, L)},
              {"right_residual", bj(r.right_residual, L)}, {"right_terminated_by", r.right_terminated_by}});
  }
  const int nb = std::max(1, c.cfg.samples / 4);
  int both_b = 0;
  for (int s = 0; s < nb; ++s) {
    Multivector phi = s % 3 == 0 ? Multivector(kB12) : random_section(c.rng, 1);
    Multivector pi = fiber_translate(random_coiso_poisson(c.rng, 1, true), -phi);
    auto V = coiso_vdata(pi, SubmanifoldSplit{});
    Multivector pt = random_section(c.rng, 1);
    const bool engineered = s % 2 == 0;
    Multivector dt(kB12);
    if (engineered) {
      dt = fiber_translate(random_coiso_poisson(c.rng, 1, true), -(phi + pt)) - pi;
    } else {
      dt = random_multivector(c.rng, kB12, 2, 1, 2);
    }
    auto r = machine_check(V, phi, dt, pt, c.cfg.max_terms);
    bool ok = r.agree() && (!engineered || r.left_vanishes());
    both_b += r.left_vanishes();
    c.record("b", ok,
             {{"pi", mj(pi)}, {"phi", mj(phi)}, {"dtilde", mj(dt)}, {"ptilde", mj(pt)},
              {"left_square", mj(r.left_square)}, {"left_mc", mj(r.left_mc)},
              {"right_residual", {{"l", mj(r.right_residual.x)}, {"a", mj(r.right_residual.a)}}},
              {"right_terminated_by", r.right_terminated_by}});
  }
  c.rep.summary["a_samples"] = c.cfg.samples;
  c.rep.summary["a_both_vanish"] = both;
  c.rep.summary["b_samples"] = nb;
  c.rep.summary["b_both_vanish"] = both_b;
}

void suite_truc(Ctx& c) {
  constexpr int kTuples = 8;
  for (int s = 0; s < c.cfg.samples; ++s) {
    auto V = random_nilpotent(c.rng);
    const auto& L = *V.L;
    auto alpha = engineered_alpha(c.rng, V, Vec());
    auto G = big_algebra(V);
    auto T = twist(G, alpha, true, c.cfg.max_terms);
    auto H = big_algebra(twist_vdata(V, alpha, c.cfg.max_terms));
    bool ok = true;
    json detail;
    for (int n = 0; n <= c.cfg.max_arity && ok; ++n)
      for (int k = 0; k < (n == 0 ? 1 : kTuples) && ok; ++k) {
        std::vector<BigElem<Vec>> args;
        for (int i = 0; i < n; ++i) args.push_back(big_elem(c.rng, V, c.rng.uniform(-1, 2)));
        std::span<const BigElem<Vec>> sp(args);
        auto lhs = T.m(sp), rhs = H.m(sp);
        if (!(lhs == rhs)) {
          ok = false;
          detail = {{"alpha", bj(alpha, L)}, {"delta", vj(V.delta, L)}, {"arity", n},
                    {"twisted", bj(lhs, L)}, {"of_twisted_vdata", bj(rhs, L)}};
          for (const auto& a : args) detail["args"].push_back(bj(a, L));
        }
      }
    c.record("alpha", ok, detail);
  }
}

void suite_oracle(Ctx& c) {
  const int deg = c.cfg.max_degree;
  auto check = [&](const std::string& fam, const std::vector<TPois>& args) {
    std::span<const TPois> sp(args);
    auto a = tpois_bracket(sp), b = oracle_bracket(sp);
    json detail;
    if (!(a == b)) {
      for (const auto& x : args) detail["args"].push_back(tj(x));
      detail["closed_form"] = tj(a);
      detail["oracle"] = tj(b);
    }
    auto& nz = c.rep.summary["nonzero"][fam];
    if (nz.is_null()) nz = 0;
    if (!a.is_zero()) nz = nz.get<int>() + 1;
    c.record(fam, a == b, detail);
  };
  for (int s = 0; s < c.cfg.samples; ++s) {
    const int m = c.rng.uniform(1, 3);
    const Dims d{m, 0, 0};
    if (s % 4 == 3) {
      check("a", {TPois::of_mv(random_multivector(c.rng, d, c.rng.uniform(0, m), deg, 3))});
    } else {
      // top forms are closed, so mostly sample below the top degree
      const int q = m > 1 && s % 4 != 2 ? c.rng.uniform(1, m - 1) : c.rng.uniform(1, m);
      check("a", {TPois::of_form(random_form(c.rng, d, q, deg, 3))});
    }
  }
  for (int s = 0; s < c.cfg.samples; ++s) {
    const int m = c.rng.uniform(1, 3);
    const Dims d{m, 0, 0};
    check("b", {TPois::of_mv(random_multivector(c.rng, d, c.rng.uniform(0, m), deg, 3)),
                TPois::of_mv(random_multivector(c.rng, d, c.rng.uniform(0, m), deg, 3))});
  }
  for (int s = 0; s < c.cfg.samples; ++s) {
    const int m = c.rng.uniform(1, 3);
    const Dims d{m, 0, 0};
    const int n = c.rng.uniform(1, 3);
    // the form degree matches n whenever possible so that the bracket is nonzero
    const int q = n <= m && s % 5 != 4 ? n : c.rng.uniform(1, m);
    std::vector<TPois> args;
    for (int i = 0; i < n; ++i) args.push_back(TPois::of_mv(random_multivector(c.rng, d, c.rng.uniform(1, m), deg, 2)));
    args.insert(args.begin() + c.rng.uniform(0, n), TPois::of_form(random_form(c.rng, d, q, deg, 2)));
    check("c", args);
  }
}

TPoisPoint mc_point(Rng& rng, int s, int deg) { return s % 2 ? random_mc_r3(rng, deg) : random_mc_r4(rng, std::min(deg, 1)); }

void suite_mc(Ctx& c) {
  const int deg = c.cfg.max_degree;
  int pos = 0, neg = 0;
  for (int s = 0; s < c.cfg.samples; ++s) {
    TPoisPoint p;
    if (s == 0) {
      p = {Form(kR3, poly_const(1), bit(0) | bit(1) | bit(2)), Multivector(kR3, poly_const(1), bit(0) | bit(1))};
    } else {
      p = mc_point(c.rng, s, deg);
      if (s % 4 >= 2) p = perturb(c.rng, p, deg);
    }
    const int m = p.pi.dims().coords();
    auto series = mc_residual(tpois_algebra(m), TPois{p.H, p.pi}, c.cfg.max_terms);
    auto oracle = mc_residual(oracle_algebra(m), TPois{p.H, p.pi}, c.cfg.max_terms);
    const bool series_zero = series.residual.is_zero() && series.terminated_by != "truncation";
    const bool oracle_zero = oracle.residual.is_zero() && oracle.terminated_by != "truncation";
    Multivector cubic = p.H.is_zero() || p.pi.is_zero() ? Multivector(p.pi.dims()) : wedge_power_sharp(3, p.pi, p.H);
    const bool geometric = de_rham(p.H).is_zero() && schouten(p.pi, p.pi) == Scalar(2) * cubic;
    (geometric ? pos : neg)++;
    const bool expected_positive = s == 0 || s % 4 < 2;
    bool ok = series_zero == geometric && oracle_zero == geometric && (!expected_positive || geometric);
    c.record(s == 0 ? "specific" : (expected_positive ? "constructed" : "perturbed"), ok,
             {{"H", io::to_json(p.H)}, {"pi", io::to_json(p.pi)}, {"series_residual", tj(series.residual)},
              {"oracle_residual", tj(oracle.residual)}, {"geometric", geometric}});
  }
  c.rep.summary["positives"] = pos;
  c.rep.summary["negatives"] = neg;
  c.record("coverage", pos > 0 && neg > 0, {{"positives", pos}, {"negatives", neg}});
}

void suite_coiso(Ctx& c) {
  int pos = 0;
  std::map<std::string, int> by;
  for (int s = 0; s < c.cfg.samples; ++s) {
    Multivector phi = random_section(c.rng, 1 + s % 2);
    Multivector pi = s % 2 == 0 ? fiber_translate(random_coiso_poisson(c.rng, 1, true), -phi)
                                : random_coiso_poisson(c.rng, 1, c.rng.coin());
    auto V = coiso_vdata(pi, SubmanifoldSplit{});
    auto S = small_algebra(V);
    auto r = mc_residual(S, phi, c.cfg.max_terms);
    by[r.terminated_by]++;
    const bool series_zero = r.residual.is_zero() && r.terminated_by != "truncation";
    const bool geometric = coiso_projection(fiber_translate(pi, phi)).is_zero();
    pos += geometric;
    const int pol = pol_degree(pi).value_or(0);
    json nonzero_tail = json::array();
    for (int n = pol + 3; n <= pol + 6; ++n) {
      std::vector<Multivector> args(static_cast<std::size_t>(n), phi);
      if (!S.m(std::span<const Multivector>(args)).is_zero()) nonzero_tail.push_back(n);
    }
    bool ok = series_zero == geometric && nonzero_tail.empty() && r.terminated_by != "truncation" &&
              (s % 2 != 0 || geometric);
    c.record(s % 2 == 0 ? "constructed" : "random", ok,
             {{"pi", mj(pi)}, {"phi", mj(phi)}, {"residual", mj(r.residual)}, {"terminated_by", r.terminated_by},
              {"geometric", geometric}, {"nonzero_summands_beyond_bound", nonzero_tail}});
  }
  c.rep.summary["positives"] = pos;
  c.rep.summary["terminated_by"] = by;
}

void suite_gauge(Ctx& c) {
  const int deg = c.cfg.max_degree;
  int max_last = -1;
  for (int s = 0; s < c.cfg.samples; ++s) {
    auto p = mc_point(c.rng, s, deg);
    const Dims d = p.pi.dims();
    Form B = random_form(c.rng, d, 2, deg, 2);
    Multivector X(d);
    const bool constant = s % 2 == 0;
    if (constant) {
      for (int i = 0; i < d.base; ++i) X += Multivector(d, poly_const(c.rng.coef()), bit(i));
    } else {
      X = random_multivector(c.rng, d, 1, deg, 2);
    }
    auto Y = gauge_Y(B, X, p.H, p.pi);
    auto tangent = mc_residual_derivative(p.H, p.pi, Y.first, Y.second);
    auto gen = generator_match(B, X, p.H, p.pi);
    auto series = gauge_field(tpois_algebra(d.base), TPois{B, X}, TPois{p.H, p.pi}, c.cfg.max_terms);
    max_last = std::max(max_last, series.last_nonzero);
    auto& by = c.rep.summary["terminated_by"][series.terminated_by];
    by = by.is_null() ? 1 : by.get<int>() + 1;
    bool flow_ok = true;
    if (constant) {
      auto Z = generator_Z(B, X, p.H, p.pi);
      auto F = generator_by_flow(B, X, p.H, p.pi);
      flow_ok = Z.first == F.first && Z.second == F.second;
    }
    const bool tangent_ok = tangent.first.is_zero() && tangent.second.is_zero();
    const bool series_ok = series.value == TPois{Y.first, Y.second} && series.terminated_by != "truncation";
    c.record("point", tangent_ok && gen.match() && series_ok && flow_ok,
             {{"H", io::to_json(p.H)}, {"pi", io::to_json(p.pi)}, {"B", io::to_json(B)}, {"X", io::to_json(X)},
              {"tangency", tangent_ok}, {"generator_match", gen.match()}, {"gauge_field_equal", series_ok},
              {"generator_by_flow", flow_ok}, {"Y", pair_json(Y)}, {"tangent", pair_json(tangent)}});
  }
  c.rep.summary["observed_last_nonzero_k"] = max_last;
}

void suite_flow(Ctx& c) {
  const int deg = c.cfg.max_degree;
  const int n0 = c.cfg.samples / 2;
  for (int s = 0; s < c.cfg.samples; ++s) {
    const bool moving = s >= n0;
    Multivector pi(kR3, poly_const(c.rng.nonzero_coef()), bit(0) | bit(1));
    Form B = Form(kR3, poly_const(c.rng.coef()), bit(0) | bit(1)) +
             Form(kR3, random_poly(c.rng, 0, 3, deg, 2), bit(0) | bit(2)) +
             Form(kR3, random_poly(c.rng, 0, 3, deg, 2), bit(1) | bit(2));
    Form H(kR3, random_poly(c.rng, 0, 3, deg, 2), bit(0) | bit(1) | bit(2));
    Multivector X(kR3);
    if (moving) {
      X = Multivector(kR3, poly_const(c.rng.nonzero_coef()), bit(0)) + Multivector(kR3, poly_const(c.rng.coef()), bit(1));
    }
    auto curve = flow_curve(B, X, H, pi);
    auto chk = check_flow_curve(curve, B, X, H, pi);
    bool closed_ok = true;
    if (!moving) {
      const Dims D = curve.dims;
      const Poly t = poly_var(D.param_var(0));
      auto direct = e_b_pi_rational(scale_by(t, lift(B, D)), lift(pi, D));
      closed_ok = curve.H == lift(H, D) - scale_by(t, de_rham(lift(B, D))) && curve.numerator == direct.numerator &&
                  curve.denominator == direct.denominator;
    }
    bool ok = chk.starts_at_point && chk.transport_ode && chk.integral_curve && chk.initial_velocity && closed_ok;
    c.record(moving ? "constant_X" : "X_zero", ok,
             {{"B", io::to_json(B)}, {"X", io::to_json(X)}, {"H", io::to_json(H)}, {"pi", io::to_json(pi)},
              {"starts_at_point", chk.starts_at_point}, {"transport_ode", chk.transport_ode},
              {"integral_curve", chk.integral_curve}, {"initial_velocity", chk.initial_velocity},
              {"closed_form", closed_ok}});
  }
}

template <class Lie>
json violations_json(const VDataReport<typename Lie::Elem>& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back(x.kind);
  return v;
}

void suite_filtration(Ctx& c) {
  std::map<std::string, int> by;
  for (int i = 0; i < 4; ++i) {
    auto V = coiso_vdata(random_coiso_poisson(c.rng, 1, i % 2 == 0), SubmanifoldSplit{});
    auto f = check_filtration(V);
    auto v = validate_vdata(V);
    c.record("laws/coisotropic", f.ok() && v.ok(),
             {{"pi", mj(V.delta)}, {"filtration", violations_json<SchoutenAlgebra>(f)}, {"vdata", violations_json<SchoutenAlgebra>(v)}});
  }
  for (int m = 1; m <= 2; ++m) {
    auto V = qgeom_vdata(m, 1);
    auto f = check_filtration(V);
    auto v = validate_vdata(V);
    c.record("laws/qgeom", f.ok() && v.ok(),
             {{"dim", m}, {"filtration", violations_json<SuperPoissonAlgebra>(f)}, {"vdata", violations_json<SuperPoissonAlgebra>(v)}});
  }
  for (int s = 0; s < c.cfg.samples; ++s) {
    std::string where;
    std::string by_what;
    switch (s % 3) {
      case 0: {
        auto V = coiso_vdata(random_coiso_poisson(c.rng, 1, c.rng.coin()), SubmanifoldSplit{});
        by_what = mc_residual(small_algebra(V), random_section(c.rng, c.cfg.max_degree), c.cfg.max_terms).terminated_by;
        where = "mc/coisotropic_small";
        break;
      }
      case 1: {
        auto V = coiso_vdata(random_coiso_poisson(c.rng, 1, true), SubmanifoldSplit{});
        BigElem<Multivector> a{random_multivector(c.rng, kB12, 2, 1, 2), random_section(c.rng, c.cfg.max_degree)};
        by_what = mc_residual(big_algebra(V), a, c.cfg.max_terms).terminated_by;
        where = "mc/coisotropic_big";
        break;
      }
      default: {
        // bivectors are the degree-0 elements
        const int m = c.rng.uniform(2, 3);
        auto V = qgeom_vdata(m, 0);
        auto phi = mv_to_super(random_multivector(c.rng, Dims{m, 0, 0}, 2, c.cfg.max_degree, 2));
        by_what = mc_residual(small_algebra(V), phi, c.cfg.max_terms).terminated_by;
        where = "mc/qgeom_small";
        break;
      }
    }
    by[by_what]++;
    c.record(where, by_what != "truncation", {{"terminated_by", by_what}});
  }
  c.rep.summary["terminated_by"] = by;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"jacobi", "machine", "truc", "oracle", "gauge",
                                              "flow",   "mc",      "coiso", "filtration"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (config.max_arity < 1 || config.max_arity > 6) throw std::invalid_argument("max_arity must be between 1 and 6");
  if (config.max_degree < 0 || config.max_degree > 6) throw std::invalid_argument("max_degree must be between 0 and 6");
  SuiteReport rep;
  rep.name = name;
  rep.config = config;
  Ctx c{config, Rng(config.seed), rep, {}};
  if (name == "jacobi") {
    suite_jacobi(c);
  } else if (name == "machine") {
    suite_machine(c);
  } else if (name == "truc") {
    suite_truc(c);
  } else if (name == "oracle") {
    suite_oracle(c);
  } else if (name == "gauge") {
    suite_gauge(c);
  } else if (name == "flow") {
    suite_flow(c);
  } else if (name == "mc") {
    suite_mc(c);
  } else if (name == "coiso") {
    suite_coiso(c);
  } else if (name == "filtration") {
    suite_filtration(c);
  } else {
    throw std::invalid_argument("unknown suite \"" + name + "\"");
  }
  return rep;
}

}  // namespace db
