#pragma once

#include <algorithm>
#include <climits>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "db/linfty.hpp"

namespace db {

// Element x[1] + a of L[1] + a.
template <class E>
struct BigElem {
  E x{};
  E a{};

  bool is_zero() const { return x.is_zero() && a.is_zero(); }
  BigElem& operator+=(const BigElem& o) {
    x += o.x;
    a += o.a;
    return *this;
  }
  BigElem& operator-=(const BigElem& o) {
    x -= o.x;
    a -= o.a;
    return *this;
  }
  friend BigElem operator+(BigElem p, const BigElem& q) { return p += q; }
  friend BigElem operator-(BigElem p, const BigElem& q) { return p -= q; }
  friend BigElem operator*(const Scalar& s, const BigElem& p) { return {s * p.x, s * p.a}; }
  friend bool operator==(const BigElem& p, const BigElem& q) { return p.x == q.x && p.a == q.a; }
};

template <class E>
struct VFiltration {
  std::function<std::optional<int>(const E&)> weight;  // on L; nullopt for zero
  std::function<std::optional<int>(int)> top_L;        // largest weight in L of degree d
  std::function<std::optional<int>(int)> top_a;        // largest weight in a of degree d
};

// A V-data (L, a, P, Delta). L is any graded Lie algebra type providing
// Elem, bracket, degree and zero.
template <class Lie>
struct VData {
  using E = typename Lie::Elem;
  std::string name;
  std::shared_ptr<const Lie> L;
  std::function<E(const E&)> P;
  std::function<bool(const E&)> in_a;
  E delta{};
  bool curved = false;
  // Finite basis (or a bounded slice of one) used for validation.
  std::vector<E> basis;
  std::vector<E> a_basis;
  std::optional<VFiltration<E>> filtration;
  // L^{c+1} = 0: every bracket of c+1 elements vanishes.
  std::optional<int> nilpotency_class;

  E bracket(const E& x, const E& y) const { return L->bracket(x, y); }
  std::optional<int> degree(const E& x) const { return L->degree(x); }
};

template <class Lie>
VData<Lie> make_vdata(std::string name, std::shared_ptr<const Lie> L, std::function<typename Lie::Elem(const typename Lie::Elem&)> P,
                      std::function<bool(const typename Lie::Elem&)> in_a, typename Lie::Elem delta) {
  VData<Lie> V;
  V.name = std::move(name);
  V.L = std::move(L);
  V.P = std::move(P);
  V.in_a = std::move(in_a);
  V.delta = std::move(delta);
  V.curved = !V.P(V.delta).is_zero();
  return V;
}

template <class E>
struct VDataViolation {
  std::string kind;
  std::vector<E> witness;
  E value{};
};

template <class E>
struct VDataReport {
  std::vector<VDataViolation<E>> violations;
  bool ok() const { return violations.empty(); }
};

template <class Lie>
VDataReport<typename Lie::Elem> validate_vdata(const VData<Lie>& V) {
  using E = typename Lie::Elem;
  VDataReport<E> rep;
  auto fail = [&](std::string kind, std::vector<E> w, E value) {
    rep.violations.push_back({std::move(kind), std::move(w), std::move(value)});
  };
  if (!V.delta.is_zero() && V.degree(V.delta) != 1) fail("delta_degree", {V.delta}, V.delta);
  E dd = V.bracket(V.delta, V.delta);
  if (!dd.is_zero()) fail("square_zero", {V.delta}, dd);
  for (const E& b : V.basis) {
    E pb = V.P(b);
    if (!(V.P(pb) == pb)) fail("idempotent", {b}, V.P(pb) - pb);
    if (!pb.is_zero() && !V.in_a(pb)) fail("image", {b}, pb);
  }
  for (const E& a : V.a_basis) {
    if (!V.in_a(a)) fail("a_membership", {a}, a);
    if (!(V.P(a) == a)) fail("identity_on_a", {a}, V.P(a) - a);
  }
  for (std::size_t i = 0; i < V.a_basis.size(); ++i)
    for (std::size_t j = i; j < V.a_basis.size(); ++j) {
      E r = V.bracket(V.a_basis[i], V.a_basis[j]);
      if (!r.is_zero()) fail("abelian", {V.a_basis[i], V.a_basis[j]}, r);
    }
  std::vector<E> kernel;
  for (const E& b : V.basis) {
    E k = b - V.P(b);
    if (!k.is_zero()) kernel.push_back(k);
  }
  for (std::size_t i = 0; i < kernel.size(); ++i)
    for (std::size_t j = i; j < kernel.size(); ++j) {
      E r = V.P(V.bracket(kernel[i], kernel[j]));
      if (!r.is_zero()) fail("kernel_subalgebra", {kernel[i], kernel[j]}, r);
    }
  if (V.curved == V.P(V.delta).is_zero()) fail("curved_flag", {V.delta}, V.P(V.delta));
  return rep;
}

// Filtration laws: bracket of filtration degree zero, a_0 inside F^1, P of filtration degree zero.
template <class Lie>
VDataReport<typename Lie::Elem> check_filtration(const VData<Lie>& V) {
  using E = typename Lie::Elem;
  VDataReport<E> rep;
  if (!V.filtration) {
    rep.violations.push_back({"no_filtration", {}, E{}});
    return rep;
  }
  const auto& w = V.filtration->weight;
  for (std::size_t i = 0; i < V.basis.size(); ++i)
    for (std::size_t j = i; j < V.basis.size(); ++j) {
      E r = V.bracket(V.basis[i], V.basis[j]);
      if (r.is_zero()) continue;
      if (*w(r) < *w(V.basis[i]) + *w(V.basis[j])) rep.violations.push_back({"bracket", {V.basis[i], V.basis[j]}, r});
    }
  for (const E& a : V.a_basis)
    if (V.degree(a) == 0 && *w(a) < 1) rep.violations.push_back({"a0_in_F1", {a}, a});
  for (const E& b : V.basis) {
    E pb = V.P(b);
    if (!pb.is_zero() && *w(pb) < *w(b)) rep.violations.push_back({"projection", {b}, pb});
  }
  return rep;
}

namespace detail {

template <class E>
std::optional<int> min_opt(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

template <class E>
std::optional<int> max_opt(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

// m_n is a bracket of n + extra elements of L, so it vanishes once n + extra > c.
inline std::optional<int> nilpotent_arity(std::optional<int> cls, int at_least, int extra) {
  if (!cls) return std::nullopt;
  return std::max(at_least, *cls - extra);
}

}  // namespace detail

// The derived brackets P[...[[Delta,a_1],a_2],...,a_n] on a, with m_0 = P(Delta) when curved.
template <class Lie>
LInftyOne<typename Lie::Elem> small_algebra(const VData<Lie>& V) {
  using E = typename Lie::Elem;
  LInftyOne<E> A;
  A.name = "small(" + V.name + ")";
  A.zero = V.L->zero();
  A.curved = V.curved;
  A.degree = [L = V.L](const E& e) { return L->degree(e); };
  A.bracket = [V](std::span<const E> args) -> E {
    E acc = V.delta;
    for (const E& a : args) {
      if (acc.is_zero()) break;
      acc = V.bracket(acc, a);
    }
    return V.P(acc);
  };
  A.arity_bound = detail::nilpotent_arity(V.nilpotency_class, 0, 1);
  if (V.filtration) {
    Filtration<E> F;
    F.weight = V.filtration->weight;
    F.shift = V.delta.is_zero() ? 0 : V.filtration->weight(V.delta).value();
    F.top = V.filtration->top_a;
    A.filtration = F;
  }
  return A;
}

namespace detail {

template <class Lie>
std::optional<int> big_degree(const VData<Lie>& V, const BigElem<typename Lie::Elem>& v) {
  std::optional<int> d;
  if (!v.x.is_zero()) {
    auto dx = V.degree(v.x);
    if (!dx) return std::nullopt;
    d = *dx - 1;
  }
  if (!v.a.is_zero()) {
    auto da = V.degree(v.a);
    if (!da || (d && *d != *da)) return std::nullopt;
    d = da;
  }
  return d;
}

// m_n with every argument in a: P[...[D a_1, a_2],...,a_n]; m_1(a) = P(D a).
template <class Lie>
typename Lie::Elem all_a_bracket(const VData<Lie>& V, const std::vector<typename Lie::Elem>& as) {
  auto acc = V.delta;
  for (const auto& a : as) {
    if (acc.is_zero()) return acc;
    acc = V.bracket(acc, a);
  }
  return V.P(acc);
}

// m_n(x[1], a_1..a_{n-1}) for n >= 2: P[...[x,a_1],...,a_{n-1}].
template <class Lie>
typename Lie::Elem one_x_bracket(const VData<Lie>& V, const typename Lie::Elem& x,
                                 const std::vector<typename Lie::Elem>& as) {
  auto acc = x;
  for (const auto& a : as) {
    if (acc.is_zero()) return acc;
    acc = V.bracket(acc, a);
  }
  return V.P(acc);
}

}  // namespace detail

// The big algebra on L[1] + a. Requires Delta in Ker P.
template <class Lie>
LInftyOne<BigElem<typename Lie::Elem>> big_algebra(const VData<Lie>& V) {
  using E = typename Lie::Elem;
  using B = BigElem<E>;
  if (V.curved) throw std::invalid_argument("big_algebra: " + V.name + " is curved (P(Delta) != 0)");
  LInftyOne<B> A;
  A.name = "big(" + V.name + ")";
  A.zero = B{V.L->zero(), V.L->zero()};
  A.degree = [V](const B& v) { return detail::big_degree(V, v); };
  A.bracket = [V](std::span<const B> args) -> B {
    const int n = static_cast<int>(args.size());
    const E zero = V.L->zero();
    B out{zero, zero};
    if (n == 0) return out;
    std::vector<int> deg;
    for (const auto& v : args) {
      if (v.is_zero()) return out;
      auto d = detail::big_degree(V, v);
      if (!d) throw std::invalid_argument("big_algebra: argument is not homogeneous");
      deg.push_back(*d);
    }
    // No L-part.
    {
      std::vector<E> as;
      bool ok = true;
      for (const auto& v : args) {
        if (v.a.is_zero()) {
          ok = false;
          break;
        }
        as.push_back(v.a);
      }
      if (ok) out.a += detail::all_a_bracket(V, as);
    }
    // Exactly one L-part, moved to the front.
    for (int i = 0; i < n; ++i) {
      if (args[i].x.is_zero()) continue;
      std::vector<E> rest;
      bool ok = true;
      int parity = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        if (args[j].a.is_zero()) {
          ok = false;
          break;
        }
        if (j < i) parity += deg[i] * deg[j];
        rest.push_back(args[j].a);
      }
      if (!ok) continue;
      const Scalar s = sign_of((parity & 1) != 0);
      const E& x = args[i].x;
      if (n == 1) {
        out.x -= V.bracket(V.delta, x);
        out.a += V.P(x);
      } else {
        out.a += s * detail::one_x_bracket(V, x, rest);
      }
    }
    // Two L-parts.
    if (n == 2 && !args[0].x.is_zero() && !args[1].x.is_zero()) {
      const int dx = deg[0] + 1;
      out.x += sign_of((dx & 1) != 0) * V.bracket(args[0].x, args[1].x);
    }
    return out;
  };
  A.arity_bound = detail::nilpotent_arity(V.nilpotency_class, 2, 0);
  if (V.filtration) {
    const auto F0 = *V.filtration;
    const std::optional<int> wdelta = V.delta.is_zero() ? std::nullopt : F0.weight(V.delta);
    Filtration<B> F;
    F.weight = [F0](const B& v) {
      return detail::min_opt<E>(F0.weight(v.x), F0.weight(v.a));
    };
    F.shift = std::min(0, wdelta.value_or(0));
    F.top = [F0](int d) { return detail::max_opt<E>(F0.top_L(d + 1), F0.top_a(d)); };
    A.filtration = F;
    // Summand n of the MC series at (x, a) with a in F^1 lies in
    // F^{min(w(x), w(Delta)+1) + n - 1} for n >= 3.
    A.mc_bound = [F0, wdelta](const B& phi) -> std::optional<int> {
      if (!phi.a.is_zero()) {
        auto wa = F0.weight(phi.a);
        if (!wa || *wa < 1) return std::nullopt;
      }
      auto top = detail::max_opt<E>(F0.top_L(2), F0.top_a(1));
      if (!top) return 2;
      int base = INT_MAX;
      if (!phi.x.is_zero()) base = *F0.weight(phi.x);
      if (wdelta) base = std::min(base, *wdelta + 1);
      if (base == INT_MAX) return 2;
      return std::max(2, *top - base + 1);
    };
  }
  return A;
}

// P o e^{[., Phi]}, the series cut at the first exactly vanishing iterate.
template <class Lie>
std::function<typename Lie::Elem(const typename Lie::Elem&)> p_phi(const VData<Lie>& V, const typename Lie::Elem& phi,
                                                                   int cap = 64) {
  using E = typename Lie::Elem;
  if (!phi.is_zero() && (!V.in_a(phi) || V.degree(phi) != 0))
    throw std::invalid_argument("p_phi: Phi must be a degree-0 element of a");
  return [V, phi, cap](const E& x) -> E {
    E total = x;
    E term = x;
    for (int k = 1;; ++k) {
      if (term.is_zero() || phi.is_zero()) break;
      if (k > cap) throw std::runtime_error("p_phi: e^{[.,Phi]} does not terminate within " + std::to_string(cap) + " iterations");
      term = Scalar(1, k) * V.bracket(term, phi);
      total += term;
    }
    return V.P(total);
  };
}

template <class Lie>
VData<Lie> with_projection(const VData<Lie>& V, std::function<typename Lie::Elem(const typename Lie::Elem&)> P,
                           const typename Lie::Elem& delta, const std::string& suffix) {
  VData<Lie> W = V;
  W.name = V.name + suffix;
  W.P = std::move(P);
  W.delta = delta;
  W.curved = !W.P(W.delta).is_zero();
  return W;
}

// V_alpha = (L, a, P_{Phi'}, Delta + Delta') for alpha = (Delta'[1], Phi').
template <class Lie>
VData<Lie> twist_vdata(const VData<Lie>& V, const BigElem<typename Lie::Elem>& alpha, int max_terms = kDefaultMaxTerms) {
  auto G = big_algebra(V);
  auto r = mc_residual(G, alpha, max_terms);
  if (!r.residual.is_zero() || r.terminated_by == "truncation")
    throw NotMaurerCartan("twist_vdata: alpha is not Maurer-Cartan in " + G.name);
  return with_projection(V, p_phi(V, alpha.a), V.delta + alpha.x, "_twisted");
}

template <class E>
struct MachineReport {
  E left_square{};             // [Delta + Dt, Delta + Dt]
  E left_mc{};                 // P e^{[., Phi + Pt]}(Delta + Dt)
  BigElem<E> right_residual{}; // MC residual of (Dt[1], Pt) in the P_Phi big algebra
  std::string right_terminated_by;
  bool left_vanishes() const { return left_square.is_zero() && left_mc.is_zero(); }
  bool right_vanishes() const { return right_residual.is_zero() && right_terminated_by != "truncation"; }
  bool agree() const { return left_vanishes() == right_vanishes(); }
};

template <class Lie>
MachineReport<typename Lie::Elem> machine_check(const VData<Lie>& V, const typename Lie::Elem& phi,
                                                const typename Lie::Elem& dtilde, const typename Lie::Elem& ptilde,
                                                int max_terms = kDefaultMaxTerms) {
  using E = typename Lie::Elem;
  auto Pphi = p_phi(V, phi);
  if (!Pphi(V.delta).is_zero()) throw NotMaurerCartan("machine_check: Phi is not Maurer-Cartan in " + V.name);
  if (!dtilde.is_zero() && V.degree(dtilde) != 1) throw std::invalid_argument("machine_check: dtilde must have degree 1");
  if (!ptilde.is_zero() && (V.degree(ptilde) != 0 || !V.in_a(ptilde)))
    throw std::invalid_argument("machine_check: ptilde must be a degree-0 element of a");
  MachineReport<E> rep;
  const E total = V.delta + dtilde;
  rep.left_square = V.bracket(total, total);
  rep.left_mc = p_phi(V, phi + ptilde)(total);
  auto Vphi = with_projection(V, Pphi, V.delta, "_Phi");
  auto G = big_algebra(Vphi);
  auto r = mc_residual(G, BigElem<E>{dtilde, ptilde}, max_terms);
  rep.right_residual = r.residual;
  rep.right_terminated_by = r.terminated_by;
  return rep;
}

// Restrict the big algebra to Lp[1] + a for a bracket-closed, D-stable subspace Lp.
template <class Lie>
LInftyOne<BigElem<typename Lie::Elem>> restrict_big(const VData<Lie>& V, std::function<bool(const typename Lie::Elem&)> in_Lp,
                                                    const std::vector<typename Lie::Elem>& Lp_basis) {
  using E = typename Lie::Elem;
  for (std::size_t i = 0; i < Lp_basis.size(); ++i) {
    E dx = V.bracket(V.delta, Lp_basis[i]);
    if (!dx.is_zero() && !in_Lp(dx)) throw std::invalid_argument("restrict: subspace is not stable under D = [Delta, .]");
    for (std::size_t j = i; j < Lp_basis.size(); ++j) {
      E r = V.bracket(Lp_basis[i], Lp_basis[j]);
      if (!r.is_zero() && !in_Lp(r)) throw std::invalid_argument("restrict: subspace is not closed under the bracket");
    }
  }
  auto G = big_algebra(V);
  auto inner = G.bracket;
  G.name = "restricted(" + V.name + ")";
  G.bracket = [inner, in_Lp](std::span<const BigElem<E>> args) {
    for (const auto& v : args)
      if (!v.x.is_zero() && !in_Lp(v.x)) throw std::invalid_argument("restrict: argument outside the subspace");
    return inner(args);
  };
  return G;
}

}  // namespace db
