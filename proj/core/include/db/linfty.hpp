#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "db/graded.hpp"

namespace db {

inline constexpr int kDefaultMaxArity = 5;
inline constexpr int kDefaultMaxTerms = 12;

// Complete descending filtration described by a weight: x lies in F^w(x).
template <class W>
struct Filtration {
  std::function<std::optional<int>(const W&)> weight;  // nullopt for zero
  // m_n(F^{w1},...,F^{wn}) lies in F^{w1+...+wn+shift}
  int shift = 0;
  // Largest weight occurring in degree d; nullopt when degree d is zero.
  std::function<std::optional<int>(int)> top;
};

template <class W>
struct LInftyOne {
  std::string name;
  std::function<std::optional<int>(const W&)> degree;  // nullopt: zero or mixed
  // Multibracket of arity args.size(); arity 0 is only consulted when curved.
  std::function<W(std::span<const W>)> bracket;
  W zero{};
  bool curved = false;
  // m_n vanishes identically for n > arity_bound.
  std::optional<int> arity_bound;
  // Element-wise: MC summands with n > mc_bound(phi) vanish.
  std::function<std::optional<int>(const W&)> mc_bound;
  std::optional<Filtration<W>> filtration;

  W m(std::span<const W> args) const {
    if (args.empty() && !curved) return zero;
    if (arity_bound && static_cast<int>(args.size()) > *arity_bound) return zero;
    return bracket(args);
  }
  W m(std::initializer_list<W> args) const { return m(std::span<const W>(args.begin(), args.size())); }
};

struct NotMaurerCartan : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class W>
struct MCReport {
  W residual{};
  int terms_evaluated = 0;
  std::string terminated_by;  // "bound" | "filtration" | "truncation"
};

template <class W>
struct SeriesReport {
  W value{};
  int terms_evaluated = 0;
  std::string terminated_by;
  int last_nonzero = -1;
};

namespace detail {

template <class W>
std::vector<int> degrees_of(const LInftyOne<W>& A, std::span<const W> args, bool& any_zero) {
  std::vector<int> d;
  any_zero = false;
  for (const auto& a : args) {
    if (a.is_zero()) {
      any_zero = true;
      d.push_back(0);
      continue;
    }
    auto deg = A.degree(a);
    if (!deg) throw std::invalid_argument(A.name + ": argument is not homogeneous");
    d.push_back(*deg);
  }
  return d;
}

template <class W>
std::vector<W> repeated(const W& x, int k) {
  return std::vector<W>(static_cast<std::size_t>(k), x);
}

// Number of summands to evaluate for a series whose k-th term is a bracket of
// arity base_arity + k with k copies of x and lower filtration bound
// k * w(x) + rest_weight + shift, landing in degree out_degree.
template <class W>
struct SeriesPlan {
  int last = 0;  // inclusive
  std::string by;
};

template <class W>
SeriesPlan<W> plan_series(const LInftyOne<W>& A, const W& x, int base_arity, std::optional<int> rest_weight,
                          int out_degree, int max_terms, bool allow_mc_bound) {
  if (x.is_zero()) return {0, "bound"};
  if (A.arity_bound) return {std::max(0, *A.arity_bound - base_arity), "bound"};
  if (allow_mc_bound && A.mc_bound) {
    if (auto b = A.mc_bound(x)) return {std::max(0, *b - base_arity), "bound"};
  }
  if (A.filtration) {
    const auto& F = *A.filtration;
    auto wx = F.weight(x);
    if (wx && *wx >= 1) {
      auto top = F.top(out_degree);
      if (!top || !rest_weight) return {-1, "filtration"};
      int k = 0;
      while (k * *wx + *rest_weight + F.shift <= *top) ++k;
      return {k - 1, "filtration"};
    }
    throw std::invalid_argument(A.name + ": element must lie in F^1 for the series to terminate");
  }
  return {max_terms, "truncation"};
}

}  // namespace detail

template <class W>
W relations_residual(const LInftyOne<W>& A, std::span<const W> args) {
  const int n = static_cast<int>(args.size());
  if (n < 1) throw std::invalid_argument("relations_residual: need at least one argument");
  bool any_zero = false;
  const std::vector<int> deg = detail::degrees_of(A, args, any_zero);
  if (any_zero) return A.zero;
  W total = A.zero;
  for (int i = A.curved ? 0 : 1; i <= n; ++i) {
    for (const Permutation& s : unshuffles(i, n)) {
      std::vector<W> inner_args, outer_args;
      for (int k = 1; k <= i; ++k) inner_args.push_back(args[s(k) - 1]);
      W inner = A.m(std::span<const W>(inner_args));
      if (inner.is_zero()) continue;
      outer_args.push_back(std::move(inner));
      for (int k = i + 1; k <= n; ++k) outer_args.push_back(args[s(k) - 1]);
      W outer = A.m(std::span<const W>(outer_args));
      if (outer.is_zero()) continue;
      total += koszul_sign(s, deg) * outer;
    }
  }
  return total;
}

template <class W>
W relations_residual(const LInftyOne<W>& A, std::initializer_list<W> args) {
  return relations_residual(A, std::span<const W>(args.begin(), args.size()));
}

template <class W>
MCReport<W> mc_residual(const LInftyOne<W>& A, const W& phi, int max_terms = kDefaultMaxTerms) {
  if (!phi.is_zero() && A.degree(phi) != 0)
    throw std::invalid_argument(A.name + ": Maurer-Cartan element must have degree 0");
  std::optional<int> rest;
  if (A.filtration) rest = 0;
  auto plan = detail::plan_series(A, phi, 0, rest, 1, max_terms, true);
  MCReport<W> rep;
  rep.residual = A.zero;
  rep.terminated_by = plan.by;
  if (A.curved) {
    rep.residual += A.m({});
    ++rep.terms_evaluated;
  }
  for (int n = 1; n <= plan.last; ++n) {
    auto args = detail::repeated(phi, n);
    W t = A.m(std::span<const W>(args));
    ++rep.terms_evaluated;
    if (!t.is_zero()) rep.residual += inverse_factorial(n) * t;
  }
  return rep;
}

template <class W>
bool is_mc(const LInftyOne<W>& A, const W& phi, int max_terms = kDefaultMaxTerms) {
  auto r = mc_residual(A, phi, max_terms);
  return r.terminated_by != "truncation" && r.residual.is_zero();
}

// Multibrackets of A twisted by alpha:
// m^alpha_n(v) = sum_k 1/k! m_{n+k}(alpha^k, v).
template <class W>
LInftyOne<W> twist(const LInftyOne<W>& A, const W& alpha, bool check_mc = true,
                   int max_terms = kDefaultMaxTerms) {
  if (!alpha.is_zero() && A.degree(alpha) != 0)
    throw std::invalid_argument(A.name + ": twisting element must have degree 0");
  if (!alpha.is_zero() && !A.arity_bound) {
    bool ok = false;
    if (A.filtration) {
      auto w = A.filtration->weight(alpha);
      ok = w && *w >= 1;
    }
    if (!ok) throw std::invalid_argument(A.name + ": twist needs an arity bound or alpha in F^1");
  }
  auto residual = mc_residual(A, alpha, max_terms);
  if (check_mc && !residual.residual.is_zero())
    throw NotMaurerCartan(A.name + ": twisting element is not Maurer-Cartan");
  LInftyOne<W> T = A;
  T.name = A.name + "_twisted";
  T.curved = !residual.residual.is_zero();
  T.mc_bound = nullptr;
  T.bracket = [A, alpha, max_terms](std::span<const W> args) -> W {
    const int n = static_cast<int>(args.size());
    std::optional<int> rest = 0;
    int out_degree = 1;
    for (const auto& a : args) {
      if (a.is_zero()) return A.zero;
      out_degree += A.degree(a).value_or(0);
      if (A.filtration) {
        auto w = A.filtration->weight(a);
        rest = w ? std::optional<int>(*rest + *w) : std::nullopt;
      }
    }
    auto plan = detail::plan_series(A, alpha, n, A.filtration ? rest : std::optional<int>(0), out_degree,
                                     max_terms, false);
    W out = A.zero;
    for (int k = 0; k <= plan.last; ++k) {
      if (n + k == 0 && !A.curved) continue;
      std::vector<W> full = detail::repeated(alpha, k);
      full.insert(full.end(), args.begin(), args.end());
      W t = A.m(std::span<const W>(full));
      if (!t.is_zero()) out += inverse_factorial(k) * t;
    }
    return out;
  };
  return T;
}

// Gauge vector field of z (degree -1) at m (degree 0): sum_k 1/k! m_{k+1}(z, m^k).
template <class W>
SeriesReport<W> gauge_field(const LInftyOne<W>& A, const W& z, const W& m, int max_terms = kDefaultMaxTerms) {
  if (!z.is_zero() && A.degree(z) != -1) throw std::invalid_argument(A.name + ": gauge generator must have degree -1");
  if (!m.is_zero() && A.degree(m) != 0) throw std::invalid_argument(A.name + ": gauge base point must have degree 0");
  SeriesReport<W> rep;
  rep.value = A.zero;
  if (z.is_zero()) {
    rep.terminated_by = "bound";
    return rep;
  }
  std::optional<int> rest;
  if (A.filtration) rest = A.filtration->weight(z);
  auto plan = detail::plan_series(A, m, 1, rest, 0, max_terms, false);
  if (m.is_zero()) plan.last = 0;
  rep.terminated_by = plan.by;
  for (int k = 0; k <= plan.last; ++k) {
    std::vector<W> args{z};
    for (int i = 0; i < k; ++i) args.push_back(m);
    W t = A.m(std::span<const W>(args));
    ++rep.terms_evaluated;
    if (!t.is_zero()) {
      rep.value += inverse_factorial(k) * t;
      rep.last_nonzero = k;
    }
  }
  return rep;
}

// An L-infinity algebra in the antisymmetric convention: l_k of degree 2 - k.
template <class W>
struct LInftyAlgebra {
  std::string name;
  std::function<std::optional<int>(const W&)> degree;
  std::function<W(std::span<const W>)> l;  // arity >= 1
  W zero{};
  std::optional<int> arity_bound;
};

// m_k(v_1[1],...,v_k[1]) = (-1)^{deca(v)} l_k(v_1,...,v_k)[1]. Elements keep their
// representation; only the degree function shifts.
template <class W>
LInftyOne<W> from_antisymmetric(const LInftyAlgebra<W>& V) {
  LInftyOne<W> A;
  A.name = V.name + "[1]";
  A.zero = V.zero;
  A.arity_bound = V.arity_bound;
  auto vdeg = V.degree;
  A.degree = [vdeg](const W& w) -> std::optional<int> {
    auto d = vdeg(w);
    return d ? std::optional<int>(*d - 1) : std::nullopt;
  };
  A.bracket = [V](std::span<const W> args) -> W {
    std::vector<int> d;
    for (const auto& a : args) {
      if (a.is_zero()) return V.zero;
      auto deg = V.degree(a);
      if (!deg) throw std::invalid_argument(V.name + ": argument is not homogeneous");
      d.push_back(*deg);
    }
    W r = V.l(args);
    const int k = static_cast<int>(args.size());
    int want = 2 - k;
    for (int x : d) want += x;
    if (!r.is_zero() && V.degree(r) != want)
      throw std::invalid_argument(V.name + ": l_" + std::to_string(k) + " does not have degree 2-k");
    return decalage_sign(d) * r;
  };
  return A;
}

template <class W>
LInftyAlgebra<W> to_antisymmetric(const LInftyOne<W>& A) {
  LInftyAlgebra<W> V;
  V.name = A.name + "[-1]";
  V.zero = A.zero;
  V.arity_bound = A.arity_bound;
  auto adeg = A.degree;
  V.degree = [adeg](const W& w) -> std::optional<int> {
    auto d = adeg(w);
    return d ? std::optional<int>(*d + 1) : std::nullopt;
  };
  V.l = [A, deg = V.degree](std::span<const W> args) -> W {
    std::vector<int> d;
    for (const auto& a : args) {
      if (a.is_zero()) return A.zero;
      d.push_back(deg(a).value());
    }
    return decalage_sign(d) * A.m(args);
  };
  return V;
}

}  // namespace db
