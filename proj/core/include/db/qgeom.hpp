#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "db/poly.hpp"
#include "db/vdata.hpp"

namespace db {

// Graded-commutative polynomials in x_j (deg 0), P_j (deg 2) and odd p_j, v_j (deg 1).
// Even part: Monomial over x_1..x_m, P_1..P_m. Odd part: bitmask p_1..p_m, v_1..v_m.
class SuperPoly {
 public:
  SuperPoly() = default;
  explicit SuperPoly(int m);
  static SuperPoly constant(int m, const Scalar& c);
  static SuperPoly x(int m, int j);
  static SuperPoly P(int m, int j);
  static SuperPoly p(int m, int j);
  static SuperPoly v(int m, int j);

  int dim() const { return m_; }
  bool is_zero() const { return terms_.is_zero(); }
  const LinComb<AltKey>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  void add(const AltKey& k, const Scalar& c) { terms_.add(k, c); }

  static int term_degree(int m, const AltKey& k);
  std::optional<int> degree() const;

  SuperPoly& operator+=(const SuperPoly& o);
  SuperPoly& operator-=(const SuperPoly& o);
  friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
  friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
  friend SuperPoly operator*(const Scalar& s, SuperPoly a) {
    a.terms_ *= s;
    return a;
  }
  friend bool operator==(const SuperPoly& a, const SuperPoly& b) { return a.terms_ == b.terms_; }

 private:
  void adopt(int m);
  int m_ = 0;
  LinComb<AltKey> terms_;
};

SuperPoly operator*(const SuperPoly& a, const SuperPoly& b);

// Coordinates are numbered x_1..x_m, P_1..P_m, p_1..p_m, v_1..v_m.
enum class Coord { X, BigP, SmallP, V };
struct CoordRef {
  Coord kind;
  int j;  // 0-based
};
SuperPoly coordinate(int m, CoordRef c);
SuperPoly left_derivative(const SuperPoly& f, CoordRef c);
SuperPoly right_derivative(const SuperPoly& f, CoordRef c);

// The degree -2 Poisson bracket fixed by {P_j, x_k} = {p_j, v_k} = delta_jk.
SuperPoly super_bracket(const SuperPoly& f, const SuperPoly& g);
SuperPoly canonical_delta(int m);  // sum_i P_i v_i
SuperPoly eval_on_base(const SuperPoly& f);  // P = v = 0

SuperPoly mv_to_super(const Multivector& u);
SuperPoly form_to_super(const Form& w);
// Throw std::domain_error when f is not in the image of the dictionary.
Multivector super_to_mv(const SuperPoly& f);
Form super_to_form(const SuperPoly& f);

std::string to_string(const SuperPoly& f);

// Functions on T*[2]T*[1]R^m shifted by 2: degree |f| - 2.
struct SuperPoissonAlgebra {
  using Elem = SuperPoly;
  int m = 0;
  SuperPoly zero() const { return SuperPoly(m); }
  SuperPoly bracket(const SuperPoly& a, const SuperPoly& b) const { return super_bracket(a, b); }
  std::optional<int> degree(const SuperPoly& a) const {
    auto d = a.degree();
    return d ? std::optional<int>(*d - 2) : std::nullopt;
  }
};

// (C[2], functions of x and p, eval_on_base, sum P_i v_i), filtered by (p,P)-degree - 1.
VData<SuperPoissonAlgebra> qgeom_vdata(int m, int basis_degree = 1);

}  // namespace db
