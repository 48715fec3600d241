#pragma once

#include <array>
#include <bit>
#include <compare>
#include <functional>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "db/lincomb.hpp"

namespace db {

inline constexpr int kMaxVars = 12;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  int degree_in(int from, int to) const {
    int d = 0;
    for (int i = from; i < to; ++i) d += e[i];
    return d;
  }
  int total() const { return degree_in(0, kMaxVars); }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);

// Commutative polynomial in up to kMaxVars variables.
using Poly = LinComb<Monomial>;

Poly poly_const(const Scalar& c);
Poly poly_var(int i, const Scalar& c = Scalar(1));
Poly mul(const Poly& a, const Poly& b);
Poly power(const Poly& a, int k);
Poly derivative(const Poly& a, int var);
// Substitute images[i] for variable i (i < images.size()); other variables stay.
Poly substitute(const Poly& a, const std::vector<Poly>& images);
// Set the listed variables to zero.
Poly set_zero(const Poly& a, int from, int to);
bool depends_only_on(const Poly& a, int from, int to);
// Antiderivative in variable s from 0 to t: s^k t^j -> t^{j+k+1}/(k+1).
Poly integrate_param(const Poly& a, int s, int t);
Poly replace_var(const Poly& a, int from, int to);

// Coordinate layout: base x_1..x_m, fiber p_1..p_k, then parameters (no dx, no d/dp).
struct Dims {
  int base = 0;
  int fiber = 0;
  int params = 0;
  int coords() const { return base + fiber; }
  int vars() const { return base + fiber + params; }
  int param_var(int j) const { return coords() + j; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

std::string var_name(const Dims& d, int i);

struct AltKey {
  Monomial mono;
  std::uint16_t wedge = 0;  // bit i: coordinate i appears in the wedge
  friend auto operator<=>(const AltKey&, const AltKey&) = default;
  friend bool operator==(const AltKey&, const AltKey&) = default;
};

// Sign of (wedge a) ^ (wedge b) relative to the sorted wedge a|b; 0 if they overlap.
int merge_sign(std::uint16_t a, std::uint16_t b);
inline int popcount(std::uint16_t m) { return std::popcount(static_cast<unsigned>(m)); }

struct VectorKind {};
struct FormKind {};

// Polynomial coefficients times wedges of coordinate vectors (VectorKind) or
// coordinate 1-forms (FormKind).
template <class Kind>
class AltPoly {
 public:
  AltPoly() = default;
  explicit AltPoly(Dims d) : dims_(d) {}
  AltPoly(Dims d, const Poly& coef, std::uint16_t wedge);
  static AltPoly term(Dims d, const Monomial& m, std::uint16_t wedge, const Scalar& c);

  const Dims& dims() const { return dims_; }
  const LinComb<AltKey>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.is_zero(); }
  void add(const AltKey& k, const Scalar& c) { terms_.add(k, c); }

  // Wedge arity (form degree) if all terms agree.
  std::optional<int> arity() const;
  // Coefficient of the given wedge as a polynomial.
  Poly coefficient(std::uint16_t wedge) const;

  AltPoly& operator+=(const AltPoly& o);
  AltPoly& operator-=(const AltPoly& o);
  friend AltPoly operator+(AltPoly a, const AltPoly& b) { return a += b; }
  friend AltPoly operator-(AltPoly a, const AltPoly& b) { return a -= b; }
  friend AltPoly operator-(const AltPoly& a) { return Scalar(-1) * a; }
  friend AltPoly operator*(const Scalar& s, AltPoly a) {
    a.terms_ *= s;
    return a;
  }
  friend bool operator==(const AltPoly& a, const AltPoly& b) { return a.terms_ == b.terms_; }

 private:
  void adopt(const Dims& d);
  Dims dims_{};
  LinComb<AltKey> terms_;
};

using Multivector = AltPoly<VectorKind>;
using Form = AltPoly<FormKind>;

template <class K>
AltPoly<K> wedge(const AltPoly<K>& a, const AltPoly<K>& b);
template <class K>
AltPoly<K> scale_by(const Poly& f, const AltPoly<K>& a);
template <class K>
AltPoly<K> map_coefficients(const AltPoly<K>& a, const std::function<Poly(const Poly&)>& f);
template <class K>
AltPoly<K> d_param(const AltPoly<K>& a, int param);
template <class K>
AltPoly<K> at_param(const AltPoly<K>& a, int param, const Scalar& value);
// Split a t-polynomial element into [(power, coefficient)], ascending.
template <class K>
std::vector<std::pair<int, AltPoly<K>>> param_expansion(const AltPoly<K>& a, int param);
template <class K>
int max_param_degree(const AltPoly<K>& a, int param);

std::string to_string(const Poly& p, const Dims& d);
template <class K>
std::string to_string(const AltPoly<K>& a);

extern template class AltPoly<VectorKind>;
extern template class AltPoly<FormKind>;

}  // namespace db
