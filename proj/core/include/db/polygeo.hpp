#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "db/poly.hpp"
#include "db/vdata.hpp"

namespace db {

// Schouten bracket: Lie bracket on vector fields, [X, f] = X(f).
Multivector schouten(const Multivector& u, const Multivector& v);
Form de_rham(const Form& w);

// First-slot contraction of pi with a 1-form; zero on functions.
Multivector sharp(const Multivector& pi, const Form& xi);
// sum_sigma sgn(sigma) pi_1^#(xi_s(1)) ^ ... ^ pi_n^#(xi_s(n)), extended linearly in w.
Multivector multi_sharp(const std::vector<Multivector>& pis, const Form& w);
// (1/k!) multi_sharp(pi, ..., pi; w): the map induced by pi on k-forms.
Multivector wedge_power_sharp(int k, const Multivector& pi, const Form& w);
// First-slot contraction of a vector field into a form.
Form interior(const Multivector& X, const Form& w);
// X(f) coefficientwise, i.e. the Lie derivative of a function.
Poly apply_vector(const Multivector& X, const Poly& f);
Form lie_derivative(const Multivector& X, const Form& w);

// Largest (fiber degree of coefficient - number of fiber legs) over terms.
std::optional<int> pol_degree(const Multivector& u);
Multivector coiso_projection(const Multivector& u);
bool is_section_of_normal_bundle(const Multivector& u);  // base coefficients, fiber legs only
// Pushforward along (x, p) -> (x, p + phi(x)) for a vertical section phi.
Multivector fiber_translate(const Multivector& u, const Multivector& phi);
// e^{[., phi]} u, the series cut where it vanishes exactly.
Multivector exp_ad(const Multivector& u, const Multivector& phi, int cap = 64);

// Graded Lie algebra of multivector fields with degree = arity - 1.
struct SchoutenAlgebra {
  using Elem = Multivector;
  Dims dims;
  Multivector zero() const { return Multivector(dims); }
  Multivector bracket(const Multivector& a, const Multivector& b) const { return schouten(a, b); }
  std::optional<int> degree(const Multivector& a) const {
    auto r = a.arity();
    return r ? std::optional<int>(*r - 1) : std::nullopt;
  }
};

struct SubmanifoldSplit {
  int base = 1;
  int fiber = 2;
  Dims dims() const { return Dims{base, fiber, 0}; }
};

// All monomials in the coordinates with total degree <= max_degree, times all wedges.
std::vector<Multivector> multivector_basis(const Dims& d, int max_degree);
std::vector<Multivector> normal_section_basis(const Dims& d, int max_degree);

// (multivectors[1], sections of the normal bundle[1], restrict-and-project, pi).
// Throws if [pi, pi] != 0.
VData<SchoutenAlgebra> coiso_vdata(const Multivector& pi, const SubmanifoldSplit& split, int basis_degree = 2);

// Affine map x -> A x + b with entries polynomial in the parameters only.
struct AffineMap {
  Dims dims;
  std::vector<std::vector<Poly>> A;
  std::vector<Poly> b;
  static AffineMap identity(const Dims& d);
  std::vector<Poly> images() const;  // coordinate functions of the map
  bool is_constant() const;
};

AffineMap compose(const AffineMap& f, const AffineMap& g);  // f o g
AffineMap inverse(const AffineMap& f);                      // constant invertible maps only
Form pullback(const AffineMap& f, const Form& w);
// (f_* u)(y) = Lambda(A) u(f^{-1}(y)); finv must be the inverse of f.
Multivector pushforward(const AffineMap& f, const AffineMap& finv, const Multivector& u);


}  // namespace db
