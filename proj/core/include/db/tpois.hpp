#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "db/linfty.hpp"
#include "db/polygeo.hpp"
#include "db/qgeom.hpp"

namespace db {

// Element of Omega^{>=1}[3] + chi[2]: a q-form has degree q - 3, an s-vector degree s - 2.
struct TPois {
  Form form;
  Multivector mv;

  static TPois of_form(Form f) { return {std::move(f), Multivector(Dims{})}; }
  static TPois of_mv(Multivector u) { return {Form(Dims{}), std::move(u)}; }

  bool is_zero() const { return form.is_zero() && mv.is_zero(); }
  TPois& operator+=(const TPois& o) {
    form += o.form;
    mv += o.mv;
    return *this;
  }
  TPois& operator-=(const TPois& o) {
    form -= o.form;
    mv -= o.mv;
    return *this;
  }
  friend TPois operator+(TPois a, const TPois& b) { return a += b; }
  friend TPois operator-(TPois a, const TPois& b) { return a -= b; }
  friend TPois operator*(const Scalar& s, const TPois& a) { return {s * a.form, s * a.mv}; }
  friend bool operator==(const TPois& a, const TPois& b) { return a.form == b.form && a.mv == b.mv; }
};

std::optional<int> tpois_degree(const TPois& e);
std::string to_string(const TPois& e);

// a) {H} = -dH; b) {pi_1, pi_2} = (-1)^{a_1+1}[pi_1, pi_2];
// c) {H, pi_1..pi_n} = (-1)^{sum a_i (n-i)} (pi_1^# ^ ... ^ pi_n^#) H; all else vanishes.
TPois tpois_bracket(std::span<const TPois> args);
TPois tpois_bracket(std::initializer_list<TPois> args);

// The algebra on R^m with brackets given in closed form.
LInftyOne<TPois> tpois_algebra(int m);
// The same brackets evaluated as derived brackets in the super-Poisson model.
LInftyOne<TPois> oracle_algebra(int m);
TPois oracle_bracket(std::span<const TPois> args);

// (dH, [pi,pi] - 2 wedge^3 pi~(H)). The MC series of the algebra equals (-dH, -1/2 [pi,pi] + wedge^3 pi~(H)).
std::pair<Form, Multivector> tpois_mc_residual(const Form& H, const Multivector& pi);

// First-order change of tpois_mc_residual at (H, pi) in the direction (dH, dpi).
std::pair<Form, Multivector> mc_residual_derivative(const Form& H, const Multivector& pi, const Form& dH,
                                                    const Multivector& dpi);

// Gauge vector field of (B, X) at (H, pi): (-dB, [X,pi] + wedge^2 pi~(B + i_X H)).
std::pair<Form, Multivector> gauge_Y(const Form& B, const Multivector& X, const Form& H, const Multivector& pi);
// Derivative at t = 0 of (tB, flow of X at time t) acting on (H, pi):
// (-d(i_X H + B), -[X, pi] + wedge^2 pi~(B)).
std::pair<Form, Multivector> generator_Z(const Form& B, const Multivector& X, const Form& H, const Multivector& pi);

// The same derivative computed by differentiating (tB, flow of X at time t) acting on (H, pi);
// X must have a polynomial flow.
std::pair<Form, Multivector> generator_by_flow(const Form& B, const Multivector& X, const Form& H,
                                               const Multivector& pi);

struct GeneratorReport {
  std::pair<Form, Multivector> z;  // Z^{(B + i_X H, -X)}
  std::pair<Form, Multivector> y;  // Y^{(B, X)}
  bool match() const { return z.first == y.first && z.second == y.second; }
};
GeneratorReport generator_match(const Form& B, const Multivector& X, const Form& H, const Multivector& pi);

// e^B pi as numerator / denominator; the denominator is det(1 + B pi) and must not
// depend on the coordinates.
struct RationalBivector {
  Multivector numerator;
  Poly denominator;
};
// With polynomial_only unset a coordinate-dependent denominator is returned as is.
RationalBivector e_b_pi_rational(const Form& B, const Multivector& pi, bool polynomial_only = true);
Multivector e_b_pi(const Form& B, const Multivector& pi);

struct GroupElement {
  Form B;
  AffineMap phi;
};
GroupElement group_compose(const GroupElement& g1, const GroupElement& g2);
std::pair<Form, Multivector> group_act(const GroupElement& g, const Form& H, const Multivector& pi);

// Flow of an affine vector field Y(x) = A x + b with A nilpotent, at time sign * t_param.
AffineMap affine_flow(const Multivector& Y, const Dims& d, int param, int sign = 1);

// Integral curve of Y^{(B,X)} through (H, pi), polynomial in the parameter t.
struct FlowCurve {
  Dims dims;  // coordinates plus parameters t, s
  Form H;
  Multivector numerator;
  Poly denominator;
  Form C;     // C_t
  Multivector generator;  // the field whose flow transports pi (equals -X)
};
FlowCurve flow_curve(const Form& B, const Multivector& X, const Form& H, const Multivector& pi);

struct FlowCheck {
  bool starts_at_point = false;
  bool transport_ode = false;   // N'd - Nd' = -d[Y,N] + wedge^2 N~(phi_{-t}^* C')
  bool integral_curve = false;  // the curve solves the gauge field equation for all t
  bool initial_velocity = false;
};
FlowCheck check_flow_curve(const FlowCurve& c, const Form& B, const Multivector& X, const Form& H,
                           const Multivector& pi);

// Lift data on R^m to the ambient with extra parameters.
Form lift(const Form& w, const Dims& d);
Multivector lift(const Multivector& u, const Dims& d);

}  // namespace db
