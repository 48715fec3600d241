#pragma once

#include "db/gla.hpp"
#include "db/polygeo.hpp"
#include "db/random.hpp"
#include "db/tpois.hpp"

namespace db {

// Homogeneous element of the given degree with coefficients in {-3..3}.
Vec random_vec(Rng& rng, const StructureGLA& L, int degree);

// Unit lower times unit upper triangular, so det A = 1; constant translation.
AffineMap random_affine(Rng& rng, const Dims& d);

struct TPoisPoint {
  Form H;
  Multivector pi;
};

// H = h vol and pi = g c on R^3 with c constant: rank <= 2 makes both MC equations hold.
TPoisPoint random_mc_r3(Rng& rng, int max_degree);
// (B, id) followed by an affine map acting on (0, d1^d2 + d3^d4) with B = f dx1^dx3,
// which keeps det(1 + B pi) = 1. H = -dB is nonzero for generic f.
TPoisPoint random_mc_r4(Rng& rng, int max_degree);
// Adds a random 3-form to H or a random bivector to pi.
TPoisPoint perturb(Rng& rng, const TPoisPoint& p, int max_degree);

// f(x, p) c with c a constant bivector on R^1 x R^2; when on_C is set the result
// satisfies coiso_projection = 0.
Multivector random_coiso_poisson(Rng& rng, int max_degree, bool on_C);
// f_1(x) d/dp1 + f_2(x) d/dp2.
Multivector random_section(Rng& rng, int max_degree);

}  // namespace db
