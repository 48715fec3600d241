#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "db/gla.hpp"
#include "db/vdata.hpp"

namespace db {

// L_0 = span(h), L_1 = span(e), [h, e] = e.
StructureGLA sample_gla();

// Seven graded matrices closing under the graded commutator. Basis order:
// phi(0), d(1), g(1), c(1), k(2), s(2), r(1); a = span(phi, g, s, r).
StructureGLA nilpotent_gla();
std::vector<int> nilpotent_weights();
std::vector<int> nilpotent_a_indices();

// V-data on a StructureGLA with P given on basis vectors; a is the image of P.
VData<StructureGLA> structure_vdata(std::shared_ptr<const StructureGLA> L, LinearMap P, Vec delta,
                                    std::optional<std::vector<int>> weights = std::nullopt);
LinearMap coordinate_projection(const StructureGLA& L, const std::vector<int>& keep);

// The sample with Delta = x*d + y*c.
VData<StructureGLA> nilpotent_vdata(const Scalar& x, const Scalar& y);

}  // namespace db
