#include "db/samples.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace db {

namespace {

Vec term(int i, long c) { return Vec(i, Scalar(c)); }

}  // namespace

StructureGLA sample_gla() {
  return StructureGLA({{"h", 0}, {"e", 1}}, {{{0, 1}, term(1, 1)}});
}

StructureGLA nilpotent_gla() {
  enum { phi, d, g, c, k, s, r };
  std::map<std::pair<int, int>, Vec> upper{
      {{phi, d}, term(c, 1)},  {{phi, c}, term(r, -2)}, {{phi, k}, term(s, -1)},
      {{d, g}, term(k, 1)},    {{g, c}, term(s, -1)},
  };
  return StructureGLA({{"phi", 0}, {"d", 1}, {"g", 1}, {"c", 1}, {"k", 2}, {"s", 2}, {"r", 1}}, upper);
}

std::vector<int> nilpotent_weights() { return {1, -1, 1, 0, 0, 1, 1}; }
std::vector<int> nilpotent_a_indices() { return {0, 2, 5, 6}; }

LinearMap coordinate_projection(const StructureGLA& L, const std::vector<int>& keep) {
  LinearMap P;
  for (int i = 0; i < L.dim(); ++i)
    P.images.push_back(std::find(keep.begin(), keep.end(), i) != keep.end() ? L.basis_vector(i) : Vec());
  return P;
}

VData<StructureGLA> structure_vdata(std::shared_ptr<const StructureGLA> L, LinearMap P, Vec delta,
                                    std::optional<std::vector<int>> weights) {
  if (static_cast<int>(P.images.size()) != L->dim())
    throw std::invalid_argument("structure_vdata: projection needs one image per basis element");
  auto Pf = [P](const Vec& v) { return P(v); };
  auto in_a = [P](const Vec& v) { return P(v) == v; };
  auto V = make_vdata<StructureGLA>("structure", L, Pf, in_a, std::move(delta));
  for (int i = 0; i < L->dim(); ++i) V.basis.push_back(L->basis_vector(i));
  std::set<std::vector<std::pair<int, std::string>>> seen;
  for (const auto& im : P.images) {
    if (im.is_zero()) continue;
    std::vector<std::pair<int, std::string>> key;
    for (const auto& [i, c] : im) key.emplace_back(i, c.str());
    if (seen.insert(key).second) V.a_basis.push_back(im);
  }
  V.nilpotency_class = L->nilpotency_class();
  if (weights) {
    if (static_cast<int>(weights->size()) != L->dim())
      throw std::invalid_argument("structure_vdata: one weight per basis element required");
    auto w = *weights;
    VFiltration<Vec> F;
    F.weight = [w](const Vec& v) -> std::optional<int> {
      std::optional<int> r;
      for (const auto& [i, c] : v) r = r ? std::min(*r, w[i]) : w[i];
      return r;
    };
    auto top_of = [L](const std::vector<Vec>& elems, auto weight) {
      std::map<int, int> top;
      for (const auto& e : elems) {
        auto d = L->degree(e);
        if (!d) continue;
        int x = *weight(e);
        auto it = top.find(*d);
        if (it == top.end()) {
          top.emplace(*d, x);
        } else {
          it->second = std::max(it->second, x);
        }
      }
      return [top](int d) -> std::optional<int> {
        auto it = top.find(d);
        return it == top.end() ? std::nullopt : std::optional<int>(it->second);
      };
    };
    // top weight of an element of degree d is attained on a basis vector, since
    // the weight of a sum is the minimum over its terms
    F.top_L = top_of(V.basis, F.weight);
    F.top_a = top_of(V.a_basis, F.weight);
    V.filtration = F;
  }
  return V;
}

VData<StructureGLA> nilpotent_vdata(const Scalar& x, const Scalar& y) {
  auto L = std::make_shared<const StructureGLA>(nilpotent_gla());
  Vec delta = x * L->basis_vector(1) + y * L->basis_vector(3);
  auto V = structure_vdata(L, coordinate_projection(*L, nilpotent_a_indices()), delta, nilpotent_weights());
  V.name = "nilpotent";
  return V;
}

}  // namespace db
