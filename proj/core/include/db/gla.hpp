#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "db/lincomb.hpp"

namespace db {

// Element of a finite-dimensional graded space: coefficients on basis indices.
using Vec = LinComb<int>;

struct BasisElement {
  std::string name;
  int degree = 0;
};

struct BracketEntry {
  int left = 0;
  int right = 0;
  Vec result;
};

// A bracket table exactly as supplied, possibly listing both (i,j) and (j,i).
struct GLATable {
  std::vector<BasisElement> basis;
  std::vector<BracketEntry> entries;
};

struct GLAViolation {
  std::string kind;  // "degree" | "antisymmetry" | "jacobi" | "differential" | "leibniz"
  std::vector<int> witness;
  Vec residual;
};

struct GLAReport {
  std::vector<GLAViolation> violations;
  bool ok() const { return violations.empty(); }
};

class StructureGLA {
 public:
  StructureGLA() = default;
  // Uses entries with left <= right; a supplied (j,i) entry must agree with
  // the antisymmetry-derived one.
  explicit StructureGLA(const GLATable& table);
  StructureGLA(std::vector<BasisElement> basis, std::map<std::pair<int, int>, Vec> upper);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int degree(int i) const { return basis_.at(i).degree; }
  std::optional<int> index_of(const std::string& name) const;
  int min_degree() const;
  int max_degree() const;
  using Elem = Vec;
  Vec zero() const { return {}; }
  Vec basis_vector(int i) const { return Vec(i, Scalar(1)); }

  // nullopt for zero or mixed-degree elements.
  std::optional<int> degree(const Vec& v) const;
  bool is_homogeneous(const Vec& v) const;

  Vec bracket_basis(int i, int j) const;
  Vec bracket(const Vec& x, const Vec& y) const;

  // Full table (both orders), used to re-verify a constructed algebra.
  GLATable table() const;
  // Length of the lower central series: smallest c with all (c+1)-fold brackets zero,
  // or nullopt if the series stabilizes at a nonzero ideal.
  std::optional<int> nilpotency_class() const;

 private:
  void check_index(int i) const;
  std::vector<BasisElement> basis_;
  std::map<std::pair<int, int>, Vec> upper_;
};

GLAReport verify_gla(const GLATable& table);
GLAReport verify_gla(const StructureGLA& algebra);

// Linear map given on basis vectors.
struct LinearMap {
  std::vector<Vec> images;
  Vec operator()(const Vec& v) const;
  LinearMap then(const LinearMap& after) const;  // after o this
};

LinearMap adjoint(const StructureGLA& algebra, const Vec& delta);

struct DGLA {
  StructureGLA algebra;
  LinearMap differential;
};

GLAReport verify_dgla(const DGLA& dgla);

}  // namespace db
