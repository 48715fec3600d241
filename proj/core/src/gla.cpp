#include "db/gla.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace db {

namespace {

Scalar swap_sign(int da, int db) { return sign_of(((da * db) & 1) == 0); }  // -(-1)^{da db}

Vec scaled(const Vec& v, const Scalar& s) { return s * v; }

bool degree_ok(const std::vector<BasisElement>& basis, const BracketEntry& e) {
  const int want = basis[e.left].degree + basis[e.right].degree;
  for (const auto& [k, c] : e.result)
    if (basis.at(k).degree != want) return false;
  return true;
}

std::map<std::pair<int, int>, Vec> canonical_entries(const GLATable& t, bool strict) {
  std::map<std::pair<int, int>, Vec> upper;
  std::map<std::pair<int, int>, Vec> lower;
  const int n = static_cast<int>(t.basis.size());
  for (const auto& e : t.entries) {
    if (e.left < 0 || e.left >= n || e.right < 0 || e.right >= n)
      throw std::invalid_argument("bracket entry refers to an unknown basis element");
    if (e.left <= e.right) {
      upper[{e.left, e.right}] += e.result;
    } else {
      lower[{e.right, e.left}] += e.result;
    }
  }
  for (const auto& [key, v] : lower) {
    Vec derived = scaled(v, swap_sign(t.basis[key.first].degree, t.basis[key.second].degree));
    auto it = upper.find(key);
    if (it == upper.end()) {
      upper.emplace(key, derived);
    } else if (strict && !(it->second == derived)) {
      throw std::invalid_argument("bracket table is not graded antisymmetric at (" +
                                  t.basis[key.second].name + "," + t.basis[key.first].name + ")");
    }
  }
  for (auto it = upper.begin(); it != upper.end();) {
    if (it->second.is_zero()) {
      it = upper.erase(it);
    } else {
      ++it;
    }
  }
  return upper;
}

}  // namespace

StructureGLA::StructureGLA(const GLATable& table)
    : basis_(table.basis), upper_(canonical_entries(table, true)) {}

StructureGLA::StructureGLA(std::vector<BasisElement> basis, std::map<std::pair<int, int>, Vec> upper)
    : basis_(std::move(basis)) {
  for (auto& [key, v] : upper) {
    if (key.first > key.second) throw std::invalid_argument("constants must be keyed with i <= j");
    check_index(key.first);
    check_index(key.second);
    if (!v.is_zero()) upper_.emplace(key, std::move(v));
  }
}

void StructureGLA::check_index(int i) const {
  if (i < 0 || i >= dim()) throw std::invalid_argument("basis index out of range");
}

std::optional<int> StructureGLA::index_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].name == name) return i;
  return std::nullopt;
}

int StructureGLA::min_degree() const {
  int m = 0;
  for (const auto& b : basis_) m = std::min(m, b.degree);
  return m;
}

int StructureGLA::max_degree() const {
  int m = 0;
  for (const auto& b : basis_) m = std::max(m, b.degree);
  return m;
}

std::optional<int> StructureGLA::degree(const Vec& v) const {
  std::optional<int> d;
  for (const auto& [k, c] : v) {
    check_index(k);
    if (d && *d != basis_[k].degree) return std::nullopt;
    d = basis_[k].degree;
  }
  return d;
}

bool StructureGLA::is_homogeneous(const Vec& v) const { return v.is_zero() || degree(v).has_value(); }

Vec StructureGLA::bracket_basis(int i, int j) const {
  check_index(i);
  check_index(j);
  if (i <= j) {
    auto it = upper_.find({i, j});
    return it == upper_.end() ? Vec() : it->second;
  }
  auto it = upper_.find({j, i});
  if (it == upper_.end()) return Vec();
  return scaled(it->second, swap_sign(basis_[i].degree, basis_[j].degree));
}

Vec StructureGLA::bracket(const Vec& x, const Vec& y) const {
  Vec out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      Vec r = bracket_basis(i, j);
      if (!r.is_zero()) out += (a * b) * r;
    }
  return out;
}

GLATable StructureGLA::table() const {
  GLATable t;
  t.basis = basis_;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      Vec r = bracket_basis(i, j);
      if (!r.is_zero()) t.entries.push_back({i, j, r});
    }
  return t;
}

std::optional<int> StructureGLA::nilpotency_class() const {
  // Spanning sets of L^k = [L, L^{k-1}]; exact rank is not needed, only vanishing.
  std::vector<Vec> current;
  for (int i = 0; i < dim(); ++i) current.push_back(basis_vector(i));
  for (int c = 1; c <= dim() + 1; ++c) {
    std::vector<Vec> next;
    std::set<std::vector<std::pair<int, std::string>>> seen;
    for (int i = 0; i < dim(); ++i)
      for (const auto& v : current) {
        Vec r = bracket(basis_vector(i), v);
        if (r.is_zero()) continue;
        std::vector<std::pair<int, std::string>> key;
        for (const auto& [k, s] : r) key.emplace_back(k, s.str());
        if (seen.insert(key).second) next.push_back(r);
      }
    if (next.empty()) return c;
    if (next.size() > 4096) return std::nullopt;
    current = std::move(next);
  }
  return std::nullopt;
}

GLAReport verify_gla(const GLATable& t) {
  GLAReport rep;
  const int n = static_cast<int>(t.basis.size());
  std::map<std::pair<int, int>, int> seen;
  for (const auto& e : t.entries) {
    if (e.left < 0 || e.left >= n || e.right < 0 || e.right >= n)
      throw std::invalid_argument("bracket entry refers to an unknown basis element");
    if (!degree_ok(t.basis, e)) rep.violations.push_back({"degree", {e.left, e.right}, e.result});
    if (++seen[{e.left, e.right}] == 2)
      rep.violations.push_back({"duplicate", {e.left, e.right}, e.result});
  }
  auto lookup = [&](int i, int j) -> std::optional<Vec> {
    for (const auto& e : t.entries)
      if (e.left == i && e.right == j) return e.result;
    return std::nullopt;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      auto a = lookup(i, j);
      auto b = lookup(j, i);
      const Scalar s = swap_sign(t.basis[i].degree, t.basis[j].degree);
      if (i == j) {
        if (a && !(scaled(*a, s) == *a)) rep.violations.push_back({"antisymmetry", {i, i}, *a});
      } else if (a && b && !(scaled(*a, s) == *b)) {
        rep.violations.push_back({"antisymmetry", {j, i}, *b - scaled(*a, s)});
      }
    }
  StructureGLA alg(t.basis, canonical_entries(t, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Vec va = alg.basis_vector(a), vb = alg.basis_vector(b), vc = alg.basis_vector(c);
        Vec r = alg.bracket(va, alg.bracket(vb, vc)) - alg.bracket(alg.bracket(va, vb), vc) -
                sign_of((t.basis[a].degree * t.basis[b].degree) & 1) * alg.bracket(vb, alg.bracket(va, vc));
        if (!r.is_zero()) rep.violations.push_back({"jacobi", {a, b, c}, r});
      }
  return rep;
}

GLAReport verify_gla(const StructureGLA& algebra) { return verify_gla(algebra.table()); }

Vec LinearMap::operator()(const Vec& v) const {
  Vec out;
  for (const auto& [k, c] : v) out += c * images.at(k);
  return out;
}

LinearMap LinearMap::then(const LinearMap& after) const {
  LinearMap m;
  for (const auto& im : images) m.images.push_back(after(im));
  return m;
}

LinearMap adjoint(const StructureGLA& algebra, const Vec& delta) {
  if (!delta.is_zero() && algebra.degree(delta) != 1)
    throw std::invalid_argument("adjoint: delta must be homogeneous of degree 1");
  LinearMap m;
  for (int i = 0; i < algebra.dim(); ++i) m.images.push_back(algebra.bracket(delta, algebra.basis_vector(i)));
  return m;
}

GLAReport verify_dgla(const DGLA& g) {
  GLAReport rep = verify_gla(g.algebra);
  const auto& alg = g.algebra;
  if (static_cast<int>(g.differential.images.size()) != alg.dim())
    throw std::invalid_argument("differential must give one image per basis element");
  for (int i = 0; i < alg.dim(); ++i) {
    const Vec& di = g.differential.images[i];
    for (const auto& [k, c] : di)
      if (alg.degree(k) != alg.degree(i) + 1) {
        rep.violations.push_back({"degree", {i}, di});
        break;
      }
    Vec dd = g.differential(di);
    if (!dd.is_zero()) rep.violations.push_back({"differential", {i}, dd});
  }
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < alg.dim(); ++j) {
      const Vec a = alg.basis_vector(i), b = alg.basis_vector(j);
      Vec r = g.differential(alg.bracket(a, b)) - alg.bracket(g.differential(a), b) -
              sign_of(alg.degree(i) & 1) * alg.bracket(a, g.differential(b));
      if (!r.is_zero()) rep.violations.push_back({"leibniz", {i, j}, r});
    }
  return rep;
}

}  // namespace db
