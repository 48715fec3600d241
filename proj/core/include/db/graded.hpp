#pragma once

#include <span>
#include <vector>

#include "db/scalar.hpp"

namespace db {

// Permutation of {1..n}; images[k-1] = sigma(k).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int k) const { return images_[k - 1]; }
  const std::vector<int>& images() const { return images_; }
  Permutation inverse() const;
  // (this * other)(k) = this(other(k))
  Permutation compose(const Permutation& other) const;
  int sign() const;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

// Sign of v_{s(1)}...v_{s(n)} relative to v_1...v_n in the graded symmetric algebra.
Scalar koszul_sign(const Permutation& sigma, std::span<const int> degrees);
Scalar chi_sign(const Permutation& sigma, std::span<const int> degrees);
int koszul_parity(const Permutation& sigma, std::span<const int> degrees);

// All (i, n-i) unshuffles, lexicographic in the first block.
std::vector<Permutation> unshuffles(int i, int n);

// Sign relating l_n on V to m_n on V[1]; degrees are taken in V.
Scalar decalage_sign(std::span<const int> degrees);

long binomial(int n, int k);

}  // namespace db
