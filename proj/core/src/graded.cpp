#include "db/graded.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace db {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 1 || v > size() || seen[v - 1])
      throw std::invalid_argument("not a permutation");
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (int k = 1; k <= size(); ++k) im[(*this)(k) - 1] = k;
  return Permutation(std::move(im));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> im(images_.size());
  for (int k = 1; k <= size(); ++k) im[k - 1] = (*this)(other(k));
  return Permutation(std::move(im));
}

int Permutation::sign() const {
  int inv = 0;
  for (int a = 0; a < size(); ++a)
    for (int b = a + 1; b < size(); ++b)
      if (images_[a] > images_[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

int koszul_parity(const Permutation& sigma, std::span<const int> degrees) {
  if (static_cast<int>(degrees.size()) != sigma.size())
    throw std::invalid_argument("koszul_sign: expected " + std::to_string(sigma.size()) +
                                " degrees, got " + std::to_string(degrees.size()));
  // Bubble sort the sequence sigma(1..n) back to the identity; each adjacent
  // swap of entries a, b contributes |v_a||v_b|.
  std::vector<int> seq = sigma.images();
  int parity = 0;
  for (std::size_t pass = 0; pass < seq.size(); ++pass) {
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
      if (seq[k] > seq[k + 1]) {
        parity ^= (degrees[seq[k] - 1] * degrees[seq[k + 1] - 1]) & 1;
        std::swap(seq[k], seq[k + 1]);
      }
    }
  }
  return parity;
}

Scalar koszul_sign(const Permutation& sigma, std::span<const int> degrees) {
  return sign_of(koszul_parity(sigma, degrees) != 0);
}

Scalar chi_sign(const Permutation& sigma, std::span<const int> degrees) {
  return koszul_sign(sigma, degrees) * Scalar(sigma.sign());
}

std::vector<Permutation> unshuffles(int i, int n) {
  if (i < 0 || n < 0 || i > n)
    throw std::invalid_argument("unshuffles: need 0 <= i <= n, got i=" + std::to_string(i) +
                                ", n=" + std::to_string(n));
  std::vector<Permutation> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + i, true);
  // prev_permutation on a descending-sorted mask walks subsets lexicographically.
  do {
    std::vector<int> im;
    im.reserve(n);
    for (int k = 0; k < n; ++k)
      if (pick[k]) im.push_back(k + 1);
    for (int k = 0; k < n; ++k)
      if (!pick[k]) im.push_back(k + 1);
    out.emplace_back(std::move(im));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

Scalar decalage_sign(std::span<const int> degrees) {
  const int n = static_cast<int>(degrees.size());
  long e = 0;
  for (int k = 1; k <= n - 1; ++k) e += static_cast<long>(n - k) * degrees[k - 1];
  return sign_of((e % 2 + 2) % 2 == 1);
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace db
