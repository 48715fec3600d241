#include <random>

#include "db/graded.hpp"
#include "db/lincomb.hpp"
#include "doctest.h"

using namespace db;

namespace {

Permutation swap12(int n = 2) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = i + 1;
  std::swap(im[0], im[1]);
  return Permutation(im);
}

Permutation random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = i + 1;
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(im);
}

}  // namespace

TEST_CASE("scalar arithmetic is exact and reduced") {
  Scalar a(6, -4);
  CHECK(a.num_str() == "-3");
  CHECK(a.den_str() == "2");
  CHECK(Scalar(1, 3) + Scalar(1, 6) == Scalar(1, 2));
  CHECK(Scalar::parse("-10/4") == Scalar(-5, 2));
  CHECK_THROWS_AS(Scalar::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("abc"), std::invalid_argument);
  CHECK(inverse_factorial(4) == Scalar(1, 24));
}

TEST_CASE("koszul and chi signs") {
  std::vector<int> d11{1, 1}, d21{2, 1}, d00{0, 0};
  CHECK(koszul_sign(Permutation::identity(3), std::vector<int>{1, 3, 5}) == Scalar(1));
  CHECK(koszul_sign(swap12(), d11) == Scalar(-1));
  CHECK(koszul_sign(swap12(), d21) == Scalar(1));
  CHECK(chi_sign(Permutation::identity(2), d11) == Scalar(1));
  CHECK(chi_sign(swap12(), d11) == Scalar(1));
  CHECK(chi_sign(swap12(), d00) == Scalar(-1));
  CHECK_THROWS_AS(koszul_sign(swap12(), std::vector<int>{1}), std::invalid_argument);
}

TEST_CASE("koszul sign is multiplicative under composition") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> deg(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    Permutation s = random_perm(rng, n), t = random_perm(rng, n);
    std::vector<int> d(n);
    for (auto& x : d) x = deg(rng);
    // v_{s t} = eps(t; w) * eps(s; d) with w the degrees after applying s
    std::vector<int> w(n);
    for (int k = 1; k <= n; ++k) w[k - 1] = d[s(k) - 1];
    CHECK(koszul_sign(s.compose(t), d) == koszul_sign(t, w) * koszul_sign(s, d));
    CHECK(chi_sign(s, d) * chi_sign(s.inverse(), w) == Scalar(1));
  }
}

TEST_CASE("unshuffles") {
  auto u = unshuffles(1, 2);
  REQUIRE(u.size() == 2);
  CHECK(u[0].images() == std::vector<int>{1, 2});
  CHECK(u[1].images() == std::vector<int>{2, 1});
  CHECK(unshuffles(2, 3).size() == 3);
  CHECK(unshuffles(0, 4).size() == 1);
  CHECK(unshuffles(0, 4)[0] == Permutation::identity(4));
  CHECK_THROWS_AS(unshuffles(3, 2), std::invalid_argument);
  for (int n = 0; n <= 7; ++n)
    for (int i = 0; i <= n; ++i) {
      auto all = unshuffles(i, n);
      CHECK(static_cast<long>(all.size()) == binomial(n, i));
      for (const auto& s : all) {
        for (int k = 1; k < i; ++k) CHECK(s(k) < s(k + 1));
        for (int k = i + 1; k < n; ++k) CHECK(s(k) < s(k + 1));
      }
    }
}

TEST_CASE("decalage sign") {
  CHECK(decalage_sign(std::vector<int>{7}) == Scalar(1));
  CHECK(decalage_sign(std::vector<int>{1, 5}) == Scalar(-1));
  CHECK(decalage_sign(std::vector<int>{1, 1, 0}) == Scalar(-1));
}

TEST_CASE("linear combinations drop zeros") {
  LinComb<int> a(1, Scalar(2)), b(1, Scalar(-2));
  CHECK((a + b).is_zero());
  CHECK((Scalar(0) * a).is_zero());
  LinComb<int> c = a;
  c.add(2, Scalar(1, 3));
  CHECK(c.size() == 2);
  CHECK(((a + c) - c) == a);
}
