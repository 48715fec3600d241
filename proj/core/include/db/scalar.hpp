#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace db {

// Exact rational, always in lowest terms with positive denominator.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(long n, long d);
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "3", "-2/5".
  static Scalar parse(const std::string& text);

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }
  std::string num_str() const { return q_.get_num().get_str(); }
  std::string den_str() const { return q_.get_den().get_str(); }
  std::string str() const { return q_.get_str(); }
  long to_long() const;  // throws unless an integer that fits
  const mpq_class& raw() const { return q_; }

  Scalar operator-() const { return Scalar(mpq_class(-q_)); }
  Scalar& operator+=(const Scalar& o) { q_ += o.q_; return *this; }
  Scalar& operator-=(const Scalar& o) { q_ -= o.q_; return *this; }
  Scalar& operator*=(const Scalar& o) { q_ *= o.q_; return *this; }
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  mpq_class q_;
};

inline Scalar sign_of(bool negative) { return negative ? Scalar(-1) : Scalar(1); }
Scalar inverse_factorial(int n);

}  // namespace db
