#include "db/scalar.hpp"

#include <climits>
#include <stdexcept>

namespace db {

Scalar::Scalar(long n, long d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Scalar Scalar::parse(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational: '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return Scalar(q);
}

long Scalar::to_long() const {
  if (!is_integer() || !q_.get_num().fits_slong_p())
    throw std::domain_error("scalar is not a machine integer: " + str());
  return q_.get_num().get_si();
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

Scalar inverse_factorial(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return Scalar(mpq_class(mpz_class(1), f));
}

}  // namespace db
