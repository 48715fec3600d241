#pragma once

#include <map>
#include <utility>

#include "db/scalar.hpp"

namespace db {

// Sparse linear combination over Scalar. Zero coefficients are never stored.
template <class Key>
class LinComb {
 public:
  using Map = std::map<Key, Scalar>;
  using const_iterator = typename Map::const_iterator;

  LinComb() = default;
  LinComb(const Key& k, const Scalar& c) { add(k, c); }

  void add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  Scalar coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  LinComb& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
    } else {
      for (auto& kv : terms_) kv.second *= s;
    }
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator-(LinComb a) { return a *= Scalar(-1); }
  friend LinComb operator*(const Scalar& s, LinComb a) { return a *= s; }
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

 private:
  Map terms_;
};

}  // namespace db
