#ifndef TREEFOL_ORDER_KEY_HPP
#define TREEFOL_ORDER_KEY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <string>

namespace treefol {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Key of the dense strict variable order. Exact rationals give density
// (a key strictly between any two keys) and no endpoints (a key above or
// below any finite set), both of which the renaming machinery relies on.
class OrderKey {
 public:
  OrderKey() : v_(0) {}
  explicit OrderKey(long n) : v_(n) {}
  explicit OrderKey(BigRational v) : v_(std::move(v)) {}
  OrderKey(long num, long den) : v_(BigRational(num, den)) {}

  static OrderKey between(const OrderKey& lo, const OrderKey& hi) {
    return OrderKey(BigRational((lo.v_ + hi.v_) / 2));
  }
  // Smallest integer key strictly above k.
  static OrderKey int_above(const OrderKey& k) {
    BigInt num = boost::multiprecision::numerator(k.v_);
    BigInt den = boost::multiprecision::denominator(k.v_);
    BigInt q = num / den;  // truncation
    if (num < 0 && num % den != 0) q -= 1;
    return OrderKey(BigRational(q + 1));
  }

  const BigRational& value() const { return v_; }

  friend bool operator==(const OrderKey& a, const OrderKey& b) { return a.v_ == b.v_; }
  friend bool operator!=(const OrderKey& a, const OrderKey& b) { return a.v_ != b.v_; }
  friend bool operator<(const OrderKey& a, const OrderKey& b) { return a.v_ < b.v_; }
  friend bool operator>(const OrderKey& a, const OrderKey& b) { return a.v_ > b.v_; }
  friend bool operator<=(const OrderKey& a, const OrderKey& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const OrderKey& a, const OrderKey& b) { return a.v_ >= b.v_; }

  std::string str() const { return v_.str(); }

 private:
  BigRational v_;
};

}  // namespace treefol

#endif
