#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace campaign {

using Integer = boost::multiprecision::cpp_int;

namespace detail {
void count_rational_op();
}

// Exact arbitrary-precision rational, always kept reduced with a positive
// denominator. Arithmetic never rounds; division by zero throws.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long long n) : value_(n) {}  // NOLINT: implicit by design
  explicit Rational(const Integer& n) : value_(n) {}
  Rational(const Integer& numerator, const Integer& denominator);
  Rational(long long numerator, long long denominator)
      : Rational(Integer(numerator), Integer(denominator)) {}

  // Accepts "a", "+a", "-a", "a/b" with integer a, b (b > 0 after reduction);
  // anything else, including decimal notation, is a ParseError.
  static Rational parse(std::string_view text);

  Integer numerator() const { return boost::multiprecision::numerator(value_); }
  Integer denominator() const { return boost::multiprecision::denominator(value_); }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return value_.sign(); }
  Rational abs() const;

  // Canonical "a/b", or "a" when the denominator is 1.
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  boost::multiprecision::cpp_rational value_;
};

// Counts Rational arithmetic operations (+, -, *, /, unary -) performed on
// the current thread while alive. Used to check arithmetic-complexity
// contracts; nests safely.
class RationalOpCounter {
 public:
  RationalOpCounter();
  ~RationalOpCounter();
  RationalOpCounter(const RationalOpCounter&) = delete;
  RationalOpCounter& operator=(const RationalOpCounter&) = delete;

  std::size_t count() const { return count_; }

 private:
  friend void detail::count_rational_op();
  std::size_t count_ = 0;
  RationalOpCounter* previous_;
};

}  // namespace campaign
