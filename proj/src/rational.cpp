#include "campaign/rational.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "campaign/errors.hpp"

namespace campaign {

namespace {
thread_local RationalOpCounter* active_counter = nullptr;
}

namespace detail {
void count_rational_op() {
  for (RationalOpCounter* c = active_counter; c != nullptr; c = c->previous_) ++c->count_;
}
}  // namespace detail

RationalOpCounter::RationalOpCounter() : previous_(active_counter) { active_counter = this; }

RationalOpCounter::~RationalOpCounter() { active_counter = previous_; }

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw Error("rational with zero denominator");
  value_ = boost::multiprecision::cpp_rational(numerator, denominator);
}

Rational Rational::parse(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("bad rational '" + std::string(text) + "': " + why, i);
  };
  if (text.empty()) throw fail("empty");
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  auto read_digits = [&]() -> Integer {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw fail("expected digits");
    return Integer(std::string(text.substr(start, i - start)));
  };
  Integer num = read_digits();
  Integer den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    den = read_digits();
    if (den == 0) throw fail("zero denominator");
  }
  if (i != text.size()) throw fail("trailing characters");
  if (negative) num = -num;
  return Rational(num, den);
}

Rational Rational::abs() const {
  Rational r;
  r.value_ = boost::multiprecision::abs(value_);
  return r;
}

std::string Rational::str() const {
  std::ostringstream os;
  os << value_;
  return os.str();
}

Rational operator+(const Rational& a, const Rational& b) {
  detail::count_rational_op();
  Rational r;
  r.value_ = a.value_ + b.value_;
  return r;
}

Rational operator-(const Rational& a, const Rational& b) {
  detail::count_rational_op();
  Rational r;
  r.value_ = a.value_ - b.value_;
  return r;
}

Rational operator*(const Rational& a, const Rational& b) {
  detail::count_rational_op();
  Rational r;
  r.value_ = a.value_ * b.value_;
  return r;
}

Rational operator/(const Rational& a, const Rational& b) {
  detail::count_rational_op();
  if (b.value_ == 0) throw Error("rational division by zero");
  Rational r;
  r.value_ = a.value_ / b.value_;
  return r;
}

Rational operator-(const Rational& a) {
  detail::count_rational_op();
  Rational r;
  r.value_ = -a.value_;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.value_; }

}  // namespace campaign
