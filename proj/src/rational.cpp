#include "fmlim/rational.hpp"

#include <cmath>

#include "fmlim/error.hpp"

namespace fmlim {

std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) fail(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') fail(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(body.substr(0, slash), text);
    BigInt den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto int_part = body.substr(0, dot);
    auto frac_part = body.substr(dot + 1);
    BigInt num = parse_integer(std::string(int_part.empty() ? "0" : int_part) + std::string(frac_part), text);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    value = Rational(num, den);
  } else {
    value = Rational(parse_integer(body, text));
  }
  return negative ? Rational(-value) : value;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "non-finite mass");
  int exponent = 0;
  double mantissa = std::frexp(x, &exponent);
  // 53 significant bits are exact after scaling by 2^53.
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational value(scaled);
  BigInt two_pow = 1;
  two_pow <<= std::abs(exponent);
  return exponent >= 0 ? Rational(value * two_pow) : Rational(value / two_pow);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace fmlim
