#include "msr/rational.hpp"

#include <cctype>

#include "msr/error.hpp"

namespace msr {

std::string rational_str(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string rational_decimal(const Rational& r, unsigned digits) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  const BigInt scale = bigint_pow(BigInt(10), digits);
  BigInt scaled = num * scale;
  BigInt q = scaled / den;
  const BigInt rem = scaled % den;
  if (rem * 2 >= den) ++q;
  std::string body = q.str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  std::string out = negative ? "-" : "";
  if (digits == 0) return out + body;
  out += body.substr(0, body.size() - digits);
  out += ".";
  out += body.substr(body.size() - digits);
  return out;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num_s = text.substr(0, slash);
  const std::string den_s =
      slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto check = [](const std::string& s) {
    if (s.empty()) fail(Errc::parse_error, "empty rational component");
    size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) fail(Errc::parse_error, "bad rational: sign only");
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        fail(Errc::parse_error, "bad rational digit");
  };
  check(num_s);
  check(den_s);
  const BigInt den(den_s);
  if (den == 0) fail(Errc::parse_error, "zero denominator");
  return Rational(BigInt(num_s), den);
}

}  // namespace msr
