#include "flatsig/rational.hpp"

#include "flatsig/errors.hpp"

#include <cctype>

namespace flatsig {

std::string format_rational(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

Integer parse_integer(const std::string& s, const std::string& whole) {
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "bad rational '" + whole + "'");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw Error(ErrorCode::InvalidInput, "bad rational '" + whole + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw Error(ErrorCode::InvalidInput, "bad rational '" + whole + "'");
  Integer v(s.substr(i));
  return s[0] == '-' ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer num = parse_integer(s.substr(0, slash), s);
    Integer den = parse_integer(s.substr(slash + 1), s);
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + s + "'");
    return Rational(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(parse_integer(s, s));
  std::string ip = s.substr(0, dot);
  std::string fp = s.substr(dot + 1);
  bool neg = !ip.empty() && ip[0] == '-';
  if (ip.empty() || ip == "-" || ip == "+") ip += "0";
  Integer scale = 1;
  for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
  Integer whole = parse_integer(ip, s);
  Integer frac = fp.empty() ? Integer(0) : parse_integer(fp, s);
  if (!fp.empty() && (fp[0] == '-' || fp[0] == '+'))
    throw Error(ErrorCode::InvalidInput, "bad rational '" + s + "'");
  Integer mag = (whole < 0 ? Integer(-whole) : whole) * scale + frac;
  return Rational(neg ? Integer(-mag) : mag, scale);
}

Rational mod2(const Rational& t) {
  Integer num = boost::multiprecision::numerator(t);
  Integer den = boost::multiprecision::denominator(t);
  Integer period = 2 * den;
  Integer r = num % period;
  if (r < 0) r += period;
  return Rational(r, den);
}

}  // namespace flatsig
