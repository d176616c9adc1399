#include "skewtor/rational.hpp"

#include <cctype>

namespace skewtor {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// strict integer with optional sign
std::optional<mpz_class> parse_int(const std::string& s) {
  std::string body = s;
  bool neg = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  if (!all_digits(body)) return std::nullopt;
  mpz_class z(body, 10);
  if (neg) z = -z;
  return z;
}

mpz_class pow10z(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

std::optional<Rat> parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) return std::nullopt;

  if (auto slash = s.find('/'); slash != std::string::npos) {
    auto num = parse_int(s.substr(0, slash));
    auto den = parse_int(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    Rat q(*num, *den);
    q.canonicalize();
    return q;
  }

  // [sign] digits [. digits] [e [sign] digits]
  std::string mant = s;
  long expo = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    auto ez = parse_int(s.substr(e + 1));
    if (!ez || !ez->fits_slong_p()) return std::nullopt;
    expo = ez->get_si();
    mant = s.substr(0, e);
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '+' || mant[0] == '-')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  std::string intpart = mant, fracpart;
  if (auto dot = mant.find('.'); dot != std::string::npos) {
    intpart = mant.substr(0, dot);
    fracpart = mant.substr(dot + 1);
  }
  if (intpart.empty() && fracpart.empty()) return std::nullopt;
  if (!intpart.empty() && !all_digits(intpart)) return std::nullopt;
  if (!fracpart.empty() && !all_digits(fracpart)) return std::nullopt;

  mpz_class digits((intpart + fracpart).empty() ? "0" : intpart + fracpart, 10);
  Rat q(digits, pow10z(fracpart.size()));
  if (expo > 0)
    q *= Rat(pow10z(static_cast<unsigned long>(expo)));
  else if (expo < 0)
    q /= Rat(pow10z(static_cast<unsigned long>(-expo)));
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

std::string format_rational(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace skewtor
