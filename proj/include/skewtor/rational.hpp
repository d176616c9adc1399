#pragma once
// Dual scalar modes for the whole engine: exact rationals (GMP) or binary64.
// A computation is instantiated with exactly one scalar type; modes are never
// mixed inside a pipeline. Exact mode exists so that every algebraic identity
// can be tested as "residual is identically zero", not "small".

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>

namespace skewtor {

using Rat = mpq_class;

// "3", "-3/4", "0.25", "1e-3", "2.5e2" -> exact rational; nullopt on garbage.
std::optional<Rat> parse_rational(const std::string& text);

// canonical "p" or "p/q"
std::string format_rational(const Rat& q);

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static const char* mode_name() { return "exact"; }
  static Rat from_ratio(long p, long q) {
    Rat r(p, q);
    r.canonicalize();
    return r;
  }
  static Rat abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }
  static double to_double(const Rat& x) { return x.get_d(); }
  static bool is_zero(const Rat& x) { return sgn(x) == 0; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static const char* mode_name() { return "float"; }
  static double from_ratio(long p, long q) { return double(p) / double(q); }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
};

// Exact rational constant usable from templated code: frac<S>(1, 4) is 1/4 in
// either mode (binary64 rounds once, which is the best it can do).
template <class S>
S frac(long p, long q = 1) {
  return scalar_traits<S>::from_ratio(p, q);
}

}  // namespace skewtor
