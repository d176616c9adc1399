#include "doctest.h"
#include "skewtor/rational.hpp"

using skewtor::Rat;
using skewtor::parse_rational;
using skewtor::format_rational;

TEST_CASE("rational parsing: fraction forms") {
  CHECK(*parse_rational("3/4") == Rat(3, 4));
  CHECK(*parse_rational("-3/4") == Rat(-3, 4));
  CHECK(*parse_rational(" 7 / 2 ") == Rat(7, 2));
  CHECK(*parse_rational("6/4") == Rat(3, 2));   // canonicalized
  CHECK(*parse_rational("0/5") == Rat(0));
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("1//2").has_value());
  CHECK(!parse_rational("").has_value());
  CHECK(!parse_rational("a/b").has_value());
}

TEST_CASE("rational parsing: decimal forms are exact") {
  CHECK(*parse_rational("0.5") == Rat(1, 2));
  CHECK(*parse_rational("-0.25") == Rat(-1, 4));
  CHECK(*parse_rational("2") == Rat(2));
  CHECK(*parse_rational("1e3") == Rat(1000));
  CHECK(*parse_rational("1.5e-2") == Rat(3, 200));
  CHECK(*parse_rational("0.001") == Rat(1, 1000));
  CHECK(*parse_rational(".5") == Rat(1, 2));
  CHECK(!parse_rational("1.2.3").has_value());
}

TEST_CASE("rational formatting canonical") {
  CHECK(format_rational(Rat(3, 4)) == "3/4");
  CHECK(format_rational(Rat(-3, 4)) == "-3/4");
  CHECK(format_rational(Rat(2)) == "2");
  CHECK(format_rational(Rat(0)) == "0");
  CHECK(format_rational(*parse_rational("0.125")) == "1/8");
}

TEST_CASE("scalar traits dispatch both modes") {
  using TR = skewtor::scalar_traits<Rat>;
  using TD = skewtor::scalar_traits<double>;
  CHECK(TR::exact);
  CHECK(!TD::exact);
  CHECK(TR::from_ratio(1, 3) == Rat(1, 3));
  CHECK(TD::from_ratio(1, 4) == doctest::Approx(0.25));
  CHECK(TR::abs(Rat(-5, 7)) == Rat(5, 7));
  CHECK(TD::abs(-0.5) == 0.5);
  CHECK(TR::is_zero(Rat(0)));
  CHECK(!TR::is_zero(Rat(1, 1000000)));
  CHECK(skewtor::frac<Rat>(2, 6) == Rat(1, 3));
  CHECK(skewtor::frac<double>(1, 8) == 0.125);
}
