#include <doctest.h>

#include "cgc/gf.hpp"

using namespace cgc;

TEST_CASE("prime field arithmetic basics") {
  Fq F3 = Fq::make(3);
  CHECK(F3.mul(2, 2) == 1);  // 4 mod 3
  CHECK(F3.add(2, 2) == 1);
  CHECK(F3.sub(0, 1) == 2);

  Fq F5 = Fq::make(5);
  CHECK(F5.inv(2) == 3);  // 2*3 = 1 mod 5
  CHECK(F5.div(1, 2) == 3);

  for (FqElem a : F5.enumerate()) CHECK(F5.add(a, 0) == a);
  CHECK_THROWS_AS(F5.div(1, 0), domain_error);
  CHECK_THROWS_AS(Fq::make(4), domain_error);
  CHECK_THROWS_AS(Fq::make(9), domain_error);  // 9 is 3^2, not prime
}

TEST_CASE("field spec parsing") {
  CHECK(Fq::parse("3").q() == 3);
  CHECK(Fq::parse("9").p() == 3);
  CHECK(Fq::parse("9").k() == 2);
  CHECK(Fq::parse("3^2").q() == 9);
  CHECK(Fq::parse("25").q() == 25);
  CHECK_THROWS_AS(Fq::parse("6"), domain_error);
  CHECK_THROWS_AS(Fq::parse("x"), domain_error);
}

TEST_CASE("sign classes") {
  Fq F3 = Fq::make(3);
  CHECK(F3.sign_class(2) == -1);  // squares mod 3 are {1}
  CHECK(F3.sign_class(1) == +1);

  Fq F7 = Fq::make(7);
  CHECK(F7.sign_class(2) == +1);  // 3^2 = 2 mod 7
  Fq F5 = Fq::make(5);
  CHECK(F5.sign_class(4) == +1);  // 2^2

  CHECK_THROWS_AS(F3.sign_class(0), domain_error);
  CHECK_THROWS_AS(Fq::make(2).sign_class(1), domain_error);
}

TEST_CASE("enumerate_field") {
  Fq F3 = Fq::make(3);
  CHECK(F3.enumerate() == std::vector<FqElem>{0, 1, 2});
  CHECK(Fq::make(5).enumerate().size() == 5);

  Fq F7 = Fq::make(7);
  int squares = 0;
  for (FqElem a : F7.enumerate())
    if (a != 0 && F7.sign_class(a) == +1) ++squares;
  CHECK(squares == 3);  // (q-1)/2
}

TEST_CASE("sign multiplicativity and Fermat over all supported fields") {
  for (const char* spec : {"3", "5", "7", "3^2", "5^2", "3^3", "7^2"}) {
    Fq F = Fq::parse(spec);
    CAPTURE(spec);
    for (FqElem a : F.enumerate()) {
      if (a == 0) continue;
      CHECK(F.pow(a, F.q() - 1) == F.one());
      CHECK(F.sign_class(F.mul(a, a)) == +1);
      CHECK(F.mul(a, F.inv(a)) == F.one());
      for (FqElem b : F.enumerate()) {
        if (b == 0) continue;
        CHECK(F.sign_class(F.mul(a, b)) == F.sign_class(a) * F.sign_class(b));
      }
    }
  }
}

TEST_CASE("extension field structure") {
  Fq F9 = Fq::parse("3^2");
  CHECK(F9.q() == 9);
  CHECK(F9.p() == 3);
  // field axioms, spot: associativity and distributivity over all triples
  for (FqElem a : F9.enumerate())
    for (FqElem b : F9.enumerate())
      for (FqElem c : F9.enumerate()) {
        CHECK(F9.mul(a, F9.mul(b, c)) == F9.mul(F9.mul(a, b), c));
        CHECK(F9.mul(a, F9.add(b, c)) == F9.add(F9.mul(a, b), F9.mul(a, c)));
      }
  CHECK(Fq::parse("7^2").q() == 49);
  CHECK(Fq::parse("3^3").q() == 27);
  CHECK_THROWS_AS(Fq::parse("11^2"), domain_error);
}

TEST_CASE("q=2 allowed for GL-only use") {
  Fq F2 = Fq::make(2);
  CHECK(F2.q() == 2);
  CHECK(F2.add(1, 1) == 0);
  CHECK_FALSE(F2.odd());
}
