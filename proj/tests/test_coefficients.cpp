#include "doctest.h"
#include "fglforge/coefficients.hpp"

using namespace fglforge;

namespace {

// Brute-force oracle: all z in (Z/2^N)[x]/(x^2+x+1) with z^3 = 1 and z = x mod 2.
std::vector<WittElement> cube_roots_lifting_x(const FieldPtr& f, int N) {
  std::vector<WittElement> out;
  const std::uint64_t mod = 1ull << N;
  for (std::uint64_t a = 0; a < mod; a += 2)
    for (std::uint64_t b = 1; b < mod; b += 2) {
      WittElement z(f, N, {a, b});
      if (z.pow(3) == WittElement::from_int(f, N, 1)) out.push_back(z);
    }
  return out;
}

}  // namespace

TEST_CASE("rational and 2-local arithmetic") {
  CHECK(Rational(1, 3) + Rational(1, 5) == Rational(8, 15));
  CHECK(TwoLocalInt(3).inverse().value() == Rational(1, 3));
  CHECK_THROWS_AS(TwoLocalInt(2).inverse(), Error);
  try {
    (void)TwoLocalInt(2).inverse();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InverseOfNonUnit);
  }
  CHECK_THROWS_AS(TwoLocalInt(Rational(1, 2)), Error);
  TwoLocalInt a(Rational(5, 7)), b(Rational(2, 9));
  CHECK((a * b).value() == Rational(10, 63));
  CHECK((a + b).value().denominator_odd());
  CHECK(Rational(12, 5).valuation2() == 2);
  CHECK(Rational(3, 8).valuation2() == -3);
  CHECK(Rational::parse("-6/4") == Rational(-3, 2));
}

TEST_CASE("finite field specs") {
  CHECK(is_irreducible_f2(0b111));
  CHECK(is_irreducible_f2(0b1011));
  CHECK_FALSE(is_irreducible_f2(0b101));  // (x+1)^2
  CHECK_THROWS_AS(FiniteFieldSpec::make(2, {1, 0, 1}), Error);
  auto f4 = FiniteFieldSpec::standard(2);
  GFElement w = GFElement::generator(f4);
  CHECK(w.pow(3).is_one());
  CHECK((w * w + w + GFElement::one(f4)).is_zero());
  auto f8 = FiniteFieldSpec::standard(3);
  for (std::uint32_t a = 1; a < 8; ++a) {
    GFElement e(f8, a);
    CHECK((e * e.inverse()).is_one());
    CHECK(e.pow(7).is_one());
  }
  CHECK(FiniteFieldSpec::standard(4)->d() == 4);
}

TEST_CASE("teichmuller lift of omega agrees with brute-force cube roots") {
  auto f4 = FiniteFieldSpec::standard(2);
  GFElement w = GFElement::generator(f4);
  for (int N : {1, 2, 4, 6}) {
    WittElement t = teichmuller(w, N);
    auto roots = cube_roots_lifting_x(f4, N);
    REQUIRE(roots.size() == 1);
    CHECK(t == roots[0]);
    CHECK((t * t + t + WittElement::from_int(f4, N, 1)).is_zero());
  }
  CHECK(teichmuller(GFElement::zero(f4), 5).is_zero());
  CHECK(teichmuller(GFElement::one(f4), 5) == WittElement::from_int(f4, 5, 1));
}

TEST_CASE("teichmuller is a multiplicative section (exhaustive F4, F8 at N=8)") {
  for (int d : {1, 2, 3}) {
    auto f = FiniteFieldSpec::standard(d);
    const int N = 8;
    for (std::uint32_t a = 0; a < f->size(); ++a) {
      GFElement ea(f, a);
      WittElement ta = teichmuller(ea, N);
      CHECK(ta.residue() == ea);
      WittElement p = ta;
      for (int i = 0; i < d; ++i) p = p * p;
      CHECK(p == ta);
      for (std::uint32_t b = 0; b < f->size(); ++b) {
        GFElement eb(f, b);
        CHECK(teichmuller(ea * eb, N) == ta * teichmuller(eb, N));
      }
    }
  }
}

TEST_CASE("frobenius lift") {
  for (int d : {2, 3}) {
    auto f = FiniteFieldSpec::standard(d);
    for (int N : {1, 4, 8}) {
      CHECK(frobenius_lift(WittElement::from_int(f, N, 1)) == WittElement::from_int(f, N, 1));
      CHECK(frobenius_lift(WittElement::from_int(f, N, 2)) == WittElement::from_int(f, N, 2));
      for (std::uint32_t a = 0; a < f->size(); ++a) {
        GFElement e(f, a);
        CHECK(frobenius_lift(teichmuller(e, N)) == teichmuller(e * e, N));
        // residue of sigma is the squaring map
        WittElement w = WittElement::lift(e, N) + WittElement::from_int(f, N, 6);
        CHECK(frobenius_lift(w).residue() == w.residue() * w.residue());
      }
      // ring homomorphism and order exactly d on a generic element
      WittElement x(f, N, std::vector<std::uint64_t>(d, 0));
      std::vector<std::uint64_t> c(d, 0);
      c[1] = 1;
      c[0] = 3;
      WittElement g(f, N, c), h = g * g + WittElement::from_int(f, N, 5);
      CHECK(frobenius_lift(g * h) == frobenius_lift(g) * frobenius_lift(h));
      CHECK(frobenius_lift(g + h) == frobenius_lift(g) + frobenius_lift(h));
      WittElement s = g;
      int order = 0;
      do {
        s = frobenius_lift(s);
        ++order;
      } while (!(s == g) && order < 10);
      CHECK(order == d);
    }
  }
}

TEST_CASE("Witt arithmetic mod 2 is field arithmetic") {
  auto f = FiniteFieldSpec::standard(3);
  for (std::uint32_t a = 0; a < 8; ++a)
    for (std::uint32_t b = 0; b < 8; ++b) {
      GFElement ea(f, a), eb(f, b);
      WittElement wa = WittElement::lift(ea, 1), wb = WittElement::lift(eb, 1);
      CHECK((wa * wb).residue() == ea * eb);
      CHECK((wa + wb).residue() == ea + eb);
    }
}

TEST_CASE("Witt inverse and rational embedding") {
  auto f = FiniteFieldSpec::standard(2);
  WittElement three = WittElement::from_int(f, 8, 3);
  CHECK(three * three.inverse() == WittElement::from_int(f, 8, 1));
  CHECK(WittElement::from_rational(f, 8, Rational(1, 3)) == three.inverse());
  CHECK_THROWS_AS(WittElement::from_int(f, 8, 2).inverse(), Error);
  CHECK_THROWS_AS(WittElement::from_rational(f, 8, Rational(1, 2)), Error);
  CHECK(WittElement::from_int(f, 8, 12).valuation() == 2);
}
