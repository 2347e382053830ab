#include <random>

#include "doctest.h"
#include "fglforge/groebner.hpp"

using namespace fglforge;

namespace {

QPoly var(const RingPtr& r, VarKind k, int level, int conj = 0) {
  return QPoly::variable(r, r->index_or_throw({k, level, conj}), Rational(1));
}

// random homogeneous polynomial of the given degree with small integer coefficients
QPoly random_homogeneous(const RingPtr& r, int degree, std::mt19937& rng, int max_terms = 5) {
  auto mons = monomials_of_degree(*r, degree);
  std::vector<QPoly::Term> terms;
  std::uniform_int_distribution<int> pick(0, static_cast<int>(mons.size()) - 1), coef(-3, 3);
  for (int i = 0; i < max_terms && !mons.empty(); ++i) terms.emplace_back(mons[pick(rng)], Rational(coef(rng)));
  return QPoly::from_terms(r, terms);
}

F2Poly random_f2(const RingPtr& r, int degree, std::mt19937& rng) {
  auto mons = monomials_of_degree(*r, degree);
  std::vector<F2Poly::Term> terms;
  std::bernoulli_distribution b(0.4);
  for (const auto& m : mons)
    if (b(rng)) terms.emplace_back(m, F2(1));
  return F2Poly::from_terms(r, terms);
}

}  // namespace

TEST_CASE("polynomial arithmetic in R_2") {
  auto R = make_rn_ring(2, 2);
  QPoly t1 = var(R, VarKind::T, 1), gt1 = var(R, VarKind::T, 1, 1), t2 = var(R, VarKind::T, 2);
  QPoly lhs = (t1 + gt1) * (t1 + gt1);
  QPoly rhs = t1 * t1 + (t1 * gt1).scaled(Rational(2)) + gt1 * gt1;
  CHECK(lhs == rhs);
  CHECK(*(t2 * t1 * t1).homogeneous_degree() == 10);
  CHECK((QPoly(R) * t1).is_zero());
  CHECK((t1 - t1).terms().empty());
  auto B = make_bp_ring(2);
  QPoly v1 = QPoly::variable(B, 0, Rational(1));
  CHECK_THROWS_AS(t1 + v1, Error);
}

TEST_CASE("gamma action") {
  auto R = make_rn_ring(2, 2);
  QPoly t1 = var(R, VarKind::T, 1), gt1 = var(R, VarKind::T, 1, 1);
  CHECK(gamma_act(t1, 1) == gt1);
  CHECK(gamma_act(gt1, 1) == -t1);
  CHECK(gamma_act(t1 * gt1, 2) == t1 * gt1);
  CHECK(gamma_act(t1, 2) == -t1);  // gamma^{2^{n-1}} is not the identity
  std::mt19937 rng(7);
  for (int n = 1; n <= 3; ++n) {
    auto Rn = make_rn_ring(n, 2);
    for (int trial = 0; trial < 10; ++trial) {
      QPoly p = random_homogeneous(Rn, 6, rng), q = random_homogeneous(Rn, 4, rng);
      CHECK(gamma_act(p, 1 << n) == p);
      CHECK(gamma_act(p * q, 1) == gamma_act(p, 1) * gamma_act(q, 1));
      CHECK(gamma_act(gamma_act(p, 1), 1) == gamma_act(p, 2));
      // involution sign rule: gamma^{2^{n-1}} acts by (-1)^{deg/2}
      CHECK(gamma_act(p, 1 << (n - 1)) == -p);  // deg 6
      CHECK(gamma_act(q, 1 << (n - 1)) == q);   // deg 4
    }
  }
  CHECK_THROWS_AS(gamma_act(QPoly::variable(make_bp_ring(1), 0, Rational(1)), 1), Error);
}

TEST_CASE("reduce mod 2") {
  auto R = make_rn_ring(2, 2);
  QPoly t1 = var(R, VarKind::T, 1);
  CHECK(reduce_mod2(t1.scaled(Rational(2))).is_zero());
  CHECK(reduce_mod2(t1.scaled(Rational(3))) == reduce_mod2(t1));
  CHECK(reduce_mod2(t1.scaled(Rational(1, 3))) == reduce_mod2(t1));
  CHECK_THROWS_AS(reduce_mod2(t1.scaled(Rational(1, 2))), Error);
}

TEST_CASE("ring maps") {
  auto R = make_rn_ring(2, 2);
  QPoly t1 = var(R, VarKind::T, 1), gt1 = var(R, VarKind::T, 1, 1), t2 = var(R, VarKind::T, 2);
  QPoly p = t1 * t1 * gt1 + t2.scaled(Rational(5));
  auto embed = [&](const Rational& c) { return QPoly::constant(R, c); };
  std::vector<std::optional<QPoly>> id;
  for (int i = 0; i < R->nvars(); ++i) id.push_back(QPoly::variable(R, i, Rational(1)));
  CHECK(ring_map(p, id, embed, QPoly(R)) == p);
  auto kill = id;
  kill[R->index_or_throw({VarKind::T, 1, 0})] = QPoly(R);
  CHECK(ring_map(p, kill, embed, QPoly(R)) == t2.scaled(Rational(5)));
  std::vector<std::optional<QPoly>> partial(R->nvars());
  CHECK_THROWS_AS(ring_map(p, partial, embed, QPoly(R)), Error);
  // gamma as a ring map
  std::vector<std::optional<QPoly>> g;
  for (int i = 0; i < R->nvars(); ++i) g.push_back(gamma_act(QPoly::variable(R, i, Rational(1)), 1));
  CHECK(ring_map(p, g, embed, QPoly(R)) == gamma_act(p, 1));
}

TEST_CASE("groebner basics") {
  auto R = make_rn_ring(2, 2);
  F2Poly t1 = reduce_mod2(var(R, VarKind::T, 1)), gt1 = reduce_mod2(var(R, VarKind::T, 1, 1));
  auto gb = GroebnerBasis::compute(R, {t1}, 12);
  CHECK(gb.size() == 1);
  CHECK(gb.normal_form(t1 * gt1).is_zero());
  CHECK(gb.normal_form(gt1) == gt1);
  auto empty = GroebnerBasis::compute(R, {}, 12);
  CHECK(empty.contains(F2Poly(R)));
  CHECK_FALSE(empty.contains(t1));
  F2Poly big = t1;
  for (int i = 0; i < 7; ++i) big = big * t1;
  CHECK_THROWS_AS(gb.normal_form(big), Error);
}

TEST_CASE("groebner for a nonprincipal ideal against random combinations and linear algebra") {
  auto R = make_rn_ring(2, 2);
  QPoly t1 = var(R, VarKind::T, 1), gt1 = var(R, VarKind::T, 1, 1), t2 = var(R, VarKind::T, 2),
        gt2 = var(R, VarKind::T, 2, 1);
  // v1 = t1 + gt1 mod 2, and a degree-6 element playing the role of v2
  F2Poly g1 = reduce_mod2(t1 + gt1);
  F2Poly g2 = reduce_mod2(t2 + gt2 + gt1 * t1 * t1 + t1 * t1 * t1);
  auto gb = GroebnerBasis::compute(R, {g1, g2}, 14);
  CHECK(gb.verify_complete());
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 6 + 2 * (trial % 5);
    F2Poly comb = random_f2(R, d - 2, rng) * g1 + random_f2(R, d - 6, rng) * g2;
    CHECK(gb.contains(comb));
    CHECK(linear_algebra_contains(R, {g1, g2}, comb));
  }
  for (int d = 2; d <= 10; d += 2)
    for (int trial = 0; trial < 10; ++trial) {
      F2Poly p = random_f2(R, d, rng);
      CHECK(gb.contains(p) == linear_algebra_contains(R, {g1, g2}, p));
    }
}
