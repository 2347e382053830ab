#include "doctest.h"
#include "fglforge/lubin_tate.hpp"

using namespace fglforge;

TEST_CASE("truncation modulo m^M") {
  LTContext c(2, 1);  // one tau variable, M = 6
  LTElement t = c.tau(1);
  CHECK(c.from_int(64).is_zero());
  CHECK_FALSE(c.from_int(32).is_zero());
  CHECK(t.pow(6).is_zero());
  CHECK_FALSE(t.pow(5).is_zero());
  // coefficient of tau^e lives mod 2^{M-|e|}
  CHECK((c.from_int(16) * t.pow(2)).is_zero());
  CHECK_FALSE((c.from_int(8) * t.pow(2)).is_zero());
  CHECK((c.from_int(2) * t).filtration() == 2);
  CHECK(c.u(3).filtration() == 0);
}

TEST_CASE("units and inverses") {
  LTContext c(2, 1);
  LTElement one = c.from_int(1), t = c.tau(1);
  LTElement g = (one - t).inverse();
  // oracle: geometric series
  LTElement geo = c.zero();
  for (int j = 0; j < c.M(); ++j) geo = geo + t.pow(j);
  CHECK(g == geo);
  CHECK((one - t) * g == one);
  CHECK(c.u() * c.u(-1) == one);
  CHECK(c.u().inverse() == c.u(-1));
  LTElement x = c.from_int(3) * c.u(2) + c.from_int(2) * t * c.u(2);
  CHECK(x * x.inverse() == one);
  CHECK_THROWS_AS(t.inverse(), Error);
  CHECK_THROWS_AS(c.from_int(2).inverse(), Error);
  CHECK(verify_unit(c, c.u()));
  CHECK_FALSE(verify_unit(c, t));
  CHECK_FALSE(verify_unit(c, c.u() + c.u(2)));
}

TEST_CASE("presentation sizes") {
  for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 3}, {2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
    LTContext c(n, m);
    CHECK(c.h() == (1 << (n - 1)) * m);
    CHECK(c.ring()->nvars() - 1 == c.h() - 1);
  }
  CHECK_THROWS_AS(LTContext(2, 1, 1, std::nullopt, 4, 6), Error);
  CHECK_THROWS_AS(LTContext(0, 1), Error);
}

TEST_CASE("gamma action") {
  SUBCASE("n = 2, m = 1 by hand") {
    LTContext c(2, 1);
    LTElement one = c.from_int(1), t = c.tau(1);
    CHECK(lt_gamma(c, c.u()) == (one - t) * c.u());
    // gamma(tau_m) = 1 + 1/(1 - tau_m) = 2 + tau + tau^2 + ...
    LTElement expect = c.from_int(2);
    for (int j = 1; j < c.M(); ++j) expect = expect + t.pow(j);
    CHECK(lt_gamma(c, t) == expect);
    CHECK(lt_gamma_pow(c, c.u(), 2) == -c.u());
    CHECK(lt_gamma_pow(c, c.u(), 4) == c.u());
    CHECK(lt_gamma_pow(c, t, 4) == t);
  }
  SUBCASE("n = 1: gamma u = -u") {
    LTContext c(1, 2);
    CHECK(lt_gamma(c, c.u()) == -c.u());
    CHECK(lt_gamma(c, c.tau(1)) == c.tau(1));
  }
  SUBCASE("n = 3: conjugates of u and the involution") {
    LTContext c(3, 1);
    for (int j = 0; j < 4; ++j) CHECK(c.gamma_u(j) == lt_gamma_pow(c, c.u(), j));
    CHECK(lt_gamma_pow(c, c.u(), 4) == -c.u());
    CHECK(lt_gamma_pow(c, c.tau(1, 2), 1) == lt_gamma_pow(c, c.tau(1), 3));
  }
}

TEST_CASE("zeta and Galois actions") {
  SUBCASE("m = 1 admits only zeta = 1") {
    LTContext c(2, 1, 2);
    LTElement e = c.u() + c.tau(1);
    CHECK(lt_zeta(c, GFElement::one(c.field()), e) == e);
    CHECK_THROWS_AS(lt_zeta(c, GFElement::generator(c.field()), e), Error);
    CHECK_THROWS_AS(lt_zeta(c, GFElement::zero(c.field()), e), Error);
    CHECK(q_torsion(c).size() == 1);
  }
  SUBCASE("m = 2, d = 2, zeta = omega") {
    LTContext c(2, 2, 2);
    GFElement w = GFElement::generator(c.field());
    REQUIRE(w.pow(3).is_one());
    WittElement Tw = teichmuller(w, c.N()), Tw2 = teichmuller(w * w, c.N());
    CHECK(Tw.inverse() == Tw2);
    CHECK(lt_zeta(c, w, c.u()) == c.constant(Tw * Tw) * c.u());
    CHECK(lt_zeta(c, w, c.tau(1)) == c.constant(Tw) * c.tau(1));
    CHECK(lt_zeta(c, w, c.tau(2)) == c.tau(2));
    // t_1 = tau_1 u is fixed
    CHECK(lt_zeta(c, w, c.tau(1) * c.u()) == c.tau(1) * c.u());
    // sigma(T(omega) u) = T(omega^2) u
    CHECK(lt_galois(c, c.constant(Tw) * c.u()) == c.constant(Tw2) * c.u());
    CHECK(lt_galois(c, lt_galois(c, c.constant(Tw) * c.u())) == c.constant(Tw) * c.u());
    LTElement z2 = c.from_int(5) * c.tau(1, 1);
    CHECK(lt_galois(c, z2) == z2);
    CHECK(q_torsion(c).size() == 3);
    CHECK(c.alpha() == 3);
  }
}

TEST_CASE("specialization") {
  SUBCASE("(2,1): t_1 -> u, t_2 -> 0") {
    LTContext c(2, 1);
    RnContext R(2, 2);  // the full R_2 carries t_2
    CHECK(lt_specialize(c, R.t(1)) == c.u());
    CHECK(lt_specialize(c, R.t(1, 1)) == c.gamma_u(1));
    CHECK(lt_specialize(c, R.t(2)).is_zero());
    CHECK(lt_specialize(c, R.t(2, 1)).is_zero());
  }
  SUBCASE("(2,2): t_1 -> tau_1 u, t_2 -> u^3") {
    LTContext c(2, 2);
    RnContext R(2, 2, 2);
    LTElement t1 = lt_specialize(c, R.t(1));
    CHECK(t1 == c.tau(1) * c.u());
    CHECK(*t1.poly().homogeneous_degree() == 2);
    CHECK(lt_specialize(c, R.t(2)) == c.u(3));
    CHECK(lt_specialize(c, R.t(2, 1)) == c.gamma_u(1).pow(3));
  }
  SUBCASE("rational coefficients with odd denominators") {
    LTContext c(2, 1);
    RnContext R(2, 1, 1);
    QPoly p = R.t(1).scaled(Rational(1, 3));
    CHECK(lt_specialize(c, p) * c.from_int(3) == c.u());
    CHECK_THROWS_AS(lt_specialize(c, R.t(1).scaled(Rational(1, 2))), Error);
  }
  for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {2, 2}, {3, 1}})
    CHECK(specialization_equivariance(LTContext(n, m)).verified);
}

TEST_CASE("images of v_k at (n,m) = (2,1)") {
  LTContext c(2, 1);
  LTElement v1 = v_in_lt(c, 1), v2 = v_in_lt(c, 2), v3 = v_in_lt(c, 3);
  CHECK(*v1.poly().homogeneous_degree() == 2);
  CHECK(*v2.poly().homogeneous_degree() == 6);
  CHECK(v1.residue().is_zero());
  CHECK(v1.filtration() >= 1);
  CHECK(verify_unit(c, v2));
  CHECK(v2.residue() == GFPoly::monomial(c.params()->residue_ring, Monomial{{3}}, GFElement::one(c.field())));
  // v_3 is not in m here: its residue is u^7. Oracle: t1, g1t1 -> u-bar, so the
  // residue coefficient is the number of mod-2 terms of v_3 in R_2<1>, mod 2.
  CHECK(v3.residue() == GFPoly::monomial(c.params()->residue_ring, Monomial{{7}}, GFElement::one(c.field())));
  CHECK(reduce_mod2(c.rn(3).v()[3]).terms().size() % 2 == 1);
  CHECK(reduce_mod2(c.rn(2).v()[1]).terms().size() % 2 == 0);
  // the level-1 generator t_2^{C_2} specializes to a unit, whichever route builds it
  const RnContext& R = c.rn(2);
  CHECK(verify_unit(c, lt_specialize(c, R.t_level(1)[1])));
  CHECK(lt_specialize(c, R.t_level(1)[1]) == lt_specialize(c, R.t_level_via_logs(1)[1]));
}

TEST_CASE("m = I_h at h = 2 by explicit elimination") {
  // w = v_1 u^{-1} = c0 + tau (c1 + S); then tau = 2a + b w with b = (c1 + S)^{-1}
  LTContext c(2, 1);
  LTElement w = v_in_lt(c, 1) * c.u(-1);
  REQUIRE(w.poly().constant_term());
  WittElement c0 = *w.poly().constant_term();
  REQUIRE(c0.valuation() >= 1);
  LTElement rest = w - c.constant(c0);
  std::vector<WPoly::Term> q;
  for (const auto& [mono, x] : rest.poly().terms()) {
    REQUIRE(mono[0] >= 1);
    Monomial d = mono;
    --d[0];
    q.emplace_back(d, x);
  }
  LTElement unit = c.from_poly(WPoly::from_terms(c.ring(), q));
  REQUIRE(verify_unit(c, unit));
  LTElement b = unit.inverse();
  LTElement a = -(b * c.constant(c0.shifted_down(1)));
  CHECK(c.from_int(2) * a + b * w == c.tau(1));
}

TEST_CASE("cotangent rank, height and D factors on the three scenarios") {
  for (auto [n, m, d] : std::vector<std::tuple<int, int, int>>{{2, 1, 1}, {2, 2, 2}, {3, 1, 1}}) {
    LTContext c(n, m, d);
    CAPTURE(n);
    CAPTURE(m);
    auto cm = cotangent_matrix(c);
    CHECK(cm.rank == c.h());
    CHECK(cm.rows.size() == static_cast<std::size_t>(c.h()));
    CHECK(cotangent_check(c).verified);
    auto rh = residue_height_raw(c);
    CHECK(rh.height == c.h());
    CHECK(rh.leading.terms().size() == 1);
    CHECK(rh.leading.terms().front().first[0] == (1 << c.h()) - 1);
    CHECK(residue_height(c).verified);
    for (const auto& f : d_factors_raw(c)) CHECK(f.unit);
    CHECK(d_factors(c).verified);
    CHECK(two_in_maximal_ideal(c).verified);
  }
  CHECK(rank_over_field({}) == 0);
  auto f4 = FiniteFieldSpec::standard(2);
  GFElement o = GFElement::one(f4), w = GFElement::generator(f4), z = GFElement::zero(f4);
  CHECK(rank_over_field({{o, w}, {w, w * w}}) == 1);
  CHECK(rank_over_field({{o, w}, {w, o}}) == 2);
  CHECK(rank_over_field({{z, z}}) == 0);
}

TEST_CASE("fixed subring") {
  auto r1 = fixed_subring_presentation(LTContext(2, 2, 1));
  CHECK(r1.verified);
  CHECK(r1.details["alpha"] == 1);
  CHECK(r1.details["monomials_fixed"] == r1.details["monomials_checked"]);
  LTContext c(2, 2, 2);
  auto r2 = fixed_subring_presentation(c);
  CHECK(r2.verified);
  CHECK(r2.details["alpha"] == 3);
  GFElement w = GFElement::generator(c.field());
  CHECK_FALSE(lt_zeta(c, w, c.u()) == c.u());
  CHECK(lt_zeta(c, w, c.u(3)) == c.u(3));
}

TEST_CASE("action suite") {
  for (auto [n, m, d] : std::vector<std::tuple<int, int, int>>{{1, 2, 2}, {2, 1, 1}, {2, 2, 2}, {3, 1, 1}}) {
    auto r = action_suite(LTContext(n, m, d), 20, 7);
    CAPTURE(r.details.dump());
    CHECK(r.verified);
  }
}
