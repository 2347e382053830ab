#include <random>

#include "doctest.h"
#include "fglforge/fgl.hpp"

using namespace fglforge;

namespace {

// ring Q[u] with one variable of degree 2 (u used as a degree -2 class via the
// generic BP ring: v1 has degree 2)
RingPtr one_var_ring() { return make_bp_ring(1); }

QPoly cst(const RingPtr& r, long n, long d = 1) { return QPoly::constant(r, Rational(n, d)); }

QFGL explicit_fgl(const RingPtr& r, int X, const QPoly& a) {
  QFGL f;
  f.F = QSeries2(r, X);
  f.F.at({1, 0}) = cst(r, 1);
  f.F.at({0, 1}) = cst(r, 1);
  f.F.at({1, 1}) = a;
  return f;
}

mpz_class binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

TEST_CASE("series_exp of x + x^2 gives signed Catalan numbers") {
  auto r = one_var_ring();
  const int X = 10;
  QSeries1 log(r, X);
  log.coeff(1) = cst(r, 1);
  log.coeff(2) = cst(r, 1);
  QSeries1 e = series_exp(log);
  for (int n = 1; n <= X; ++n) {
    // Catalan C_{n-1} = binom(2n-2, n-1)/n, sign (-1)^{n-1}
    mpq_class c(binom(2 * n - 2, n - 1), n);
    c.canonicalize();
    if ((n - 1) % 2) c = -c;
    CHECK(e.coeff(n) == QPoly::constant(r, Rational(c)));
  }
  CHECK(compose(log, e) == QSeries1::monomial(r, X, cst(r, 1), 0, 1));
  CHECK(compose(e, log) == QSeries1::monomial(r, X, cst(r, 1), 0, 1));
  QSeries1 id = QSeries1::monomial(r, X, cst(r, 1), 0, 1);
  CHECK(series_exp(id) == id);
}

TEST_CASE("log_from_v small cases") {
  auto B = make_bp_ring(3);
  auto ell = log_from_v(B, 3);
  QPoly v1 = QPoly::variable(B, 0, Rational(1)), v2 = QPoly::variable(B, 1, Rational(1));
  CHECK(ell[0] == cst(B, 1));
  CHECK(ell[1] == v1.scaled(Rational(-1, 2)));
  // hand solution of 2 l2 = 16 l2 + l1 v1^2 + v2
  CHECK(ell[2] == (v1 * v1 * v1).scaled(Rational(1, 28)) - v2.scaled(Rational(1, 14)));
  for (int k = 1; k <= 3; ++k) {
    QPoly s = ell[k].scaled(Rational(1 << k));
    CHECK(all_integral(s));
    CHECK_FALSE(reduce_mod2(s).is_zero());
    CHECK(*ell[k].homogeneous_degree() == generator_degree(k));
  }
  // 4 l2 = v1^3 mod 2
  CHECK(reduce_mod2(ell[2].scaled(Rational(4))) == reduce_mod2(v1 * v1 * v1));
  auto v = v_from_log(ell, true);
  for (int k = 1; k <= 3; ++k) CHECK(v[k] == QPoly::variable(B, k - 1, Rational(1)));
  std::vector<QPoly> zero(4, QPoly(B));
  zero[0] = cst(B, 1);
  for (const auto& x : v_from_log(zero, true)) CHECK(x.is_zero());
}

TEST_CASE("fgl_from_log basics") {
  auto B = make_bp_ring(2);
  std::vector<QPoly> ell{cst(B, 1), QPoly(B), QPoly(B)};
  QFGL add = fgl_from_log(ell, B, 4, true);
  CHECK(add.F == explicit_fgl(B, 4, QPoly(B)).F);
  CHECK(two_series(add) == QSeries1::monomial(B, 4, cst(B, 2), 0, 1));
  CHECK(formal_inverse(add) == -add.x());
  auto ell2 = log_from_v(B, 2);
  QFGL f = fgl_from_log(ell2, B, 4, true);
  QPoly v1 = QPoly::variable(B, 0, Rational(1));
  CHECK(f.F.at({1, 1}) == v1);
  CHECK(f.F.at({2, 0}).is_zero());
  QSeries1 two = two_series(f);
  CHECK(two.coeff(1) == cst(B, 2));
  CHECK(two.coeff(2) == v1);
}

TEST_CASE("multiplicative-type law x + y + a xy") {
  auto r = one_var_ring();
  QPoly a = QPoly::variable(r, 0, Rational(1));
  QFGL f = explicit_fgl(r, 8, a);
  CHECK(check_axioms(f));
  QSeries1 two = two_series(f);
  CHECK(two.coeff(1) == cst(r, 2));
  CHECK(two.coeff(2) == a);
  QSeries1 inv = formal_inverse(f);
  // oracle: -x/(1 + a x) = sum (-1)^e a^{e-1} x^e
  for (int e = 1; e <= 8; ++e) CHECK(inv.coeff(e) == a.pow(e - 1, Rational(1)).scaled(Rational(e % 2 ? -1 : 1)));
  CHECK(evaluate(f.F, f.x(), inv).is_zero());
  // conjugation sign rule: c*F = -F(-x,-y) on a homogeneous law
  auto c = [](const QPoly& p) {
    return p.map_terms([&](const Monomial& m, const Rational& x) -> std::optional<QPoly::Term> {
      int deg = p.ring()->degree_of(m);
      return QPoly::Term{m, (deg / 2) % 2 ? -x : x};
    });
  };
  QFGL cf = conjugate_fgl(f, c);
  QSeries1 mx = -f.x();
  QSeries2 X1 = QSeries2::monomial(r, 8, cst(r, -1), 0, 1), Y1 = QSeries2::monomial(r, 8, cst(r, -1), 1, 1);
  CHECK(cf.F == -evaluate(f.F, X1, Y1));
  QFGL back = conjugate_fgl(cf, c);
  CHECK(back.F == f.F);
}

TEST_CASE("universal Araki FGL: integrality, axioms, and [2] = Araki sum (k <= 3, X = 8)") {
  auto U = universal_fgl(3, 8);
  const QFGL& F = U->fgl;
  CHECK(all_integral(F.F));
  CHECK(check_axioms(F));
  CHECK(check_homogeneous(F));
  std::vector<std::pair<QPoly, int>> terms{{F.one().scaled(Rational(2)), 1}};
  for (int i = 1; i <= 3; ++i) terms.emplace_back(U->v[i], 1 << i);
  CHECK(two_series(F) == formal_sum(F, terms));
  // log/exp round trip
  QSeries1 L = log_series(U->ell, U->ring, 8);
  CHECK(compose(L, series_exp(L)) == F.x());
  // [-1] by two routes
  QSeries1 inv = formal_inverse(F);
  QSeries1 inv_via_log = compose(series_exp(L), -L);
  CHECK(inv == inv_via_log);
}

TEST_CASE("formal sums are order independent and strict isos round trip") {
  auto U = universal_fgl(2, 8);
  auto G = std::make_shared<const QFGL>(U->fgl);
  const auto& R = U->ring;
  QPoly v1 = U->v[1], v2 = U->v[2];
  std::vector<std::pair<QPoly, int>> terms{{G->one(), 1}, {v1.scaled(Rational(3)), 2}, {v2, 4}};
  QSeries1 s1 = formal_sum(*G, terms, true);
  std::vector<std::pair<QPoly, int>> rev(terms.rbegin(), terms.rend());
  CHECK(formal_sum(*G, rev, true) == s1);
  std::vector<std::pair<QPoly, int>> mid{terms[1], terms[0], terms[2]};
  CHECK(formal_sum(*G, mid, true) == s1);
  // identity iso
  auto id = strict_iso_from_t(std::vector<QPoly>{QPoly(R), QPoly(R)}, G, G);
  CHECK(id.psi == G->x());
  for (const auto& t : t_from_strict_iso(id)) CHECK(t.is_zero());
  // random t of the right degrees
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<QPoly> t{v1.scaled(Rational(c(rng))),
                         (v1 * v1 * v1).scaled(Rational(c(rng))) + v2.scaled(Rational(c(rng))),
                         QPoly(R)};
    auto iso = strict_iso_from_t(t, G, G);
    auto back = t_from_strict_iso(iso);
    REQUIRE(back.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(back[i] == t[i]);
  }
  // additive target: plain sum
  std::vector<QPoly> ell{QPoly::constant(R, Rational(1)), QPoly(R), QPoly(R), QPoly(R)};
  auto A = std::make_shared<const QFGL>(fgl_from_log(ell, R, 8, true));
  auto iso = strict_iso_from_t(std::vector<QPoly>{v1, v2}, A, A);
  QSeries1 expect = A->x() + QSeries1::monomial(R, 8, v1, 0, 2) + QSeries1::monomial(R, 8, v2, 0, 4);
  CHECK(iso.psi == expect);
  // a non-2-typical series is rejected
  QSeries1 bad = A->x() + QSeries1::monomial(R, 8, v1 * v1, 0, 3);
  CHECK_THROWS_AS(t_from_series(bad, *A), Error);
  // composition checks
  CHECK(compose_iso(id, id).psi == id.psi);
  CHECK_THROWS_AS(compose_iso(id, StrictIso<Rational>{A->x(), A, A}), Error);
}

TEST_CASE("homogenize and dehomogenize") {
  auto R = std::make_shared<const RingSpec>(Ambient::Residue, 0, 0, std::vector<Variable>{{VarKind::U, 0, 0}},
                                            std::vector<int>{2}, std::vector<bool>{true});
  Monomial u1;
  u1[0] = 1;
  QPoly a2 = QPoly::monomial(R, u1, Rational(1));
  QFGL f = explicit_fgl(R, 6, a2);
  CHECK(check_homogeneous(f));
  QFGL g = dehomogenize(f, 0);
  CHECK(g.F.at({1, 1}) == QPoly::constant(R, Rational(1)));
  CHECK(check_homogeneous(g, 0));
  CHECK(homogenize(g, 0).F == f.F);
  auto B = make_bp_ring(1);
  CHECK_THROWS_AS(dehomogenize(explicit_fgl(B, 4, QPoly(B)), 0), Error);
}

TEST_CASE("height over a graded field") {
  auto f2 = FiniteFieldSpec::standard(1);
  auto K = make_residue_ring();
  GFElement one = GFElement::one(f2);
  FGL<GFElement> add;
  add.F = Series2<GFElement>(K, 8);
  add.F.at({1, 0}) = GFPoly::constant(K, one);
  add.F.at({0, 1}) = GFPoly::constant(K, one);
  CHECK_THROWS_AS(height_of_residue_fgl(add), Error);
  FGL<GFElement> mult = add;
  mult.F.at({1, 1}) = GFPoly::variable(K, 0, one);
  auto [h, c] = height_of_residue_fgl(mult);
  CHECK(h == 1);
  CHECK(c == GFPoly::variable(K, 0, one));
}
