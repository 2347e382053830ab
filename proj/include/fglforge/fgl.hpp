#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fglforge/series.hpp"

namespace fglforge {

enum class Provenance { UniversalAraki, Conjugated, Specialized, Residue, FromLog, Explicit };
const char* provenance_name(Provenance p);

template <class C>
struct FGL {
  Series2<C> F;
  Provenance provenance = Provenance::Explicit;

  const RingPtr& ring() const { return F.ring(); }
  int cutoff() const { return F.cutoff(); }
  // the polynomial 1, read off the x-coefficient
  const Polynomial<C>& one() const { return F.at({1, 0}); }
  Series1<C> x() const { return Series1<C>::monomial(ring(), cutoff(), one(), 0, 1); }
};

template <class C>
struct StrictIso {
  Series1<C> psi;
  std::shared_ptr<const FGL<C>> source, target;
};

// ----------------------------------------------------------------- axioms

template <class C>
bool check_unit_axiom(const FGL<C>& f) {
  const auto& F = f.F;
  const int X = F.cutoff();
  if (!F.at({0, 0}).is_zero()) return false;
  for (int a = 1; a <= X; ++a) {
    const auto& ca = F.at({a, 0});
    const auto& cb = F.at({0, a});
    if (a == 1) {
      if (!(ca == f.one()) || !(cb == f.one())) return false;
    } else if (!ca.is_zero() || !cb.is_zero()) {
      return false;
    }
  }
  return true;
}

template <class C>
bool check_commutativity(const FGL<C>& f) {
  const int X = f.cutoff();
  for (int a = 0; a <= X; ++a)
    for (int b = 0; a + b <= X; ++b)
      if (!(f.F.at({a, b}) == f.F.at({b, a}))) return false;
  return true;
}

// F(F(x,y),z) = F(x,F(y,z)) to cutoff, compared coefficient by coefficient
// through the powers P_a = F(x,y)^a.
template <class C>
bool check_associativity(const FGL<C>& f) {
  const auto& F = f.F;
  const int X = F.cutoff();
  std::vector<Series2<C>> P;
  P.emplace_back(F.ring(), X);
  for (int a = 1; a <= X; ++a) P.push_back(a == 1 ? F : P.back() * F);
  for (int i = 0; i <= X; ++i)
    for (int j = 0; i + j <= X; ++j)
      for (int l = 0; i + j + l <= X; ++l) {
        if (i + j + l == 0) continue;
        Polynomial<C> lhs(F.ring()), rhs(F.ring());
        // lhs: sum_a c_{a,l} [P_a]_{i,j}; the a = 0 term is c_{0,l} when i = j = 0
        for (int a = 0; a + l <= X; ++a) {
          const auto& c = F.at({a, l});
          if (c.is_zero()) continue;
          if (a == 0) {
            if (i == 0 && j == 0) lhs += c;
          } else if (i + j >= a) {
            const auto& p = P[a].at({i, j});
            if (!p.is_zero()) lhs += c * p;
          }
        }
        for (int b = 0; i + b <= X; ++b) {
          const auto& c = F.at({i, b});
          if (c.is_zero()) continue;
          if (b == 0) {
            if (j == 0 && l == 0) rhs += c;
          } else if (j + l >= b) {
            const auto& p = P[b].at({j, l});
            if (!p.is_zero()) rhs += c * p;
          }
        }
        if (!(lhs == rhs)) return false;
      }
  return true;
}

template <class C>
bool check_axioms(const FGL<C>& f) {
  return check_unit_axiom(f) && check_commutativity(f) && check_associativity(f);
}

// coefficient of x^a y^b has degree var_degree * (1 - a - b)
template <class C>
bool check_homogeneous(const FGL<C>& f, int var_degree = -2) {
  const auto& F = f.F;
  for (std::size_t i = 0; i < F.entries(); ++i) {
    const auto& p = F[i];
    if (p.is_zero()) continue;
    auto d = p.homogeneous_degree();
    if (!d || *d != var_degree * (1 - F.total(i))) return false;
  }
  return true;
}

template <class C>
bool check_homogeneous(const Series1<C>& s, int var_degree = -2) {
  for (int e = 0; e <= s.cutoff(); ++e) {
    const auto& p = s.coeff(e);
    if (p.is_zero()) continue;
    auto d = p.homogeneous_degree();
    if (!d || *d != var_degree * (1 - e)) return false;
  }
  return true;
}

// ----------------------------------------------------------------- series

template <class C>
Series1<C> two_series(const FGL<C>& f) {
  Series1<C> s(f.ring(), f.cutoff());
  for (std::size_t i = 0; i < f.F.entries(); ++i)
    if (!f.F[i].is_zero()) s.coeff(f.F.total(i)) += f.F[i];
  return s;
}

// G(A, c x^e): only powers of A are needed
template <class C>
Series1<C> add_monomial(const FGL<C>& G, const Series1<C>& A, const Polynomial<C>& c, int e) {
  const int X = A.cutoff();
  std::vector<Series1<C>> Ap;
  Ap.emplace_back(A.ring(), X);
  for (int a = 1; a <= X; ++a) Ap.push_back(a == 1 ? A : Ap.back() * A);
  Series1<C> acc(A.ring(), X);
  Polynomial<C> cb = G.one();
  for (int b = 0; b * e <= X; ++b) {
    if (b > 0) cb = cb * c;
    if (cb.is_zero()) break;
    Series1<C> inner(A.ring(), X);  // sum_a c_ab A^a
    for (int a = 0; a + b <= X && a <= X; ++a) {
      const auto& cab = G.F.at({a, b});
      if (cab.is_zero()) continue;
      if (a == 0) inner.coeff(0) += cab;
      else inner = inner + Ap[a].scaled(cab);
    }
    acc = acc + inner.scaled(cb).shifted(0, b * e);
  }
  return acc;
}

// Left-iterated formal sum of c_i x^{e_i}, in increasing exponent order unless
// keep_order is set.
template <class C>
Series1<C> formal_sum(const FGL<C>& G, std::vector<std::pair<Polynomial<C>, int>> terms, bool keep_order = false) {
  const int X = G.cutoff();
  if (!keep_order)
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  Series1<C> acc(G.ring(), X);
  bool first = true;
  for (const auto& [c, e] : terms) {
    if (e < 1) throw Error(ErrorCode::InvalidArgument, "formal sum exponents must be >= 1");
    if (first) {
      acc = Series1<C>::monomial(G.ring(), X, c, 0, e);
      first = false;
    } else {
      acc = add_monomial(G, acc, c, e);
    }
  }
  return acc;
}

// iota with F(x, iota(x)) = 0
template <class C>
Series1<C> formal_inverse(const FGL<C>& f) {
  const int X = f.cutoff();
  Series1<C> inv = -f.x();
  const Series1<C> x = f.x();
  for (int e = 2; e <= X; ++e) {
    Series1<C> val = evaluate(f.F, x.truncated(e), inv.truncated(e));
    inv.coeff(e) = -val.coeff(e);
  }
  return inv;
}

template <class C, class Map>
FGL<C> conjugate_fgl(const FGL<C>& f, Map map, RingPtr target = nullptr) {
  FGL<C> g;
  g.F = f.F.map_coefficients(map, target ? target : f.ring());
  g.provenance = Provenance::Conjugated;
  return g;
}

template <class C>
StrictIso<C> strict_iso_from_t(const std::vector<Polynomial<C>>& t, std::shared_ptr<const FGL<C>> source,
                               std::shared_ptr<const FGL<C>> G) {
  const int X = G->cutoff();
  std::vector<std::pair<Polynomial<C>, int>> terms{{G->one(), 1}};
  for (std::size_t i = 0; i < t.size(); ++i) {
    int e = 1 << (i + 1);
    if (e > X) break;
    terms.emplace_back(t[i], e);
  }
  return {formal_sum(*G, terms), std::move(source), std::move(G)};
}

// 2-typical coordinates t_1, t_2, ... of a strict isomorphism into the
// 2-typical FGL G: psi = x +_G t_1 x^2 +_G t_2 x^4 ...
template <class C>
std::vector<Polynomial<C>> t_from_series(const Series1<C>& psi, const FGL<C>& G) {
  const int X = G.cutoff();
  if (!(psi.coeff(1) == G.one()) || !psi.coeff(0).is_zero())
    throw Error(ErrorCode::InvalidArgument, "not a strict isomorphism");
  std::vector<Polynomial<C>> t;
  Series1<C> S = G.x();
  for (int r = 0; (2 << r) <= X; ++r) {
    Series1<C> R = psi - S;
    for (int e = (1 << r) + 1; e < (2 << r); ++e)
      if (!R.coeff(e).is_zero())
        throw Error(ErrorCode::NonTwoTypicalIso, "residual at non-2-power exponent " + std::to_string(e));
    Polynomial<C> tr = R.coeff(2 << r);
    t.push_back(tr);
    if (!tr.is_zero()) S = add_monomial(G, S, tr, 2 << r);
  }
  Series1<C> R = psi - S;
  for (int e = 1; e <= X; ++e)
    if (!R.coeff(e).is_zero())
      throw Error(ErrorCode::NonTwoTypicalIso, "residual at exponent " + std::to_string(e) + " after extraction");
  return t;
}

template <class C>
std::vector<Polynomial<C>> t_from_strict_iso(const StrictIso<C>& iso) {
  return t_from_series(iso.psi, *iso.target);
}

template <class C>
bool same_fgl(const FGL<C>& a, const FGL<C>& b) {
  return &a == &b || a.F == b.F;
}

template <class C>
StrictIso<C> compose_iso(const StrictIso<C>& psi2, const StrictIso<C>& psi1) {
  if (!psi1.target || !psi2.source || !same_fgl(*psi1.target, *psi2.source))
    throw Error(ErrorCode::SourceTargetMismatch, "target of the first isomorphism is not the source of the second");
  return {compose(psi2.psi, psi1.psi), psi1.source, psi2.target};
}

// F~(x,y) = u F(u^{-1}x, u^{-1}y): c_ab -> c_ab u^{1-a-b}; homogenize inverts.
template <class C>
FGL<C> rescale_by_unit(const FGL<C>& f, int u_index, int sign) {
  if (u_index < 0 || u_index >= f.ring()->nvars() || !f.ring()->laurent(u_index) ||
      f.ring()->degree(u_index) != 2)
    throw Error(ErrorCode::NonUnit, "scaling variable is not an invertible degree-2 generator");
  FGL<C> g = f;
  for (std::size_t i = 0; i < g.F.entries(); ++i) {
    if (g.F[i].is_zero()) continue;
    Monomial mu;
    mu[u_index] = static_cast<std::int16_t>(sign * (1 - g.F.total(i)));
    g.F[i] = g.F[i].times_monomial(mu);
  }
  return g;
}

template <class C>
FGL<C> dehomogenize(const FGL<C>& f, int u_index) { return rescale_by_unit(f, u_index, 1); }
template <class C>
FGL<C> homogenize(const FGL<C>& f, int u_index) { return rescale_by_unit(f, u_index, -1); }

// Height of an FGL over a graded field of characteristic 2: first nonzero
// coefficient of [2](x), which must sit at a 2-power exponent.
template <class C>
std::pair<int, Polynomial<C>> height_of_residue_fgl(const FGL<C>& f) {
  Series1<C> s = two_series(f);
  for (int e = 1; e <= s.cutoff(); ++e) {
    if (s.coeff(e).is_zero()) continue;
    if (e & (e - 1))
      throw Error(ErrorCode::ConsistencyFailure, "first nonzero term of [2](x) at non-2-power " + std::to_string(e));
    int h = 0;
    while ((1 << h) < e) ++h;
    return {h, s.coeff(e)};
  }
  throw Error(ErrorCode::HeightExceedsCutoff, "[2](x) vanishes to cutoff " + std::to_string(s.cutoff()));
}

// ----------------------------------------------------------------- logarithms (over Q)

using QSeries1 = Series1<Rational>;
using QSeries2 = Series2<Rational>;
using QFGL = FGL<Rational>;

// l_1..l_k over Q[v_1..v_k] from 2 l_k = 2^{2^k} l_k + sum l_{k-j} v_j^{2^{k-j}} + v_k.
// Index 0 holds l_0 = 1.
std::vector<QPoly> log_from_v(const RingPtr& bp_ring, int k_max);
// Inverse: v_k = (2 - 2^{2^k}) l_k - sum_{j<k} l_{k-j} v_j^{2^{k-j}}. Input index 0 is l_0 = 1.
std::vector<QPoly> v_from_log(const std::vector<QPoly>& ell, bool require_integral);
// sum_i l_i x^{2^i}, 2^i <= X
QSeries1 log_series(const std::vector<QPoly>& ell, const RingPtr& ring, int X);
// compositional inverse of a series with leading coefficient 1
QSeries1 series_exp(const QSeries1& log);
// F(x,y) = exp(log x + log y)
QFGL fgl_from_log_series(const QSeries1& log, bool require_integral);
QFGL fgl_from_log(const std::vector<QPoly>& ell, const RingPtr& ring, int X, bool require_integral);
bool all_integral(const QPoly& p);
bool all_integral(const QSeries2& s);

// The universal 2-typical FGL over Z_(2)[v_1..v_k] with its log data.
struct UniversalFGL {
  RingPtr ring;
  int k_max = 0;
  std::vector<QPoly> ell;  // l_0..l_k
  std::vector<QPoly> v;    // v_1..v_k as variables (index 0 unused)
  QFGL fgl;
};
std::shared_ptr<const UniversalFGL> universal_fgl(int k_max, int X);

}  // namespace fglforge
