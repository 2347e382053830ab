#include "fglforge/fgl.hpp"

#include <map>
#include <mutex>

namespace fglforge {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::UniversalAraki: return "universal-Araki";
    case Provenance::Conjugated: return "conjugated";
    case Provenance::Specialized: return "specialized";
    case Provenance::Residue: return "residue";
    case Provenance::FromLog: return "from-log";
    case Provenance::Explicit: return "explicit";
  }
  return "?";
}

namespace {

Rational pow2(int e) { return Rational(mpq_class(mpz_class(1) << e)); }

QPoly one_poly(const RingPtr& r) { return QPoly::constant(r, Rational(1)); }

}  // namespace

std::vector<QPoly> log_from_v(const RingPtr& bp, int k_max) {
  if (k_max < 0 || k_max > 5) throw Error(ErrorCode::InvalidArgument, "k_max must be in 0..5");
  std::vector<QPoly> ell{one_poly(bp)};
  std::vector<QPoly> v(k_max + 1, QPoly(bp));
  for (int j = 1; j <= k_max && j <= bp->levels(); ++j)
    v[j] = QPoly::variable(bp, bp->index_or_throw({VarKind::V, j, 0}), Rational(1));
  for (int k = 1; k <= k_max; ++k) {
    QPoly s = v[k];
    for (int j = 1; j < k; ++j)
      if (!v[j].is_zero()) s += ell[k - j] * v[j].pow(1u << (k - j), Rational(1));
    ell.push_back(divide_exact(s, Rational(2) - pow2(1 << k)));
  }
  return ell;
}

std::vector<QPoly> v_from_log(const std::vector<QPoly>& ell, bool require_integral) {
  std::vector<QPoly> v(1, QPoly());
  for (std::size_t k = 1; k < ell.size(); ++k) {
    QPoly s = ell[k].scaled(Rational(2) - pow2(1 << k));
    for (std::size_t j = 1; j < k; ++j) s -= ell[k - j] * v[j].pow(1u << (k - j), Rational(1));
    if (require_integral && !all_integral(s))
      throw Error(ErrorCode::NonIntegralResult, "v_" + std::to_string(k) + " has an even denominator");
    v.push_back(std::move(s));
  }
  return v;
}

QSeries1 log_series(const std::vector<QPoly>& ell, const RingPtr& ring, int X) {
  QSeries1 s(ring, X);
  for (std::size_t i = 0; (1 << i) <= X; ++i) {
    if (i >= ell.size()) throw Error(ErrorCode::InvalidArgument, "log coefficients missing below the cutoff");
    s.coeff(1 << i) = ell[i].with_ring(ring);
  }
  return s;
}

QSeries1 series_exp(const QSeries1& log) {
  const int X = log.cutoff();
  if (!log.coeff(0).is_zero() || !log.coeff(1).is_homogeneous() || log.coeff(1).size() != 1 ||
      !log.coeff(1).constant_term() || !log.coeff(1).constant_term()->is_one())
    throw Error(ErrorCode::InvalidArgument, "series_exp needs leading coefficient 1");
  QSeries1 g = QSeries1::monomial(log.ring(), X, log.coeff(1), 0, 1);
  for (int e = 2; e <= X; ++e) {
    QSeries1 val = compose(log.truncated(e), g.truncated(e));
    g.coeff(e) = -val.coeff(e);
  }
  return g;
}

bool all_integral(const QPoly& p) {
  for (const auto& t : p.terms())
    if (!t.second.denominator_odd()) return false;
  return true;
}

bool all_integral(const QSeries2& s) {
  for (std::size_t i = 0; i < s.entries(); ++i)
    if (!all_integral(s[i])) return false;
  return true;
}

QFGL fgl_from_log_series(const QSeries1& log, bool require_integral) {
  const int X = log.cutoff();
  QSeries1 E = series_exp(log);
  QSeries2 S(log.ring(), X);
  for (int e = 1; e <= X; ++e) {
    S.at({e, 0}) = log.coeff(e);
    S.at({0, e}) = log.coeff(e);
  }
  QFGL f;
  f.F = compose(E, S);
  f.provenance = Provenance::FromLog;
  if (require_integral && !all_integral(f.F))
    throw Error(ErrorCode::NonIntegralResult, "FGL coefficient with even denominator");
  return f;
}

QFGL fgl_from_log(const std::vector<QPoly>& ell, const RingPtr& ring, int X, bool require_integral) {
  return fgl_from_log_series(log_series(ell, ring, X), require_integral);
}

std::shared_ptr<const UniversalFGL> universal_fgl(int k_max, int X) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const UniversalFGL>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({k_max, X});
    if (it != cache.end()) return it->second;
  }
  auto u = std::make_shared<UniversalFGL>();
  u->ring = make_bp_ring(k_max);
  u->k_max = k_max;
  int levels = 0;
  while ((2 << levels) <= X) ++levels;
  // v_j for j > k_max are set to zero; the log still needs every l_i with 2^i <= X
  u->ell = log_from_v(u->ring, std::max(levels, k_max));
  u->v.assign(k_max + 1, QPoly(u->ring));
  for (int j = 1; j <= k_max; ++j) u->v[j] = QPoly::variable(u->ring, j - 1, Rational(1));
  u->fgl = fgl_from_log(u->ell, u->ring, X, true);
  u->fgl.provenance = Provenance::UniversalAraki;
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(k_max, X), u).first->second;
}

}  // namespace fglforge
