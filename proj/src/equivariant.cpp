#include "fglforge/equivariant.hpp"

namespace fglforge {

const char* convention_name(VConvention c) { return c == VConvention::Araki ? "araki" : "t_k^{C_2}"; }

const char* chain_convention_name(ChainConvention c) {
  switch (c) {
    case ChainConvention::MinusInverse: return "composite = -[-1]_F(x)";
    case ChainConvention::Inverse: return "composite = [-1]_F(x)";
    case ChainConvention::Neither: return "unresolved";
  }
  return "?";
}

namespace {

int floor_log2(int x) {
  int l = 0;
  while ((2 << l) <= x) ++l;
  return l;
}

Error precondition(const std::string& s) { return Error(ErrorCode::InvalidArgument, s); }

}  // namespace

RnContext::RnContext(int n, int k_max, std::optional<int> m, int cutoff) : n_(n), k_max_(k_max), m_(m) {
  if (n < 1) throw precondition("n must be >= 1");
  if (k_max < 1) throw precondition("k_max must be >= 1");
  if (m && *m < 1) throw precondition("m must be >= 1");
  X_ = cutoff ? cutoff : (1 << k_max);
  if (X_ < (1 << k_max)) throw precondition("cutoff must be at least 2^k_max");
  L_ = floor_log2(X_);
  if (L_ > 5) throw precondition("cutoff too large (levels above 5)");
  ring_ = make_rn_ring(n, L_, m);

  // l_k from the orbit sum 2 l_k = sum_{r < 2^{n-1}} gamma^r A_k,
  // A_k = sum_{j<k} gamma(l_j) t_{k-j}^{2^j}
  ell_.push_back(one());
  for (int k = 1; k <= L_; ++k) {
    QPoly A(ring_);
    for (int j = 0; j < k; ++j) {
      QPoly tk = t(k - j);
      if (tk.is_zero()) continue;
      A += gamma(ell_[j]) * tk.pow(1u << j, Rational(1));
    }
    QPoly s(ring_);
    for (int r = 0; r < ring_->orbit(); ++r) s += gamma(A, r);
    ell_.push_back(divide_exact(s, Rational(2)));
  }
  v_ = v_from_log(ell_, true);
  for (int k = 1; k <= L_; ++k) {
    auto d = v_[k].homogeneous_degree();
    if (!v_[k].is_zero() && (!d || *d != generator_degree(k)))
      throw Error(ErrorCode::ConsistencyFailure, "v_" + std::to_string(k) + " has the wrong degree");
  }
}

json RnContext::bounds() const {
  json b{{"n", n_}, {"k_max", k_max_}, {"cutoff", X_}, {"levels", L_}};
  b["m"] = m_ ? json(*m_) : json(nullptr);
  return b;
}

QPoly RnContext::t(int i, int conj) const {
  auto idx = ring_->index_of({VarKind::T, i, conj});
  if (!idx) return QPoly(ring_);
  return QPoly::variable(ring_, *idx, Rational(1));
}

std::shared_ptr<const QFGL> RnContext::fgl() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (fgl_) return fgl_;
  auto U = universal_fgl(L_, X_);
  // substitute v_i -> v_i(R_n) with a shared power cache
  std::vector<std::vector<QPoly>> pw(L_ + 1);
  auto power = [&](int i, int e) -> const QPoly& {
    auto& c = pw[i];
    if (c.empty()) c.push_back(v_[i]);
    while (static_cast<int>(c.size()) < e) c.push_back(c.back() * v_[i]);
    return c[e - 1];
  };
  auto map = [&](const QPoly& p) {
    QPoly acc(ring_);
    for (const auto& [mono, coef] : p.terms()) {
      QPoly term = QPoly::constant(ring_, coef);
      for (int i = 1; i <= L_; ++i)
        if (mono[i - 1]) term = term * power(i, mono[i - 1]);
      acc += term;
    }
    return acc;
  };
  auto f = std::make_shared<QFGL>(conjugate_fgl(U->fgl, map, ring_));
  f->provenance = Provenance::UniversalAraki;
  fgl_ = f;
  return fgl_;
}

std::shared_ptr<const QFGL> RnContext::fgl_conj(int s) const {
  const int period = 2 * ring_->orbit();
  s = ((s % period) + period) % period;
  if (s == 0) return fgl();
  auto base = fgl();
  std::lock_guard<std::mutex> lock(mu_);
  auto it = conj_.find(s);
  if (it != conj_.end()) return it->second;
  auto f = std::make_shared<QFGL>(conjugate_fgl(*base, [&](const QPoly& p) { return gamma_act(p, s); }));
  conj_[s] = f;
  return f;
}

StrictIso<Rational> RnContext::psi(int i) const {
  std::optional<StrictIso<Rational>> base;
  {
    std::lock_guard<std::mutex> lock(mu_);
    base = psi0_;
  }
  if (!base) {
    std::vector<QPoly> gens;
    for (int k = 1; k <= L_; ++k) gens.push_back(t(k));
    base = strict_iso_from_t(gens, fgl(), fgl_conj(1));
    std::lock_guard<std::mutex> lock(mu_);
    psi0_ = base;
  }
  if (i == 0) return *base;
  StrictIso<Rational> r;
  r.psi = base->psi.map_coefficients([&](const QPoly& p) { return gamma_act(p, i); }, ring_);
  r.source = fgl_conj(i);
  r.target = fgl_conj(i + 1);
  return r;
}

StrictIso<Rational> RnContext::chain(int s) const {
  if (s < 1) throw precondition("chain length must be >= 1");
  StrictIso<Rational> iso = psi(0);
  for (int i = 1; i < s; ++i) iso = compose_iso(psi(i), iso);
  return iso;
}

const std::vector<QPoly>& RnContext::t_level(int r) const {
  if (r < 1 || r > n_) throw precondition("level r must satisfy 1 <= r <= n");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tlevel_.find(r);
    if (it != tlevel_.end()) return it->second;
  }
  std::vector<QPoly> out;
  if (r == n_) {
    for (int k = 1; k <= L_; ++k) out.push_back(t(k));
  } else {
    StrictIso<Rational> iso = chain(1 << (n_ - r));
    out = t_from_strict_iso(iso);
    out.resize(L_, QPoly(ring_));
    for (int k = 1; k <= L_; ++k) {
      auto d = out[k - 1].homogeneous_degree();
      if (!out[k - 1].is_zero() && (!d || *d != generator_degree(k)))
        throw Error(ErrorCode::ConsistencyFailure, "t-level generator of the wrong degree");
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  return tlevel_.emplace(r, std::move(out)).first->second;
}

std::vector<QPoly> RnContext::t_level_via_logs(int r) const {
  if (r < 1 || r > n_) throw precondition("level r must satisfy 1 <= r <= n");
  const int s = 1 << (n_ - r);
  std::vector<QPoly> gl;
  for (const auto& l : ell_) gl.push_back(gamma(l, s));
  std::vector<QPoly> out;
  for (int k = 1; k <= L_; ++k) {
    QPoly tk = ell_[k] - gl[k];
    for (int j = 1; j < k; ++j) tk -= gl[j] * out[k - j - 1].pow(1u << j, Rational(1));
    if (!all_integral(tk)) throw Error(ErrorCode::NonIntegralResult, "log-route t generator not integral");
    out.push_back(std::move(tk));
  }
  return out;
}

std::vector<QPoly> RnContext::v_generators(VConvention c) const {
  if (c == VConvention::TC2) return t_level(1);
  return std::vector<QPoly>(v_.begin() + 1, v_.end());
}

std::shared_ptr<const GroebnerBasis> RnContext::ideal_basis(int k, VConvention c, int D) const {
  auto key = std::make_pair(k, static_cast<int>(c));
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ideals_.find(key);
    if (it != ideals_.end() && it->second->degree_bound() >= D) return it->second;
  }
  auto gens_q = v_generators(c);
  std::vector<F2Poly> gens;
  for (int j = 1; j < k && j <= static_cast<int>(gens_q.size()); ++j) gens.push_back(reduce_mod2(gens_q[j - 1]));
  auto gb = std::make_shared<const GroebnerBasis>(GroebnerBasis::compute(ring_, gens, D));
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = ideals_[key];
  if (!slot || slot->degree_bound() < D) slot = gb;
  return slot;
}

F2Poly RnContext::normal_form_Ik(const QPoly& p, int k, VConvention c) const {
  if (k < 1) throw precondition("ideal index k must be >= 1");
  if (k - 1 > L_) throw precondition("ideal needs v-images beyond the computed levels");
  F2Poly q = reduce_mod2(p.with_ring(ring_));
  if (q.is_zero() || k == 1) return q;
  if (!q.is_homogeneous()) throw precondition("ideal membership needs a homogeneous element");
  return ideal_basis(k, c, *q.homogeneous_degree())->normal_form(q);
}

bool RnContext::contains_Ik(const QPoly& p, int k, VConvention c) const { return normal_form_Ik(p, k, c).is_zero(); }

QPoly quotient_map(const QPoly& p, const RnContext& target) {
  const RingPtr& T = target.ring();
  std::vector<QPoly::Term> out;
  for (const auto& [mono, c] : p.terms()) {
    Monomial mm;
    bool killed = false;
    for (int v = 0; v < p.ring()->nvars() && !killed; ++v) {
      if (!mono[v]) continue;
      auto idx = T->index_of(p.ring()->var(v));
      if (!idx) killed = true;
      else mm[*idx] = mono[v];
    }
    if (!killed) out.emplace_back(mm, c);
  }
  return QPoly::from_terms(T, std::move(out));
}

RnContext quotient_to_m(const RnContext& ctx, int m) { return RnContext(ctx.n(), ctx.k_max(), m, ctx.cutoff()); }

QPoly include_lower(const QPoly& p, const RnContext& lower, const RnContext& upper) {
  if (upper.n() != lower.n() + 1) throw precondition("inclusion goes from R_{n-1} to R_n");
  const auto& images = upper.t_level(lower.n());
  const RingSpec& R = *lower.ring();
  std::vector<std::optional<QPoly>> img(R.nvars());
  for (int v = 0; v < R.nvars(); ++v) {
    const Variable& x = R.var(v);
    if (x.level > static_cast<int>(images.size())) continue;
    img[v] = gamma_act(images[x.level - 1], 2 * x.conj);
  }
  auto embed = [&](const Rational& c) { return QPoly::constant(upper.ring(), c); };
  return ring_map(p, img, embed, QPoly(upper.ring()));
}

// ------------------------------------------------------------------ claims

namespace {

Report make_report(const std::string& claim, const RnContext& ctx) {
  Report r;
  r.claim = claim;
  r.params = json{{"n", ctx.n()}, {"k_max", ctx.k_max()}};
  if (ctx.m()) r.params["m"] = *ctx.m();
  r.bounds = ctx.bounds();
  return r;
}

QPoly sum_gamma_t(const RnContext& ctx, int k) {
  // t_k + gamma t_k + sum_{j=1}^{k-1} gamma(t_j) t_{k-j}^{2^j}
  QPoly s = ctx.t(k) + ctx.gamma(ctx.t(k));
  for (int j = 1; j < k; ++j) {
    QPoly tkj = ctx.t(k - j);
    if (tkj.is_zero()) continue;
    s += ctx.gamma(ctx.t(j)) * tkj.pow(1u << j, Rational(1));
  }
  return s;
}

}  // namespace

Report verify_log_denominators(const RnContext& ctx) {
  Report r = make_report("log-denominators", ctx);
  r.verified = true;
  json per = json::array();
  for (int k = 1; k <= ctx.k_max(); ++k) {
    QPoly s = ctx.ell()[k].scaled(Rational(1 << k));
    bool integral = all_integral(s);
    bool nonzero = integral && !reduce_mod2(s).is_zero();
    auto d = ctx.ell()[k].homogeneous_degree();
    bool deg_ok = d && *d == generator_degree(k);
    per.push_back({{"k", k}, {"integral", integral}, {"nonzero_mod_2", nonzero}, {"degree_ok", deg_ok}});
    if (!(integral && nonzero && deg_ok)) {
      r.verified = false;
      if (r.witness.is_null()) r.witness = poly_to_json(s);
    }
  }
  r.details["per_k"] = per;
  return r;
}

Report verify_eq351(const RnContext& ctx) {
  Report r = make_report("eq351", ctx);
  r.verified = true;
  const auto& l = ctx.ell();
  json per = json::array();
  for (int k = 1; k <= ctx.k_max(); ++k) {
    QPoly rhs1(ctx.ring()), rhs2(ctx.ring());
    for (int j = 0; j < k; ++j) {
      const int e = 1 << j;
      rhs1 += ctx.gamma(l[j]) * ctx.t(k - j).pow(e, Rational(1));
      rhs2 += ctx.gamma(l[j], 2) * ctx.gamma(ctx.t(k - j)).pow(e, Rational(1));
    }
    QPoly d1 = l[k] - ctx.gamma(l[k]) - rhs1;
    QPoly d2 = ctx.gamma(l[k]) - ctx.gamma(l[k], 2) - rhs2;
    QPoly d3 = l[k] - ctx.gamma(l[k], 2) - (rhs1 + rhs2);
    per.push_back({{"k", k}, {"eq1", d1.is_zero()}, {"eq2", d2.is_zero()}, {"eq3", d3.is_zero()}});
    for (const QPoly* d : {&d1, &d2, &d3})
      if (!d->is_zero()) {
        r.verified = false;
        if (r.witness.is_null()) r.witness = poly_to_json(*d);
      }
  }
  r.details["per_k"] = per;
  return r;
}

Report verify_v_integrality(const RnContext& ctx) {
  Report r = make_report("v-integrality", ctx);
  r.verified = true;
  for (int k = 1; k <= ctx.levels(); ++k) {
    const QPoly& v = ctx.v()[k];
    auto d = v.homogeneous_degree();
    if (!all_integral(v) || (!v.is_zero() && (!d || *d != generator_degree(k)))) {
      r.verified = false;
      r.witness = poly_to_json(v);
    }
  }
  return r;
}

Report verify_tk_recursion(const RnContext& ctx, int k) {
  if (ctx.n() < 2) throw precondition("the recursion relates levels n-1 and n; needs n >= 2");
  if (k < 1 || k > ctx.levels()) throw precondition("k outside the computed range");
  Report r = make_report("recursion", ctx);
  r.params["k"] = k;
  QPoly diff = ctx.t_level(ctx.n() - 1)[k - 1] - sum_gamma_t(ctx, k);
  F2Poly nf = ctx.normal_form_Ik(diff, k, VConvention::Araki);
  bool exact = diff.is_zero();
  r.details["exact_zero"] = exact;
  r.details["convention"] = convention_name(VConvention::Araki);
  r.details["normal_form"] = poly_to_json(nf, "/2");
  r.verified = nf.is_zero() && (k != 1 || exact);
  if (!r.verified) r.witness = exact ? poly_to_json(nf, "/2") : poly_to_json(diff);
  return r;
}

Report verify_tkvk(const RnContext& ctx, int k) {
  if (k < 1 || k > ctx.levels()) throw precondition("k outside the computed range");
  Report r = make_report("tkvk", ctx);
  r.params["k"] = k;
  QPoly diff = ctx.t_level(1)[k - 1] - ctx.v()[k];
  F2Poly nf = ctx.normal_form_Ik(diff, k);
  r.verified = nf.is_zero();
  r.details["normal_form"] = poly_to_json(nf, "/2");
  if (k == 1) r.details["difference"] = poly_to_string(diff);
  if (!r.verified) r.witness = poly_to_json(nf, "/2");
  return r;
}

Report verify_ideal_invariance(const RnContext& ctx, int k) {
  if (k < 1 || k > ctx.levels()) throw precondition("k outside the computed range");
  Report r = make_report("invariance", ctx);
  r.params["k"] = k;
  r.verified = true;
  json per = json::array();
  for (int j = 1; j <= k; ++j) {
    QPoly d = ctx.v()[j] - ctx.gamma(ctx.v()[j]);
    bool ok = ctx.contains_Ik(d, j);
    // the generators of I_j are carried into I_j by gamma
    bool gens_ok = true;
    for (int i = 1; i < j; ++i) gens_ok = gens_ok && ctx.contains_Ik(ctx.gamma(ctx.v()[i]), j);
    per.push_back({{"j", j}, {"v_j - gamma v_j in I_j", ok}, {"gamma(I_j) in I_j", gens_ok}});
    if (!(ok && gens_ok)) {
      r.verified = false;
      if (r.witness.is_null()) r.witness = poly_to_json(ctx.normal_form_Ik(d, j), "/2");
    }
  }
  if (ctx.n() == 1) r.details["v1 - gamma v1"] = poly_to_string(ctx.v()[1] - ctx.gamma(ctx.v()[1]));
  r.details["per_j"] = per;
  return r;
}

Report verify_v_collapse(const RnContext& ctx, int r, VConvention c) {
  if (!ctx.m()) throw precondition("v-collapse needs the quotient R_n<m>");
  const int h = (1 << (ctx.n() - 1)) * *ctx.m();
  if (r <= h) throw precondition("v-collapse needs r > h = " + std::to_string(h));
  if (r > ctx.levels()) throw precondition("r beyond the computed levels; raise k or the cutoff");
  Report rep = make_report("v-collapse", ctx);
  rep.params["r"] = r;
  rep.params["h"] = h;
  rep.details["convention"] = convention_name(c);
  QPoly vr = ctx.v_generators(c)[r - 1];
  F2Poly nf = ctx.normal_form_Ik(vr, h + 1, c);
  rep.verified = nf.is_zero();
  rep.details["v_r mod 2 is zero"] = reduce_mod2(vr).is_zero();
  if (!rep.verified) rep.witness = poly_to_json(nf, "/2");
  return rep;
}

Report verify_t_collapse(const RnContext& ctx, int k, int r, VConvention c) {
  if (!ctx.m()) throw precondition("t-collapse needs the quotient R_n<m>");
  const int m = *ctx.m();
  if (k < 0 || k > ctx.n() - 1) throw precondition("lemma level k must satisfy 0 <= k <= n-1");
  if (r <= (1 << k) * m) throw precondition("t-collapse needs r > 2^k m = " + std::to_string((1 << k) * m));
  if (r > ctx.levels()) throw precondition("r beyond the computed levels; raise k or the cutoff");
  Report rep = make_report("t-collapse", ctx);
  rep.params["lemma_k"] = k;
  rep.params["r"] = r;
  rep.details["convention"] = convention_name(c);
  const int level = ctx.n() - k;
  const QPoly& base = ctx.t_level(level)[r - 1];
  rep.details["literally_zero"] = base.is_zero();
  rep.verified = true;
  // C_{2^level} is generated by gamma_n^{2^k}
  for (int j = 0; j < (1 << level); ++j) {
    QPoly conj = ctx.gamma(base, j << k);
    F2Poly nf = ctx.normal_form_Ik(conj, r, c);
    if (!nf.is_zero()) {
      rep.verified = false;
      rep.witness = poly_to_json(nf, "/2");
      rep.details["failing_conjugate"] = j;
      break;
    }
  }
  return rep;
}

Report verify_t_level_routes(const RnContext& ctx) {
  Report r = make_report("t-level-routes", ctx);
  r.verified = true;
  for (int lev = 1; lev <= ctx.n(); ++lev) {
    auto a = ctx.t_level(lev);
    auto b = ctx.t_level_via_logs(lev);
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!(a[k] == b[k])) {
        r.verified = false;
        r.witness = poly_to_json(a[k] - b[k]);
      }
  }
  return r;
}

Report verify_functoriality(int k_max) {
  RnContext lower(2, k_max), upper(3, k_max);
  Report r;
  r.claim = "functoriality";
  r.params = json{{"from_n", 2}, {"to_n", 3}, {"k_max", k_max}};
  r.bounds = upper.bounds();
  r.verified = true;
  const auto& t_low = lower.t_level(1);
  const auto& t_up = upper.t_level(1);
  for (int k = 1; k <= k_max; ++k) {
    if (!(include_lower(t_low[k - 1], lower, upper) == t_up[k - 1])) {
      r.verified = false;
      r.witness = poly_to_json(include_lower(t_low[k - 1], lower, upper) - t_up[k - 1]);
    }
    if (!(include_lower(lower.v()[k], lower, upper) == upper.v()[k])) r.verified = false;
  }
  return r;
}

ChainConvention pin_chain_convention() {
  static const ChainConvention pinned = [] {
    RnContext ctx(1, 2);
    Series1<Rational> chi = ctx.chain(1).psi;
    Series1<Rational> inv = formal_inverse(*ctx.fgl());
    if (chi == -inv) return ChainConvention::MinusInverse;
    if (chi == inv) return ChainConvention::Inverse;
    return ChainConvention::Neither;
  }();
  return pinned;
}

namespace {

Series1<Rational> inversion_candidate(const QFGL& f, ChainConvention c) {
  Series1<Rational> inv = formal_inverse(f);
  return c == ChainConvention::Inverse ? inv : -inv;
}

}  // namespace

Report chain_inversion_check(const RnContext& ctx) {
  Report r = make_report("chain-inversion", ctx);
  ChainConvention c = pin_chain_convention();
  r.details["convention"] = chain_convention_name(c);
  const int orbit = ctx.ring()->orbit();
  StrictIso<Rational> chi = ctx.chain(orbit);
  // target of the chain is F^{gamma^{2^{n-1}}} = c^*F, which acts by (-1)^{deg/2}
  auto conj = [](const QPoly& p) {
    return p.map_terms([&](const Monomial& m, const Rational& x) -> std::optional<QPoly::Term> {
      return QPoly::Term{m, (p.ring()->degree_of(m) / 2) % 2 ? -x : x};
    });
  };
  r.details["target_is_conjugate_law"] = chi.target->F == conjugate_fgl(*ctx.fgl(), conj).F;
  if (c == ChainConvention::Neither) {
    r.verified = false;
    return r;
  }
  Series1<Rational> cand = inversion_candidate(*ctx.fgl(), c);
  r.verified = chi.psi == cand && r.details["target_is_conjugate_law"].get<bool>();
  if (!r.verified) r.witness = series_to_json(chi.psi - cand);
  return r;
}

Report chain_inversion_degenerate(int n, int cutoff) {
  Report r;
  r.claim = "chain-inversion-degenerate";
  r.params = json{{"n", n}, {"cutoff", cutoff}};
  RingPtr R = make_rn_ring(n, floor_log2(cutoff));
  std::vector<QPoly> ell(floor_log2(cutoff) + 1, QPoly(R));
  ell[0] = QPoly::constant(R, Rational(1));
  auto F = std::make_shared<const QFGL>(fgl_from_log(ell, R, cutoff, true));
  std::vector<QPoly> zeros(ell.size() - 1, QPoly(R));
  StrictIso<Rational> psi = strict_iso_from_t(zeros, F, F);
  StrictIso<Rational> chi = psi;
  for (int i = 1; i < R->orbit(); ++i) chi = compose_iso(psi, chi);
  ChainConvention c = pin_chain_convention();
  r.details["convention"] = chain_convention_name(c);
  r.details["composite_is_identity"] = chi.psi == F->x();
  r.details["matches_literal_inverse"] = chi.psi == formal_inverse(*F);
  r.verified = c != ChainConvention::Neither && chi.psi == inversion_candidate(*F, c);
  return r;
}

}  // namespace fglforge
