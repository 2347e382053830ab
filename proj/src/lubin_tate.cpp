#include "fglforge/lubin_tate.hpp"

#include <numeric>

namespace fglforge {

namespace {

Error bad(const std::string& s) { return Error(ErrorCode::InvalidArgument, s); }

int u_index(const RingSpec& R) { return R.nvars() - 1; }

}  // namespace

int tau_degree(const RingSpec& R, const Monomial& m) {
  int t = 0;
  for (int v = 0; v + 1 < R.nvars(); ++v) t += m[v];
  return t;
}

// ------------------------------------------------------------------ LTElement

LTElement::LTElement(LTParamsPtr P, WPoly p) : P_(std::move(P)) {
  const RingSpec& R = *P_->ring;
  const int M = P_->M;
  p_ = p.map_terms(
      [&](const Monomial& mono, const WittElement& c) -> std::optional<WPoly::Term> {
        int t = tau_degree(R, mono);
        if (t >= M) return std::nullopt;
        WittElement r = c.reduced_mod(M - t);
        if (r.is_zero()) return std::nullopt;
        return WPoly::Term{mono, r};
      },
      P_->ring);
}

namespace {

const LTParamsPtr& pick(const LTElement& a, const LTElement& b) {
  if (!a.params()) return b.params();
  if (b.params() && a.params() != b.params() && !(*a.params()->ring == *b.params()->ring))
    throw Error(ErrorCode::AmbientMismatch, "elements of different Lubin-Tate rings");
  return a.params();
}

}  // namespace

LTElement operator+(const LTElement& a, const LTElement& b) {
  const auto& P = pick(a, b);
  return LTElement(P, a.poly() + b.poly());
}

LTElement operator-(const LTElement& a, const LTElement& b) {
  const auto& P = pick(a, b);
  return LTElement(P, a.poly() - b.poly());
}

LTElement operator*(const LTElement& a, const LTElement& b) {
  const auto& P = pick(a, b);
  if (a.is_zero() || b.is_zero()) return LTElement(P, WPoly(P->ring));
  const RingSpec& R = *P->ring;
  std::vector<int> db;
  db.reserve(b.poly().terms().size());
  for (const auto& t : b.poly().terms()) db.push_back(tau_degree(R, t.first));
  std::vector<WPoly::Term> out;
  for (const auto& ta : a.poly().terms()) {
    const int da = tau_degree(R, ta.first);
    std::size_t k = 0;
    for (const auto& tb : b.poly().terms()) {
      if (da + db[k++] < P->M) out.emplace_back(ta.first * tb.first, ta.second * tb.second);
    }
  }
  return LTElement(P, WPoly::from_terms(P->ring, std::move(out)));
}

bool operator==(const LTElement& a, const LTElement& b) { return (a - b).is_zero(); }

int LTElement::filtration() const {
  if (!P_ || is_zero()) return P_ ? P_->M : 0;
  int f = P_->M;
  for (const auto& [mono, c] : p_.terms()) f = std::min(f, c.valuation() + tau_degree(*P_->ring, mono));
  return f;
}

GFPoly LTElement::residue() const {
  if (!P_) throw bad("residue of an element without a ring");
  const RingSpec& R = *P_->ring;
  std::vector<GFPoly::Term> out;
  for (const auto& [mono, c] : p_.terms()) {
    if (tau_degree(R, mono)) continue;
    GFElement r = c.residue();
    if (r.is_zero()) continue;
    Monomial mm;
    mm[0] = mono[u_index(R)];
    out.emplace_back(mm, r);
  }
  return GFPoly::from_terms(P_->residue_ring, std::move(out));
}

bool LTElement::is_unit() const { return P_ && residue().terms().size() == 1; }

LTElement LTElement::inverse() const {
  GFPoly r = residue();
  if (r.terms().size() != 1) throw Error(ErrorCode::NonUnit, "residue is not a unit of k[u^{+-1}]");
  const auto& [mm, a] = r.terms().front();
  const RingSpec& R = *P_->ring;
  Monomial us;
  us[u_index(R)] = static_cast<std::int16_t>(-mm[0]);
  LTElement c(P_, WPoly::monomial(P_->ring, us, WittElement::lift(a, P_->N).inverse()));
  LTElement one(P_, WPoly::constant(P_->ring, WittElement::from_int(P_->field, P_->N, 1)));
  // this * c = 1 - x with x in m; (1 - x)^{-1} = sum_{j<M} x^j
  LTElement x = one - *this * c;
  LTElement acc = one;
  for (int j = 1; j < P_->M; ++j) acc = one + x * acc;
  return c * acc;
}

LTElement LTElement::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  LTElement result(P_, WPoly::constant(P_->ring, WittElement::from_int(P_->field, P_->N, 1)));
  LTElement base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

// ------------------------------------------------------------------ linear algebra

int rank_over_field(std::vector<std::vector<GFElement>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (!rows[r][c].is_zero()) {
        piv = static_cast<int>(r);
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    GFElement inv = rows[rank][c].inverse();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == rank || rows[r][c].is_zero()) continue;
      GFElement f = rows[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) rows[r][k] = rows[r][k] - f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

json CotangentMatrix::to_json() const {
  json rs = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    json entries = json::array();
    for (const auto& e : rows[i]) entries.push_back(coeff_to_json(e));
    rs.push_back({{"generator", row_labels[i]}, {"entries", entries}});
  }
  return json{{"basis", basis}, {"rows", rs}, {"rank", rank}};
}

// ------------------------------------------------------------------ LTContext

LTContext::LTContext(int n, int m, int d, std::optional<std::vector<int>> modulus, int N, int M) {
  if (n < 1 || n > 3) throw bad("n must be in 1..3");
  if (m < 1) throw bad("m must be >= 1");
  if (M < 2) throw bad("truncation order M must be >= 2");
  if (N < M || N > 62) throw bad("Witt precision must satisfy M <= N <= 62");
  auto P = std::make_shared<LTParams>();
  P->n = n;
  P->m = m;
  P->h = (1 << (n - 1)) * m;
  P->N = N;
  P->M = M;
  P->field = modulus ? FiniteFieldSpec::make(d, *modulus) : FiniteFieldSpec::standard(d);
  P->ring = make_lt_ring(n, m);
  P->residue_ring = make_residue_ring();
  if (P->ring->nvars() - 1 != P->h - 1)
    throw Error(ErrorCode::ConsistencyFailure, "tau presentation has the wrong number of variables");
  P_ = P;

  const RingSpec& R = *P_->ring;
  const int orb = orbit();
  gamma_img_.resize(R.nvars());
  gamma_inv_img_.resize(R.nvars());
  for (int v = 0; v < R.nvars(); ++v) {
    const Variable& x = R.var(v);
    if (x.kind == VarKind::U) {
      LTElement g = n == 1 ? -u() : (from_int(1) - tau(m, 0)) * u();
      gamma_img_[v] = g;
      gamma_inv_img_[v] = g.inverse();
    } else if (x.level < m) {
      gamma_img_[v] = tau(x.level, x.conj + 1 < orb ? x.conj + 1 : 0);
    } else if (x.conj + 2 < orb) {
      gamma_img_[v] = tau(m, x.conj + 1);
    } else {
      // gamma^{2^{n-1}-1} tau_m = 1 + prod_{r <= 2^{n-1}-2} (1 - gamma^r tau_m)^{-1}
      LTElement prod = from_int(1);
      for (int r = 0; r + 2 <= orb; ++r) prod = prod * (from_int(1) - tau(m, r));
      gamma_img_[v] = from_int(1) + prod.inverse();
    }
  }
}

int LTContext::alpha() const { return std::gcd(q(), (1 << d()) - 1); }

json LTContext::describe() const {
  return json{{"n", n()},          {"m", m()},     {"h", h()},         {"d", d()},
              {"modulus", field()->modulus_bits()}, {"N", N()}, {"M", M()}, {"q", q()}, {"alpha", alpha()}};
}

LTElement LTContext::constant(const WittElement& c) const { return LTElement(P_, WPoly::constant(P_->ring, c)); }

LTElement LTContext::from_int(long v) const { return constant(WittElement::from_int(P_->field, P_->N, v)); }

LTElement LTContext::tau(int i, int j) const {
  auto idx = P_->ring->index_of({VarKind::Tau, i, j});
  if (!idx) throw bad("no variable gamma^" + std::to_string(j) + " tau_" + std::to_string(i) + " in this presentation");
  return LTElement(P_, WPoly::variable(P_->ring, *idx, WittElement::from_int(P_->field, P_->N, 1)));
}

LTElement LTContext::u(int s) const {
  Monomial mm;
  mm[u_index(*P_->ring)] = static_cast<std::int16_t>(s);
  return LTElement(P_, WPoly::monomial(P_->ring, mm, WittElement::from_int(P_->field, P_->N, 1)));
}

LTElement LTContext::gamma_u(int j) const {
  if (j < 0) throw bad("negative power of gamma");
  if (j >= orbit() || n() == 1) return lt_gamma_pow(*this, u(), j);
  LTElement r = u();
  for (int k = 0; k < j; ++k) r = r * (from_int(1) - tau(m(), k));
  return r;
}

LTElement LTContext::random(std::mt19937_64& rng, int terms, std::optional<int> s) const {
  const RingSpec& R = *P_->ring;
  const int ntau = R.nvars() - 1;
  std::uniform_int_distribution<int> deg(0, ntau ? M() - 1 : 0), var(0, std::max(0, ntau - 1)), us(-2, 2);
  std::uniform_int_distribution<std::uint64_t> coef(0, (1ull << N()) - 1);
  std::vector<WPoly::Term> out;
  for (int t = 0; t < terms; ++t) {
    Monomial mm;
    int dg = deg(rng);
    for (int k = 0; k < dg; ++k) ++mm[var(rng)];
    mm[u_index(R)] = static_cast<std::int16_t>(s ? *s : us(rng));
    std::vector<std::uint64_t> c(d());
    for (auto& x : c) x = coef(rng);
    out.emplace_back(mm, WittElement(P_->field, N(), c));
  }
  return LTElement(P_, WPoly::from_terms(P_->ring, std::move(out)));
}

const RnContext& LTContext::rn(int k) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = rn_.lower_bound(k);
  if (it != rn_.end()) return *it->second;
  auto ctx = std::make_unique<RnContext>(n(), k, m());
  return *rn_.emplace(k, std::move(ctx)).first->second;
}

// ------------------------------------------------------------------ maps

LTElement lt_specialize(const LTContext& ctx, const QPoly& p) {
  if (p.is_zero()) return ctx.zero();
  const RingSpec& S = *p.ring();
  if ((S.ambient() != Ambient::Rn && S.ambient() != Ambient::RnM) || S.n() != ctx.n())
    throw Error(ErrorCode::AmbientMismatch, "specialization needs an element of R_" + std::to_string(ctx.n()));
  std::vector<LTElement> gu;
  for (int j = 0; j < ctx.orbit(); ++j) gu.push_back(ctx.gamma_u(j));
  std::vector<std::optional<LTElement>> img(S.nvars());
  for (int v = 0; v < S.nvars(); ++v) {
    const Variable& x = S.var(v);
    if (x.kind != VarKind::T) continue;
    const int w = (1 << x.level) - 1;
    if (x.level < ctx.m()) img[v] = ctx.tau(x.level, x.conj) * gu[x.conj].pow(w);
    else if (x.level == ctx.m()) img[v] = gu[x.conj].pow(w);
    else img[v] = ctx.zero();
  }
  auto embed = [&](const Rational& c) { return ctx.constant(WittElement::from_rational(ctx.field(), ctx.N(), c)); };
  return ring_map(p, img, embed, ctx.zero());
}

LTElement lt_gamma(const LTContext& ctx, const LTElement& e) {
  if (e.is_zero()) return ctx.zero();
  auto embed = [&](const WittElement& c) { return ctx.constant(c); };
  return ring_map(e.poly(), ctx.gamma_img_, embed, ctx.zero(), &ctx.gamma_inv_img_);
}

LTElement lt_gamma_pow(const LTContext& ctx, const LTElement& e, int r) {
  const int order = 1 << ctx.n();
  r = ((r % order) + order) % order;
  LTElement x = e;
  for (int i = 0; i < r; ++i) x = lt_gamma(ctx, x);
  return x;
}

LTElement lt_zeta(const LTContext& ctx, const GFElement& zeta, const LTElement& e) {
  if (!zeta.spec() || !(*zeta.spec() == *ctx.field()))
    throw Error(ErrorCode::AmbientMismatch, "zeta is not an element of the residue field");
  if (!zeta.pow(ctx.q()).is_one())
    throw Error(ErrorCode::NotQTorsion, "zeta^" + std::to_string(ctx.q()) + " != 1 for zeta = " + zeta.str());
  WittElement T = teichmuller(zeta, ctx.N());
  const RingSpec& R = *ctx.ring();
  // diagonal on monomials: tau^e u^s -> T^{sum_{i<m} e_i (2^i - 1) - s} tau^e u^s
  std::vector<WPoly::Term> out;
  for (const auto& [mono, c] : e.poly().terms()) {
    long w = -mono[u_index(R)];
    for (int v = 0; v + 1 < R.nvars(); ++v)
      if (R.var(v).level < ctx.m()) w += static_cast<long>(mono[v]) * ((1 << R.var(v).level) - 1);
    w %= ctx.q();
    if (w < 0) w += ctx.q();
    out.emplace_back(mono, c * T.pow(static_cast<std::uint64_t>(w)));
  }
  return LTElement(ctx.params(), WPoly::from_terms(ctx.ring(), std::move(out)));
}

LTElement lt_galois(const LTContext& ctx, const LTElement& e) {
  return LTElement(ctx.params(), e.poly().map_coefficients([](const WittElement& c) { return frobenius_lift(c); },
                                                           ctx.ring()));
}

LTElement v_in_lt(const LTContext& ctx, int k) {
  if (k < 1 || k > 5) throw bad("v index must be in 1..5");
  return lt_specialize(ctx, ctx.rn(k).v()[k]);
}

std::vector<GFElement> q_torsion(const LTContext& ctx) {
  std::vector<GFElement> out;
  for (std::uint32_t b = 1; b < ctx.field()->size(); ++b) {
    GFElement z(ctx.field(), b);
    if (z.pow(ctx.q()).is_one()) out.push_back(z);
  }
  return out;
}

bool verify_unit(const LTContext& ctx, const LTElement& e) {
  (void)ctx;
  return e.is_unit();
}

// ------------------------------------------------------------------ cotangent space

CotangentMatrix cotangent_matrix(const LTContext& ctx) {
  const RingSpec& R = *ctx.ring();
  const int ntau = R.nvars() - 1;
  CotangentMatrix cm;
  cm.basis.push_back("2");
  for (int v = 0; v < ntau; ++v) cm.basis.push_back(R.var_name(v));
  auto row_of = [&](const LTElement& x, const std::string& label) {
    std::vector<GFElement> row(ntau + 1, GFElement::zero(ctx.field()));
    for (const auto& [mono, c] : x.poly().terms()) {
      if (mono[u_index(R)] != 0)
        throw Error(ErrorCode::ConsistencyFailure, label + " is not of degree 0 after normalizing by u");
      const int t = tau_degree(R, mono);
      if (t == 0) {
        if (c.valuation() == 0) throw Error(ErrorCode::VerificationFailure, label + " does not lie in m");
        row[0] = c.shifted_down(1).residue();
      } else if (t == 1) {
        for (int v = 0; v < ntau; ++v)
          if (mono[v]) row[v + 1] = c.residue();
      }
    }
    cm.row_labels.push_back(label);
    cm.rows.push_back(std::move(row));
  };
  row_of(ctx.from_int(2), "2");
  for (int j = 1; j < ctx.h(); ++j) row_of(v_in_lt(ctx, j) * ctx.u(1 - (1 << j)), "v" + std::to_string(j));
  cm.rank = rank_over_field(cm.rows);
  return cm;
}

Report cotangent_check(const LTContext& ctx) {
  Report r;
  r.claim = "cotangent";
  r.params = ctx.describe();
  r.bounds = json{{"M", ctx.M()}, {"N", ctx.N()}};
  // I_h in m: v_1..v_{h-1} have zero residue
  bool contained = true;
  for (int j = 1; j < ctx.h(); ++j) contained = contained && !v_in_lt(ctx, j).residue().terms().size();
  r.details["I_h_in_m"] = contained;
  try {
    CotangentMatrix cm = cotangent_matrix(ctx);
    r.details["matrix"] = cm.to_json();
    r.details["rank"] = cm.rank;
    r.details["required_rank"] = ctx.h();
    r.verified = contained && cm.rank == ctx.h();
    if (cm.rank != ctx.h()) {
      r.details["error"] = error_code_name(ErrorCode::RankDeficient);
      r.witness = cm.to_json();
    }
  } catch (const Error& e) {
    r.verified = false;
    r.details["error"] = error_code_name(e.code());
    r.witness = e.what();
  }
  return r;
}

// ------------------------------------------------------------------ residue height

ResidueHeight residue_height_raw(const LTContext& ctx) {
  const int h = ctx.h();
  if (h > 5) throw Error(ErrorCode::HeightExceedsCutoff, "height above 5 is beyond the supported cutoff");
  const RingPtr& K = ctx.params()->residue_ring;
  std::vector<std::optional<GFPoly>> img;
  for (int i = 1; i <= h; ++i) img.push_back(v_in_lt(ctx, i).residue());
  auto U = universal_fgl(h, 1 << h);
  auto embed = [&](const Rational& c) {
    return GFPoly::constant(K, GFElement(ctx.field(), static_cast<std::uint32_t>(TwoLocalInt(c).mod2())));
  };
  FGL<GFElement> f;
  f.provenance = Provenance::Residue;
  f.F = Series2<GFElement>(K, U->fgl.F.cutoff());
  for (std::size_t i = 0; i < U->fgl.F.entries(); ++i)
    if (!U->fgl.F[i].is_zero()) f.F[i] = ring_map(U->fgl.F[i], img, embed, GFPoly(K));
  auto [height, lead] = height_of_residue_fgl(f);
  return ResidueHeight{height, lead, *img[h - 1]};
}

Report residue_height(const LTContext& ctx) {
  Report r;
  r.claim = "height";
  r.params = ctx.describe();
  const int h = ctx.h();
  const int beta = ((1 << h) - 1) / ctx.q();
  r.bounds = json{{"cutoff", 1 << h}, {"M", ctx.M()}, {"N", ctx.N()}};
  r.details["beta"] = beta;
  try {
    ResidueHeight rh = residue_height_raw(ctx);
    r.details["height"] = rh.height;
    r.details["leading"] = poly_to_json(rh.leading);
    r.details["leading_str"] = poly_to_string(rh.leading);
    // image of t_m^beta is exactly u^{2^h - 1}
    GFPoly tm_beta = lt_specialize(ctx, ctx.rn(ctx.m()).t(ctx.m()).pow(beta, Rational(1))).residue();
    r.details["t_m^beta_residue"] = poly_to_string(tm_beta);
    bool monomial_ok = rh.leading.terms().size() == 1 && rh.leading.terms().front().first[0] == (1 << h) - 1;
    if (monomial_ok) {
      r.details["unit_coefficient"] = rh.leading.terms().front().second.str();
      r.details["coefficient_is_one"] = rh.leading == tm_beta;
    }
    r.details["leading_equals_v_h_residue"] = rh.leading == rh.v_h_residue;
    r.verified = rh.height == h && monomial_ok;
    if (!r.verified) r.witness = poly_to_json(rh.leading);
  } catch (const Error& e) {
    r.verified = false;
    r.details["error"] = error_code_name(e.code());
    r.witness = e.what();
  }
  return r;
}

// ------------------------------------------------------------------ D factors

std::vector<DFactor> d_factors_raw(const LTContext& ctx) {
  std::vector<DFactor> out;
  const int n = ctx.n();
  for (int i = 1; i <= n; ++i) {
    const int k = (1 << (n - i)) * ctx.m();
    const RnContext& R = ctx.rn(k);
    // log route; agrees with the iso chain (checked separately) and is much cheaper
    const QPoly x = R.t_level_via_logs(i)[k - 1];
    // underlying image of the norm from C_2: product over the 2^{n-1} conjugates
    LTElement prod = ctx.from_int(1);
    for (int j = 0; j < ctx.orbit(); ++j) prod = prod * lt_specialize(ctx, R.gamma(x, j));
    out.push_back({i, prod, verify_unit(ctx, prod)});
  }
  return out;
}

Report d_factors(const LTContext& ctx) {
  Report r;
  r.claim = "unit-factors";
  r.params = ctx.describe();
  r.bounds = json{{"M", ctx.M()}, {"N", ctx.N()}};
  auto fs = d_factors_raw(ctx);
  LTElement total = ctx.from_int(1);
  json per = json::array();
  r.verified = true;
  for (const auto& f : fs) {
    per.push_back({{"i", f.i},
                   {"generator", "t_" + std::to_string((1 << (ctx.n() - f.i)) * ctx.m()) + "^{C_" +
                                     std::to_string(1 << f.i) + "}"},
                   {"unit", f.unit},
                   {"residue", poly_to_string(f.value.residue())}});
    r.verified = r.verified && f.unit;
    total = total * f.value;
  }
  r.details["factors"] = per;
  r.details["product_is_unit"] = total.is_unit();
  r.verified = r.verified && total.is_unit();
  return r;
}

// ------------------------------------------------------------------ fixed subring

Report fixed_subring_presentation(const LTContext& ctx, int u_bound) {
  Report r;
  r.claim = "fixed-subring";
  r.params = ctx.describe();
  r.bounds = json{{"u_exponent_bound", u_bound}, {"tau_degree_bound", ctx.M() - 1}};
  const RingSpec& R = *ctx.ring();
  const int ntau = R.nvars() - 1;
  const int alpha = ctx.alpha();
  auto zs = q_torsion(ctx);
  r.details["alpha"] = alpha;
  r.details["torsion_size"] = zs.size();
  bool ok = static_cast<int>(zs.size()) == alpha;

  // enumerate monomials tau^e u^s, |e| < M, |s| <= u_bound
  std::vector<Monomial> taus{Monomial{}};
  for (int deg = 1; deg < ctx.M(); ++deg) {
    std::vector<Monomial> next;
    for (const auto& mm : taus)
      if (tau_degree(R, mm) == deg - 1) {
        int last = ntau - 1;
        while (last >= 0 && !mm[last]) --last;
        for (int v = std::max(last, 0); v < ntau; ++v) {
          Monomial x = mm;
          ++x[v];
          next.push_back(x);
        }
      }
    taus.insert(taus.end(), next.begin(), next.end());
  }
  int fixed = 0, total = 0;
  bool decomposes = true;
  for (const auto& base : taus)
    for (int s = -u_bound; s <= u_bound; ++s) {
      Monomial mm = base;
      mm[u_index(R)] = static_cast<std::int16_t>(s);
      LTElement e = ctx.from_poly(WPoly::monomial(ctx.ring(), mm, WittElement::from_int(ctx.field(), ctx.N(), 1)));
      bool is_fixed = true;
      for (const auto& z : zs) is_fixed = is_fixed && lt_zeta(ctx, z, e) == e;
      long w = -s;
      for (int v = 0; v < ntau; ++v)
        if (R.var(v).level < ctx.m()) w += static_cast<long>(mm[v]) * ((1 << R.var(v).level) - 1);
      const bool predicted = w % alpha == 0;
      ok = ok && is_fixed == predicted;
      ++total;
      if (!is_fixed) continue;
      ++fixed;
      // tau^e u^s = prod (tau_i u^{2^i-1})^{e_i} * (u^alpha)^{(s - weight)/alpha}
      LTElement rebuilt = ctx.u(alpha).pow(static_cast<int>(-w / alpha));
      for (int v = 0; v < ntau; ++v) {
        const Variable& x = R.var(v);
        LTElement g = ctx.tau(x.level, x.conj);
        if (x.level < ctx.m()) g = g * ctx.u((1 << x.level) - 1);
        for (int k = 0; k < mm[v]; ++k) rebuilt = rebuilt * g;
      }
      decomposes = decomposes && rebuilt == e;
    }
  r.details["monomials_checked"] = total;
  r.details["monomials_fixed"] = fixed;
  r.details["fixed_monomials_factor_through_generators"] = decomposes;

  // u^alpha fixed, u^s not fixed for 0 < s < alpha, tau_m orbit fixed
  bool u_ok = true;
  for (int s = 1; s <= alpha; ++s) {
    bool fx = true;
    for (const auto& z : zs) fx = fx && lt_zeta(ctx, z, ctx.u(s)) == ctx.u(s);
    u_ok = u_ok && (fx == (s == alpha));
  }
  bool tau_m_fixed = true;
  for (int j = 0; j + 2 <= ctx.orbit(); ++j)
    for (const auto& z : zs) tau_m_fixed = tau_m_fixed && lt_zeta(ctx, z, ctx.tau(ctx.m(), j)) == ctx.tau(ctx.m(), j);
  r.details["u_alpha_generates"] = u_ok;
  r.details["tau_m_fixed"] = tau_m_fixed;

  // Galois-fixed coefficients: sigma - 1 on k has kernel F_2, so W(k)^sigma = Z_2
  int kernel = 0;
  for (std::uint32_t b = 0; b < ctx.field()->size(); ++b) {
    GFElement a(ctx.field(), b);
    if (a.frobenius() == a) ++kernel;
  }
  bool galois_ok = kernel == 2;
  for (long c : {1L, 3L, -5L, 12L}) {
    WittElement w = WittElement::from_int(ctx.field(), ctx.N(), c);
    galois_ok = galois_ok && frobenius_lift(w) == w;
  }
  if (ctx.d() > 1) {
    WittElement x = WittElement::lift(GFElement::generator(ctx.field()), ctx.N());
    galois_ok = galois_ok && !(frobenius_lift(x) == x);
  }
  r.details["galois_fixed_coefficients_are_Z2"] = galois_ok;
  r.verified = ok && decomposes && u_ok && tau_m_fixed && galois_ok;
  return r;
}

// ------------------------------------------------------------------ further checks

Report two_in_maximal_ideal(const LTContext& ctx) {
  Report r;
  r.claim = "two-in-m";
  r.params = ctx.describe();
  r.bounds = json{{"M", ctx.M()}, {"N", ctx.N()}};
  const int top = ctx.orbit() - 1;
  auto diff = [&](int j) { return ctx.gamma_u(j) - ctx.gamma_u(j + 1); };  // gamma^j (u - gamma u)
  LTElement rhs = diff(top);
  for (int j = 0; j < top; ++j) rhs = rhs - diff(j);
  LTElement lhs = ctx.from_int(2) * ctx.gamma_u(top);
  r.details["identity_holds"] = lhs == rhs;
  // each gamma^j (u - gamma u) = gamma^j(tau_m) gamma^j(u) lies in the ideal of the tau_m orbit
  bool in_orbit_ideal = true;
  json orbit = json::array();
  for (int j = 0; j <= top; ++j) {
    LTElement tj = lt_gamma_pow(ctx, ctx.n() == 1 ? ctx.from_int(2) : ctx.tau(ctx.m(), 0), j);
    in_orbit_ideal = in_orbit_ideal && diff(j) == tj * ctx.gamma_u(j);
    orbit.push_back(poly_to_string(tj.poly()));
  }
  r.details["tau_m_orbit"] = orbit;
  r.details["terms_in_orbit_ideal"] = in_orbit_ideal;
  r.verified = lhs == rhs && in_orbit_ideal;
  return r;
}

Report specialization_equivariance(const LTContext& ctx) {
  Report r;
  r.claim = "specialization-equivariance";
  r.params = ctx.describe();
  const RnContext& R = ctx.rn(ctx.m());
  r.verified = true;
  json per = json::array();
  for (int v = 0; v < R.ring()->nvars(); ++v) {
    QPoly g = QPoly::variable(R.ring(), v, Rational(1));
    bool ok = lt_specialize(ctx, R.gamma(g)) == lt_gamma(ctx, lt_specialize(ctx, g));
    per.push_back({{"generator", R.ring()->var_name(v)}, {"commutes", ok}});
    r.verified = r.verified && ok;
  }
  r.details["generators"] = per;
  return r;
}

Report action_suite(const LTContext& ctx, int samples, std::uint64_t seed) {
  Report r;
  r.claim = "actions";
  r.params = ctx.describe();
  r.params["samples"] = samples;
  r.params["seed"] = seed;
  r.bounds = json{{"M", ctx.M()}, {"N", ctx.N()}};
  std::mt19937_64 rng(seed);
  auto zs = q_torsion(ctx);
  const int order = 1 << ctx.n();
  const int half = ctx.orbit();
  std::map<std::string, bool> ok{{"gamma_order", true},         {"involution_sign", true},
                                 {"gamma_multiplicative", true}, {"zeta_multiplicative", true},
                                 {"galois_multiplicative", true}, {"gamma_zeta_commute", true},
                                 {"gamma_galois_commute", true},  {"galois_zeta_semidirect", true},
                                 {"galois_order_d", true}};
  ok["involution_on_u"] = lt_gamma_pow(ctx, ctx.u(), half) == -ctx.u();
  for (int i = 0; i < samples; ++i) {
    const int s = static_cast<int>(rng() % 5) - 2;
    LTElement a = ctx.random(rng, 4, s), b = ctx.random(rng, 4);
    LTElement ga = lt_gamma(ctx, a);
    ok["gamma_order"] = ok["gamma_order"] && lt_gamma_pow(ctx, ga, order - 1) == a;
    LTElement c = lt_gamma_pow(ctx, a, half);
    ok["involution_sign"] = ok["involution_sign"] && c == (s % 2 ? -a : a);
    ok["gamma_multiplicative"] = ok["gamma_multiplicative"] && lt_gamma(ctx, a * b) == ga * lt_gamma(ctx, b);
    LTElement sa = lt_galois(ctx, a);
    ok["galois_multiplicative"] = ok["galois_multiplicative"] && lt_galois(ctx, a * b) == sa * lt_galois(ctx, b);
    ok["gamma_galois_commute"] = ok["gamma_galois_commute"] && lt_galois(ctx, ga) == lt_gamma(ctx, sa);
    LTElement it = a;
    for (int k = 0; k < ctx.d(); ++k) it = lt_galois(ctx, it);
    ok["galois_order_d"] = ok["galois_order_d"] && it == a;
    const GFElement& z = zs[rng() % zs.size()];
    LTElement za = lt_zeta(ctx, z, a);
    ok["zeta_multiplicative"] = ok["zeta_multiplicative"] && lt_zeta(ctx, z, a * b) == za * lt_zeta(ctx, z, b);
    ok["gamma_zeta_commute"] = ok["gamma_zeta_commute"] && lt_zeta(ctx, z, ga) == lt_gamma(ctx, za);
    // sigma f_zeta = f_{sigma(zeta)} sigma
    ok["galois_zeta_semidirect"] =
        ok["galois_zeta_semidirect"] && lt_galois(ctx, za) == lt_zeta(ctx, z.frobenius(), sa);
  }
  // precondition: every zeta outside k^x[q] is refused
  bool refused = true;
  for (std::uint32_t bits = 0; bits < ctx.field()->size(); ++bits) {
    GFElement z(ctx.field(), bits);
    if (z.pow(ctx.q()).is_one()) continue;
    try {
      lt_zeta(ctx, z, ctx.u());
      refused = false;
    } catch (const Error& e) {
      refused = refused && e.code() == ErrorCode::NotQTorsion;
    }
  }
  ok["zeta_precondition"] = refused;
  r.verified = true;
  for (const auto& [k, v] : ok) {
    r.details[k] = v;
    r.verified = r.verified && v;
  }
  return r;
}

}  // namespace fglforge
