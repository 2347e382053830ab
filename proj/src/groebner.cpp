#include "fglforge/groebner.hpp"

#include <algorithm>
#include <map>

namespace fglforge {

F2Poly reduce_mod2(const QPoly& p) {
  return p.map_coefficients([](const Rational& c) {
    if (!c.denominator_odd()) throw Error(ErrorCode::NonIntegralCoefficient, "even denominator in " + c.str());
    return F2(mpz_odd_p(c.raw().get_num_mpz_t()) ? 1 : 0);
  });
}

QPoly divide_exact(const QPoly& p, const Rational& c) {
  return p.map_coefficients([&](const Rational& x) { return x / c; });
}

namespace {

using Sorted = GroebnerBasis::Sorted;

struct Order {
  const RingSpec* r;
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_less(*r, a, b); }
};

Sorted to_sorted(const F2Poly& p, const Order& ord) {
  Sorted s;
  s.reserve(p.size());
  for (const auto& t : p.terms()) s.push_back(t.first);
  std::sort(s.begin(), s.end(), ord);
  return s;
}

F2Poly from_sorted(const RingPtr& r, const Sorted& s) {
  std::vector<F2Poly::Term> t;
  t.reserve(s.size());
  for (const auto& m : s) t.emplace_back(m, F2(1));
  return F2Poly::from_terms(r, std::move(t));
}

// symmetric difference of two ascending lists, second one multiplied by mu
Sorted add_shifted(const Sorted& a, const Sorted& b, const Monomial& mu, const Order& ord) {
  Sorted out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) { out.push_back(a[i++]); continue; }
    Monomial bj = b[j] * mu;
    if (i == a.size() || ord(bj, a[i])) { out.push_back(bj); ++j; continue; }
    if (ord(a[i], bj)) { out.push_back(a[i++]); continue; }
    ++i;
    ++j;  // cancel
  }
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] && b[i]) return false;
  return true;
}

}  // namespace

Sorted GroebnerBasis::reduce(Sorted p) const {
  Order ord{ring_.get()};
  Sorted rem;  // collected in descending order
  while (!p.empty()) {
    const Monomial lt = p.back();
    if (ring_->degree_of(lt) > D_)
      throw Error(ErrorCode::DegreeBoundExceeded,
                  "degree " + std::to_string(ring_->degree_of(lt)) + " above bound " + std::to_string(D_));
    const Sorted* g = nullptr;
    for (const auto& b : basis_)
      if (b.back().divides(lt)) { g = &b; break; }
    if (g) {
      p = add_shifted(p, *g, lt / g->back(), ord);
    } else {
      rem.push_back(lt);
      p.pop_back();
    }
  }
  std::reverse(rem.begin(), rem.end());
  return rem;
}

GroebnerBasis GroebnerBasis::compute(RingPtr ring, const std::vector<F2Poly>& gens, int D) {
  GroebnerBasis gb;
  gb.ring_ = ring;
  gb.D_ = D;
  gb.gens_ = gens;
  Order ord{ring.get()};
  // pending work keyed by degree: generators and S-pairs
  std::map<int, std::vector<Sorted>> work;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    require_same_ring(ring, g.ring());
    if (!g.is_homogeneous()) throw Error(ErrorCode::InvalidArgument, "Groebner generators must be homogeneous");
    int d = *g.homogeneous_degree();
    if (d <= D) work[d].push_back(to_sorted(g, ord));
  }
  while (!work.empty()) {
    auto it = work.begin();
    std::vector<Sorted> batch = std::move(it->second);
    work.erase(it);
    for (auto& cand : batch) {
      Sorted r = gb.reduce(std::move(cand));
      if (r.empty()) continue;
      // new pairs
      const Monomial& lr = r.back();
      for (const auto& b : gb.basis_) {
        const Monomial& lb = b.back();
        if (coprime(lr, lb)) continue;  // Buchberger's first criterion
        Monomial l = lcm(lr, lb);
        int dl = ring->degree_of(l);
        if (dl > D) continue;
        Sorted s = add_shifted(Sorted{}, r, l / lr, ord);
        s = add_shifted(s, b, l / lb, ord);
        if (!s.empty()) work[dl].push_back(std::move(s));
      }
      gb.basis_.push_back(std::move(r));
    }
  }
  // interreduce so the basis is reduced (leading terms are already minimal)
  for (std::size_t i = 0; i < gb.basis_.size(); ++i) {
    Sorted b = gb.basis_[i];
    Monomial lt = b.back();
    b.pop_back();
    std::vector<Sorted> others = gb.basis_;
    GroebnerBasis tmp;
    tmp.ring_ = ring;
    tmp.D_ = D;
    for (std::size_t j = 0; j < others.size(); ++j)
      if (j != i) tmp.basis_.push_back(others[j]);
    Sorted tail = tmp.reduce(std::move(b));
    tail.push_back(lt);
    gb.basis_[i] = std::move(tail);
  }
  return gb;
}

F2Poly GroebnerBasis::normal_form(const F2Poly& p) const {
  if (p.is_zero()) return F2Poly(ring_);
  require_same_ring(ring_, p.ring());
  Order ord{ring_.get()};
  return from_sorted(ring_, reduce(to_sorted(p, ord)));
}

bool GroebnerBasis::verify_complete() const {
  Order ord{ring_.get()};
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      const Monomial& a = basis_[i].back();
      const Monomial& b = basis_[j].back();
      Monomial l = lcm(a, b);
      if (ring_->degree_of(l) > D_) continue;
      Sorted s = add_shifted(Sorted{}, basis_[i], l / a, ord);
      s = add_shifted(s, basis_[j], l / b, ord);
      if (!reduce(std::move(s)).empty()) return false;
    }
  return true;
}

std::vector<F2Poly> GroebnerBasis::basis() const {
  std::vector<F2Poly> out;
  for (const auto& b : basis_) out.push_back(from_sorted(ring_, b));
  return out;
}

std::vector<Monomial> monomials_of_degree(const RingSpec& r, int degree) {
  std::vector<Monomial> out;
  const int nv = r.nvars();
  for (int i = 0; i < nv; ++i)
    if (r.degree(i) <= 0) throw Error(ErrorCode::InvalidArgument, "graded piece needs positive degrees");
  Monomial cur;
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == nv) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int e = 0; e * r.degree(v) <= left; ++e) {
      cur[v] = static_cast<std::int16_t>(e);
      rec(v + 1, left - e * r.degree(v));
    }
    cur[v] = 0;
  };
  if (degree >= 0) rec(0, degree);
  return out;
}

bool linear_algebra_contains(const RingPtr& ring, const std::vector<F2Poly>& gens, const F2Poly& p) {
  if (p.is_zero()) return true;
  if (!p.is_homogeneous()) throw Error(ErrorCode::InvalidArgument, "membership oracle needs homogeneous input");
  const int d = *p.homogeneous_degree();
  std::vector<Monomial> basis = monomials_of_degree(*ring, d);
  std::map<Monomial, std::size_t> col;
  for (std::size_t i = 0; i < basis.size(); ++i) col[basis[i]] = i;
  const std::size_t words = (basis.size() + 63) / 64;
  using Row = std::vector<std::uint64_t>;
  auto to_row = [&](const F2Poly& q) {
    Row r(words, 0);
    for (const auto& t : q.terms()) {
      std::size_t c = col.at(t.first);
      r[c / 64] ^= 1ull << (c % 64);
    }
    return r;
  };
  // echelon form keyed by pivot column
  std::map<std::size_t, Row> pivots;
  auto lowest = [&](const Row& r) -> std::ptrdiff_t {
    for (std::size_t w = 0; w < words; ++w)
      if (r[w]) return static_cast<std::ptrdiff_t>(w * 64 + __builtin_ctzll(r[w]));
    return -1;
  };
  auto eliminate = [&](Row r) {
    for (;;) {
      auto c = lowest(r);
      if (c < 0) return r;
      auto it = pivots.find(static_cast<std::size_t>(c));
      if (it == pivots.end()) return r;
      for (std::size_t w = 0; w < words; ++w) r[w] ^= it->second[w];
    }
  };
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    int dg = *g.homogeneous_degree();
    if (dg > d) continue;
    for (const auto& mu : monomials_of_degree(*ring, d - dg)) {
      Row r = eliminate(to_row(g.times_monomial(mu)));
      auto c = lowest(r);
      if (c >= 0) pivots.emplace(static_cast<std::size_t>(c), std::move(r));
    }
  }
  Row target = eliminate(to_row(p));
  return lowest(target) < 0;
}

}  // namespace fglforge
