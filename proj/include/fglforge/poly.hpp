#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fglforge/coefficients.hpp"
#include "fglforge/ring.hpp"

namespace fglforge {

// Sparse polynomial over C in the variables of a RingSpec. Terms are kept
// sorted by the (lexicographic) order of exponent vectors and never carry a
// zero coefficient. A default-constructed polynomial is zero in "any" ring.
template <class C>
class Polynomial {
 public:
  using Coeff = C;
  using Term = std::pair<Monomial, C>;

  Polynomial() = default;
  explicit Polynomial(RingPtr r) : ring_(std::move(r)) {}

  static Polynomial constant(RingPtr r, const C& c) { return monomial(std::move(r), Monomial{}, c); }
  static Polynomial monomial(RingPtr r, const Monomial& m, const C& c) {
    Polynomial p(std::move(r));
    if (!c.is_zero()) p.terms_.emplace_back(m, c);
    return p;
  }
  static Polynomial variable(RingPtr r, int idx, const C& one, int e = 1) {
    Monomial m;
    m[idx] = static_cast<std::int16_t>(e);
    return monomial(std::move(r), m, one);
  }
  // sums duplicate monomials and drops zeros
  static Polynomial from_terms(RingPtr r, std::vector<Term> terms) {
    Polynomial p(std::move(r));
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second = p.terms_.back().second + t.second;
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    p.drop_zeros();
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const C* coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return t.first < x; });
    return (it != terms_.end() && it->first == m) ? &it->second : nullptr;
  }
  // constant term, or nullptr when absent
  const C* constant_term() const { return coefficient(Monomial{}); }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = ring_->degree_of(terms_.front().first);
    for (const auto& t : terms_)
      if (ring_->degree_of(t.first) != d) return false;
    return true;
  }
  // degree of a nonzero homogeneous polynomial
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty() || !is_homogeneous()) return std::nullopt;
    return ring_->degree_of(terms_.front().first);
  }
  bool uses_variable(int idx) const {
    for (const auto& t : terms_)
      if (t.first[idx] != 0) return true;
    return false;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = add(*this, o, false); }
  Polynomial& operator-=(const Polynomial& o) { return *this = add(*this, o, true); }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return add(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return add(a, b, true); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    RingPtr r = common_ring(a, b);
    Polynomial p(r);
    if (a.is_zero() || b.is_zero()) return p;
    if (a.size() == 1 && a.terms_[0].first.is_one()) return b.scaled(a.terms_[0].second).with_ring(r);
    if (b.size() == 1 && b.terms_[0].first.is_one()) return a.scaled(b.terms_[0].second).with_ring(r);
    std::unordered_map<Monomial, C, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20) * 2);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma * mb;
        auto it = acc.find(m);
        if (it == acc.end()) acc.emplace(m, ca * cb);
        else it->second = it->second + ca * cb;
      }
    p.terms_.reserve(acc.size());
    for (auto& kv : acc)
      if (!kv.second.is_zero()) p.terms_.emplace_back(kv.first, std::move(kv.second));
    std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    return p;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (!a.terms_.empty() && a.ring_ && b.ring_ && a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_)) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].first == b.terms_[i].first) || !(a.terms_[i].second == b.terms_[i].second)) return false;
    return true;
  }

  Polynomial scaled(const C& c) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      C v = t.second * c;
      if (!v.is_zero()) r.terms_.emplace_back(t.first, std::move(v));
    }
    return r;
  }
  Polynomial times_monomial(const Monomial& m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.first = t.first * m;
    return r;  // multiplication by a monomial preserves lexicographic order
  }
  Polynomial pow(unsigned e, const C& one) const {
    Polynomial r = constant(ring_, one), b = *this;
    for (; e; e >>= 1) {
      if (e & 1) r = r * b;
      if (e > 1) b = b * b;
    }
    return r;
  }
  Polynomial with_ring(RingPtr r) const {
    Polynomial p = *this;
    p.ring_ = std::move(r);
    return p;
  }

  // Apply f to every coefficient; zeros are dropped.
  template <class F>
  auto map_coefficients(F f, RingPtr target = nullptr) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    Polynomial<D> r(target ? target : ring_);
    std::vector<std::pair<Monomial, D>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      D v = f(t.second);
      if (!v.is_zero()) out.emplace_back(t.first, std::move(v));
    }
    return Polynomial<D>::from_sorted(r.ring(), std::move(out));
  }
  // Apply f: (monomial, coeff) -> optional term; merges collisions.
  template <class F>
  Polynomial map_terms(F f, RingPtr target = nullptr) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      std::optional<Term> v = f(t.first, t.second);
      if (v) out.push_back(std::move(*v));
    }
    return from_terms(target ? target : ring_, std::move(out));
  }

  static Polynomial from_sorted(RingPtr r, std::vector<Term> terms) {
    Polynomial p(std::move(r));
    p.terms_ = std::move(terms);
    return p;
  }

 private:
  static RingPtr common_ring(const Polynomial& a, const Polynomial& b) {
    if (!a.ring_) return b.ring_;
    if (!b.ring_) return a.ring_;
    require_same_ring(a.ring_, b.ring_);
    return a.ring_;
  }
  static Polynomial add(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial r(common_ring(a, b));
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
        r.terms_.emplace_back(b.terms_[j].first, subtract ? -b.terms_[j].second : b.terms_[j].second);
        ++j;
      } else {
        C v = subtract ? a.terms_[i].second - b.terms_[j].second : a.terms_[i].second + b.terms_[j].second;
        if (!v.is_zero()) r.terms_.emplace_back(a.terms_[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return r;
  }
  void drop_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_zero(); }),
                 terms_.end());
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

using QPoly = Polynomial<Rational>;
using F2Poly = Polynomial<F2>;
using GFPoly = Polynomial<GFElement>;
using WPoly = Polynomial<WittElement>;

// Weighted graded reverse lexicographic order: higher degree first; on ties the
// monomial with the smaller exponent at the first differing variable is larger.
inline bool grevlex_less(const RingSpec& r, const Monomial& a, const Monomial& b) {
  int da = r.degree_of(a), db = r.degree_of(b);
  if (da != db) return da < db;
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

// gamma^r acting on R_n / R_n<m>: T(i,j) -> T(i,j+1), the last conjugate going
// to -T(i,0).
template <class C>
Polynomial<C> gamma_act(const Polynomial<C>& p, int r) {
  if (p.is_zero()) return p;
  const RingSpec& R = *p.ring();
  if (!R.has_gamma()) throw Error(ErrorCode::AmbientMismatch, "no C_{2^n} action on " + R.descriptor());
  const int orbit = R.orbit(), period = 2 * orbit;
  r = ((r % period) + period) % period;
  if (r == 0) return p;
  const int nv = R.nvars();
  std::vector<int> target(nv), flip(nv);
  for (int v = 0; v < nv; ++v) {
    const Variable& x = R.var(v);
    int j = x.conj + r;
    int wraps = j / orbit;
    target[v] = R.index_or_throw({VarKind::T, x.level, j % orbit});
    flip[v] = wraps & 1;
  }
  std::vector<typename Polynomial<C>::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial mm;
    int sign = 0;
    for (int v = 0; v < nv; ++v) {
      if (!m[v]) continue;
      mm[target[v]] = m[v];
      if (flip[v]) sign ^= (m[v] & 1);
    }
    out.emplace_back(mm, sign ? -c : c);
  }
  return Polynomial<C>::from_terms(p.ring(), std::move(out));
}

// Coefficient-wise reduction Z_(2) -> F_2.
F2Poly reduce_mod2(const QPoly& p);
// Exact division of every coefficient by an integer.
QPoly divide_exact(const QPoly& p, const Rational& c);

// Extend an assignment of the variables to a ring homomorphism. images[v] is
// the target of variable v; inv_images[v] (optional) the target of v^{-1}.
// embed maps coefficients into the target.
template <class C, class T, class Embed>
T ring_map(const Polynomial<C>& p, const std::vector<std::optional<T>>& images, Embed embed, const T& zero,
           const std::vector<std::optional<T>>* inv_images = nullptr) {
  const int nv = p.ring() ? p.ring()->nvars() : 0;
  std::vector<std::vector<T>> pos(nv), neg(nv);  // cached powers
  auto power = [&](int v, int e) -> const T& {
    auto& cache = e > 0 ? pos[v] : neg[v];
    const std::optional<T>* base = nullptr;
    if (e > 0 && v < static_cast<int>(images.size())) base = &images[v];
    else if (e < 0 && inv_images && v < static_cast<int>(inv_images->size())) base = &(*inv_images)[v];
    if (!base || !base->has_value())
      throw Error(ErrorCode::UnassignedVariable, "no image for " + p.ring()->var_name(v) + (e < 0 ? "^-1" : ""));
    int a = e > 0 ? e : -e;
    if (cache.empty()) cache.push_back(**base);
    while (static_cast<int>(cache.size()) < a) cache.push_back(cache.back() * **base);
    return cache[a - 1];
  };
  T acc = zero;
  for (const auto& [m, c] : p.terms()) {
    T term = embed(c);
    for (int v = 0; v < nv; ++v)
      if (m[v]) term = term * power(v, m[v]);
    acc = acc + term;
  }
  return acc;
}

}  // namespace fglforge
