#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "fglforge/poly.hpp"

namespace fglforge {

// Exponent tuples with total degree <= X for K formal variables, ordered by
// total degree, plus a dense lookup table.
template <int K>
struct SeriesShape {
  int X = 0;
  std::vector<std::array<int, K>> exps;
  std::vector<int> total;
  std::vector<int> dense;  // (X+1)^K entries, -1 when total > X
  std::vector<std::size_t> first_of_total;  // index of first entry with total t; size X+2

  int index(const std::array<int, K>& e) const {
    std::size_t k = 0;
    for (int i = 0; i < K; ++i) {
      if (e[i] < 0 || e[i] > X) return -1;
      k = k * static_cast<std::size_t>(X + 1) + static_cast<std::size_t>(e[i]);
    }
    return dense[k];
  }

  static std::shared_ptr<const SeriesShape> get(int X) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const SeriesShape>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[X];
    if (!slot) slot = build(X);
    return slot;
  }

 private:
  static std::shared_ptr<const SeriesShape> build(int X) {
    auto s = std::make_shared<SeriesShape>();
    s->X = X;
    std::size_t cells = 1;
    for (int i = 0; i < K; ++i) cells *= static_cast<std::size_t>(X + 1);
    s->dense.assign(cells, -1);
    for (int t = 0; t <= X; ++t) {
      s->first_of_total.push_back(s->exps.size());
      std::array<int, K> e{};
      // enumerate tuples of total exactly t in lexicographic order
      std::function<void(int, int)> rec = [&](int v, int left) {
        if (v == K - 1) {
          e[v] = left;
          s->exps.push_back(e);
          s->total.push_back(t);
          return;
        }
        for (int a = left; a >= 0; --a) {
          e[v] = a;
          rec(v + 1, left - a);
        }
      };
      rec(0, t);
    }
    s->first_of_total.push_back(s->exps.size());
    for (std::size_t i = 0; i < s->exps.size(); ++i) {
      std::size_t k = 0;
      for (int v = 0; v < K; ++v) k = k * static_cast<std::size_t>(X + 1) + static_cast<std::size_t>(s->exps[i][v]);
      s->dense[k] = static_cast<int>(i);
    }
    return s;
  }
};

// Power series in K variables with polynomial coefficients, truncated to
// total degree <= X (inclusive).
template <class C, int K>
class TruncatedSeries {
 public:
  using Poly = Polynomial<C>;
  using Exps = std::array<int, K>;

  TruncatedSeries() = default;
  TruncatedSeries(RingPtr ring, int X) : ring_(std::move(ring)), shape_(SeriesShape<K>::get(X)) {
    if (X < 1) throw Error(ErrorCode::InvalidArgument, "series cutoff must be >= 1");
    c_.assign(shape_->exps.size(), Poly(ring_));
  }
  static TruncatedSeries constant(RingPtr ring, int X, const Poly& p) {
    TruncatedSeries s(std::move(ring), X);
    s.c_[0] = p;
    return s;
  }
  // p * x_var^e
  static TruncatedSeries monomial(RingPtr ring, int X, const Poly& p, int var, int e) {
    TruncatedSeries s(std::move(ring), X);
    Exps ex{};
    ex[var] = e;
    int i = s.shape_->index(ex);
    if (i >= 0) s.c_[i] = p;
    return s;
  }

  const RingPtr& ring() const { return ring_; }
  int cutoff() const { return shape_->X; }
  std::size_t entries() const { return c_.size(); }
  const Exps& exps(std::size_t i) const { return shape_->exps[i]; }
  int total(std::size_t i) const { return shape_->total[i]; }
  const Poly& operator[](std::size_t i) const { return c_[i]; }
  Poly& operator[](std::size_t i) { return c_[i]; }
  const Poly& at(const Exps& e) const {
    int i = shape_->index(e);
    if (i < 0) throw Error(ErrorCode::InvalidArgument, "exponent beyond series cutoff");
    return c_[i];
  }
  Poly& at(const Exps& e) {
    int i = shape_->index(e);
    if (i < 0) throw Error(ErrorCode::InvalidArgument, "exponent beyond series cutoff");
    return c_[i];
  }
  // univariate convenience
  const Poly& coeff(int e) const requires(K == 1) { return c_[e]; }
  Poly& coeff(int e) requires(K == 1) { return c_[e]; }

  bool is_zero() const {
    for (const auto& p : c_)
      if (!p.is_zero()) return false;
    return true;
  }
  bool has_constant_term() const { return !c_[0].is_zero(); }
  // smallest total degree carrying a nonzero coefficient
  std::optional<int> order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return shape_->total[i];
    return std::nullopt;
  }

  TruncatedSeries operator-() const {
    TruncatedSeries r = *this;
    for (auto& p : r.c_) p = -p;
    return r;
  }
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    check(a, b);
    TruncatedSeries r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
      if (!b.c_[i].is_zero()) r.c_[i] += b.c_[i];
    return r;
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    check(a, b);
    TruncatedSeries r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
      if (!b.c_[i].is_zero()) r.c_[i] -= b.c_[i];
    return r;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check(a, b);
    TruncatedSeries r(a.ring_, a.cutoff());
    const auto& sh = *a.shape_;
    const int X = sh.X;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      const std::size_t jmax = sh.first_of_total[X - sh.total[i] + 1];
      for (std::size_t j = 0; j < jmax; ++j) {
        if (b.c_[j].is_zero()) continue;
        Exps e;
        for (int v = 0; v < K; ++v) e[v] = sh.exps[i][v] + sh.exps[j][v];
        r.c_[sh.index(e)] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.cutoff() != b.cutoff()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  TruncatedSeries scaled(const Poly& p) const {
    TruncatedSeries r(ring_, cutoff());
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) r.c_[i] = c_[i] * p;
    return r;
  }
  // multiply by x_var^e (dropping what falls beyond the cutoff)
  TruncatedSeries shifted(int var, int e) const {
    TruncatedSeries r(ring_, cutoff());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      Exps ex = shape_->exps[i];
      ex[var] += e;
      int j = shape_->index(ex);
      if (j >= 0) r.c_[j] = c_[i];
    }
    return r;
  }
  TruncatedSeries truncated(int X) const {
    TruncatedSeries r(ring_, X);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      int j = shape_->index(r.shape_->exps[i]);
      if (j >= 0) r.c_[i] = c_[j];
    }
    return r;
  }
  template <class F>
  TruncatedSeries map_coefficients(F f, RingPtr target) const {
    TruncatedSeries r(target, cutoff());
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) r.c_[i] = f(c_[i]);
    return r;
  }

 private:
  static void check(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.cutoff() != b.cutoff()) throw Error(ErrorCode::InvalidArgument, "series cutoffs differ");
  }

  RingPtr ring_;
  std::shared_ptr<const SeriesShape<K>> shape_;
  std::vector<Poly> c_;
};

template <class C>
using Series1 = TruncatedSeries<C, 1>;
template <class C>
using Series2 = TruncatedSeries<C, 2>;
template <class C>
using Series3 = TruncatedSeries<C, 3>;

// f(g) for univariate f and a series g (any number of variables) without
// constant term; Horner scheme.
template <class C, int K>
TruncatedSeries<C, K> compose(const Series1<C>& f, const TruncatedSeries<C, K>& g) {
  if (g.has_constant_term()) throw Error(ErrorCode::InvalidArgument, "inner series has a constant term");
  const int X = g.cutoff();
  TruncatedSeries<C, K> acc(g.ring(), X);
  const int top = std::min(X, f.cutoff());
  for (int e = top; e >= 1; --e) {
    if (!f.coeff(e).is_zero()) acc[0] += f.coeff(e);
    acc = acc * g;
  }
  if (!f.coeff(0).is_zero()) acc[0] += f.coeff(0);
  return acc;
}

// F(A, B) for a bivariate F and series A, B without constant terms.
template <class C, int K>
TruncatedSeries<C, K> evaluate(const Series2<C>& F, const TruncatedSeries<C, K>& A, const TruncatedSeries<C, K>& B) {
  if (A.has_constant_term() || B.has_constant_term())
    throw Error(ErrorCode::InvalidArgument, "substituted series has a constant term");
  const int X = A.cutoff();
  const int top = std::min(X, F.cutoff());
  std::vector<TruncatedSeries<C, K>> Bp;  // Bp[b] = B^b, b >= 1
  Bp.emplace_back(A.ring(), X);
  for (int b = 1; b <= top; ++b) Bp.push_back(b == 1 ? B : Bp.back() * B);
  // inner_a = sum_b c_ab B^b (constant term c_a0)
  auto inner = [&](int a) {
    TruncatedSeries<C, K> s(A.ring(), X);
    for (int b = 0; a + b <= top; ++b) {
      const auto& c = F.at({a, b});
      if (c.is_zero()) continue;
      if (b == 0) s[0] += c;
      else s = s + Bp[b].scaled(c);
    }
    return s;
  };
  TruncatedSeries<C, K> acc(A.ring(), X);
  for (int a = top; a >= 1; --a) {
    acc = acc + inner(a);
    acc = acc * A;
  }
  return acc + inner(0);
}

}  // namespace fglforge
