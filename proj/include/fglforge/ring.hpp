#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fglforge/errors.hpp"

namespace fglforge {

inline constexpr int kMaxVars = 24;

// Exponent vector. Signed so that the Laurent variable u can carry negative
// exponents.
struct Monomial {
  std::array<std::int16_t, kMaxVars> e{};

  std::int16_t operator[](int i) const { return e[i]; }
  std::int16_t& operator[](int i) { return e[i]; }
  bool is_one() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }
  int total() const {
    int s = 0;
    for (auto x : e) s += x;
    return s;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::int16_t>(a.e[i] + b.e[i]);
    return r;
  }
  // a / b, assuming b divides a
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::int16_t>(a.e[i] - b.e[i]);
    return r;
  }
  bool divides(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : m.e) {
      h ^= static_cast<std::uint16_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

enum class VarKind { V, T, U, Tau };

struct Variable {
  VarKind kind;
  int level = 0;  // i in v_i, t_i, tau_i; 0 for u
  int conj = 0;   // j in gamma^j
  friend bool operator==(const Variable&, const Variable&) = default;
  std::string name() const;
};

enum class Ambient { BP, Rn, RnM, LT, Residue };

// Description of a graded polynomial ring: the variables, their degrees and
// which of them are invertible.
class RingSpec {
 public:
  RingSpec(Ambient a, int n, int m, std::vector<Variable> vars, std::vector<int> degrees,
           std::vector<bool> laurent);

  Ambient ambient() const { return ambient_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const Variable& var(int i) const { return vars_[i]; }
  int degree(int i) const { return deg_[i]; }
  bool laurent(int i) const { return laurent_[i]; }
  std::optional<int> index_of(const Variable& v) const;
  int index_or_throw(const Variable& v) const;
  std::string descriptor() const;
  std::string var_name(int i) const { return vars_[i].name(); }
  int degree_of(const Monomial& m) const {
    int d = 0;
    for (int i = 0; i < nvars(); ++i) d += m.e[i] * deg_[i];
    return d;
  }
  // whether the C_{2^n} action on T-variables is defined
  bool has_gamma() const { return ambient_ == Ambient::Rn || ambient_ == Ambient::RnM; }
  int orbit() const { return 1 << (n_ - 1); }
  // highest t-level present (R_n rings), number of v's (BP)
  int levels() const { return levels_; }

  friend bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.ambient_ == b.ambient_ && a.n_ == b.n_ && a.m_ == b.m_ && a.vars_ == b.vars_;
  }

 private:
  Ambient ambient_;
  int n_, m_, levels_ = 0;
  std::vector<Variable> vars_;
  std::vector<int> deg_;
  std::vector<bool> laurent_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

inline int generator_degree(int i) { return 2 * ((1 << i) - 1); }

RingPtr make_bp_ring(int k);
// R_n with t-levels 1..levels; with m set, the quotient R_n<m> (levels <= m).
RingPtr make_rn_ring(int n, int levels, std::optional<int> m = std::nullopt);
// tau variables of R(k,m) followed by the Laurent unit u
RingPtr make_lt_ring(int n, int m);
// F_{2^d}[u^{+-1}]
RingPtr make_residue_ring();

void require_same_ring(const RingPtr& a, const RingPtr& b);

}  // namespace fglforge
