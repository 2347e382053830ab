#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "fglforge/equivariant.hpp"

namespace fglforge {

// Shared shape of every element of one Lubin-Tate ring.
struct LTParams {
  int n = 0, m = 0, h = 0;
  int N = 8;  // Witt precision
  int M = 6;  // m-adic truncation order
  FieldPtr field;
  RingPtr ring;  // tau variables then the Laurent unit u
  RingPtr residue_ring;
};
using LTParamsPtr = std::shared_ptr<const LTParams>;

// Element of W(k)[[tau]][u^{+-1}] modulo m^M, m = (2, tau's). The coefficient of
// tau^e is kept modulo 2^{M-|e|}; terms with |e| >= M vanish.
class LTElement {
 public:
  LTElement() = default;
  LTElement(LTParamsPtr P, WPoly p);

  const LTParamsPtr& params() const { return P_; }
  const WPoly& poly() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }
  bool is_homogeneous() const { return p_.is_homogeneous(); }
  // m-adic filtration of the lowest term (M for zero)
  int filtration() const;
  // image in k[u^{+-1}] (tau-constant part mod 2)
  GFPoly residue() const;
  // residue is a single nonzero monomial a*u^s
  bool is_unit() const;
  LTElement inverse() const;
  LTElement pow(int e) const;

  LTElement operator-() const { return LTElement(P_, -p_); }
  friend LTElement operator+(const LTElement& a, const LTElement& b);
  friend LTElement operator-(const LTElement& a, const LTElement& b);
  friend LTElement operator*(const LTElement& a, const LTElement& b);
  friend bool operator==(const LTElement& a, const LTElement& b);

 private:
  LTParamsPtr P_;
  WPoly p_;
};

int tau_degree(const RingSpec& R, const Monomial& m);

// Basis labels {2, tau's} and one row per generator, entries in k.
struct CotangentMatrix {
  std::vector<std::string> basis;
  std::vector<std::string> row_labels;
  std::vector<std::vector<GFElement>> rows;
  int rank = 0;
  json to_json() const;
};

int rank_over_field(std::vector<std::vector<GFElement>> rows);

class LTContext {
 public:
  LTContext(int n, int m, int d = 1, std::optional<std::vector<int>> modulus = std::nullopt, int N = 8, int M = 6);

  int n() const { return P_->n; }
  int m() const { return P_->m; }
  int h() const { return P_->h; }
  int q() const { return (1 << P_->m) - 1; }
  int d() const { return P_->field->d(); }
  // |k^x[q]| = gcd(q, 2^d - 1)
  int alpha() const;
  int N() const { return P_->N; }
  int M() const { return P_->M; }
  const FieldPtr& field() const { return P_->field; }
  const RingPtr& ring() const { return P_->ring; }
  const LTParamsPtr& params() const { return P_; }
  int orbit() const { return 1 << (P_->n - 1); }
  json describe() const;

  LTElement zero() const { return LTElement(P_, WPoly(P_->ring)); }
  LTElement constant(const WittElement& c) const;
  LTElement from_int(long v) const;
  // gamma^j tau_i; throws InvalidArgument when absent from the presentation
  LTElement tau(int i, int j = 0) const;
  LTElement u(int s = 1) const;
  LTElement from_poly(const WPoly& p) const { return LTElement(P_, p); }
  // gamma^j u = u prod_{r<j} (1 - gamma^r tau_m)
  LTElement gamma_u(int j) const;

  // random element, tau-degree < M, u-exponent in [-2, 2] or exactly s
  LTElement random(std::mt19937_64& rng, int terms, std::optional<int> s = std::nullopt) const;

  // R_n<m> with generator levels >= k (cached)
  const RnContext& rn(int k) const;

 private:
  LTParamsPtr P_;
  std::vector<std::optional<LTElement>> gamma_img_, gamma_inv_img_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<RnContext>> rn_;

  friend LTElement lt_gamma(const LTContext&, const LTElement&);
};

// Specialization t_i -> tau_i u^{2^i-1} (i < m), t_m -> u^{2^m-1}, t_i -> 0 (i > m).
LTElement lt_specialize(const LTContext& ctx, const QPoly& p);
LTElement lt_gamma(const LTContext& ctx, const LTElement& e);
LTElement lt_gamma_pow(const LTContext& ctx, const LTElement& e, int r);
// u -> T(zeta)^{-1} u, tau_i -> T(zeta)^{2^i-1} tau_i (i < m); NotQTorsion unless zeta^q = 1
LTElement lt_zeta(const LTContext& ctx, const GFElement& zeta, const LTElement& e);
LTElement lt_galois(const LTContext& ctx, const LTElement& e);
LTElement v_in_lt(const LTContext& ctx, int k);

// elements of k^x[q]
std::vector<GFElement> q_torsion(const LTContext& ctx);

CotangentMatrix cotangent_matrix(const LTContext& ctx);
Report cotangent_check(const LTContext& ctx);

struct ResidueHeight {
  int height;
  GFPoly leading;  // coefficient of x^{2^h} in [2](x) over k[u^{+-1}]
  GFPoly v_h_residue;
};
ResidueHeight residue_height_raw(const LTContext& ctx);
Report residue_height(const LTContext& ctx);

bool verify_unit(const LTContext& ctx, const LTElement& e);

struct DFactor {
  int i;
  LTElement value;
  bool unit;
};
std::vector<DFactor> d_factors_raw(const LTContext& ctx);
Report d_factors(const LTContext& ctx);

Report fixed_subring_presentation(const LTContext& ctx, int u_bound = 6);
// 2 gamma^{2^{n-1}-1}u = gamma^{2^{n-1}-1}(u - gamma u) - sum_{r <= 2^{n-1}-2} gamma^r(u - gamma u)
Report two_in_maximal_ideal(const LTContext& ctx);
Report specialization_equivariance(const LTContext& ctx);
Report action_suite(const LTContext& ctx, int samples = 50, std::uint64_t seed = 1);

}  // namespace fglforge
