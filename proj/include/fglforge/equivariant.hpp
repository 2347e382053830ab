#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "fglforge/fgl.hpp"
#include "fglforge/groebner.hpp"
#include "fglforge/report.hpp"

namespace fglforge {

// Which elements generate I_k: the Araki images v_k, or v_k := t_k^{C_2}.
enum class VConvention { Araki, TC2 };
const char* convention_name(VConvention c);

// The composite of all twisted psi's compared against -[-1]_F(x) or [-1]_F(x).
enum class ChainConvention { MinusInverse, Inverse, Neither };
const char* chain_convention_name(ChainConvention c);

// R_n (or R_n<m>) with its C_{2^n}-action, the pushed-forward universal FGL,
// the equivariant logarithm, v-images and the lower-level t generators.
class RnContext {
 public:
  // cutoff 0 means 2^{k_max}
  RnContext(int n, int k_max, std::optional<int> m = std::nullopt, int cutoff = 0);

  int n() const { return n_; }
  int k_max() const { return k_max_; }
  std::optional<int> m() const { return m_; }
  int cutoff() const { return X_; }
  // number of generator levels carried (>= k_max, covers every 2^i <= cutoff)
  int levels() const { return L_; }
  const RingPtr& ring() const { return ring_; }
  json bounds() const;

  QPoly one() const { return QPoly::constant(ring_, Rational(1)); }
  // gamma^j t_i^{C_{2^n}}; zero when i > m
  QPoly t(int i, int conj = 0) const;
  // l_0..l_L in R_n (x) Q
  const std::vector<QPoly>& ell() const { return ell_; }
  // v_1..v_L (index 0 unused)
  const std::vector<QPoly>& v() const { return v_; }
  QPoly gamma(const QPoly& p, int r = 1) const { return gamma_act(p, r); }

  std::shared_ptr<const QFGL> fgl() const;
  // F^{gamma^s}
  std::shared_ptr<const QFGL> fgl_conj(int s) const;
  // psi_{gamma^{i+1}} = (gamma^i)_* psi_gamma : F^{gamma^i} -> F^{gamma^{i+1}}
  StrictIso<Rational> psi(int i) const;
  // psi_{gamma^s} o ... o psi_{gamma}: F -> F^{gamma^s}
  StrictIso<Rational> chain(int s) const;

  // t_k^{C_{2^r}} for k = 1..L (entry k-1), by composing 2^{n-r} twisted isos.
  const std::vector<QPoly>& t_level(int r) const;
  // same, from l_k = gamma^s l_k + t_k + sum gamma^s l_j t_{k-j}^{2^j}
  std::vector<QPoly> t_level_via_logs(int r) const;

  // v_1..v_L under a convention (entry k-1 is v_k)
  std::vector<QPoly> v_generators(VConvention c) const;
  // Groebner basis of I_k mod 2 = (v_1..v_{k-1}) valid to degree D
  std::shared_ptr<const GroebnerBasis> ideal_basis(int k, VConvention c, int D) const;
  // p in I_k = (2, v_1, ..., v_{k-1}); p homogeneous
  bool contains_Ik(const QPoly& p, int k, VConvention c = VConvention::Araki) const;
  F2Poly normal_form_Ik(const QPoly& p, int k, VConvention c = VConvention::Araki) const;

 private:
  int n_, k_max_, X_, L_;
  std::optional<int> m_;
  RingPtr ring_;
  std::vector<QPoly> ell_, v_;

  mutable std::mutex mu_;
  mutable std::shared_ptr<const QFGL> fgl_;
  mutable std::map<int, std::shared_ptr<const QFGL>> conj_;
  mutable std::map<int, std::vector<QPoly>> tlevel_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const GroebnerBasis>> ideals_;
  mutable std::optional<StrictIso<Rational>> psi0_;
};

// t_i -> 0 for i > m, as a map into the quotient context's ring
QPoly quotient_map(const QPoly& p, const RnContext& target);
RnContext quotient_to_m(const RnContext& ctx, int m);
// Inclusion R_{n-1} -> R_n: gamma_{n-1}^j t_i^{C_{2^{n-1}}} -> gamma_n^{2j} t_i^{C_{2^{n-1}}}
QPoly include_lower(const QPoly& p, const RnContext& lower, const RnContext& upper);

// ------------------------------------------------------------------ claims

Report verify_log_denominators(const RnContext& ctx);
Report verify_eq351(const RnContext& ctx);
Report verify_v_integrality(const RnContext& ctx);
Report verify_tk_recursion(const RnContext& ctx, int k);
Report verify_tkvk(const RnContext& ctx, int k);
Report verify_ideal_invariance(const RnContext& ctx, int k);
Report verify_v_collapse(const RnContext& ctx, int r, VConvention c);
// level parameter k: images of t_r^{C_{2^{n-k}}} and conjugates lie in I_r
Report verify_t_collapse(const RnContext& ctx, int k, int r, VConvention c);
Report verify_t_level_routes(const RnContext& ctx);
Report verify_functoriality(int k_max);

// Determines the convention at n = 1, k <= 2.
ChainConvention pin_chain_convention();
Report chain_inversion_check(const RnContext& ctx);
// Same check for the all-t-zero specialization (the additive law).
Report chain_inversion_degenerate(int n, int cutoff);

}  // namespace fglforge
