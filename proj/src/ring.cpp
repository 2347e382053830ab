#include "fglforge/ring.hpp"

#include <algorithm>

namespace fglforge {

std::string Variable::name() const {
  std::string g = conj ? "g" + std::to_string(conj) : "";
  switch (kind) {
    case VarKind::V: return "v" + std::to_string(level);
    case VarKind::T: return g + "t" + std::to_string(level);
    case VarKind::U: return g + "u";
    case VarKind::Tau: return g + "tau" + std::to_string(level);
  }
  return "?";
}

RingSpec::RingSpec(Ambient a, int n, int m, std::vector<Variable> vars, std::vector<int> degrees,
                   std::vector<bool> laurent)
    : ambient_(a), n_(n), m_(m), vars_(std::move(vars)), deg_(std::move(degrees)), laurent_(std::move(laurent)) {
  if (nvars() > kMaxVars) throw Error(ErrorCode::InvalidArgument, "too many variables (max 24)");
  for (const auto& v : vars_) levels_ = std::max(levels_, v.level);
}

std::optional<int> RingSpec::index_of(const Variable& v) const {
  for (int i = 0; i < nvars(); ++i)
    if (vars_[i] == v) return i;
  return std::nullopt;
}

int RingSpec::index_or_throw(const Variable& v) const {
  auto i = index_of(v);
  if (!i) throw Error(ErrorCode::AmbientMismatch, "variable " + v.name() + " not in " + descriptor());
  return *i;
}

std::string RingSpec::descriptor() const {
  switch (ambient_) {
    case Ambient::BP: return "BP_*[v1..v" + std::to_string(levels_) + "]";
    case Ambient::Rn: return "R_" + std::to_string(n_) + "[t1..t" + std::to_string(levels_) + "]";
    case Ambient::RnM: return "R_" + std::to_string(n_) + "<" + std::to_string(m_) + ">";
    case Ambient::LT: return "R(k," + std::to_string(m_) + ")@n=" + std::to_string(n_);
    case Ambient::Residue: return "K";
  }
  return "?";
}

RingPtr make_bp_ring(int k) {
  std::vector<Variable> vars;
  std::vector<int> deg;
  for (int i = 1; i <= k; ++i) {
    vars.push_back({VarKind::V, i, 0});
    deg.push_back(generator_degree(i));
  }
  std::vector<bool> lau(vars.size(), false);
  return std::make_shared<const RingSpec>(Ambient::BP, 0, 0, vars, deg, lau);
}

RingPtr make_rn_ring(int n, int levels, std::optional<int> m) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  int L = m ? std::min(levels, *m) : levels;
  std::vector<Variable> vars;
  std::vector<int> deg;
  for (int i = 1; i <= L; ++i)
    for (int j = 0; j < (1 << (n - 1)); ++j) {
      vars.push_back({VarKind::T, i, j});
      deg.push_back(generator_degree(i));
    }
  std::vector<bool> lau(vars.size(), false);
  return std::make_shared<const RingSpec>(m ? Ambient::RnM : Ambient::Rn, n, m ? *m : 0, vars, deg, lau);
}

RingPtr make_lt_ring(int n, int m) {
  const int orbit = 1 << (n - 1);
  std::vector<Variable> vars;
  for (int i = 1; i < m; ++i)
    for (int j = 0; j < orbit; ++j) vars.push_back({VarKind::Tau, i, j});
  for (int j = 0; j + 2 <= orbit; ++j) vars.push_back({VarKind::Tau, m, j});
  vars.push_back({VarKind::U, 0, 0});
  std::vector<int> deg(vars.size(), 0);
  deg.back() = 2;
  std::vector<bool> lau(vars.size(), false);
  lau.back() = true;
  return std::make_shared<const RingSpec>(Ambient::LT, n, m, vars, deg, lau);
}

RingPtr make_residue_ring() {
  return std::make_shared<const RingSpec>(Ambient::Residue, 0, 0, std::vector<Variable>{{VarKind::U, 0, 0}},
                                          std::vector<int>{2}, std::vector<bool>{true});
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b))
    throw Error(ErrorCode::AmbientMismatch,
                (a ? a->descriptor() : "null") + " vs " + (b ? b->descriptor() : "null"));
}

}  // namespace fglforge
