#pragma once

#include <vector>

#include "fglforge/poly.hpp"

namespace fglforge {

// Degree-truncated Groebner basis over F_2 of a homogeneous ideal, for the
// weighted graded reverse lexicographic order of the ring.
class GroebnerBasis {
 public:
  static GroebnerBasis compute(RingPtr ring, const std::vector<F2Poly>& gens, int degree_bound);

  // Fully reduced normal form; throws DegreeBoundExceeded for terms above D.
  F2Poly normal_form(const F2Poly& p) const;
  bool contains(const F2Poly& p) const { return normal_form(p).is_zero(); }
  // Every S-polynomial of degree <= D reduces to zero.
  bool verify_complete() const;

  const RingPtr& ring() const { return ring_; }
  int degree_bound() const { return D_; }
  const std::vector<F2Poly>& generators() const { return gens_; }
  std::vector<F2Poly> basis() const;
  std::size_t size() const { return basis_.size(); }

  // internal representation: monomials in ascending monomial order
  using Sorted = std::vector<Monomial>;

 private:
  GroebnerBasis() = default;
  Sorted reduce(Sorted p) const;

  RingPtr ring_;
  int D_ = 0;
  std::vector<F2Poly> gens_;
  std::vector<Sorted> basis_;
};

// All monomials of the given weighted degree (ring variables must have
// positive degree).
std::vector<Monomial> monomials_of_degree(const RingSpec& r, int degree);

// Independent membership test for a homogeneous p: Gaussian elimination over
// F_2 on the graded piece of degree deg(p) spanned by monomial multiples of
// the generators.
bool linear_algebra_contains(const RingPtr& ring, const std::vector<F2Poly>& gens, const F2Poly& p);

}  // namespace fglforge
