#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <mutex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fglforge/errors.hpp"

namespace fglforge {

// Exact rational number, always in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(implicit)
  Rational(long num, long den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  static Rational parse(std::string_view s);

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool denominator_odd() const { return mpz_odd_p(q_.get_den_mpz_t()) != 0; }
  // 2-adic valuation; a huge value for zero.
  int valuation2() const;
  std::string str() const { return q_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

 private:
  mpq_class q_;
};

// Element of Z_(2): rational with odd denominator.
class TwoLocalInt {
 public:
  TwoLocalInt() = default;
  TwoLocalInt(long v) : v_(v) {}  // NOLINT(implicit)
  explicit TwoLocalInt(const Rational& r);
  const Rational& value() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_unit() const;
  TwoLocalInt inverse() const;
  // residue in F_2
  int mod2() const;

  TwoLocalInt operator-() const { return TwoLocalInt(-v_); }
  friend TwoLocalInt operator+(const TwoLocalInt& a, const TwoLocalInt& b) { return TwoLocalInt(a.v_ + b.v_); }
  friend TwoLocalInt operator-(const TwoLocalInt& a, const TwoLocalInt& b) { return TwoLocalInt(a.v_ - b.v_); }
  friend TwoLocalInt operator*(const TwoLocalInt& a, const TwoLocalInt& b) { return TwoLocalInt(a.v_ * b.v_); }
  friend bool operator==(const TwoLocalInt& a, const TwoLocalInt& b) { return a.v_ == b.v_; }

 private:
  Rational v_;
};

// The prime field.
struct F2 {
  std::uint8_t bit = 0;
  F2() = default;
  explicit F2(int b) : bit(static_cast<std::uint8_t>(b & 1)) {}
  bool is_zero() const { return bit == 0; }
  F2 operator-() const { return *this; }
  friend F2 operator+(F2 a, F2 b) { return F2(a.bit ^ b.bit); }
  friend F2 operator-(F2 a, F2 b) { return F2(a.bit ^ b.bit); }
  friend F2 operator*(F2 a, F2 b) { return F2(a.bit & b.bit); }
  friend bool operator==(F2 a, F2 b) { return a.bit == b.bit; }
};

// F_{2^d} = F_2[x]/(modulus). The modulus is stored as a bit mask with bit i
// holding the coefficient of x^i (bit d is always set).
class FiniteFieldSpec {
 public:
  FiniteFieldSpec(int d, std::vector<int> modulus_bits);
  static std::shared_ptr<const FiniteFieldSpec> make(int d, std::vector<int> modulus_bits);
  // x+1, x^2+x+1, x^3+x+1, else the first irreducible in numeric order.
  static std::shared_ptr<const FiniteFieldSpec> standard(int d);

  int d() const { return d_; }
  std::uint32_t modulus_mask() const { return mask_; }
  std::vector<int> modulus_bits() const;
  std::uint32_t size() const { return 1u << d_; }
  bool operator==(const FiniteFieldSpec& o) const { return d_ == o.d_ && mask_ == o.mask_; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;

  // Coefficients of sigma(x) in W(F_{2^d}) mod 2^N, the Hensel root of the
  // lifted modulus congruent to x^2. Cached per precision.
  const std::vector<std::uint64_t>& frobenius_image_of_x(int N) const;

 private:
  int d_;
  std::uint32_t mask_;
  mutable std::mutex cache_mu_;
  mutable std::map<int, std::vector<std::uint64_t>> frob_cache_;
};

using FieldPtr = std::shared_ptr<const FiniteFieldSpec>;

bool is_irreducible_f2(std::uint32_t mask);

class GFElement {
 public:
  GFElement() = default;
  GFElement(FieldPtr spec, std::uint32_t bits);
  static GFElement zero(FieldPtr s) { return GFElement(std::move(s), 0); }
  static GFElement one(FieldPtr s) { return GFElement(std::move(s), 1); }
  // class of x
  static GFElement generator(FieldPtr s);

  const FieldPtr& spec() const { return spec_; }
  std::uint32_t bits() const { return bits_; }
  std::vector<int> coeffs() const;
  bool is_zero() const { return bits_ == 0; }
  bool is_one() const { return bits_ == 1; }

  GFElement operator-() const { return *this; }
  friend GFElement operator+(const GFElement& a, const GFElement& b);
  friend GFElement operator-(const GFElement& a, const GFElement& b) { return a + b; }
  friend GFElement operator*(const GFElement& a, const GFElement& b);
  friend bool operator==(const GFElement& a, const GFElement& b) { return a.bits_ == b.bits_; }
  GFElement pow(std::uint64_t e) const;
  GFElement inverse() const;
  GFElement frobenius() const { return *this * *this; }
  std::string str() const;

 private:
  FieldPtr spec_;
  std::uint32_t bits_ = 0;
};

// Element of W(F_{2^d}) / 2^N, represented in Z_2[x]/(f~) with f~ the {0,1}
// lift of the modulus. Precision at most 62.
class WittElement {
 public:
  WittElement() = default;
  WittElement(FieldPtr spec, int precision, std::vector<std::uint64_t> coeffs);
  static WittElement from_int(FieldPtr spec, int precision, long v);
  static WittElement from_rational(FieldPtr spec, int precision, const Rational& r);
  // naive lift of a residue (coefficients 0/1)
  static WittElement lift(const GFElement& a, int precision);

  const FieldPtr& spec() const { return spec_; }
  int precision() const { return N_; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_unit() const { return !residue().is_zero(); }
  // min 2-adic valuation over basis coefficients (precision if zero)
  int valuation() const;
  GFElement residue() const;
  // reduce modulo 2^j (j <= precision); precision label unchanged
  WittElement reduced_mod(int j) const;
  // divide by 2^s; requires valuation >= s; precision label unchanged
  WittElement shifted_down(int s) const;

  WittElement operator-() const;
  friend WittElement operator+(const WittElement& a, const WittElement& b);
  friend WittElement operator-(const WittElement& a, const WittElement& b);
  friend WittElement operator*(const WittElement& a, const WittElement& b);
  friend bool operator==(const WittElement& a, const WittElement& b);
  WittElement pow(std::uint64_t e) const;
  WittElement inverse() const;  // InverseOfNonUnit unless residue nonzero
  std::string str() const;

 private:
  std::uint64_t mask() const { return N_ >= 64 ? ~0ull : ((1ull << N_) - 1); }
  FieldPtr spec_;
  int N_ = 0;
  std::vector<std::uint64_t> c_;
};

WittElement teichmuller(const GFElement& a, int N);
WittElement frobenius_lift(const WittElement& w);

}  // namespace fglforge
