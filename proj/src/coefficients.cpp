#include "fglforge/coefficients.hpp"

#include <algorithm>
#include <sstream>

namespace fglforge {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InverseOfNonUnit: return "InverseOfNonUnit";
    case ErrorCode::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case ErrorCode::NonIntegralResult: return "NonIntegralResult";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::UnassignedVariable: return "UnassignedVariable";
    case ErrorCode::DegreeBoundExceeded: return "DegreeBoundExceeded";
    case ErrorCode::NonTwoTypicalIso: return "NonTwoTypicalIso";
    case ErrorCode::SourceTargetMismatch: return "SourceTargetMismatch";
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::HeightExceedsCutoff: return "HeightExceedsCutoff";
    case ErrorCode::ConsistencyFailure: return "ConsistencyFailure";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
    case ErrorCode::TruncationOverflow: return "TruncationOverflow";
    case ErrorCode::NotQTorsion: return "NotQTorsion";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TeichmullerDivergence: return "TeichmullerDivergence";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Rational

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
  mpq_class q;
  if (q.set_str(std::string(s), 10) != 0 || q.get_den() == 0)
    throw Error(ErrorCode::InvalidArgument, "cannot parse rational '" + std::string(s) + "'");
  q.canonicalize();
  return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::InverseOfNonUnit, "division by zero");
  q_ /= o.q_;
  return *this;
}

int Rational::valuation2() const {
  if (is_zero()) return 1 << 20;
  int vn = static_cast<int>(mpz_scan1(q_.get_num_mpz_t(), 0));
  int vd = static_cast<int>(mpz_scan1(q_.get_den_mpz_t(), 0));
  return vn - vd;
}

// ---------------------------------------------------------------- TwoLocalInt

TwoLocalInt::TwoLocalInt(const Rational& r) : v_(r) {
  if (!r.denominator_odd())
    throw Error(ErrorCode::NonIntegralCoefficient, "even denominator in " + r.str());
}

bool TwoLocalInt::is_unit() const { return !v_.is_zero() && mpz_odd_p(v_.raw().get_num_mpz_t()); }

TwoLocalInt TwoLocalInt::inverse() const {
  if (!is_unit()) throw Error(ErrorCode::InverseOfNonUnit, v_.str() + " is not a unit in Z_(2)");
  return TwoLocalInt(Rational(1) / v_);
}

int TwoLocalInt::mod2() const { return mpz_odd_p(v_.raw().get_num_mpz_t()) ? 1 : 0; }

// ---------------------------------------------------------------- finite fields

namespace {

int deg_f2(std::uint64_t p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

std::uint64_t mod_f2(std::uint64_t a, std::uint64_t m) {
  int dm = deg_f2(m);
  for (int da = deg_f2(a); da >= dm; da = deg_f2(a)) a ^= m << (da - dm);
  return a;
}

}  // namespace

bool is_irreducible_f2(std::uint32_t mask) {
  int d = deg_f2(mask);
  if (d < 1) return false;
  // trial division by every polynomial of degree 1..d/2
  for (std::uint64_t g = 2; deg_f2(g) <= d / 2; ++g)
    if (mod_f2(mask, g) == 0) return false;
  return true;
}

FiniteFieldSpec::FiniteFieldSpec(int d, std::vector<int> bits) : d_(d), mask_(0) {
  if (d < 1 || d > 20) throw Error(ErrorCode::InvalidArgument, "extension degree must be in 1..20");
  if (static_cast<int>(bits.size()) != d + 1 || bits.back() != 1)
    throw Error(ErrorCode::InvalidArgument, "modulus must have d+1 coefficients with leading 1");
  for (int i = 0; i <= d; ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw Error(ErrorCode::InvalidArgument, "modulus coefficients must be bits");
    if (bits[i]) mask_ |= 1u << i;
  }
  if (!is_irreducible_f2(mask_)) throw Error(ErrorCode::InvalidArgument, "modulus is reducible over F_2");
}

std::shared_ptr<const FiniteFieldSpec> FiniteFieldSpec::make(int d, std::vector<int> bits) {
  return std::make_shared<const FiniteFieldSpec>(d, std::move(bits));
}

std::shared_ptr<const FiniteFieldSpec> FiniteFieldSpec::standard(int d) {
  std::uint32_t mask = 0;
  switch (d) {
    case 1: mask = 0b11; break;
    case 2: mask = 0b111; break;
    case 3: mask = 0b1011; break;
    default:
      for (std::uint32_t c = (1u << d) + 1; c < (2u << d); ++c)
        if (is_irreducible_f2(c)) { mask = c; break; }
  }
  std::vector<int> bits(d + 1);
  for (int i = 0; i <= d; ++i) bits[i] = (mask >> i) & 1;
  return make(d, bits);
}

std::vector<int> FiniteFieldSpec::modulus_bits() const {
  std::vector<int> b(d_ + 1);
  for (int i = 0; i <= d_; ++i) b[i] = (mask_ >> i) & 1;
  return b;
}

std::uint32_t FiniteFieldSpec::mul(std::uint32_t a, std::uint32_t b) const {
  std::uint64_t r = 0;
  for (int i = 0; i < d_; ++i)
    if ((b >> i) & 1) r ^= static_cast<std::uint64_t>(a) << i;
  return static_cast<std::uint32_t>(mod_f2(r, mask_));
}

GFElement::GFElement(FieldPtr spec, std::uint32_t bits) : spec_(std::move(spec)), bits_(bits) {
  if (!spec_) throw Error(ErrorCode::InvalidArgument, "missing field spec");
  if (bits_ >> spec_->d()) throw Error(ErrorCode::InvalidArgument, "GF element out of range");
}

GFElement GFElement::generator(FieldPtr s) {
  std::uint32_t b = s->d() == 1 ? 1u : 2u;  // in F_2 the class of x is x = 1
  return GFElement(std::move(s), b);
}

std::vector<int> GFElement::coeffs() const {
  std::vector<int> c(spec_->d());
  for (int i = 0; i < spec_->d(); ++i) c[i] = (bits_ >> i) & 1;
  return c;
}

GFElement operator+(const GFElement& a, const GFElement& b) {
  const FieldPtr& s = a.spec_ ? a.spec_ : b.spec_;
  return GFElement(s, a.bits_ ^ b.bits_);
}

GFElement operator*(const GFElement& a, const GFElement& b) {
  return GFElement(a.spec_, a.spec_->mul(a.bits_, b.bits_));
}

GFElement GFElement::pow(std::uint64_t e) const {
  GFElement r = one(spec_), b = *this;
  for (; e; e >>= 1) {
    if (e & 1) r = r * b;
    b = b * b;
  }
  return r;
}

GFElement GFElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InverseOfNonUnit, "zero in F_{2^d}");
  return pow(spec_->size() - 2);
}

std::string GFElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = spec_->d() - 1; i >= 0; --i) {
    if (!((bits_ >> i) & 1)) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) os << "1";
    else if (i == 1) os << "x";
    else os << "x^" << i;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------- Witt vectors

namespace {

// multiply coefficient vectors modulo (f~, 2^N)
std::vector<std::uint64_t> witt_mul(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                    std::uint32_t fmask, int d, std::uint64_t mask) {
  std::vector<std::uint64_t> prod(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];  // wraps mod 2^64, fine mod 2^N
  }
  // x^d = -sum_{i<d} f_i x^i
  for (int k = 2 * d - 2; k >= d; --k) {
    std::uint64_t c = prod[k];
    if (!c) continue;
    prod[k] = 0;
    for (int i = 0; i < d; ++i)
      if ((fmask >> i) & 1) prod[k - d + i] -= c;
  }
  std::vector<std::uint64_t> r(d);
  for (int i = 0; i < d; ++i) r[i] = prod[i] & mask;
  return r;
}

}  // namespace

WittElement::WittElement(FieldPtr spec, int precision, std::vector<std::uint64_t> coeffs)
    : spec_(std::move(spec)), N_(precision), c_(std::move(coeffs)) {
  if (!spec_) throw Error(ErrorCode::InvalidArgument, "missing field spec");
  if (N_ < 1 || N_ > 62) throw Error(ErrorCode::InvalidArgument, "Witt precision must be in 1..62");
  if (static_cast<int>(c_.size()) != spec_->d()) throw Error(ErrorCode::InvalidArgument, "wrong coefficient count");
  for (auto& x : c_) x &= mask();
}

WittElement WittElement::from_int(FieldPtr spec, int precision, long v) {
  std::vector<std::uint64_t> c(spec->d(), 0);
  c[0] = static_cast<std::uint64_t>(v);
  return WittElement(std::move(spec), precision, std::move(c));
}

WittElement WittElement::from_rational(FieldPtr spec, int precision, const Rational& r) {
  if (!r.denominator_odd())
    throw Error(ErrorCode::NonIntegralCoefficient, "cannot embed " + r.str() + " into W(k)");
  mpz_class mod = mpz_class(1) << precision;
  mpz_class num = r.num() % mod, inv;
  mpz_class den = r.den();
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  mpz_class v = num * inv % mod;
  if (v < 0) v += mod;
  std::vector<std::uint64_t> c(spec->d(), 0);
  c[0] = v.get_ui();  // unsigned long is 64-bit on supported targets
  return WittElement(std::move(spec), precision, std::move(c));
}

WittElement WittElement::lift(const GFElement& a, int precision) {
  std::vector<std::uint64_t> c(a.spec()->d());
  for (int i = 0; i < a.spec()->d(); ++i) c[i] = (a.bits() >> i) & 1;
  return WittElement(a.spec(), precision, std::move(c));
}

bool WittElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint64_t x) { return x == 0; });
}

int WittElement::valuation() const {
  int v = N_;
  for (auto x : c_)
    if (x) v = std::min(v, __builtin_ctzll(x));
  return v;
}

GFElement WittElement::residue() const {
  std::uint32_t b = 0;
  for (int i = 0; i < spec_->d(); ++i) b |= static_cast<std::uint32_t>(c_[i] & 1) << i;
  return GFElement(spec_, b);
}

WittElement WittElement::reduced_mod(int j) const {
  WittElement r = *this;
  if (j >= N_) return r;
  std::uint64_t m = j <= 0 ? 0 : ((1ull << j) - 1);
  for (auto& x : r.c_) x &= m;
  return r;
}

WittElement WittElement::shifted_down(int s) const {
  if (valuation() < s) throw Error(ErrorCode::InverseOfNonUnit, "not divisible by 2^" + std::to_string(s));
  WittElement r = *this;
  for (auto& x : r.c_) x >>= s;
  return r;
}

WittElement WittElement::operator-() const {
  WittElement r = *this;
  for (auto& x : r.c_) x = (0 - x) & mask();
  return r;
}

namespace {
void check_compatible(const WittElement& a, const WittElement& b) {
  if (a.precision() != b.precision() || !(*a.spec() == *b.spec()))
    throw Error(ErrorCode::AmbientMismatch, "Witt elements over different fields or precisions");
}
}  // namespace

WittElement operator+(const WittElement& a, const WittElement& b) {
  check_compatible(a, b);
  WittElement r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (r.c_[i] + b.c_[i]) & r.mask();
  return r;
}

WittElement operator-(const WittElement& a, const WittElement& b) {
  check_compatible(a, b);
  WittElement r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (r.c_[i] - b.c_[i]) & r.mask();
  return r;
}

WittElement operator*(const WittElement& a, const WittElement& b) {
  check_compatible(a, b);
  WittElement r;
  r.spec_ = a.spec_;
  r.N_ = a.N_;
  r.c_ = witt_mul(a.c_, b.c_, a.spec_->modulus_mask(), a.spec_->d(), a.mask());
  return r;
}

bool operator==(const WittElement& a, const WittElement& b) {
  return a.N_ == b.N_ && a.c_ == b.c_ && *a.spec_ == *b.spec_;
}

WittElement WittElement::pow(std::uint64_t e) const {
  WittElement r = from_int(spec_, N_, 1), b = *this;
  for (; e; e >>= 1) {
    if (e & 1) r = r * b;
    b = b * b;
  }
  return r;
}

WittElement WittElement::inverse() const {
  if (!is_unit()) throw Error(ErrorCode::InverseOfNonUnit, "Witt element with zero residue");
  // Newton iteration y <- y(2 - a y) from the lift of the residue inverse
  WittElement y = lift(residue().inverse(), N_);
  WittElement two = from_int(spec_, N_, 2);
  for (int prec = 1; prec < N_; prec *= 2) y = y * (two - *this * y);
  return y;
}

std::string WittElement::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << "] mod 2^" << N_;
  return os.str();
}

const std::vector<std::uint64_t>& FiniteFieldSpec::frobenius_image_of_x(int N) const {
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto it = frob_cache_.find(N);
  if (it != frob_cache_.end()) return it->second;
  // Hensel/Newton root of f~ congruent to x^2 mod 2. The iteration runs on a
  // temporary spec copy so that no shared_ptr to *this is needed.
  auto self = std::make_shared<const FiniteFieldSpec>(d_, modulus_bits());
  auto poly_eval = [&](const WittElement& y, bool derivative) {
    WittElement acc = WittElement::from_int(self, N, 0);
    WittElement pw = WittElement::from_int(self, N, 1);
    for (int i = 0; i <= d_; ++i) {
      long coef = (mask_ >> i) & 1;
      if (derivative) {
        if (i >= 1 && coef) acc = acc + WittElement::from_int(self, N, i) * pw;
        if (i >= 1) pw = pw * y;
      } else {
        if (coef) acc = acc + pw;
        pw = pw * y;
      }
    }
    return acc;
  };
  std::vector<std::uint64_t> xc(d_, 0);
  if (d_ == 1) xc[0] = 1;  // x = 1 in F_2 = F_2[x]/(x+1); lifted root of x+1 is -1
  else xc[1] = 1;
  WittElement x(self, N, xc);
  WittElement y = x * x;
  if (d_ == 1) y = WittElement::from_int(self, N, -1);
  for (int it = 0; it < 4 * N + 8; ++it) {
    WittElement next = y - poly_eval(y, false) * poly_eval(y, true).inverse();
    if (next == y) break;
    y = next;
  }
  return frob_cache_.emplace(N, y.coeffs()).first->second;
}

WittElement teichmuller(const GFElement& a, int N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "precision must be >= 1");
  WittElement z = WittElement::lift(a, N);
  if (a.is_zero()) return z;
  const int d = a.spec()->d();
  for (int it = 0; it < 4 * N; ++it) {
    WittElement next = z;
    for (int i = 0; i < d; ++i) next = next * next;
    if (next == z) return z;
    z = next;
  }
  throw Error(ErrorCode::TeichmullerDivergence, "no fixed point after 4N iterations");
}

WittElement frobenius_lift(const WittElement& w) {
  const int d = w.spec()->d(), N = w.precision();
  if (d == 1) return w;
  WittElement y(w.spec(), N, w.spec()->frobenius_image_of_x(N));
  WittElement acc = WittElement::from_int(w.spec(), N, 0);
  WittElement pw = WittElement::from_int(w.spec(), N, 1);
  for (int i = 0; i < d; ++i) {
    if (w.coeffs()[i]) acc = acc + WittElement::from_int(w.spec(), N, static_cast<long>(w.coeffs()[i])) * pw;
    pw = pw * y;
  }
  return acc;
}

}  // namespace fglforge
