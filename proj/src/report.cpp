#include "fglforge/report.hpp"

namespace fglforge {

std::string coeff_to_string(const Rational& c) { return c.str(); }
std::string coeff_to_string(const F2& c) { return c.bit ? "1" : "0"; }
std::string coeff_to_string(const GFElement& c) { return c.str(); }
std::string coeff_to_string(const WittElement& c) { return c.str(); }

json coeff_to_json(const Rational& c) { return c.str(); }
json coeff_to_json(const F2& c) { return c.bit ? "1" : "0"; }
json coeff_to_json(const GFElement& c) { return c.coeffs(); }
json coeff_to_json(const WittElement& c) { return witt_to_json(c); }

json field_to_json(const FiniteFieldSpec& f) { return json{{"d", f.d()}, {"modulus", f.modulus_bits()}}; }

json witt_to_json(const WittElement& w) { return json{{"precision", w.precision()}, {"coeffs", w.coeffs()}}; }

}  // namespace fglforge
