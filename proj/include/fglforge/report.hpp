#pragma once

#include <string>

#include "json.hpp"

#include "fglforge/fgl.hpp"

namespace fglforge {

using json = nlohmann::json;

inline constexpr const char* kSchema = "fgl-forge/1";

// Machine-readable verification outcome.
struct Report {
  std::string claim;
  json params = json::object();
  bool verified = false;
  json witness = nullptr;  // offending element when the check fails
  json bounds = json::object();
  json details = json::object();

  json to_json() const {
    return json{{"schema", kSchema}, {"claim", claim},   {"params", params},  {"status", verified ? "verified" : "failed"},
                {"witness", witness}, {"bounds", bounds}, {"details", details}};
  }
};

std::string coeff_to_string(const Rational& c);
std::string coeff_to_string(const F2& c);
std::string coeff_to_string(const GFElement& c);
std::string coeff_to_string(const WittElement& c);
json coeff_to_json(const Rational& c);
json coeff_to_json(const F2& c);
json coeff_to_json(const GFElement& c);
json coeff_to_json(const WittElement& c);

json field_to_json(const FiniteFieldSpec& f);
json witt_to_json(const WittElement& w);

// terms listed in descending monomial order
template <class C>
json poly_to_json(const Polynomial<C>& p, const std::string& coeff_tag = "") {
  json terms = json::array();
  if (!p.is_zero()) {
    const RingSpec& R = *p.ring();
    std::vector<const typename Polynomial<C>::Term*> order;
    for (const auto& t : p.terms()) order.push_back(&t);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return grevlex_less(R, b->first, a->first); });
    for (auto t : order) {
      json mono = json::object();
      for (int v = 0; v < R.nvars(); ++v)
        if (t->first[v]) mono[R.var_name(v)] = t->first[v];
      terms.push_back({{"monomial", mono}, {"coeff", coeff_to_json(t->second)}});
    }
  }
  std::string ring = p.ring() ? p.ring()->descriptor() : "any";
  return json{{"ring", ring + coeff_tag}, {"terms", terms}};
}

// human-readable form, e.g. "t1^2*g1t1 + 2*t2"
template <class C>
std::string poly_to_string(const Polynomial<C>& p) {
  if (p.is_zero()) return "0";
  const RingSpec& R = *p.ring();
  std::vector<const typename Polynomial<C>::Term*> order;
  for (const auto& t : p.terms()) order.push_back(&t);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return grevlex_less(R, b->first, a->first); });
  std::string out;
  for (auto t : order) {
    std::string mono;
    for (int v = 0; v < R.nvars(); ++v) {
      int e = t->first[v];
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += R.var_name(v);
      if (e != 1) mono += "^" + std::to_string(e);
    }
    std::string c = coeff_to_string(t->second);
    std::string term;
    if (mono.empty()) term = c;
    else if (c == "1") term = mono;
    else if (c == "-1") term = "-" + mono;
    else term = (c.find_first_of("+") != std::string::npos ? "(" + c + ")" : c) + "*" + mono;
    if (out.empty()) out = term;
    else if (term[0] == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  return out;
}

template <class C, int K>
json series_to_json(const TruncatedSeries<C, K>& s) {
  json arr = json::array();
  for (std::size_t i = 0; i < s.entries(); ++i) {
    if (s[i].is_zero()) continue;
    json e = K == 1 ? json(s.exps(i)[0]) : json(s.exps(i));
    arr.push_back(json::array({e, poly_to_json(s[i])}));
  }
  return arr;
}

}  // namespace fglforge
