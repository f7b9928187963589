#pragma once

// JSON forms of every value the command line reads or writes.
//
//   scalar          number | "p/q" | {"re": s, "im": s} | {"a": s, "b": s, "d": int}
//   torus structure {"N": int, "n": int, "rows": [[scalar x N] x n]}
//   Fourier form    {"structure": ..., "q": int,
//                    "terms": [{"xi": [int x N], "coeffs": [{"J": [int...], <scalar fields>}]}]}
//   Lie element     {"matrix": [[scalar]], "torus": [scalar]}
//   ambient         "su(n)" | "sl(2,R)" | "R^d + su(n)" | {"label", "matrix_dim", "torus_dim", "real_form"}

#include <memory>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "crinv/fourier.hpp"
#include "crinv/liealg.hpp"
#include "crinv/toruscr.hpp"

namespace crinv::io {

using nlohmann::json;

/// Malformed or inconsistent input; the command line maps it to exit status 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

json to_json(const Rational& q);
json to_json(const GaussianRational& z);
json to_json(const SurdScalar& z);
json to_json(const Complex64& z);

template <FieldScalar S>
S scalar_from_json(const json& j);
template <>
GaussianRational scalar_from_json<GaussianRational>(const json& j);
template <>
SurdScalar scalar_from_json<SurdScalar>(const json& j);
template <>
Complex64 scalar_from_json<Complex64>(const json& j);

Rational rational_from_json(const json& j);

// --- forms -------------------------------------------------------------------

/// [{"J": [...], <scalar fields>}] in canonical multi-index order.
template <FieldScalar S>
json coeffs_to_json(const exterior::AltForm<S>& f) {
  json out = json::array();
  for (const auto& [J, c] : f.terms()) {
    json e = to_json(c);
    if (!e.is_object()) e = json{{"re", e}, {"im", "0"}};
    json entry = {{"J", J.entries()}};
    entry.update(e);
    out.push_back(std::move(entry));
  }
  return out;
}

template <FieldScalar S>
exterior::AltForm<S> coeffs_from_json(const json& j, int q, int universe) {
  if (!j.is_array()) throw InputError("\"coeffs\" must be an array");
  exterior::AltForm<S> f(q, universe);
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("J")) throw InputError("each coefficient needs a \"J\" entry");
    std::vector<int> tuple;
    try {
      tuple = entry.at("J").get<std::vector<int>>();
    } catch (const json::exception&) {
      throw InputError("\"J\" must be a list of integers");
    }
    if (static_cast<int>(tuple.size()) != q)
      throw InputError("multi-index of length " + std::to_string(tuple.size()) + " in a form of degree " +
                       std::to_string(q));
    for (int idx : tuple)
      if (idx < 1 || idx > universe) throw InputError("multi-index entry out of range 1.." + std::to_string(universe));
    auto norm = exterior::normalize(tuple, universe);
    if (!norm) continue;  // repeated index: the basis form vanishes
    json scalar = entry;
    scalar.erase("J");
    S c = scalar_from_json<S>(scalar);
    if (norm->second < 0) c = -c;
    f.add(norm->first, c);
  }
  return f;
}

template <FieldScalar S>
json form_to_json(const exterior::AltForm<S>& f) {
  return {{"q", f.degree()}, {"n", f.universe()}, {"coeffs", coeffs_to_json(f)}};
}

template <FieldScalar S>
exterior::AltForm<S> form_from_json(const json& j, int universe) {
  if (!j.is_object() || !j.contains("q")) throw InputError("form needs \"q\"");
  int q = j.at("q").get<int>();
  if (q < 0 || q > universe) throw InputError("form degree out of range");
  if (j.contains("n") && j.at("n").get<int>() != universe) throw InputError("form universe does not match");
  return coeffs_from_json<S>(j.value("coeffs", json::array()), q, universe);
}

// --- torus structures ----------------------------------------------------------

template <FieldScalar S>
json to_json(const torus::TorusStructure<S>& s) {
  json rows = json::array();
  for (const auto& row : s.rows()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    rows.push_back(std::move(r));
  }
  return {{"N", s.N()}, {"n", s.n()}, {"rows", std::move(rows)}};
}

template <FieldScalar S>
torus::TorusStructure<S> structure_from_json(const json& j) {
  try {
    if (!j.is_object()) throw InputError("torus structure must be an object");
    for (const char* key : {"N", "n", "rows"})
      if (!j.contains(key)) throw InputError(std::string("torus structure is missing \"") + key + "\"");
    int N = j.at("N").get<int>();
    int n = j.at("n").get<int>();
    const json& rows = j.at("rows");
    if (!rows.is_array()) throw InputError("\"rows\" must be an array");
    linalg::Mat<S> a;
    for (const auto& row : rows) {
      if (!row.is_array()) throw InputError("each row must be an array");
      std::vector<S> r;
      for (const auto& x : row) r.push_back(scalar_from_json<S>(x));
      a.push_back(std::move(r));
    }
    return torus::TorusStructure<S>(N, n, std::move(a));
  } catch (const torus::InvalidStructure& e) {
    throw InputError(e.what());
  } catch (const json::exception& e) {
    throw InputError(std::string("torus structure: ") + e.what());
  }
}

// --- Fourier forms -------------------------------------------------------------

template <FieldScalar S>
json to_json(const fourier::FourierForm<S>& u) {
  json terms = json::array();
  for (const auto& [xi, f] : u.terms()) terms.push_back({{"xi", xi}, {"coeffs", coeffs_to_json(f)}});
  return {{"structure", to_json(u.structure())}, {"q", u.degree()}, {"terms", std::move(terms)}};
}

template <FieldScalar S>
fourier::FourierForm<S> fourier_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("structure") || !j.contains("q"))
      throw InputError("Fourier form needs \"structure\" and \"q\"");
    auto s = std::make_shared<const torus::TorusStructure<S>>(structure_from_json<S>(j.at("structure")));
    int q = j.at("q").get<int>();
    if (q < 0 || q > s->n()) throw InputError("form degree must lie in 0..n");
    fourier::FourierForm<S> u(s, q);
    for (const auto& term : j.value("terms", json::array())) {
      if (!term.contains("xi")) throw InputError("each term needs \"xi\"");
      auto xi = term.at("xi").get<torus::Frequency>();
      if (static_cast<int>(xi.size()) != s->N())
        throw InputError("frequency " + fourier::to_string(xi) + " has the wrong length");
      u.add(xi, coeffs_from_json<S>(term.value("coeffs", json::array()), q, s->n()));
    }
    return u;
  } catch (const json::exception& e) {
    throw InputError(std::string("Fourier form: ") + e.what());
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
}

template <FieldScalar S>
json to_json(const fourier::SolveResult<S>& r) {
  json est = json::array();
  for (const auto& e : r.estimates)
    est.push_back({{"xi", e.xi},
                   {"v_norm", e.v_norm},
                   {"u_norm", e.u_norm},
                   {"max_symbol", e.max_symbol},
                   {"bound_holds", e.bound_holds}});
  return {{"invariant_part", form_to_json(r.invariant_part)},
          {"primitive", r.primitive ? to_json(*r.primitive) : json(nullptr)},
          {"estimates", std::move(est)},
          {"worst_ratio", r.worst_ratio()}};
}

json to_json(const torus::DCReport& r);

// --- Lie algebra data ----------------------------------------------------------

json to_json(const lie::Ambient& a);
lie::Ambient ambient_from_json(const json& j);
json to_json(const lie::LieElement& e);
lie::LieElement element_from_json(const lie::Ambient& a, const json& j);
std::vector<lie::LieElement> elements_from_json(const lie::Ambient& a, const json& j);
/// {"ambient": ..., "basis": [...], "label": ...}
json to_json(const lie::Subalgebra& h);
json elements_to_json(const std::vector<lie::LieElement>& v);

}  // namespace crinv::io
