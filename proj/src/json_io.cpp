#include "crinv/json_io.hpp"

#include <cmath>
#include <regex>

namespace crinv::io {

namespace {

bool is_real(const GaussianRational& z) { return sgn(z.im()) == 0; }

json gaussian_field(const GaussianRational& z) {
  if (is_real(z)) return to_string(z.re());
  return to_json(z);
}

}  // namespace

json to_json(const Rational& q) { return to_string(q); }

json to_json(const GaussianRational& z) { return {{"re", to_string(z.re())}, {"im", to_string(z.im())}}; }

json to_json(const SurdScalar& z) {
  if (z.radicand() == 0) return to_json(z.rational_part());
  return {{"a", gaussian_field(z.rational_part())}, {"b", gaussian_field(z.surd_part())}, {"d", z.radicand()}};
}

json to_json(const Complex64& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Rational rational_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) {
      double d = j.get<double>();
      if (!std::isfinite(d)) throw InputError("non-finite number");
      return Rational(d);
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("bad rational: ") + e.what());
  }
  throw InputError("expected a number or a \"p/q\" string, got " + j.dump());
}

template <>
GaussianRational scalar_from_json<GaussianRational>(const json& j) {
  if (j.is_object()) {
    if (j.contains("d")) {
      SurdScalar s = scalar_from_json<SurdScalar>(j);
      if (s.radicand() != 0) throw InputError("surd value " + j.dump() + " needs --scalar surd or float");
      return s.rational_part();
    }
    if (!j.contains("re") && !j.contains("im")) throw InputError("scalar object needs \"re\"/\"im\": " + j.dump());
    Rational re = j.contains("re") ? rational_from_json(j.at("re")) : Rational(0);
    Rational im = j.contains("im") ? rational_from_json(j.at("im")) : Rational(0);
    return {re, im};
  }
  return {rational_from_json(j)};
}

template <>
SurdScalar scalar_from_json<SurdScalar>(const json& j) {
  if (j.is_object() && (j.contains("a") || j.contains("b") || j.contains("d"))) {
    if (!j.contains("d")) throw InputError("surd needs \"d\": " + j.dump());
    GaussianRational a = j.contains("a") ? scalar_from_json<GaussianRational>(j.at("a")) : GaussianRational();
    GaussianRational b = j.contains("b") ? scalar_from_json<GaussianRational>(j.at("b")) : GaussianRational();
    std::int64_t d = 0;
    try {
      d = j.at("d").get<std::int64_t>();
      return SurdScalar(a, b, d);
    } catch (const std::exception& e) {
      throw InputError(std::string("bad surd: ") + e.what());
    }
  }
  return SurdScalar(scalar_from_json<GaussianRational>(j));
}

template <>
Complex64 scalar_from_json<Complex64>(const json& j) {
  auto component = [](const json& c) -> double {
    if (c.is_number()) return c.get<double>();
    return rational_from_json(c).get_d();
  };
  Complex64 z;
  if (j.is_object() && j.contains("d")) {
    z = to_complex(scalar_from_json<SurdScalar>(j));
  } else if (j.is_object()) {
    if (!j.contains("re") && !j.contains("im")) throw InputError("scalar object needs \"re\"/\"im\": " + j.dump());
    z = {j.contains("re") ? component(j.at("re")) : 0.0, j.contains("im") ? component(j.at("im")) : 0.0};
  } else {
    z = component(j);
  }
  try {
    require_finite(z);
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  return z;
}

json to_json(const torus::DCReport& r) {
  json shells = json::array();
  for (const auto& s : r.shells)
    shells.push_back({{"r", s.r}, {"min", s.value}, {"argmin", s.argmin}, {"argmin_norm", s.argmin_norm}});
  json evidence = json::array();
  for (const auto& e : r.evidence)
    evidence.push_back({{"rho", e.rho},
                        {"margin", e.margin},
                        {"inner_min", e.inner_min},
                        {"outer_min", e.outer_min},
                        {"holds", e.holds}});
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"N", r.N},
          {"radius", r.radius},
          {"rho_grid", r.rho_grid},
          {"verdict", std::string(torus::to_string(r.verdict))},
          {"exact", r.exact},
          {"resonances", r.resonances},
          {"resonances_suspect", r.resonances_suspect},
          {"shells", std::move(shells)},
          {"fit", {{"C", opt(r.fit_C)}, {"rho", opt(r.fit_rho)}}},
          {"evidence", std::move(evidence)},
          {"best_rho", opt(r.best_rho)},
          {"kernel", r.kernel}};
}

// --- Lie algebra data ----------------------------------------------------------

json to_json(const lie::Ambient& a) {
  return {{"label", a.label},
          {"matrix_dim", a.matrix_dim},
          {"torus_dim", a.torus_dim},
          {"real_form", a.real_form == lie::RealForm::compact ? "compact" : "split"}};
}

lie::Ambient ambient_from_json(const json& j) {
  try {
    if (j.is_string()) {
      std::string s = j.get<std::string>();
      if (s == "sl(2,R)") return lie::sl2_ambient();
      static const std::regex su(R"(su\((\d+)\))"), prod(R"(R\^(\d+) *\+ *su\((\d+)\))"), flat(R"(R\^(\d+))");
      std::smatch m;
      if (std::regex_match(s, m, su)) return lie::su_ambient(std::stoi(m[1]));
      if (std::regex_match(s, m, prod)) return lie::product_ambient(std::stoi(m[1]), std::stoi(m[2]));
      if (std::regex_match(s, m, flat)) return lie::product_ambient(std::stoi(m[1]), 0);
      throw InputError("unknown ambient '" + s + "'");
    }
    if (!j.is_object()) throw InputError("ambient must be a string or an object");
    int n = j.value("matrix_dim", 0);
    int d = j.value("torus_dim", 0);
    std::string form = j.value("real_form", std::string("compact"));
    if (form == "split") {
      if (n != 2 || d != 0) throw InputError("split real form is supported only for sl(2,R)");
      return lie::sl2_ambient();
    }
    if (form != "compact") throw InputError("real_form must be \"compact\" or \"split\"");
    return lie::product_ambient(d, n);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("ambient: ") + e.what());
  }
}

json to_json(const lie::LieElement& e) {
  json m = json::array();
  for (const auto& row : e.matrix()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    m.push_back(std::move(r));
  }
  json out = {{"matrix", std::move(m)}};
  if (!e.torus().empty()) {
    json t = json::array();
    for (const auto& x : e.torus()) t.push_back(to_json(x));
    out["torus"] = std::move(t);
  }
  return out;
}

lie::LieElement element_from_json(const lie::Ambient& a, const json& j) {
  try {
    if (!j.is_object()) throw InputError("Lie element must be an object");
    lie::Matrix m;
    if (j.contains("matrix")) {
      for (const auto& row : j.at("matrix")) {
        std::vector<lie::Scalar> r;
        for (const auto& x : row) r.push_back(scalar_from_json<GaussianRational>(x));
        m.push_back(std::move(r));
      }
    } else {
      m.assign(a.matrix_dim, std::vector<lie::Scalar>(a.matrix_dim));
    }
    lie::Coords t;
    if (j.contains("torus"))
      for (const auto& x : j.at("torus")) t.push_back(scalar_from_json<GaussianRational>(x));
    else
      t.assign(a.torus_dim, lie::Scalar());
    return lie::LieElement(a, std::move(m), std::move(t));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("Lie element: ") + e.what());
  }
}

std::vector<lie::LieElement> elements_from_json(const lie::Ambient& a, const json& j) {
  if (!j.is_array()) throw InputError("expected a list of Lie elements");
  std::vector<lie::LieElement> out;
  for (const auto& e : j) out.push_back(element_from_json(a, e));
  return out;
}

json elements_to_json(const std::vector<lie::LieElement>& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(to_json(e));
  return out;
}

json to_json(const lie::Subalgebra& h) {
  return {{"ambient", to_json(h.ambient())}, {"basis", elements_to_json(h.basis())}, {"label", h.label()}};
}

}  // namespace crinv::io
