#include "crinv/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "crinv/fixtures.hpp"
#include "crinv/fourier.hpp"
#include "crinv/json_io.hpp"
#include "crinv/liealg.hpp"
#include "crinv/toruscr.hpp"

namespace crinv::cli {

using io::InputError;
using lie::LieElement;
using lie::Scalar;
using lie::Subalgebra;

// --- RunReport -----------------------------------------------------------------

void RunReport::mismatch(Discrepancy d) {
  discrepancies.push_back(std::move(d));
  exit_status = std::max(exit_status, kExitMismatch);
}

void RunReport::fail_input(std::string message) {
  errors.push_back(std::move(message));
  exit_status = kExitInput;
}

std::string RunReport::text() const {
  std::ostringstream out;
  const char* status = exit_status == kExitOk ? "ok" : exit_status == kExitMismatch ? "mismatch" : "input-error";
  out << "command: " << command << "\n";
  out << "status: " << status << " (exit " << exit_status << ")\n";
  for (const auto& [k, v] : fields) out << k << ": " << v << "\n";
  if (!discrepancies.empty()) {
    out << "discrepancies: " << discrepancies.size() << "\n";
    for (const auto& d : discrepancies) {
      out << "  " << d.item << ": printed " << d.printed << "; computed " << d.computed;
      if (!d.note.empty()) out << " [" << d.note << "]";
      out << "\n";
    }
  }
  for (const auto& e : errors) out << "error: " << e << "\n";
  return out.str();
}

json RunReport::to_json() const {
  json f = json::array();
  for (const auto& [k, v] : fields) f.push_back({{"key", k}, {"value", v}});
  json d = json::array();
  for (const auto& x : discrepancies)
    d.push_back({{"item", x.item}, {"printed", x.printed}, {"computed", x.computed}, {"note", x.note}});
  return {{"command", command},   {"exit_status", exit_status}, {"fields", std::move(f)},
          {"payload", payload},   {"discrepancies", std::move(d)}, {"errors", errors}};
}

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string freq(const torus::Frequency& xi) { return fourier::to_string(xi); }

// --- verify-tables --------------------------------------------------------------

// Coordinates of an su(4) element on T_1..T_3, L_1..L_6, conj L_1..conj L_6.
fixtures::PrintedCell describe(const fixtures::Su4& s, const LieElement& e) {
  std::vector<LieElement> basis = s.T;
  for (const auto& l : s.L) basis.push_back(l);
  for (const auto& l : s.L) basis.push_back(lie::conjugate(l));
  lie::ElementSpan span(s.ambient, basis);
  auto c = span.coordinates(e);
  if (!c) throw std::logic_error("su(4) element outside the T, L, conj L span");
  fixtures::PrintedCell out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if ((*c)[k].is_zero()) continue;
    using K = fixtures::SymbolTerm::Kind;
    K kind = k < 3 ? K::T : k < 9 ? K::L : K::Lbar;
    int idx = static_cast<int>(k < 3 ? k + 1 : k < 9 ? k - 2 : k - 8);
    out.push_back({kind, idx, (*c)[k]});
  }
  return out;
}

std::string classify_cell(const LieElement& computed, const LieElement& printed, const LieElement& swapped) {
  if (computed == printed) return "exact";
  if (computed == -printed) return "sign";
  if (computed == swapped) return "conjugate";
  if (computed == -swapped) return "conjugate+sign";
  return "mismatch";
}

}  // namespace

RunReport cmd_verify_tables() {
  RunReport rep;
  rep.command = "verify-tables";
  const fixtures::Su4 s = fixtures::su4();

  struct Cell {
    int i, j;
    LieElement computed, printed;
    std::string cls;
  };
  std::vector<Cell> cells;
  for (int i = 1; i <= 6; ++i)
    for (int j = i; j <= 6; ++j) {
      const auto& p = fixtures::printed_bracket(i, j);
      LieElement c = lie::bracket(s.L[i - 1], lie::conjugate(s.L[j - 1]));
      LieElement pe = fixtures::realize(s, p);
      LieElement ps = fixtures::realize(s, fixtures::bar_swapped(p));
      cells.push_back({i, j, c, pe, classify_cell(c, pe, ps)});
    }
  int plus = 0, minus = 0;
  for (const auto& c : cells) {
    plus += c.computed == c.printed;
    minus += c.computed == -c.printed;
  }
  const int table_sign = minus > plus ? -1 : 1;
  json cell_json = json::array();
  int table_matches = 0;
  for (const auto& c : cells) {
    bool ok = c.computed == (table_sign > 0 ? c.printed : -c.printed);
    table_matches += ok;
    std::string item = "[L" + std::to_string(c.i) + ", conj L" + std::to_string(c.j) + "]";
    std::string printed = fixtures::to_string(fixtures::printed_bracket(c.i, c.j));
    std::string computed = fixtures::to_string(describe(s, c.computed));
    cell_json.push_back({{"i", c.i}, {"j", c.j}, {"printed", printed}, {"computed", computed},
                         {"class", c.cls}, {"matches", ok}});
    if (!ok) rep.mismatch({item, printed, computed, c.cls});
  }

  struct Lam {
    int j, k;
    std::optional<Rational> value;
  };
  std::vector<Lam> lams;
  int lplus = 0, lminus = 0;
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 6; ++k) {
      auto mu = lie::proportionality(lie::bracket(s.T[j - 1], s.L[k - 1]), s.L[k - 1]);
      std::optional<Rational> lam;
      if (mu) {
        Scalar l = Scalar::i() * *mu;  // [T, L] = -i lambda L
        if (sgn(l.im()) == 0) lam = l.re();
      }
      int printed = fixtures::printed_lambda(j, k);
      if (lam) {
        lplus += *lam == printed;
        lminus += *lam == -printed;
      }
      lams.push_back({j, k, lam});
    }
  const int lambda_sign = lminus > lplus ? -1 : 1;
  json lam_json = json::array();
  int lambda_matches = 0;
  for (const auto& l : lams) {
    int printed = fixtures::printed_lambda(l.j, l.k);
    bool ok = l.value && *l.value == lambda_sign * printed;
    lambda_matches += ok;
    std::string computed = l.value ? to_string(*l.value) : "not an eigenvector";
    lam_json.push_back({{"j", l.j}, {"k", l.k}, {"printed", printed}, {"computed", computed}, {"matches", ok}});
    if (!ok)
      rep.mismatch({"lambda_" + std::to_string(l.j) + "," + std::to_string(l.k), std::to_string(printed), computed,
                    l.value && *l.value == -lambda_sign * printed ? "sign" : "mismatch"});
  }

  LieElement L = fixtures::sl2_L();
  LieElement Lb = lie::conjugate(L);
  LieElement lhs = lie::bracket(L, Lb);
  LieElement rhs = Scalar(0L, 2L) * (L + Lb);
  bool sl2_ok = lhs == rhs;
  if (!sl2_ok) rep.mismatch({"sl(2) [L, conj L]", "2i(L + conj L)", lie::to_string(lhs), ""});

  std::size_t full_dim = fixtures::example3().h.dim();
  std::size_t literal_dim = fixtures::example3_literal_dim();

  rep.field("convention", "L_k = X_k - i Y_k, conj A = -A^dagger");
  rep.field("bracket table sign", table_sign > 0 ? "+1" : "-1");
  rep.field("bracket cells matching", std::to_string(table_matches) + "/" + std::to_string(cells.size()));
  rep.field("lambda sign", lambda_sign > 0 ? "+1" : "-1");
  rep.field("lambda entries matching", std::to_string(lambda_matches) + "/" + std::to_string(lams.size()));
  if (table_sign != lambda_sign)
    rep.field("sign note", "the bracket table and the lambda table need opposite global signs");
  rep.field("sl(2) [L, conj L] = 2i(L + conj L)", yes_no(sl2_ok));
  rep.field("T^2 x SU(4) h with L_1..L_6", "dim " + std::to_string(full_dim));
  rep.field("T^2 x SU(4) h with L_1..L_3 as printed", "dim " + std::to_string(literal_dim));
  for (const auto& c : cell_json)
    rep.field("cell (" + std::to_string(c["i"].get<int>()) + "," + std::to_string(c["j"].get<int>()) + ")",
              c["class"].get<std::string>() + ": " + c["computed"].get<std::string>());
  rep.payload = {{"table_sign", table_sign},
                 {"lambda_sign", lambda_sign},
                 {"cells", std::move(cell_json)},
                 {"lambdas", std::move(lam_json)},
                 {"sl2_identity", sl2_ok},
                 {"example3_dims", {{"L1..L6", full_dim}, {"L1..L3", literal_dim}}}};
  return rep;
}

// --- classify / leviflat ----------------------------------------------------------

namespace {

struct ParsedAlgebra {
  lie::Ambient ambient;
  std::vector<LieElement> basis;
  std::string label;
  std::vector<LieElement> torus;
  std::vector<Rational> weights;
};

ParsedAlgebra parse_algebra(const json& in) {
  if (!in.is_object() || !in.contains("ambient") || !in.contains("basis"))
    throw InputError("subalgebra input needs \"ambient\" and \"basis\"");
  ParsedAlgebra p;
  p.ambient = io::ambient_from_json(in.at("ambient"));
  p.basis = io::elements_from_json(p.ambient, in.at("basis"));
  p.label = in.value("label", std::string());
  p.torus = in.contains("torus") ? io::elements_from_json(p.ambient, in.at("torus")) : lie::standard_torus(p.ambient);
  if (in.contains("weights")) {
    for (const auto& w : in.at("weights")) p.weights.push_back(io::rational_from_json(w));
  } else {
    for (const auto& t : p.torus) {
      bool matrix_zero = true;
      for (const auto& row : t.matrix())
        for (const auto& x : row) matrix_zero = matrix_zero && x.is_zero();
      p.weights.push_back(Rational(matrix_zero ? 0 : 1));
    }
  }
  if (p.weights.size() != p.torus.size()) throw InputError("\"weights\" must have one entry per torus element");
  return p;
}

Subalgebra make_subalgebra(const lie::Ambient& a, std::vector<LieElement> basis, std::string label) {
  try {
    return Subalgebra(a, std::move(basis), std::move(label));
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
}

std::string pair_string(const std::pair<std::size_t, std::size_t>& p) {
  return "(" + std::to_string(p.first + 1) + "," + std::to_string(p.second + 1) + ")";
}

}  // namespace

RunReport cmd_classify(const json& input) {
  RunReport rep;
  rep.command = "classify";
  ParsedAlgebra p = parse_algebra(input);
  Subalgebra h = make_subalgebra(p.ambient, p.basis, p.label);
  const std::size_t N = lie::ambient_basis(p.ambient).size();
  const std::size_t d = p.torus.size();

  auto cert = lie::is_subalgebra(h.basis());
  bool cr = lie::is_cr(h);
  std::vector<LieElement> sum = h.basis();
  for (const auto& t : p.torus) sum.push_back(t);
  std::size_t toric_dim = h.dim() + d - lie::ElementSpan(p.ambient, sum).rank();
  lie::ElementSpan tspan(p.ambient, p.torus);
  std::vector<int> toric_members;
  for (std::size_t i = 0; i < h.dim(); ++i)
    if (tspan.contains(h[i])) toric_members.push_back(static_cast<int>(i + 1));

  rep.field("ambient", p.ambient.label);
  rep.field("label", p.label.empty() ? "-" : p.label);
  rep.field("dim h", std::to_string(h.dim()));
  rep.field("dim G", std::to_string(N));
  rep.field("maximal rank [N/2]", std::to_string(N / 2) + (h.dim() == N / 2 ? " (matches)" : " (differs)"));
  rep.field("subalgebra", cert.ok ? "yes" : "no, witness pair " + pair_string(*cert.witness));
  rep.field("CR", yes_no(cr));
  rep.field("toric part dim", std::to_string(toric_dim) + " (torus rank " + std::to_string(d) + ", [d/2] = " +
                                  std::to_string(d / 2) + ")");
  std::string members;
  for (int i : toric_members) members += (members.empty() ? "" : ",") + std::to_string(i);
  rep.field("basis elements in the torus", members.empty() ? "none" : members);

  std::string shape = "undetermined";
  json shape_json = nullptr;
  if (!cert.ok) {
    shape = "not a subalgebra";
  } else {
    lie::RootDatum roots;
    std::vector<std::size_t> positive;
    try {
      roots = lie::root_decompose(p.torus, lie::ambient_basis(p.ambient));
      positive = lie::positive_roots(roots, p.weights);
    } catch (const std::domain_error& e) {
      throw InputError(std::string("root decomposition: ") + e.what());
    }
    lie::ElementSpan hs = h.span();
    auto contains_all = [&](std::optional<std::size_t> skip) {
      for (auto r : positive)
        if (r != skip && !hs.contains(roots.roots[r])) return false;
      return true;
    };
    auto inside = [&](std::optional<std::size_t> skip) {
      std::vector<LieElement> v = p.torus;
      for (auto r : positive)
        if (r != skip) v.push_back(roots.roots[r]);
      lie::ElementSpan s(p.ambient, v);
      for (const auto& e : h.basis())
        if (!s.contains(e)) return false;
      return true;
    };
    bool cr0 = contains_all(std::nullopt) && h.dim() == toric_dim + positive.size();
    std::optional<std::size_t> alpha;
    if (!cr0)
      for (auto r : positive) {
        if (!lie::is_simple_root(roots, positive, r)) continue;
        if (contains_all(r) && h.dim() == toric_dim + positive.size() && inside(std::nullopt) && !inside(r)) {
          alpha = r;
          break;
        }
      }
    rep.field("positive roots", std::to_string(positive.size()));
    if (cr0)
      shape = "CR0";
    else if (alpha)
      shape = "CR1 (alpha = root " + std::to_string(*alpha + 1) + ")";
    else
      shape = "neither CR0 nor CR1 for this positive system";
    shape_json = {{"cr0", cr0}, {"alpha", alpha ? json(*alpha + 1) : json(nullptr)}, {"positive", positive.size()}};
  }
  rep.field("type", shape);
  rep.payload = {{"dim", h.dim()},
                 {"N", N},
                 {"subalgebra", cert.ok},
                 {"witness", cert.witness ? json({cert.witness->first + 1, cert.witness->second + 1}) : json(nullptr)},
                 {"cr", cr},
                 {"toric_dim", toric_dim},
                 {"type", shape},
                 {"shape", shape_json}};
  return rep;
}

RunReport cmd_leviflat(const json& input) {
  RunReport rep;
  rep.command = "leviflat";
  ParsedAlgebra p = parse_algebra(input);
  Subalgebra h = make_subalgebra(p.ambient, p.basis, p.label);
  if (!lie::is_cr(h)) throw InputError("h meets its conjugate; the Levi form needs a CR subalgebra");
  auto r = lie::is_levi_flat(h);
  rep.field("ambient", p.ambient.label);
  rep.field("dim h", std::to_string(h.dim()));
  rep.field("Levi-flat", yes_no(r.flat));
  json payload = {{"flat", r.flat}};
  if (!r.flat) {
    rep.field("witness pair (L, M)", pair_string(*r.witness));
    rep.field("[L, conj M]", lie::to_string(*r.bracket));
    rep.field("covector", "dual of " + lie::to_string(*r.dual_element) + " on a completion of h + conj h");
    rep.field("xi([L, conj M])", to_string(r.covector_value));
    rep.field("Levi form value", to_string(r.levi_value));
    payload["witness"] = {r.witness->first + 1, r.witness->second + 1};
    payload["bracket"] = io::to_json(*r.bracket);
    payload["covector_value"] = io::to_json(r.covector_value);
    payload["levi_value"] = io::to_json(r.levi_value);
  }
  rep.payload = std::move(payload);
  return rep;
}

// --- dc ------------------------------------------------------------------------

namespace {

template <FieldScalar S>
RunReport dc_impl(const json& input, const Options& o) {
  RunReport rep;
  rep.command = "dc";
  auto s = io::structure_from_json<S>(input);
  torus::ScanOptions so;
  if (o.radius) so.radius = *o.radius;
  if (o.rho_grid) so.rho_grid = *o.rho_grid;
  so.workers = o.workers;
  if (so.radius < 0) throw InputError("--radius must be positive");
  auto r = torus::dc_scan(s, so);
  rep.field("scalar", std::string(to_string(ScalarTraits<S>::kind)));
  rep.field("N", std::to_string(r.N));
  rep.field("radius", std::to_string(r.radius));
  rep.field("verdict", std::string(torus::to_string(r.verdict)));
  std::string res;
  for (std::size_t i = 0; i < r.resonances.size() && i < 10; ++i) res += (i ? " " : "") + freq(r.resonances[i]);
  if (r.resonances.size() > 10) res += " ...";
  rep.field("resonances", std::to_string(r.resonances.size()) + (res.empty() ? "" : ": " + res));
  if (r.resonances_suspect) rep.field("resonance note", "float data: below-threshold hits, not exact zeros");
  rep.field("fit", r.fit_rho ? "C = " + fmt(*r.fit_C) + ", rho = " + fmt(*r.fit_rho) : "insufficient data");
  for (const auto& e : r.evidence)
    rep.field("rho " + fmt(e.rho), std::string(e.holds ? "holds" : "fails") + ", margin " + fmt(e.margin) +
                                       ", inner " + fmt(e.inner_min) + ", outer " + fmt(e.outer_min));
  rep.field("best rho", r.best_rho ? fmt(*r.best_rho) : "none");
  // Shell table: all shells up to 20, then a logarithmic sample.
  std::vector<std::int64_t> rows;
  for (std::int64_t k = 1; k <= r.radius && k <= 20; ++k) rows.push_back(k);
  for (double x = 25; x <= static_cast<double>(r.radius); x *= 1.25) rows.push_back(static_cast<std::int64_t>(x));
  if (r.radius > 20) rows.push_back(r.radius);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  for (auto k : rows) {
    const auto& sh = r.shells[k - 1];
    rep.field("shell " + std::to_string(k), fmt(sh.value) + " at " + freq(sh.argmin));
  }
  rep.payload = io::to_json(r);
  return rep;
}

}  // namespace

RunReport cmd_dc(const json& input, const Options& o) {
  switch (o.scalar) {
    case ScalarKind::exact: return dc_impl<GaussianRational>(input, o);
    case ScalarKind::surd: return dc_impl<SurdScalar>(input, o);
    case ScalarKind::float64: return dc_impl<Complex64>(input, o);
  }
  throw InputError("unknown scalar realization");
}

// --- solve -----------------------------------------------------------------------

namespace {

template <FieldScalar S>
std::string form_string(const exterior::AltForm<S>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [J, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")tau" + exterior::to_string(J);
  }
  return out;
}

template <FieldScalar S>
RunReport solve_impl(const json& input, const Options& o) {
  RunReport rep;
  rep.command = "solve";
  auto u = io::fourier_from_json<S>(input);
  rep.field("scalar", std::string(to_string(ScalarTraits<S>::kind)));
  rep.field("N", std::to_string(u.structure().N()));
  rep.field("q", std::to_string(u.degree()));
  rep.field("support", std::to_string(u.terms().size()) + " frequencies");
  auto closed = fourier::is_closed(u);
  rep.field("closed", yes_no(closed.closed));
  if (!closed.closed) {
    rep.field("witness frequency", freq(*closed.witness));
    rep.field("omega ^ u residual", fmt(closed.residual));
    rep.mismatch({"closedness", "dbar_b u = 0", "nonzero at " + freq(*closed.witness), "not closed"});
    rep.payload = {{"closed", false}, {"witness", *closed.witness}};
    return rep;
  }
  fourier::SolveResult<S> r;
  try {
    r = fourier::solve(u);
  } catch (const fourier::ResonanceError& e) {
    rep.field("resonant frequency", freq(e.frequency()));
    rep.mismatch({"solvability", "no resonant support", "nonzero coefficient at " + freq(e.frequency()),
                  "resonance"});
    rep.payload = {{"closed", true}, {"resonance", e.frequency()}};
    return rep;
  } catch (const fourier::ContractViolation& e) {
    rep.mismatch({"closedness", "closed", e.what(), "contract"});
    return rep;
  }
  double residual = fourier::roundtrip_residual(u, r);
  bool bound = std::all_of(r.estimates.begin(), r.estimates.end(), [](const auto& e) { return e.bound_holds; });
  rep.field("invariant part", form_string(r.invariant_part));
  rep.field("primitive support",
            r.primitive ? std::to_string(r.primitive->terms().size()) + " frequencies" : "none (functions)");
  if (!r.estimates.empty()) {
    auto worst = std::max_element(r.estimates.begin(), r.estimates.end(), [](const auto& a, const auto& b) {
      return a.v_norm * a.max_symbol / a.u_norm < b.v_norm * b.max_symbol / b.u_norm;
    });
    auto small = std::min_element(r.estimates.begin(), r.estimates.end(),
                                  [](const auto& a, const auto& b) { return a.max_symbol < b.max_symbol; });
    rep.field("largest ||v|| max|L| / ||u||", fmt(r.worst_ratio()) + " at " + freq(worst->xi));
    rep.field("smallest max symbol", fmt(small->max_symbol) + " at " + freq(small->xi));
  }
  rep.field("estimate with constant 1", yes_no(bound));
  rep.field("roundtrip residual", fmt(residual));
  if (u.structure().N() == 3)
    rep.field("note", "cohomology for Liouville-type lambda is not asserted here; this is raw solver output");
  bool residual_ok = ScalarTraits<S>::exact ? residual == 0.0 : residual <= o.tolerance;
  if (!residual_ok) rep.mismatch({"roundtrip", "0", fmt(residual), "residual above tolerance"});
  if (!bound) rep.mismatch({"estimate", "||v|| <= ||u|| / max|L|", "violated", ""});
  json result = io::to_json(r);
  result["residual"] = residual;
  if (o.output) {
    std::ofstream f(*o.output);
    if (!f) throw InputError("cannot write " + *o.output);
    f << result.dump(2) << "\n";
    rep.field("output", *o.output);
  }
  rep.payload = std::move(result);
  return rep;
}

}  // namespace

RunReport cmd_solve(const json& input, const Options& o) {
  switch (o.scalar) {
    case ScalarKind::exact: return solve_impl<GaussianRational>(input, o);
    case ScalarKind::surd: return solve_impl<SurdScalar>(input, o);
    case ScalarKind::float64: return solve_impl<Complex64>(input, o);
  }
  throw InputError("unknown scalar realization");
}

// --- extend ---------------------------------------------------------------------

RunReport cmd_extend(const json& input) {
  RunReport rep;
  rep.command = "extend";
  if (!input.is_object()) throw InputError("extend input must be an object");
  for (const char* key : {"ambient", "m", "ideal", "u"})
    if (!input.contains(key)) throw InputError(std::string("extend input needs \"") + key + "\"");
  lie::Ambient a = io::ambient_from_json(input.at("ambient"));
  auto m_el = io::elements_from_json(a, input.at("m"));
  auto i_el = io::elements_from_json(a, input.at("ideal"));
  std::vector<LieElement> h_el;
  if (input.contains("h")) {
    h_el = io::elements_from_json(a, input.at("h"));
  } else {
    h_el = m_el;
    h_el.insert(h_el.end(), i_el.begin(), i_el.end());
  }
  Subalgebra m = make_subalgebra(a, m_el, "m");
  Subalgebra ideal = make_subalgebra(a, i_el, "ideal");
  Subalgebra h = make_subalgebra(a, h_el, "h");
  auto u = io::form_from_json<Scalar>(input.at("u"), static_cast<int>(m.dim()));
  rep.field("ambient", a.label);
  rep.field("dim h", std::to_string(h.dim()));
  rep.field("dim m", std::to_string(m.dim()));
  rep.field("dim ideal", std::to_string(ideal.dim()));
  rep.field("degree", std::to_string(u.degree()));

  lie::ClosureCertificate cert;
  try {
    cert = lie::is_ideal(ideal, h);
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  rep.field("ideal", cert.ok ? "yes" : "no, witness pair (h_" + std::to_string(cert.witness->first + 1) +
                                           ", ideal_" + std::to_string(cert.witness->second + 1) + ")");
  if (!cert.ok) {
    rep.mismatch({"ideal", "[h, ideal] inside ideal", "bracket " + lie::to_string(*cert.offending) + " leaves it",
                  "witness " + pair_string(*cert.witness)});
    rep.payload = {{"ideal", false}, {"witness", {cert.witness->first + 1, cert.witness->second + 1}}};
    return rep;
  }
  std::optional<bool> closed_on_m;
  if (lie::is_subalgebra(m.basis()).ok) closed_on_m = lie::ce_differential(u, m).is_zero();
  rep.field("closed on m", closed_on_m ? yes_no(*closed_on_m) : "m is not a subalgebra");
  lie::Form w;
  try {
    w = lie::extend_by_zero(u, h, m, ideal);
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  bool closed = lie::ce_differential(w, h).is_zero();
  rep.field("extension", std::to_string(w.size()) + " nonzero coefficients over h");
  rep.field("extension closed", yes_no(closed));
  if (closed_on_m && *closed_on_m && !closed)
    rep.mismatch({"extension", "closed", "not closed", "closed form on m extended by zero"});
  rep.payload = {{"ideal", true},
                 {"closed_on_m", closed_on_m ? json(*closed_on_m) : json(nullptr)},
                 {"extension", io::form_to_json(w)},
                 {"closed", closed}};
  return rep;
}

// --- fixtures ---------------------------------------------------------------------

std::uint64_t seed_from_env() {
  const char* env = std::getenv("CR_INVARIANTS_SEED");
  if (env == nullptr || *env == '\0') return 20261014;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw InputError("CR_INVARIANTS_SEED must be a nonnegative integer");
  }
}

namespace {

json algebra_doc(const fixtures::CrFixture& f, const std::vector<Rational>& weights) {
  json doc = io::to_json(f.h);
  doc["label"] = f.name;
  doc["torus"] = io::elements_to_json(f.roots.torus);
  json w = json::array();
  for (const auto& x : weights) w.push_back(io::to_json(x));
  doc["weights"] = std::move(w);
  return doc;
}

json extend_doc(const fixtures::CrFixture& f, const lie::Form& u, const std::vector<LieElement>& ideal,
                bool with_h) {
  json doc = {{"ambient", io::to_json(f.ambient)},
              {"m", io::elements_to_json(f.m.basis())},
              {"ideal", io::elements_to_json(ideal)},
              {"u", io::form_to_json(u)}};
  if (with_h) doc["h"] = io::elements_to_json(f.h.basis());
  return doc;
}

template <FieldScalar S>
fourier::FourierForm<S> random_primitive(std::shared_ptr<const torus::TorusStructure<S>> s, int q, int terms,
                                         std::mt19937_64& rng) {
  std::uniform_int_distribution<int> fd(-3, 3), cd(-4, 4);
  fourier::FourierForm<S> w(s, q);
  auto indices = exterior::all_multi_indices(s->n(), q);
  for (int t = 0; t < terms; ++t) {
    torus::Frequency xi(s->N());
    for (auto& x : xi) x = fd(rng);
    exterior::AltForm<S> f(q, s->n());
    for (const auto& J : indices) {
      GaussianRational c(static_cast<long>(cd(rng)), static_cast<long>(cd(rng)));
      if constexpr (ScalarTraits<S>::exact)
        f.add(J, from_gaussian<S>(c));
      else
        f.add(J, to_complex(c) * 0.25);
    }
    w.add(xi, f);
  }
  return w;
}

}  // namespace

std::vector<std::pair<std::string, json>> fixture_documents(std::uint64_t seed) {
  std::vector<std::pair<std::string, json>> docs;
  auto su2a = fixtures::su2_cr0();
  auto su2b = fixtures::su2_cr1();
  auto sl2 = fixtures::sl2_cr1();
  auto ex3 = fixtures::example3();
  docs.emplace_back("su2_cr0.json", algebra_doc(su2a, {Rational(1)}));
  docs.emplace_back("su2_cr1.json", algebra_doc(su2b, {Rational(1)}));
  docs.emplace_back("sl2_cr1.json", algebra_doc(sl2, {Rational(1)}));
  docs.emplace_back("example3.json",
                    algebra_doc(ex3, {Rational(0), Rational(0), Rational(1), Rational(1), Rational(1)}));
  {
    auto b = lie::su_basis(2);
    json doc = {{"ambient", "su(2)"}, {"basis", io::elements_to_json({b[0], b[1]})}, {"label", "span{X, Y}"}};
    docs.emplace_back("su2_xy.json", doc);
  }
  {
    const int k = static_cast<int>(ex3.m.dim());
    lie::Form z1(1, k), z12(2, k), one(0, k);
    z1.add(exterior::MultiIndex({1}, k), Scalar(1));
    z12.add(exterior::MultiIndex({1, 2}, k), Scalar(1));
    one.add(exterior::MultiIndex({}, k), Scalar(1));
    docs.emplace_back("extend_zeta1.json", extend_doc(ex3, z1, ex3.ideal.basis(), true));
    docs.emplace_back("extend_zeta12.json", extend_doc(ex3, z12, ex3.ideal.basis(), true));
    docs.emplace_back("extend_constant.json", extend_doc(ex3, one, ex3.ideal.basis(), true));
    auto corrupted = ex3.ideal.basis();
    corrupted[1] = lie::conjugate(corrupted[1]);  // L_2; a simple root would give another Borel
    docs.emplace_back("extend_corrupted.json", extend_doc(ex3, z1, corrupted, false));
  }
  docs.emplace_back("lambda_half.json", io::to_json(fixtures::lambda_half()));
  docs.emplace_back("golden.json", io::to_json(fixtures::golden()));
  docs.emplace_back("liouville.json", io::to_json(fixtures::liouville()));
  docs.emplace_back("even_N.json", json{{"N", 4}, {"n", 2}, {"rows", {{1, 0, 0, 0}, {0, 1, 0, 0}}}});

  std::mt19937_64 rng(seed);
  auto half = std::make_shared<const torus::TorusStructure<GaussianRational>>(fixtures::lambda_half());
  {
    auto w = random_primitive(half, 0, 12, rng);
    docs.emplace_back("solve_exact.json", io::to_json(fourier::dbar_b(w)));
  }
  {
    auto lv = std::make_shared<const torus::TorusStructure<Complex64>>(fixtures::liouville());
    auto w = random_primitive(lv, 0, 12, rng);
    docs.emplace_back("solve_float.json", io::to_json(fourier::dbar_b(w)));
  }
  {
    fourier::FourierForm<GaussianRational> u(half, 1);
    exterior::AltForm<GaussianRational> c(1, 1);
    c.add(exterior::MultiIndex({1}, 1), GaussianRational(2L, -1L));
    u.add({0, 0, 0}, c);
    docs.emplace_back("solve_invariant.json", io::to_json(u));
    fourier::FourierForm<GaussianRational> res(half, 1);
    res.add({1, -2, 0}, c);
    docs.emplace_back("solve_resonant.json", io::to_json(res));
    fourier::FourierForm<GaussianRational> nc(half, 0);
    exterior::AltForm<GaussianRational> f(0, 1);
    f.add(exterior::MultiIndex({}, 1), GaussianRational(1));
    nc.add({1, 0, 0}, f);
    docs.emplace_back("solve_not_closed.json", io::to_json(nc));
  }
  return docs;
}

RunReport cmd_fixtures_export(const std::string& dir, std::uint64_t seed) {
  RunReport rep;
  rep.command = "fixtures export";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir + ": " + ec.message());
  json files = json::array();
  for (const auto& [name, doc] : fixture_documents(seed)) {
    auto path = std::filesystem::path(dir) / name;
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path.string());
    f << doc.dump(2) << "\n";
    rep.field("wrote", path.string());
    files.push_back(path.string());
  }
  rep.field("seed", std::to_string(seed));
  rep.payload = {{"files", std::move(files)}, {"seed", seed}};
  return rep;
}

RunReport run_on_file(const std::string& command, const std::string& path, const Options& options) {
  auto input_error = [&](const std::string& msg) {
    RunReport rep;
    rep.command = command;
    rep.fail_input(msg);
    return rep;
  };
  json input;
  {
    std::ifstream f(path);
    if (!f) return input_error("cannot read " + path);
    try {
      input = json::parse(f);
    } catch (const json::exception& e) {
      return input_error(std::string("malformed JSON: ") + e.what());
    }
  }
  try {
    if (command == "classify") return cmd_classify(input);
    if (command == "leviflat") return cmd_leviflat(input);
    if (command == "dc") return cmd_dc(input, options);
    if (command == "solve") return cmd_solve(input, options);
    if (command == "extend") return cmd_extend(input);
    return input_error("unknown command " + command);
  } catch (const InputError& e) {
    return input_error(e.what());
  } catch (const json::exception& e) {
    return input_error(std::string("malformed input: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return input_error(e.what());
  } catch (const std::domain_error& e) {
    return input_error(e.what());
  }
}

}  // namespace crinv::cli
