#include <doctest.h>

#include "crinv/fixtures.hpp"
#include "crinv/liealg.hpp"
#include "support.hpp"

using namespace crinv;
using namespace crinv::lie;
using exterior::MultiIndex;

namespace {

const Scalar I = Scalar::i();

Matrix mat2(Scalar a, Scalar b, Scalar c, Scalar d) { return {{a, b}, {c, d}}; }

LieElement random_combination(const std::vector<LieElement>& basis) {
  LieElement out(basis.front().ambient());
  for (const auto& e : basis) out += testing::small_gaussian(3) * e;
  return out;
}

std::vector<std::vector<LieElement>> fixture_bases() {
  return {su_basis(2), sl2_basis(), su_basis(3), su_basis(4), ambient_basis(product_ambient(2, 4))};
}

// Coordinates of [X_a, X_b] on the basis of h, by a direct span solve.
Coords bracket_coords(const Subalgebra& h, std::size_t a, std::size_t b) {
  auto c = h.span().coordinates(bracket(h[a], h[b]));
  REQUIRE(c);
  return *c;
}

// u evaluated on an arbitrary index tuple (0-based basis positions).
Scalar evaluate(const Form& u, std::vector<int> tuple) {
  for (auto& t : tuple) t += 1;
  auto n = exterior::normalize(tuple, u.universe());
  if (!n) return {};
  Scalar c = u.coeff(n->first);
  return n->second > 0 ? c : -c;
}

// (du)_K = sum_{j<k} (-1)^{j+k+1} u([X_j, X_k], X_1..^j..^k..) with 1-based positions j, k.
Form ce_oracle(const Form& u, const Subalgebra& h) {
  const int n = static_cast<int>(h.dim());
  Form out(u.degree() + 1, n);
  if (u.degree() + 1 > n) return out;
  for (const auto& K : exterior::all_multi_indices(n, u.degree() + 1)) {
    auto e = K.entries();
    Scalar sum;
    for (std::size_t j = 0; j < e.size(); ++j)
      for (std::size_t k = j + 1; k < e.size(); ++k) {
        Coords c = bracket_coords(h, e[j] - 1, e[k] - 1);
        Scalar inner;
        for (int cc = 0; cc < n; ++cc) {
          if (c[cc].is_zero()) continue;
          std::vector<int> tuple = {cc};
          for (std::size_t l = 0; l < e.size(); ++l)
            if (l != j && l != k) tuple.push_back(e[l] - 1);
          inner += c[cc] * evaluate(u, tuple);
        }
        bool positive = (j + 1 + k + 1 + 1) % 2 == 0;
        sum += positive ? inner : -inner;
      }
    out.add(K, sum);
  }
  return out;
}

Form random_form(int q, int n) {
  return testing::random_form<Scalar>(q, n, 4, [] { return testing::small_gaussian(3); });
}

}  // namespace

TEST_CASE("sl(2) brackets") {
  auto b = sl2_basis();
  const auto &T = b[0], &X = b[1], &Y = b[2];
  CHECK(bracket(T, X) == Scalar(2) * X);
  CHECK(bracket(X, Y) == T);
  CHECK(bracket(T, T).is_zero());
  CHECK_THROWS_AS(bracket(T, su_basis(2)[0]), std::domain_error);
}

TEST_CASE("conjugation") {
  auto b = su_basis(2);
  const auto &X = b[0], &Y = b[1];
  CHECK(conjugate(X - I * Y) == X + I * Y);
  auto t1 = su_basis(4)[0];
  CHECK(conjugate(t1) == t1);
  auto s = sl2_basis();
  CHECK(conjugate(s[1] + I * s[0]) == s[1] - I * s[0]);
  // Torus coordinates conjugate entrywise.
  Ambient amb = product_ambient(2, 2);
  LieElement z = LieElement::torus_direction(amb, 0) * I;
  CHECK(conjugate(z) == -z);
}

TEST_CASE("su(n) bases") {
  auto b2 = su_basis(2);
  REQUIRE(b2.size() == 3);
  CHECK(b2[0].matrix() == mat2(Scalar(), I, I, Scalar()));
  CHECK(b2[1].matrix() == mat2(Scalar(), Scalar(-1), Scalar(1), Scalar()));
  CHECK(b2[2].matrix() == mat2(I, Scalar(), Scalar(), -I));
  for (int n = 2; n <= 4; ++n) {
    auto b = su_basis(n);
    CHECK(b.size() == static_cast<std::size_t>(n * n - 1));
    CHECK(ElementSpan(su_ambient(n), b).independent());
    for (const auto& e : b) {
      Scalar trace;
      for (int a = 0; a < n; ++a) trace += e.matrix()[a][a];
      CHECK(trace.is_zero());
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) CHECK((e.matrix()[a][c] + crinv::conjugate(e.matrix()[c][a])).is_zero());
      CHECK(e.in_real_form());
    }
  }
  CHECK_THROWS_AS(su_basis(1), std::domain_error);
  CHECK_THROWS_AS(su_basis(9), std::domain_error);
}

TEST_CASE("antisymmetry, Jacobi and conjugation compatibility on random triples") {
  for (const auto& basis : fixture_bases())
    for (int trial = 0; trial < 15; ++trial) {
      auto a = random_combination(basis), b = random_combination(basis), c = random_combination(basis);
      CHECK(bracket(a, b) == -bracket(b, a));
      CHECK((bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))).is_zero());
      CHECK(conjugate(conjugate(a)) == a);
      CHECK(conjugate(bracket(a, b)) == bracket(conjugate(a), conjugate(b)));
    }
}

TEST_CASE("root decomposition of su(2)") {
  auto b = su_basis(2);
  auto r = root_decompose({b[2]}, b);
  REQUIRE(r.roots.size() == 2);
  // [T, X - iY] = 2i (X - iY) by direct commutator.
  LieElement L = b[0] - I * b[1];
  CHECK(bracket(b[2], L) == Scalar(0L, 2L) * L);
  auto idx = find_root(r, L);
  REQUIRE(idx);
  CHECK(r.functionals[*idx][0] == Scalar(0L, 2L));
  auto jdx = find_root(r, b[0] + I * b[1]);
  REQUIRE(jdx);
  CHECK(r.functionals[*jdx][0] == Scalar(0L, -2L));
}

TEST_CASE("root datum invariants") {
  std::vector<std::pair<std::vector<LieElement>, std::vector<LieElement>>> cases;
  cases.emplace_back(standard_torus(su_ambient(4)), su_basis(4));
  cases.emplace_back(standard_torus(su_ambient(3)), su_basis(3));
  Ambient p = product_ambient(2, 4);
  cases.emplace_back(standard_torus(p), ambient_basis(p));
  cases.emplace_back(std::vector<LieElement>{sl2_basis()[0]}, sl2_basis());
  for (const auto& [torus, basis] : cases) {
    auto r = root_decompose(torus, basis);
    ElementSpan tspan(torus.front().ambient(), torus);
    for (std::size_t k = 0; k < r.roots.size(); ++k) {
      CHECK_FALSE(tspan.contains(r.roots[k]));
      for (std::size_t j = 0; j < torus.size(); ++j)
        CHECK(bracket(torus[j], r.roots[k]) == r.functionals[k][j] * r.roots[k]);
      for (std::size_t l = k + 1; l < r.roots.size(); ++l) CHECK(r.functionals[k] != r.functionals[l]);
    }
  }
  CHECK(root_decompose(standard_torus(su_ambient(4)), su_basis(4)).roots.size() == 12);
}

TEST_CASE("su(4) L_k are root vectors with lambda as printed up to one global sign") {
  auto s = fixtures::su4();
  auto r = root_decompose(s.T, su_basis(4));
  for (int k = 0; k < 6; ++k) {
    auto idx = find_root(r, s.L[k]);
    REQUIRE(idx);
    for (int j = 0; j < 3; ++j) {
      // [T_j, L_k] = -i lambda L_k, so lambda = i * eigenvalue.
      Scalar lambda = I * r.functionals[*idx][j];
      CHECK(lambda == Scalar(-fixtures::printed_lambda(j + 1, k + 1)));
    }
    CHECK(find_root(r, conjugate(s.L[k])));
  }
}

TEST_CASE("root decomposition errors") {
  Ambient abel = product_ambient(3, 0);
  auto ab = ambient_basis(abel);
  CHECK(root_decompose(ab, ab).roots.empty());
  auto b = su_basis(2);
  CHECK_THROWS_AS(root_decompose({b[0], b[1]}, b), std::domain_error);
  // T + X has eigenvalues +-i sqrt 2, so ad(T + X) needs sqrt 2.
  CHECK_THROWS_AS(root_decompose({b[2] + b[0]}, b), FieldExtensionError);
}

TEST_CASE("is_cr and is_subalgebra") {
  auto b = su_basis(2);
  CHECK(is_cr(Subalgebra(su_ambient(2), {b[0] - I * b[1]})));
  CHECK_FALSE(is_cr(Subalgebra(su_ambient(2), {b[2]})));
  CHECK(is_cr(fixtures::example3().h));
  CHECK(is_subalgebra({b[0] - I * b[1]}).ok);
  auto c = is_subalgebra({b[0], b[1]});
  CHECK_FALSE(c.ok);
  REQUIRE(c.witness);
  CHECK(*c.witness == std::pair<std::size_t, std::size_t>(0, 1));
  REQUIRE(c.offending);
  CHECK(proportionality(*c.offending, b[2]));
  CHECK(is_subalgebra(fixtures::example3().h.basis()).ok);
  CHECK_THROWS_AS(Subalgebra(su_ambient(2), {b[0], b[0] + b[0]}), std::domain_error);
}

TEST_CASE("ideals") {
  auto ex = fixtures::example3();
  auto e = fixtures::example3_elements();
  CHECK(is_ideal(ex.ideal, ex.h).ok);
  CHECK(is_ideal(Subalgebra(ex.ambient, {}), ex.h).ok);
  // Z_1 is central in the toric part only; [Z_1, L_1] = 2i L_1 leaves span{Z_1}.
  CHECK(is_ideal(Subalgebra(ex.ambient, {e.Z1}), ex.m).ok);
  CHECK_FALSE(is_ideal(Subalgebra(ex.ambient, {e.Z1}), ex.h).ok);
  CHECK(bracket(e.Z1, e.L[0]) == Scalar(0L, 2L) * e.L[0]);
  CHECK_THROWS_AS(is_ideal(Subalgebra(ex.ambient, {conjugate(e.L[0])}), ex.h), std::domain_error);
  // The toric part is not an ideal: [Z_1, L_k] is a nonzero multiple of L_k.
  CHECK_FALSE(is_ideal(ex.m, ex.h).ok);
}

TEST_CASE("cr0 constructions") {
  auto su2 = fixtures::su2_cr0();
  CHECK(su2.h.dim() == 1);
  CHECK(su2.h.label() == "CR0");
  CHECK(su2.h.span().contains(fixtures::su2_L()));
  auto ex = fixtures::example3();
  CHECK(ex.h.dim() == 8);
  auto e = fixtures::example3_elements();
  for (const auto& l : e.L) CHECK(ex.h.span().contains(l));
  Subalgebra empty(su2.ambient, {});
  CHECK(cr0_construct(empty, su2.roots, {}).dim() == 0);
  // m outside the torus span.
  auto b = su_basis(2);
  CHECK_THROWS_AS(cr0_construct(Subalgebra(su2.ambient, {b[0]}), su2.roots, su2.positive), std::domain_error);
  // A selection that is not bracket-closed: E_12 and E_23 without E_13.
  auto s = fixtures::su4();
  auto r = root_decompose(s.T, su_basis(4));
  std::vector<std::size_t> sel = {*find_root(r, s.L[0]), *find_root(r, s.L[2])};
  CHECK_THROWS_AS(cr0_construct(Subalgebra(s.ambient, {}), r, sel), std::domain_error);
}

TEST_CASE("cr1 constructions") {
  auto su2 = fixtures::su2_cr1();
  CHECK(su2.h.dim() == 1);
  CHECK(su2.h.label() == "CR1");
  auto b = su_basis(2);
  CHECK(su2.h.span().contains(b[2] + fixtures::su2_L()));
  auto sl2 = fixtures::sl2_cr1();
  CHECK(sl2.h.span().contains(fixtures::sl2_L()));
  CHECK(is_cr(sl2.h));
  std::size_t alpha = *find_root(su2.roots, fixtures::su2_L());
  Subalgebra empty(su2.ambient, {});
  CHECK_THROWS_AS(cr1_construct(alpha, empty, LieElement(su2.ambient), b[2], su2.roots, su2.positive),
                  std::domain_error);
  // m not inside ker(alpha).
  Subalgebra m(su2.ambient, {b[2]});
  CHECK_THROWS_AS(cr1_construct(alpha, m, fixtures::su2_L(), b[2], su2.roots, su2.positive), std::domain_error);
  // t = 0 with x spanning g_alpha coincides with the CR0 span.
  auto h0 = cr1_construct(alpha, empty, fixtures::su2_L(), LieElement(su2.ambient), su2.roots, su2.positive);
  auto c0 = cr0_construct(empty, su2.roots, su2.positive);
  CHECK(h0.dim() == c0.dim());
  for (const auto& x : h0.basis()) CHECK(c0.span().contains(x));
}

TEST_CASE("construction dimensions and CR property on every fixture") {
  for (const auto& f : {fixtures::su2_cr0(), fixtures::su2_cr1(), fixtures::sl2_cr1(), fixtures::example3()}) {
    CAPTURE(f.name);
    CHECK(is_subalgebra(f.h.basis()).ok);
    CHECK(is_cr(f.h));
    std::size_t N = ambient_basis(f.ambient).size();
    std::size_t d = f.roots.torus.size();
    if (f.type == "CR0") CHECK(f.h.dim() == d / 2 + f.positive.size());
    CHECK(f.h.dim() == N / 2);
    CHECK(is_ideal(f.ideal, f.h).ok);
  }
}

TEST_CASE("Levi form values") {
  auto b = su_basis(2);
  LieElement L = fixtures::su2_L();
  CHECK(bracket(L, conjugate(L)) == Scalar(0L, 4L) * b[2]);
  Covector xi{b, {Scalar(), Scalar(), Scalar(1)}};
  CHECK(levi_form(xi, L, L) == Scalar(2));
  Ambient abel = product_ambient(3, 0);
  auto ab = ambient_basis(abel);
  Covector any{ab, {Scalar(1), Scalar(2), I}};
  CHECK(levi_form(any, ab[0] + I * ab[1], ab[2]).is_zero());
  // Example 3 with xi = theta_2, the dual of d/dt_2.
  auto ex = fixtures::example3();
  auto basis = ambient_basis(ex.ambient);
  std::vector<Scalar> v(basis.size());
  v[1] = Scalar(1);
  Covector theta2{basis, v};
  for (const auto& x : ex.h.basis())
    for (const auto& y : ex.h.basis()) CHECK(levi_form(theta2, x, y).is_zero());
  // sl(2): [L, conj L] = 2i (L + conj L).
  LieElement l = fixtures::sl2_L();
  CHECK(bracket(l, conjugate(l)) == Scalar(0L, 2L) * (l + conjugate(l)));
}

TEST_CASE("Levi-flat verdicts") {
  auto a = is_levi_flat(fixtures::su2_cr0().h);
  CHECK_FALSE(a.flat);
  CHECK(a.levi_value == Scalar(2));
  CHECK_FALSE(a.covector_value.is_zero());
  CHECK_FALSE(is_levi_flat(fixtures::su2_cr1().h).flat);
  CHECK(is_levi_flat(fixtures::sl2_cr1().h).flat);
  CHECK(is_levi_flat(fixtures::example3().h).flat);
  auto b = su_basis(2);
  CHECK_THROWS_AS(is_levi_flat(Subalgebra(su_ambient(2), {b[2]})), std::domain_error);
}

TEST_CASE("Levi-flat verdict is invariant under change of basis") {
  for (const auto& f : {fixtures::su2_cr0(), fixtures::sl2_cr1(), fixtures::example3()}) {
    bool flat = is_levi_flat(f.h).flat;
    for (int trial = 0; trial < 5; ++trial) {
      // Unit lower-triangular mixing is always invertible.
      std::vector<LieElement> mixed;
      for (std::size_t i = 0; i < f.h.dim(); ++i) {
        LieElement e = f.h[i];
        for (std::size_t j = 0; j < i; ++j) e += testing::small_gaussian(2) * f.h[j];
        mixed.push_back(e);
      }
      std::shuffle(mixed.begin(), mixed.end(), testing::rng());
      CHECK(is_levi_flat(Subalgebra(f.ambient, mixed)).flat == flat);
    }
  }
}

TEST_CASE("derived algebras") {
  for (int n = 2; n <= 4; ++n) CHECK(derived_algebra(su_ambient(n), su_basis(n)).dim() == static_cast<std::size_t>(n * n - 1));
  Ambient abel = product_ambient(2, 0);
  CHECK(derived_algebra(abel, ambient_basis(abel)).dim() == 0);
  Ambient p = product_ambient(2, 4);
  auto d = derived_algebra(p, ambient_basis(p));
  CHECK(d.dim() == 15);
  for (const auto& e : d.basis())
    for (const auto& t : e.torus()) CHECK(t.is_zero());
}

TEST_CASE("right translation") {
  LieElement L = fixtures::su2_L();
  Matrix t = mat2(I, Scalar(), Scalar(), -I);
  auto c = proportionality(right_translate(L, t), L);
  REQUIRE(c);
  CHECK(*c == -I);
  CHECK(right_translate(L, mat2(Scalar(1), Scalar(), Scalar(), Scalar(1))) == L);
  auto s = fixtures::su4();
  Matrix t4(4, std::vector<Scalar>(4));
  t4[0][0] = I;
  t4[1][1] = -I;
  t4[2][2] = Scalar(1);
  t4[3][3] = Scalar(1);
  for (const auto& l : s.L) CHECK(proportionality(right_translate(l, t4), l));
  CHECK_THROWS_AS(right_translate(L, t4), std::domain_error);
  CHECK_THROWS_AS(right_translate(L, mat2(Scalar(1), Scalar(1), Scalar(1), Scalar(1))), std::domain_error);
}

TEST_CASE("Chevalley-Eilenberg differential basics") {
  Ambient abel = product_ambient(3, 0);
  Subalgebra a(abel, ambient_basis(abel));
  CHECK(ce_differential(random_form(1, 3), a).is_zero());
  auto su2 = Subalgebra(su_ambient(2), su_basis(2));
  CHECK(ce_differential(Form::constant(3, Scalar(5)), su2).is_zero());
  CHECK_THROWS_AS(ce_differential(Form(4, 3), su2), std::domain_error);
  CHECK(ce_differential(Form(3, 3), su2).degree() == 4);
}

TEST_CASE("Chevalley-Eilenberg differential matches the evaluation oracle and squares to zero") {
  std::vector<Subalgebra> hs = {Subalgebra(su_ambient(2), su_basis(2)), Subalgebra(su_ambient(4), su_basis(4)),
                                fixtures::example3().h};
  for (const auto& h : hs) {
    StructureConstants sc(h);
    int n = static_cast<int>(h.dim());
    for (int trial = 0; trial < 8; ++trial) {
      int q = testing::uniform(0, std::min(n - 1, 3));
      Form u = random_form(q, n);
      Form du = ce_differential(u, sc);
      CHECK(du == ce_oracle(u, h));
      CHECK(ce_differential(du, sc).is_zero());
    }
  }
}

TEST_CASE("Chevalley-Eilenberg differential is a derivation") {
  Subalgebra h(su_ambient(4), su_basis(4));
  StructureConstants sc(h);
  for (int trial = 0; trial < 10; ++trial) {
    int p = testing::uniform(0, 2), q = testing::uniform(0, 2);
    Form a = random_form(p, 15), b = random_form(q, 15);
    Form lhs = ce_differential(exterior::wedge(a, b), sc);
    Form rhs = exterior::wedge(ce_differential(a, sc), b);
    Form right = exterior::wedge(a, ce_differential(b, sc));
    rhs += p % 2 ? -right : right;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("extend by zero") {
  auto ex = fixtures::example3();
  int k = static_cast<int>(ex.m.dim());
  Form z1(1, k), z12(2, k);
  z1.add(MultiIndex({1}, k), Scalar(1));
  z12.add(MultiIndex({1, 2}, k), Scalar(1));
  for (const auto& u : {z1, z12, Form::constant(k, Scalar(3))}) {
    Form w = extend_by_zero(u, ex.h, ex.m, ex.ideal);
    CHECK(w.degree() == u.degree());
    CHECK(ce_differential(w, ex.h).is_zero());
    CHECK(ce_oracle(w, ex.h).is_zero());
  }
  CHECK(extend_by_zero(Form::constant(k, Scalar(3)), ex.h, ex.m, ex.ideal) ==
        Form::constant(static_cast<int>(ex.h.dim()), Scalar(3)));
  // Field of m-arguments: w(Z_1) = 1, w vanishes on the ideal.
  Form w = extend_by_zero(z1, ex.h, ex.m, ex.ideal);
  auto e = fixtures::example3_elements();
  auto cz = ex.h.span().coordinates(e.Z1);
  REQUIRE(cz);
  Scalar val;
  for (int i = 0; i < static_cast<int>(ex.h.dim()); ++i) val += (*cz)[i] * w.coeff(MultiIndex({i + 1}, 8));
  CHECK(val == Scalar(1));
  for (const auto& l : e.L) {
    auto c = ex.h.span().coordinates(l);
    Scalar v;
    for (int i = 0; i < 8; ++i) v += (*c)[i] * w.coeff(MultiIndex({i + 1}, 8));
    CHECK(v.is_zero());
  }
  // Conjugating the non-simple L_2 breaks the ideal: [L_1, conj L_2] is a multiple of conj L_3.
  // (Conjugating a simple root vector such as L_6 only moves to another Borel.)
  auto bad = ex.ideal.basis();
  bad[1] = conjugate(bad[1]);
  std::vector<LieElement> hb = ex.m.basis();
  hb.insert(hb.end(), bad.begin(), bad.end());
  Subalgebra h2(ex.ambient, hb);
  CHECK_THROWS_AS(extend_by_zero(z1, h2, ex.m, Subalgebra(ex.ambient, bad)), std::domain_error);
  // m + ideal must be all of h.
  Subalgebra small(ex.ambient, {e.L[0]});
  CHECK_THROWS_AS(extend_by_zero(z1, ex.h, ex.m, small), std::domain_error);
}
