#include "doctest.h"
#include "maxcurve/algebra.hpp"

#include <random>

using namespace maxcurve;
using namespace maxcurve::algebra;
using gf::FieldElement;

namespace {

gf::Field F7 = gf::make_field(7, 1);
gf::Field F9 = gf::make_field(3, 2);

FPoly rand_poly(gf::Field f, int deg, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, f->size - 1);
  FPoly p(gf::zero(f));
  for (int i = 0; i <= deg; ++i) p.set_coeff(i, gf::element_from_index(f, d(rng)));
  return p;
}

Series<FieldElement> geometric(gf::Field f, std::int64_t prec) {
  // 1/(1 - t) = 1 + t + t^2 + ...
  std::vector<FieldElement> c(prec, gf::one(f));
  return Series<FieldElement>(gf::zero(f), 0, std::move(c), prec);
}

}  // namespace

TEST_CASE("binomial coefficients mod p match the rational values") {
  // rows of Pascal's triangle reduced mod 3 and mod 7
  long long pas[11][11] = {};
  pas[0][0] = 1;
  for (int n = 1; n <= 10; ++n) {
    pas[n][0] = 1;
    for (int k = 1; k <= n; ++k) pas[n][k] = pas[n - 1][k - 1] + pas[n - 1][k];
  }
  for (int n = 0; n <= 10; ++n) {
    for (int k = 0; k <= 10; ++k) {
      CHECK(binom_mod_p(n, k, 3) == pas[n][k] % 3);
      CHECK(binom_mod_p(n, k, 7) == pas[n][k] % 7);
    }
  }
}

TEST_CASE("binomial coefficients with negative upper argument") {
  // C(-1, k) = (-1)^k
  for (int k = 0; k < 6; ++k) {
    std::uint32_t expect = (k % 2 == 0) ? 1 : 4;
    CHECK(binom_mod_p(-1, k, 5) == expect);
  }
  // C(-2, 1) = -2, C(-2, 2) = 3, C(-3, 2) = 6
  CHECK(binom_mod_p(-2, 1, 7) == 5);
  CHECK(binom_mod_p(-2, 2, 7) == 3);
  CHECK(binom_mod_p(-3, 2, 7) == 6);
  CHECK(binom_mod_p(-3, 2, 5) == 1);
}

TEST_CASE("Lucas factorization: C(p, k) vanishes for 0 < k < p") {
  for (std::uint32_t k = 1; k < 7; ++k) CHECK(binom_mod_p(7, k, 7) == 0);
  CHECK(binom_mod_p(7, 0, 7) == 1);
  CHECK(binom_mod_p(7, 7, 7) == 1);
  CHECK(binom_mod_p(49, 7, 7) == 0);   // base-7 digit 0 cannot choose 1
  CHECK(binom_mod_p(56, 7, 7) == 1);   // digits line up: C(1,1) C(1,0)... = 1
}

TEST_CASE("polynomial division satisfies a = qb + r with deg r < deg b") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    FPoly a = rand_poly(F7, 8, rng);
    FPoly b = rand_poly(F7, 3, rng);
    if (b.is_zero()) continue;
    auto [q, r] = a.divmod(b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("gcd and extended gcd over F_9") {
  std::mt19937 rng(7);
  FPoly g0 = rand_poly(F9, 2, rng);
  FPoly a = g0 * rand_poly(F9, 3, rng);
  FPoly b = g0 * rand_poly(F9, 4, rng);
  FPoly g = poly_gcd(a, b);
  // g0 divides the gcd
  auto [q1, r1] = g.divmod(g0.monic());
  CHECK(r1.is_zero());
  auto eg = poly_ext_gcd(a, b);
  CHECK(eg.g == g);
  CHECK(eg.u * a + eg.v * b == eg.g);
}

TEST_CASE("polynomial evaluation and derivative") {
  // f = x^3 + 2x + 1 over F_7, f' = 3x^2 + 2
  FPoly f(gf::zero(F7));
  f.set_coeff(3, gf::one(F7));
  f.set_coeff(1, gf::from_int(F7, 2));
  f.set_coeff(0, gf::one(F7));
  FPoly fp = f.derivative();
  CHECK(fp.degree() == 2);
  CHECK(fp.coeff(2) == gf::from_int(F7, 3));
  CHECK(fp.coeff(0) == gf::from_int(F7, 2));
  for (std::uint64_t i = 0; i < 7; ++i) {
    FieldElement x = gf::element_from_index(F7, i);
    CHECK(f.eval(x) == x * x * x + gf::from_int(F7, 2) * x + gf::one(F7));
  }
  // in char 3 the derivative of x^3 vanishes
  FPoly cube(gf::zero(F9));
  cube.set_coeff(3, gf::one(F9));
  CHECK(cube.derivative().is_zero());
}

TEST_CASE("series multiplication against the geometric identity") {
  auto g = geometric(F7, 12);
  // (1 - t) * (1 + t + ... ) = 1 within precision
  Series<FieldElement> one_minus_t(gf::zero(F7), 0, {gf::one(F7), -gf::one(F7)}, kExactPrec);
  auto prod = one_minus_t * g;
  CHECK(prod.coeff_at(0) == gf::one(F7));
  for (int e = 1; e < 12; ++e) CHECK(prod.coeff_at(e).is_zero());
  CHECK(prod.prec() == 12);
}

TEST_CASE("series inverse is a two-sided inverse within precision") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::uint64_t> d(0, 8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FieldElement> c;
    c.push_back(gf::element_from_index(F9, 1 + d(rng) % 8));  // unit constant term
    for (int i = 0; i < 9; ++i) c.push_back(gf::element_from_index(F9, d(rng)));
    std::int64_t v = static_cast<std::int64_t>(d(rng)) - 4;
    Series<FieldElement> s(gf::zero(F9), v, c, v + 10);
    auto si = s.inverse();
    CHECK(si.val() == -v);
    auto prod = s * si;
    CHECK(prod.coeff_at(0) == gf::one(F9));
    for (std::int64_t e = 1; e < prod.prec(); ++e) CHECK(prod.coeff_at(e).is_zero());
  }
}

TEST_CASE("series precision shrinks correctly under multiplication") {
  // a known mod t^5 with val 1, b known mod t^3 with val -2
  Series<FieldElement> a(gf::zero(F7), 1, {gf::one(F7), gf::one(F7)}, 5);
  Series<FieldElement> b(gf::zero(F7), -2, {gf::one(F7)}, 3);
  auto prod = a * b;
  CHECK(prod.val() == -1);
  CHECK(prod.prec() == 3);  // min(5 + (-2), 3 + 1)
}

TEST_CASE("hasse derivatives act by generalized binomials") {
  // D^(j) t^n = C(n, j) t^(n-j), including negative n
  Series<FieldElement> tneg = Series<FieldElement>::exact_monomial(gf::one(F7), -1);
  auto d1 = hasse_derivative(tneg, 1, 7);
  CHECK(d1.coeff_at(-2) == -gf::one(F7));
  auto d2 = hasse_derivative(tneg, 2, 7);
  CHECK(d2.coeff_at(-3) == gf::one(F7));  // C(-1,2) = 1

  // char 2: D^(1) t^2 = 0 but D^(2) t^2 = 1
  gf::Field f2 = gf::make_field(2, 1);
  Series<FieldElement> t2 = Series<FieldElement>::exact_monomial(gf::one(f2), 2);
  CHECK(hasse_derivative(t2, 1, 2).is_zero_within_prec());
  CHECK(hasse_derivative(t2, 2, 2).coeff_at(0) == gf::one(f2));
}

TEST_CASE("hasse derivative precision bookkeeping") {
  Series<FieldElement> s(gf::zero(F7), 0, {gf::one(F7), gf::one(F7), gf::one(F7)}, 6);
  auto d = hasse_derivative(s, 2, 7);
  CHECK(d.prec() == 4);
  CHECK(d.coeff_at(0) == gf::one(F7));  // C(2,2) = 1
}

TEST_CASE("pivot orders of staggered rows") {
  auto z = gf::zero(F7);
  auto o = gf::one(F7);
  std::vector<Series<FieldElement>> rows;
  rows.emplace_back(z, 0, std::vector<FieldElement>{o, o, o, o, o, o}, 6);           // 1 + t + ...
  rows.emplace_back(z, 1, std::vector<FieldElement>{o, o, o, o, o}, 6);              // t + t^2 + ...
  rows.emplace_back(z, 3, std::vector<FieldElement>{o, o, o}, 6);                    // t^3 + ...
  auto res = pivot_orders(rows);
  REQUIRE(!res.deficient);
  CHECK(res.orders == std::vector<std::int64_t>{0, 1, 3});
}

TEST_CASE("pivot orders see through leading-term collisions") {
  auto z = gf::zero(F7);
  auto o = gf::one(F7);
  auto two = gf::from_int(F7, 2);
  // row2 = row1 + 2 t^4 + ..., so the second pivot is at 4
  std::vector<Series<FieldElement>> rows;
  rows.emplace_back(z, 0, std::vector<FieldElement>{o, o, o, o, o, o, o}, 7);
  rows.emplace_back(z, 0, std::vector<FieldElement>{o, o, o, o, o + two, o, o}, 7);
  auto res = pivot_orders(rows);
  REQUIRE(!res.deficient);
  CHECK(res.orders == std::vector<std::int64_t>{0, 4});
}

TEST_CASE("pivot orders flag insufficient precision") {
  auto z = gf::zero(F7);
  auto o = gf::one(F7);
  std::vector<Series<FieldElement>> rows;
  rows.emplace_back(z, 0, std::vector<FieldElement>{o, o}, 2);
  rows.emplace_back(z, 0, std::vector<FieldElement>{o, o}, 2);  // equal within precision
  auto res = pivot_orders(rows);
  CHECK(res.deficient);
}

TEST_CASE("series determinant tracks valuation and signs") {
  auto z = gf::zero(F7);
  auto o = gf::one(F7);
  auto t = Series<FieldElement>::exact_monomial(o, 1);
  auto c1 = Series<FieldElement>::exact_const(o);
  // det [[1, t], [t, 1]] = 1 - t^2
  auto r = series_det<FieldElement>({{c1, t}, {t, c1}});
  REQUIRE(!r.deficient);
  CHECK(r.det.coeff_at(0) == o);
  CHECK(r.det.coeff_at(2) == -o);
  // det [[0, t], [t, 0]] = -t^2 (column swap flips the sign)
  auto zeroS = Series<FieldElement>::zero_mod(z, 64);
  auto r2 = series_det<FieldElement>({{zeroS, t}, {t, zeroS}});
  REQUIRE(!r2.deficient);
  CHECK(r2.det.valuation() == 2);
  CHECK(r2.det.coeff_at(2) == -o);
}

TEST_CASE("series determinant reports deficiency on an all-zero block") {
  auto z = gf::zero(F7);
  auto zeroS = Series<FieldElement>::zero_mod(z, 3);
  auto r = series_det<FieldElement>({{zeroS, zeroS}, {zeroS, zeroS}});
  CHECK(r.deficient);
}

TEST_CASE("nullspace vectors annihilate the matrix") {
  auto mk = [&](std::int64_t v) { return gf::from_int(F7, v); };
  std::vector<std::vector<FieldElement>> m = {
      {mk(1), mk(2), mk(3), mk(4)},
      {mk(0), mk(0), mk(1), mk(5)},
  };
  auto basis = nullspace(m, gf::zero(F7));
  CHECK(basis.size() == 2);  // rank 2, 4 columns
  for (const auto& v : basis) {
    for (const auto& row : m) {
      FieldElement acc = gf::zero(F7);
      for (std::size_t i = 0; i < row.size(); ++i) acc += row[i] * v[i];
      CHECK(acc.is_zero());
    }
  }
}

TEST_CASE("bivariate polynomials evaluate and differentiate") {
  BivarPoly F(F9);
  // F = x^2 + y^5 - 1 (the coefficients land in F_9 via from_int)
  F.set(2, 0, gf::one(F9));
  F.set(0, 5, gf::one(F9));
  F.set(0, 0, -gf::one(F9));
  CHECK(F.deg_x() == 2);
  CHECK(F.deg_y() == 5);
  CHECK(F.total_degree() == 5);
  auto fx = F.dx();
  CHECK(fx.terms().size() == 1);
  CHECK(fx.eval(gf::one(F9), gf::zero(F9)) == gf::from_int(F9, 2));
  auto fy = F.dy();
  // d/dy y^5 = 5 y^4 = 2 y^4 in char 3
  CHECK(fy.eval(gf::one(F9), gf::one(F9)) == gf::from_int(F9, 2));
  for (std::uint64_t i = 0; i < 9; ++i) {
    for (std::uint64_t j = 0; j < 9; ++j) {
      auto x = gf::element_from_index(F9, i);
      auto y = gf::element_from_index(F9, j);
      CHECK(F.eval(x, y) == x * x + gf::pow(y, 5) - gf::one(F9));
    }
  }
}

TEST_CASE("series evaluation of a bivariate polynomial") {
  // F = y^2 - x vanishes along X = t^2, Y = t
  gf::Field f5 = gf::make_field(5, 1);
  BivarPoly F(f5);
  F.set(0, 2, gf::one(f5));
  F.set(1, 0, -gf::one(f5));
  auto X = Series<FieldElement>::exact_monomial(gf::one(f5), 2).truncated(10);
  auto Y = Series<FieldElement>::exact_monomial(gf::one(f5), 1).truncated(10);
  auto S = eval_series(F, X, Y, [](const FieldElement& c) { return c; });
  CHECK(S.is_zero_within_prec());
  // and F(t, t) = t^2 - t has valuation 1
  auto T = Series<FieldElement>::exact_monomial(gf::one(f5), 1).truncated(10);
  auto S2 = eval_series(F, T, T, [](const FieldElement& c) { return c; });
  CHECK(S2.valuation() == 1);
  CHECK(S2.coeff_at(1) == -gf::one(f5));
  CHECK(S2.coeff_at(2) == gf::one(f5));
}

TEST_CASE("embedding a polynomial into an extension preserves evaluation") {
  gf::Field f3 = gf::make_field(3, 1);
  BivarPoly F(f3);
  F.set(1, 1, gf::one(f3));
  F.set(0, 0, gf::from_int(f3, 2));
  auto F9v = F.embedded_into(F9);
  for (std::uint64_t i = 0; i < 3; ++i) {
    auto x = gf::element_from_index(f3, i);
    auto ex = gf::embed(x, F9);
    CHECK(F9v.eval(ex, ex) == gf::embed(F.eval(x, x), F9));
  }
}

TEST_CASE("polynomial hasse derivatives act by binomials") {
  gf::Field F3 = gf::make_field(3, 1);
  gf::Field F2 = gf::make_field(2, 1);

  FPoly f(gf::zero(F3));  // x^5
  f.set_coeff(5, gf::one(F3));
  FPoly d2 = hasse_derivative(f, 2, 3);  // C(5,2) = 10 = 1 mod 3
  CHECK(d2.degree() == 3);
  CHECK(d2.coeff(3) == gf::one(F3));

  FPoly sq(gf::zero(F2));  // x^2 over F_2: first derivative dies, second does not
  sq.set_coeff(2, gf::one(F2));
  CHECK(hasse_derivative(sq, 1, 2).is_zero());
  CHECK(hasse_derivative(sq, 2, 2) == FPoly::constant(gf::one(F2)));

  std::mt19937 rng(11);
  FPoly g = rand_poly(F7, 9, rng);
  CHECK(hasse_derivative(g, 0, 7) == g);
}

TEST_CASE("hasse derivative composition identity") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    FPoly f = rand_poly(F7, 10, rng);
    for (std::uint64_t i = 0; i <= 3; ++i) {
      for (std::uint64_t j = 0; j <= 3; ++j) {
        FPoly lhs = hasse_derivative(hasse_derivative(f, j, 7), i, 7);
        FPoly rhs = hasse_derivative(f, i + j, 7).scaled(
            gf::from_int(F7, binom_mod_p(static_cast<std::int64_t>(i + j),
                                         static_cast<std::int64_t>(i), 7)));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("poly_mod_reduce folds exponents modulo y^(q^2) - y") {
  gf::Field F3 = gf::make_field(3, 1);
  FPoly mod(gf::zero(F3));  // y^9 - y
  mod.set_coeff(9, gf::one(F3));
  mod.set_coeff(1, -gf::one(F3));

  FPoly f(gf::zero(F3));  // y^10 + y^2 = y*y^9 + y^2 = 2 y^2 mod (y^9 - y)
  f.set_coeff(10, gf::one(F3));
  f.set_coeff(2, gf::one(F3));
  FPoly r = poly_mod_reduce(f, mod);
  CHECK(r.degree() == 2);
  CHECK(r.coeff(2) == gf::from_int(F3, 2));

  // the reduction agrees with evaluation everywhere (y^9 = y on F_9... here F_3^2)
  gf::Field F9b = gf::make_field(3, 2);
  FPoly fe(gf::zero(F9b)), re(gf::zero(F9b));
  for (std::int64_t i = 0; i <= f.degree(); ++i)
    fe.set_coeff(static_cast<std::size_t>(i), gf::embed(f.coeff(static_cast<std::size_t>(i)), F9b));
  for (std::int64_t i = 0; i <= r.degree(); ++i)
    re.set_coeff(static_cast<std::size_t>(i), gf::embed(r.coeff(static_cast<std::size_t>(i)), F9b));
  for (std::uint64_t i = 0; i < 9; ++i) {
    FieldElement y = gf::element_from_index(F9b, i);
    CHECK(fe.eval(y) == re.eval(y));
  }
}

TEST_CASE("bivariate hasse derivatives") {
  BivarPoly f(F9);  // x^5 y^2
  f.set(5, 2, gf::one(F9));
  BivarPoly dx2 = f.hasse_dx(2);  // C(5,2) = 1 mod 3
  CHECK(dx2.terms().size() == 1);
  CHECK(dx2.terms().begin()->first == BivarPoly::Key{3, 2});
  CHECK(dx2.terms().begin()->second == gf::one(F9));
  BivarPoly dy1 = f.hasse_dy(1);  // C(2,1) = 2
  CHECK(dy1.terms().begin()->second == gf::from_int(F9, 2));

  // char-3 blind spot of the plain derivative, visible to the divided power
  BivarPoly cube(F9);
  cube.set(3, 0, gf::one(F9));
  CHECK(cube.dx().is_zero());
  BivarPoly d3 = cube.hasse_dx(3);
  CHECK(d3.terms().size() == 1);
  CHECK(d3.terms().begin()->first == BivarPoly::Key{0, 0});
}
