#include "doctest.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "maxcurve/curve.hpp"
#include "maxcurve/gf.hpp"
#include "maxcurve/linsys.hpp"

using namespace maxcurve;
using curve::CurveModel;
using curve::PlacePoint;

namespace {

PlacePoint infinite_place() {
  PlacePoint P;
  P.at_infinity = true;
  return P;
}

PlacePoint first_affine(const CurveModel& c, std::uint32_t ext = 1, std::uint32_t degree = 1) {
  PlacePoint out;
  bool got = false;
  curve::for_each_affine_point(c, ext, [&](const PlacePoint& p) {
    if (curve::point_degree(c, p) != degree) return true;
    out = p;
    got = true;
    return false;
  });
  REQUIRE(got);
  return out;
}

std::vector<std::int64_t> seq(std::initializer_list<std::int64_t> v) { return v; }

// number of elements of <a, b> in [0, d], the expected monomial count
std::size_t semigroup_count(std::uint64_t a, std::uint64_t b, std::uint64_t d) {
  std::size_t n = 0;
  for (std::uint64_t j = 0; j * b <= d && j < a; ++j)
    for (std::uint64_t i = 0; i * a + j * b <= d; ++i) ++n;
  return n;
}

}  // namespace

TEST_CASE("monomial bases: dimensions, pole orders, Riemann-Roch growth") {
  CurveModel hyper = curve::hyperelliptic_example();
  auto B = linsys::riemann_roch_basis(hyper, 10);
  CHECK(B.dimension() == 9);
  CHECK(B.pole_x == 5);
  CHECK(B.pole_y == 2);
  // sorted by pole order, all distinct
  for (std::size_t k = 1; k < B.dimension(); ++k) CHECK(B.pole_order(k - 1) < B.pole_order(k));
  CHECK(B.pole_order(0) == 0);
  CHECK(B.pole_order(8) == 10);
  CHECK(linsys::riemann_roch_basis(hyper, 0).dimension() == 1);

  // dim L(d P0) = d - g + 1 once d >= 2g - 1, and the gap count below that
  for (std::uint64_t d = 3; d <= 12; ++d)
    CHECK(linsys::riemann_roch_basis(hyper, d).dimension() == d - 2 + 1);
  for (std::uint64_t d = 0; d <= 12; ++d)
    CHECK(linsys::riemann_roch_basis(hyper, d).dimension() == semigroup_count(5, 2, d));

  CurveModel asq = curve::artin_schreier_quotient(5, 5, 3);
  auto A = linsys::riemann_roch_basis(asq, 6);
  CHECK(A.dimension() == 4);
  using E = std::pair<std::uint32_t, std::uint32_t>;
  CHECK(A.exponents == std::vector<E>{{0, 0}, {0, 1}, {1, 0}, {0, 2}});  // 1, y, x, y^2
  for (std::uint64_t d = 7; d <= 20; ++d)
    CHECK(linsys::riemann_roch_basis(asq, d).dimension() == d - 4 + 1);

  CHECK(linsys::riemann_roch_basis(curve::hermitian(2, 2), 3).dimension() == 3);
  CHECK(linsys::riemann_roch_basis(curve::suzuki(0), 5).dimension() == 5);
}

TEST_CASE("monomial bases reject models they cannot span") {
  // suzuki s >= 1 has non-coprime pole orders (r, r + 2^s)
  CHECK_THROWS_AS(linsys::riemann_roch_basis(curve::suzuki(1), 10), std::invalid_argument);
  // ree is count-only: two equations, no infinite-place metadata
  CHECK_THROWS_AS(linsys::riemann_roch_basis(curve::ree(1), 10), std::invalid_argument);
}

TEST_CASE("local coordinates at the infinite place: pole orders and the curve relation") {
  struct Case {
    CurveModel c;
    std::int64_t a, b;
  };
  for (const auto& [c, a, b] : {Case{curve::hyperelliptic_example(), 5, 2},
                                Case{curve::artin_schreier_quotient(5, 5, 3), 5, 3},
                                Case{curve::hermitian(3, 3), 3, 4},
                                Case{curve::suzuki(0), 2, 3}}) {
    CAPTURE(curve::family_name(c.family));
    auto L = linsys::local_coordinates(c, infinite_place(), 16);
    CHECK(L.x.valuation() == -a);
    CHECK(L.y.valuation() == -b);
    CHECK(linsys::expand_at(c, c.eqs[0], infinite_place(), 16).is_zero_within_prec());
    // valuations are additive on monomials
    auto m = linsys::expand_monomial_at(c, 2, 1, infinite_place(), 8);
    CHECK(m.valuation() == -2 * a - b);
  }
}

TEST_CASE("local coordinates at affine points start at the point and satisfy the model") {
  for (const CurveModel& c :
       {curve::hyperelliptic_example(), curve::artin_schreier_quotient(5, 5, 3)}) {
    CAPTURE(curve::family_name(c.family));
    PlacePoint P = first_affine(c);
    auto L = linsys::local_coordinates(c, P, 12);
    CHECK(L.x.coeff_at(0) == P.x);
    CHECK(L.y.coeff_at(0) == P.y);
    CHECK(linsys::expand_at(c, c.eqs[0], P, 12).is_zero_within_prec());
    // the uniformizer is one of the coordinate differences
    bool x_is_param = L.x.coeff_at(1) == gf::one(P.x.field()) && L.x.prec() >= 12;
    bool y_is_param = L.y.coeff_at(1) == gf::one(P.x.field());
    CHECK((x_is_param || y_is_param));
  }
}

TEST_CASE("expansion rejects off-curve and singular points") {
  CurveModel hyper = curve::hyperelliptic_example();
  PlacePoint off;
  off.x = gf::zero(hyper.base);
  off.y = gf::zero(hyper.base);  // 0 + 0 != 1
  CHECK_THROWS_AS(linsys::local_coordinates(hyper, off, 4), std::invalid_argument);

  // cuspidal model y^2 = x^3 over F_7: both partials vanish at the origin
  gf::Field f = gf::make_field(7, 1);
  algebra::BivarPoly cusp(f);
  cusp.set(0, 2, gf::one(f));
  cusp.set(3, 0, -gf::one(f));
  CurveModel g = curve::generic_plane(f, cusp, std::nullopt, std::nullopt);
  PlacePoint origin;
  origin.x = gf::zero(f);
  origin.y = gf::zero(f);
  CHECK_THROWS_AS(linsys::local_coordinates(g, origin, 4), std::invalid_argument);
}

TEST_CASE("vanishing orders of the degree-10 system on the genus-2 curve") {
  CurveModel c = curve::hyperelliptic_example();

  // the infinite place is a flex-like place: 7 is a gap in its order set
  CHECK(linsys::orders_at(c, 10, infinite_place()).orders ==
        seq({0, 1, 2, 3, 4, 5, 6, 8, 10}));

  // x = 0 points share that profile; other rational points drop only the top
  PlacePoint W = first_affine(c);
  REQUIRE(W.x.is_zero());
  CHECK(linsys::orders_at(c, 10, W).orders == seq({0, 1, 2, 3, 4, 5, 6, 8, 10}));

  PlacePoint P;
  P.x = gf::one(c.base);
  P.y = gf::zero(c.base);
  REQUIRE(curve::on_curve(c, P));
  CHECK(linsys::orders_at(c, 10, P).orders == seq({0, 1, 2, 3, 4, 5, 6, 7, 10}));

  // generic places over the quadratic extension realize the generic profile
  PlacePoint Q = first_affine(c, 2, 2);
  CHECK(linsys::orders_at(c, 10, Q).orders == seq({0, 1, 2, 3, 4, 5, 6, 7, 9}));
}

TEST_CASE("generic orders agree between the symbolic and sampled paths") {
  CHECK(linsys::generic_orders(curve::hyperelliptic_example(), 10).orders ==
        seq({0, 1, 2, 3, 4, 5, 6, 7, 9}));
  CHECK(linsys::generic_orders(curve::artin_schreier_quotient(5, 5, 3), 6).orders ==
        seq({0, 1, 2, 5}));
  CHECK(linsys::generic_orders(curve::hermitian(2, 2), 3).orders == seq({0, 1, 2}));
  CHECK(linsys::generic_orders(curve::suzuki(0), 3).orders == seq({0, 1, 2}));
}

TEST_CASE("frobenius order sequence: default removal and explicit override") {
  CurveModel asq = curve::artin_schreier_quotient(5, 5, 3);
  auto nu = linsys::frobenius_orders(asq, 6);
  CHECK(nu.orders == seq({0, 1, 5}));
  REQUIRE(nu.removed_index.has_value());
  CHECK(*nu.removed_index == 2);

  CHECK(linsys::frobenius_orders(asq, 6, 3).orders == seq({0, 1, 2}));
  CHECK(linsys::frobenius_orders(asq, 6, 1).orders == seq({0, 2, 5}));
  CHECK_THROWS_AS(linsys::frobenius_orders(asq, 6, 0), std::invalid_argument);
  CHECK_THROWS_AS(linsys::frobenius_orders(asq, 6, 4), std::invalid_argument);

  auto nuh = linsys::frobenius_orders(curve::hyperelliptic_example(), 10);
  CHECK(nuh.orders == seq({0, 1, 2, 3, 4, 5, 6, 9}));
  CHECK(*nuh.removed_index == 7);
}

TEST_CASE("frobenius row dependence singles out the valid removal") {
  CurveModel asq = curve::artin_schreier_quotient(5, 5, 3);
  // the q^2-power row lies in the span of the first three derivative rows,
  // so the sequence keeping all of (0,1,2) would make the second Wronskian
  // vanish identically; dropping the 2 restores independence
  CHECK(linsys::frobenius_row_dependence(asq, 6, {0, 1, 2}));
  CHECK_FALSE(linsys::frobenius_row_dependence(asq, 6, {0, 1, 5}));
  CHECK_FALSE(linsys::frobenius_row_dependence(asq, 6, {0, 2, 5}));

  CurveModel hyper = curve::hyperelliptic_example();
  CHECK(linsys::frobenius_row_dependence(hyper, 10, {0, 1, 2, 3, 4, 5, 6, 7}));
  CHECK_FALSE(linsys::frobenius_row_dependence(hyper, 10, {0, 1, 2, 3, 4, 5, 6, 9}));

  CurveModel herm = curve::hermitian(2, 2);
  CHECK(linsys::frobenius_row_dependence(herm, 3, {0, 1}));
  CHECK_FALSE(linsys::frobenius_row_dependence(herm, 3, {0, 2}));
}

TEST_CASE("ramification of the degree-10 system: mass 164 located place by place") {
  CurveModel c = curve::hyperelliptic_example();
  auto rep = linsys::sv_divisors(c, 10);
  CHECK(rep.eps.orders == seq({0, 1, 2, 3, 4, 5, 6, 7, 9}));
  CHECK(rep.nu.orders == seq({0, 1, 2, 3, 4, 5, 6, 9}));
  CHECK(rep.two_g_minus_two == 2);
  CHECK(rep.deg_R_formula == 164);  // 37*2 + 9*10
  CHECK(rep.deg_R_pointwise == 164);
  CHECK(rep.reconciled);
  CHECK(rep.deg_S_formula == 950);  // 30*2 + (81+8)*10

  std::map<std::pair<std::uint32_t, std::int64_t>, int> hist;
  for (const auto& r : rep.ramified) ++hist[{r.degree, r.v_R}];
  CHECK(rep.ramified.size() == 138);
  CHECK(hist[{1, 1}] == 112);  // ordinary rational points
  CHECK(hist[{1, 2}] == 6);    // x = 0 fiber and the infinite place
  CHECK(hist[{2, 1}] == 20);   // quadratic places carrying the rest

  for (const auto& r : rep.ramified) {
    std::int64_t excess = 0;
    for (std::size_t i = 0; i < r.orders.size(); ++i) excess += r.orders[i] - rep.eps.orders[i];
    CHECK(r.v_R >= excess);
    CHECK(r.v_R >= 1);
    if (r.P.at_infinity) {
      CHECK(r.v_R == 2);
      CHECK(r.orders == seq({0, 1, 2, 3, 4, 5, 6, 8, 10}));
    }
  }
}

TEST_CASE("ramification of the degree-6 system on the quotient curve: all rational") {
  CurveModel c = curve::artin_schreier_quotient(5, 5, 3);
  auto rep = linsys::sv_divisors(c, 6, std::nullopt, 1);  // degree 1 already reconciles
  CHECK(rep.deg_R_formula == 72);  // 8*6 + 4*6
  CHECK(rep.deg_R_pointwise == 72);
  CHECK(rep.reconciled);
  CHECK(rep.deg_S_formula == 204);  // 6*6 + (25+3)*6
  CHECK(rep.nu.orders == seq({0, 1, 5}));

  // all 66 rational places ramify: 60 simply, 6 (x = 0 and infinity) doubly
  CHECK(rep.ramified.size() == 66);
  std::map<std::int64_t, int> by_v;
  for (const auto& r : rep.ramified) {
    CHECK(r.degree == 1);
    ++by_v[r.v_R];
    if (r.v_R == 1) CHECK(r.orders == seq({0, 1, 2, 6}));
    if (r.v_R == 2) CHECK(r.orders == seq({0, 1, 3, 6}));
  }
  CHECK(by_v[1] == 60);
  CHECK(by_v[2] == 6);
}

TEST_CASE("unreconciled ramification is reported, or thrown when strict") {
  // genus 1, d = 3: the inflection places live in a degree-8 extension, far
  // beyond the search ceiling, so only the infinite place is found
  CurveModel suz = curve::suzuki(0);
  auto rep = linsys::sv_divisors(suz, 3, std::nullopt, 3, false);
  CHECK(rep.deg_R_formula == 9);
  CHECK(rep.deg_R_pointwise == 1);
  CHECK_FALSE(rep.reconciled);
  REQUIRE(rep.ramified.size() == 1);
  CHECK(rep.ramified[0].P.at_infinity);
  CHECK(rep.ramified[0].orders == seq({0, 1, 3}));
  CHECK_THROWS_AS(linsys::sv_divisors(suz, 3, std::nullopt, 3, true), std::runtime_error);
}

TEST_CASE("wronskian valuation is zero exactly at places with the generic profile") {
  CurveModel c = curve::artin_schreier_quotient(5, 5, 3);
  std::vector<std::int64_t> eps = {0, 1, 2, 5};
  PlacePoint generic = first_affine(c, 2, 2);
  REQUIRE(linsys::orders_at(c, 6, generic).orders == eps);
  CHECK(linsys::wronskian_order_at(c, 6, eps, generic) == 0);

  PlacePoint rational = first_affine(c);
  CHECK(linsys::wronskian_order_at(c, 6, eps, rational) >= 1);
  CHECK(linsys::wronskian_order_at(c, 6, eps, infinite_place()) == 2);
}

TEST_CASE("a section of the (q+1)-system vanishes at qP and the Frobenius image") {
  CurveModel hyper = curve::hyperelliptic_example();
  CHECK(linsys::verify_frobenius_equivalence(hyper, infinite_place()));
  std::size_t checked = 0;
  curve::for_each_affine_point(hyper, 1, [&](const PlacePoint& p) {
    CHECK(linsys::verify_frobenius_equivalence(hyper, p));
    ++checked;
    return true;
  });
  CHECK(checked == 117);
  // also at a place that Frobenius moves
  CHECK(linsys::verify_frobenius_equivalence(hyper, first_affine(hyper, 2, 2)));

  CurveModel asq = curve::artin_schreier_quotient(5, 5, 3);
  checked = 0;
  curve::for_each_affine_point(asq, 1, [&](const PlacePoint& p) {
    CHECK(linsys::verify_frobenius_equivalence(asq, p));
    ++checked;
    return true;
  });
  CHECK(checked == 65);
  CHECK(linsys::verify_frobenius_equivalence(asq, first_affine(asq, 2, 2)));

  CurveModel herm = curve::hermitian(2, 2);
  curve::for_each_affine_point(herm, 1, [&](const PlacePoint& p) {
    CHECK(linsys::verify_frobenius_equivalence(herm, p));
    return true;
  });

  // a model with no square-root parameter cannot state the relation
  gf::Field f = gf::make_field(7, 1);
  algebra::BivarPoly conic(f);
  conic.set(0, 1, gf::one(f));
  conic.set(2, 0, -gf::one(f));
  CurveModel g = curve::generic_plane(f, conic, 0, curve::InfinitePlace{1, 2});
  PlacePoint P;
  P.x = gf::one(f);
  P.y = gf::one(f);
  CHECK_THROWS_AS(linsys::verify_frobenius_equivalence(g, P), std::invalid_argument);
}

TEST_CASE("smooth plane conic: three sections, no ramification in characteristic 7") {
  // y = x^2 embedded by L(2 P0): classical system, deg R = (0+1+2)(2g-2) + 3*2 = 0
  gf::Field f = gf::make_field(7, 1);
  algebra::BivarPoly parab(f);
  parab.set(0, 1, gf::one(f));
  parab.set(2, 0, -gf::one(f));
  CurveModel g = curve::generic_plane(f, parab, 0, curve::InfinitePlace{1, 2});
  auto B = linsys::riemann_roch_basis(g, 2);
  CHECK(B.dimension() == 3);
  CHECK(linsys::generic_orders(g, 2).orders == seq({0, 1, 2}));
  auto rep = linsys::sv_divisors(g, 2, std::nullopt, 1);
  CHECK(rep.deg_R_formula == 0);
  CHECK(rep.deg_R_pointwise == 0);
  CHECK(rep.reconciled);
  CHECK(rep.ramified.empty());
}
