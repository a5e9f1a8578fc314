#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "maxcurve/algebra.hpp"
#include "maxcurve/curve.hpp"
#include "maxcurve/gf.hpp"

namespace maxcurve::linsys {

// ---------------------------------------------------------------------------
// Monomial model of L(d P0) for a curve with a single infinite place whose
// coordinate pole orders (a, b) = (pole of x, pole of y) are coprime and
// generate the full Weierstrass gap structure there. Each semigroup value
// n <= d has a unique representation n = i*a + j*b with j < a, so the
// monomials x^i y^j listed here have pairwise distinct pole orders and are
// a basis; the list is sorted by pole order.

struct MonomialBasis {
  std::uint64_t d = 0;
  std::uint64_t pole_x = 0;
  std::uint64_t pole_y = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> exponents;

  std::size_t dimension() const { return exponents.size(); }
  std::uint64_t pole_order(std::size_t k) const {
    return exponents[k].first * pole_x + exponents[k].second * pole_y;
  }
};

// Throws std::invalid_argument when the model has no single infinite place
// or the pole orders cannot span L(d P0) by monomials alone.
MonomialBasis riemann_roch_basis(const curve::CurveModel& c, std::uint64_t d);

// ---------------------------------------------------------------------------
// Laurent expansions of the coordinate functions in a uniformizer at P,
// truncated at t^prec. At an affine point the parameter is x - x(P) when
// dF/dy does not vanish there and y - y(P) otherwise. At the infinite place
// the parameter is the monomial x^alpha y^beta with alpha*a + beta*b = -1,
// and x, y acquire valuations -a, -b.

struct LocalCoordinates {
  algebra::Series<gf::FieldElement> x, y;
};

LocalCoordinates local_coordinates(const curve::CurveModel& c, const curve::PlacePoint& P,
                                   std::int64_t prec);

// expansion of a polynomial function of the coordinates
algebra::Series<gf::FieldElement> expand_at(const curve::CurveModel& c,
                                            const algebra::BivarPoly& fn,
                                            const curve::PlacePoint& P, std::int64_t prec);

algebra::Series<gf::FieldElement> expand_monomial_at(const curve::CurveModel& c, std::uint32_t i,
                                                     std::uint32_t j, const curve::PlacePoint& P,
                                                     std::int64_t prec);

// ---------------------------------------------------------------------------
// Order sequences of the linear system |d P0|.

enum class OrderRole { Pointwise, Generic, Frobenius };

struct OrderData {
  OrderRole role = OrderRole::Pointwise;
  std::vector<std::int64_t> orders;
  // index removed from the generic sequence to form the Frobenius one
  std::optional<std::uint32_t> removed_index;
};

// vanishing orders of the system at P (the local sections are the basis
// monomials, rescaled by t^d at the infinite place)
OrderData orders_at(const curve::CurveModel& c, std::uint64_t d, const curve::PlacePoint& P);

// Generic orders, computed two independent ways: symbolically, as the pivot
// profile of the basis expanded at a deformed generic point over the
// function field, and as the pointwise minimum over sampled places of small
// degree. Disagreement throws std::runtime_error.
OrderData generic_orders(const curve::CurveModel& c, std::uint64_t d);

// the generic sequence with one index removed (default: the next-to-last)
OrderData frobenius_orders(const curve::CurveModel& c, std::uint64_t d,
                           std::optional<std::uint32_t> removal = std::nullopt);

// v_P of the ramification divisor: the valuation of det(D^{eps_i} s_j) over
// the local sections s_j at P
std::int64_t wronskian_order_at(const curve::CurveModel& c, std::uint64_t d,
                                const std::vector<std::int64_t>& eps, const curve::PlacePoint& P);

// true when the Frobenius-image row is a function-field linear combination
// of the Hasse derivative rows of the given orders
bool frobenius_row_dependence(const curve::CurveModel& c, std::uint64_t d,
                              const std::vector<std::int64_t>& orders);

// ---------------------------------------------------------------------------
// Ramification summary of |d P0|. deg R is computed both from the order
// sequence formula and as the sum of v_P(R) * deg(P) over all places of
// degree <= search_degree; places beyond that degree can only be missed if
// the two disagree, which `strict` turns into a runtime_error.

struct PlaceRecord {
  curve::PlacePoint P;
  std::uint32_t degree = 1;
  std::vector<std::int64_t> orders;
  std::int64_t v_R = 0;
};

struct SVDivisorReport {
  OrderData eps, nu;
  std::int64_t two_g_minus_two = 0;
  std::int64_t deg_R_formula = 0;
  std::int64_t deg_R_pointwise = 0;
  std::int64_t deg_S_formula = 0;
  std::vector<PlaceRecord> ramified;  // places with v_P(R) > 0
  std::uint32_t search_degree = 2;
  bool reconciled = false;
};

SVDivisorReport sv_divisors(const curve::CurveModel& c, std::uint64_t d,
                            std::optional<std::uint32_t> nu_removal = std::nullopt,
                            std::uint32_t search_degree = 2, bool strict = true);

// Whether some function of L((q+1) P0) vanishes to order >= q at P and
// >= 1 at the Frobenius image of P; trivially true at P0 itself.
bool verify_frobenius_equivalence(const curve::CurveModel& c, const curve::PlacePoint& P);

}  // namespace maxcurve::linsys
