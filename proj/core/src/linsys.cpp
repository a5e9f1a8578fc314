#include "maxcurve/linsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "maxcurve/funcfield.hpp"

namespace maxcurve::linsys {

namespace {

using algebra::BivarPoly;
using algebra::Series;
using curve::CurveModel;
using curve::PlacePoint;
using funcfield::FFElem;
using gf::FieldElement;

using GSeries = Series<FieldElement>;

const BivarPoly& plane_equation(const CurveModel& c) {
  if (c.eqs.size() != 1)
    throw std::invalid_argument("local expansions need a single-equation plane model");
  return c.eqs[0];
}

std::pair<std::uint64_t, std::uint64_t> infinite_pole_orders(const CurveModel& c) {
  if (c.infinity.size() != 1)
    throw std::invalid_argument("the linear system needs a model with exactly one infinite place");
  return {c.infinity[0].pole_x, c.infinity[0].pole_y};
}

BivarPoly transpose(const BivarPoly& f) {
  BivarPoly out(f.field());
  for (const auto& [key, c] : f.terms()) out.set(key.second, key.first, c);
  return out;
}

// the known coefficients of s reinterpreted at a larger precision, as a
// Newton initial guess
template <class E>
Series<E> pad(const Series<E>& s, std::int64_t prec) {
  if (prec <= s.prec()) return s.truncated(prec);
  std::vector<E> c;
  c.reserve(static_cast<std::size_t>(s.stored_end() - s.val()));
  for (std::int64_t e = s.val(); e < s.stored_end(); ++e) c.push_back(s.coeff_at(e));
  return Series<E>(s.zero_elem(), s.val(), std::move(c), prec);
}

// Hensel iteration for the branch of F(X, Y) = 0 through (X(0), y0); needs
// dF/dy to be a unit there. Each round doubles the verified precision.
template <class E, class Lift>
Series<E> newton_dependent(const BivarPoly& F, const BivarPoly& Fy, const Series<E>& X, const E& y0,
                           std::int64_t prec, Lift&& lift) {
  E zero = y0.zero_like();
  Series<E> Y(zero, 0, {y0}, 1);
  while (Y.prec() < prec) {
    std::int64_t next = std::min(Y.prec() * 2, prec);
    Y = pad(Y, next);
    Series<E> den = algebra::eval_series(Fy, X.truncated(next), Y, lift);
    if (den.valuation() != 0)
      throw std::runtime_error("series expansion: the implicit derivative is not a unit");
    Series<E> res = algebra::eval_series(F, X.truncated(next), Y, lift);
    Y = Y - res * den.inverse();
  }
  return Y;
}

// ---------------------------------------------------------------------------
// Expansion at the infinite place. With pole orders (a, b) of (x, y) the
// uniformizer is the monomial x^alpha y^beta with alpha a + beta b = -1.
// Writing x = t^-a u, y = t^-b v turns the curve equation, scaled by t^W
// for the top weight W, into G(u, v, t) = 0, and the uniformizer identity
// into the gauge u^alpha v^beta = 1, which pins down the unit pair (u, v)
// uniquely. Both solve by a two-variable Newton iteration from the constant
// solution, which is found by scanning the base field with Zech tables.

struct WeightedTerm {
  std::uint32_t iu = 0, iv = 0;
  std::int64_t shift = 0;
  FieldElement c;
};

GSeries eval_terms(const std::vector<WeightedTerm>& terms, const std::vector<GSeries>& up,
                   const std::vector<GSeries>& vp, const FieldElement& zero, std::int64_t prec) {
  GSeries acc = GSeries::zero_mod(zero, prec);
  for (const auto& t : terms) {
    acc += (up[t.iu] * vp[t.iv]).scaled(t.c).shifted(t.shift).truncated(prec);
  }
  return acc;
}

std::vector<WeightedTerm> partial_u(const std::vector<WeightedTerm>& terms, std::uint32_t p) {
  std::vector<WeightedTerm> out;
  for (const auto& t : terms) {
    std::uint32_t mult = t.iu % p;
    if (t.iu == 0 || mult == 0) continue;
    out.push_back({t.iu - 1, t.iv, t.shift, algebra::mul_small(t.c, mult)});
  }
  return out;
}

std::vector<WeightedTerm> partial_v(const std::vector<WeightedTerm>& terms, std::uint32_t p) {
  std::vector<WeightedTerm> out;
  for (const auto& t : terms) {
    std::uint32_t mult = t.iv % p;
    if (t.iv == 0 || mult == 0) continue;
    out.push_back({t.iu, t.iv - 1, t.shift, algebra::mul_small(t.c, mult)});
  }
  return out;
}

// s*a + t*b = gcd(a, b)
std::pair<std::int64_t, std::int64_t> bezout(std::int64_t a, std::int64_t b) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::tie(a, b) = std::pair{b, a - q * b};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  return {s0, t0};
}

struct InfExpansion {
  GSeries x, y;
};

InfExpansion expand_infinite(const CurveModel& c, std::int64_t prec) {
  const BivarPoly& F = plane_equation(c);
  auto [ua, ub] = infinite_pole_orders(c);
  const std::int64_t a = static_cast<std::int64_t>(ua), b = static_cast<std::int64_t>(ub);
  gf::Field base = c.base;
  const std::uint32_t p = base->p;
  if (base->size > 4096)
    throw std::domain_error("infinite-place expansion is limited to base fields of size <= 4096");

  auto [s, t] = bezout(a, b);  // s a + t b = 1
  const std::int64_t alpha = -s, beta = -t;

  std::int64_t W = 0;
  for (const auto& [key, cf] : F.terms())
    W = std::max(W, static_cast<std::int64_t>(key.first) * a + static_cast<std::int64_t>(key.second) * b);

  std::vector<WeightedTerm> G;
  for (const auto& [key, cf] : F.terms()) {
    std::int64_t w = static_cast<std::int64_t>(key.first) * a + static_cast<std::int64_t>(key.second) * b;
    G.push_back({key.first, key.second, W - w, cf});
  }
  const FieldElement one = gf::one(base), zero = gf::zero(base);
  std::vector<WeightedTerm> H = {
      {static_cast<std::uint32_t>(std::max<std::int64_t>(alpha, 0)),
       static_cast<std::uint32_t>(std::max<std::int64_t>(beta, 0)), 0, one},
      {static_cast<std::uint32_t>(std::max<std::int64_t>(-alpha, 0)),
       static_cast<std::uint32_t>(std::max<std::int64_t>(-beta, 0)), 0, -one},
  };

  // constant solution: scan unit pairs (g^eu, g^ev) with the gauge reduced
  // to a congruence between discrete logs
  const funcfield::SmallField* tab = funcfield::tables(base);
  const std::int64_t n = static_cast<std::int64_t>(tab->group_order());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> lead;  // (i, j) of weight-W terms, with reps
  std::vector<std::uint32_t> lead_rep;
  for (const auto& g : G) {
    if (g.shift == 0) {
      lead.push_back({g.iu, g.iv});
      lead_rep.push_back(tab->from_gf(g.c));
    }
  }
  std::uint64_t found = 0;
  std::int64_t bu = 0, bv = 0;
  for (std::int64_t eu = 0; eu < n; ++eu) {
    for (std::int64_t ev = 0; ev < n; ++ev) {
      std::int64_t gcheck = (alpha * eu + beta * ev) % n;
      if (gcheck < 0) gcheck += n;
      if (gcheck != 0) continue;
      std::uint32_t acc = 0;
      for (std::size_t k = 0; k < lead.size(); ++k) {
        std::int64_t e = (lead[k].first * eu + lead[k].second * ev) % n;
        acc = tab->add(acc, tab->mul(lead_rep[k], static_cast<std::uint32_t>(e) + 1));
      }
      if (acc == 0) {
        ++found;
        bu = eu;
        bv = ev;
      }
    }
  }
  if (found != 1)
    throw std::runtime_error("infinite-place metadata does not define a unique branch at infinity");
  FieldElement u0 = tab->to_gf(static_cast<std::uint32_t>(bu) + 1);
  FieldElement v0 = tab->to_gf(static_cast<std::uint32_t>(bv) + 1);

  const std::int64_t target = prec + std::max(a, b);
  auto Gu = partial_u(G, p), Gv = partial_v(G, p);
  auto Hu = partial_u(H, p), Hv = partial_v(H, p);
  GSeries U(zero, 0, {u0}, 1), V(zero, 0, {v0}, 1);
  std::uint32_t max_u = 0, max_v = 0;
  for (const auto& term : G) {
    max_u = std::max(max_u, term.iu);
    max_v = std::max(max_v, term.iv);
  }
  for (const auto& term : H) {
    max_u = std::max(max_u, term.iu);
    max_v = std::max(max_v, term.iv);
  }
  while (U.prec() < target) {
    std::int64_t next = std::min(U.prec() * 2, target);
    U = pad(U, next);
    V = pad(V, next);
    std::vector<GSeries> up = {GSeries::exact_const(one)}, vp = {GSeries::exact_const(one)};
    for (std::uint32_t k = 1; k <= max_u; ++k) up.push_back((up.back() * U).truncated(next));
    for (std::uint32_t k = 1; k <= max_v; ++k) vp.push_back((vp.back() * V).truncated(next));
    GSeries g = eval_terms(G, up, vp, zero, next);
    GSeries h = eval_terms(H, up, vp, zero, next);
    GSeries gu = eval_terms(Gu, up, vp, zero, next);
    GSeries gv = eval_terms(Gv, up, vp, zero, next);
    GSeries hu = eval_terms(Hu, up, vp, zero, next);
    GSeries hv = eval_terms(Hv, up, vp, zero, next);
    GSeries det = gu * hv - gv * hu;
    if (det.valuation() != 0)
      throw std::runtime_error("infinite-place expansion: the branch system is degenerate");
    GSeries dinv = det.inverse();
    GSeries du = (hv * g - gv * h) * dinv;
    GSeries dv = (gu * h - hu * g) * dinv;
    U = U - du;
    V = V - dv;
  }

  GSeries x = U.shifted(-a).truncated(prec);
  GSeries y = V.shifted(-b).truncated(prec);
  if (!algebra::eval_series(F, x, y, [](const FieldElement& v) { return v; }).is_zero_within_prec())
    throw std::runtime_error("infinite-place expansion failed to satisfy the model");
  return {std::move(x), std::move(y)};
}

// ---------------------------------------------------------------------------

std::uint32_t max_exp_x(const MonomialBasis& B) {
  std::uint32_t m = 0;
  for (const auto& e : B.exponents) m = std::max(m, e.first);
  return m;
}
std::uint32_t max_exp_y(const MonomialBasis& B) {
  std::uint32_t m = 0;
  for (const auto& e : B.exponents) m = std::max(m, e.second);
  return m;
}

// local sections of O(d P0) spanning L(d P0), regular at P: the basis
// monomials, rescaled by t^d at the infinite place
std::vector<GSeries> basis_rows(const CurveModel& c, const MonomialBasis& B, const PlacePoint& P,
                                std::int64_t prec) {
  std::int64_t extra = P.at_infinity ? static_cast<std::int64_t>(B.d) : 0;
  LocalCoordinates L = local_coordinates(c, P, prec + extra);
  FieldElement one = L.x.zero_elem().one_like();
  std::vector<GSeries> xp = {GSeries::exact_const(one)};
  std::vector<GSeries> yp = {GSeries::exact_const(one)};
  for (std::uint32_t k = 1; k <= max_exp_x(B); ++k) xp.push_back(xp.back() * L.x);
  for (std::uint32_t k = 1; k <= max_exp_y(B); ++k) yp.push_back(yp.back() * L.y);
  std::vector<GSeries> rows;
  rows.reserve(B.dimension());
  for (const auto& [i, j] : B.exponents) {
    GSeries row = xp[i] * yp[j];
    if (P.at_infinity) row = row.shifted(static_cast<std::int64_t>(B.d));
    rows.push_back(row.truncated(prec));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Symbolic deformation: the basis expanded at a generic point, over the
// function field of the model. The independent coordinate moves to x + t
// and the other follows the curve; for the additive families the dependent
// series has closed-form polynomial coefficients, because q-th powers of a
// series distribute over its terms.

struct Deformation {
  funcfield::FF K;
  bool swapped = false;  // model transposed to put the constant leading coefficient on y
  Series<FFElem> X, Y;   // expansions of the transposed model's coordinates
};

bool y_lead_constant(const BivarPoly& f) {
  std::uint32_t n = f.deg_y();
  return n > 0 && f.coeff_of_y(n).degree() == 0;
}

FFElem x_monomial(const funcfield::FF& K, std::uint64_t e, std::uint32_t binom) {
  funcfield::SPoly cx(funcfield::SF(K->tab, 0));
  cx.set_coeff(static_cast<std::size_t>(e), funcfield::SF(K->tab, K->tab->from_int(binom)));
  return FFElem::from_ratfun(K, funcfield::RatFun::from_poly(std::move(cx)));
}

// coefficients of the branch of w^Q + w = h(x + t) through w = y, where the
// Q-th power acts additively on series coefficients:
//   a_k = h_k(x) - a_{k/Q}^Q  (second term only when Q | k), a_0 = y
std::vector<FFElem> additive_branch(const funcfield::FF& K, std::uint64_t Q,
                                    const std::vector<std::pair<std::uint64_t, std::int32_t>>& h,
                                    std::uint32_t p, std::int64_t prec) {
  std::vector<FFElem> a;
  a.reserve(static_cast<std::size_t>(prec));
  a.push_back(FFElem::y_gen(K));
  for (std::int64_t k = 1; k < prec; ++k) {
    FFElem ak = FFElem::zero(K);
    for (const auto& [e, sign] : h) {
      if (static_cast<std::uint64_t>(k) > e) continue;
      std::uint32_t bin = algebra::binom_mod_p(static_cast<std::int64_t>(e), k, p);
      if (bin == 0) continue;
      FFElem term = x_monomial(K, e - static_cast<std::uint64_t>(k), bin);
      if (sign < 0) term = -term;
      ak += term;
    }
    if (static_cast<std::uint64_t>(k) % Q == 0) {
      ak -= a[static_cast<std::size_t>(k / static_cast<std::int64_t>(Q))].pow(Q);
    }
    a.push_back(std::move(ak));
  }
  return a;
}

Deformation build_deformation(const CurveModel& c, std::int64_t prec) {
  const BivarPoly& eq = plane_equation(c);
  BivarPoly work = eq;
  bool swapped = false;
  if (!y_lead_constant(work)) {
    BivarPoly tr = transpose(work);
    if (!y_lead_constant(tr))
      throw std::invalid_argument("symbolic orders need a coordinate with constant leading coefficient");
    work = std::move(tr);
    swapped = true;
  }
  funcfield::FF K = funcfield::make_function_field(work);
  FFElem zero = FFElem::zero(K), one = FFElem::one(K);
  auto lift = [&K](const FieldElement& v) { return FFElem::constant(K, v); };
  const std::uint32_t p = c.base->p;

  // closed-form coefficients for the additive families (never transposed:
  // their models are already monic in y)
  if (!swapped && (c.family == curve::Family::ArtinSchreierQuotient ||
                   c.family == curve::Family::Hermitian || c.family == curve::Family::Suzuki)) {
    std::vector<std::pair<std::uint64_t, std::int32_t>> h;
    if (c.family == curve::Family::Suzuki) {
      std::uint64_t r0 = std::uint64_t(1) << c.s;
      h = {{c.q + r0, +1}, {r0 + 1, -1}};
    } else {
      h = {{c.m, +1}};
    }
    return {K, swapped,
            Series<FFElem>(zero, 0, {FFElem::x_gen(K), one}, algebra::kExactPrec),
            Series<FFElem>(zero, 0, additive_branch(K, c.q, h, p, prec), prec)};
  }

  FFElem fy = FFElem::from_bivar(K, work.dy());
  if (!fy.is_zero()) {
    Series<FFElem> X(zero, 0, {FFElem::x_gen(K), one}, algebra::kExactPrec);
    Series<FFElem> Y = newton_dependent(work, work.dy(), X, FFElem::y_gen(K), prec, lift);
    return {K, swapped, std::move(X), std::move(Y)};
  }
  FFElem fx = FFElem::from_bivar(K, work.dx());
  if (fx.is_zero()) throw std::invalid_argument("symbolic orders: neither coordinate is separating");
  Series<FFElem> Y(zero, 0, {FFElem::y_gen(K), one}, algebra::kExactPrec);
  BivarPoly tr = transpose(work);
  Series<FFElem> X = newton_dependent(tr, tr.dy(), Y, FFElem::x_gen(K), prec, lift);
  return {K, swapped, std::move(X), std::move(Y)};
}

std::vector<Series<FFElem>> symbolic_rows(const MonomialBasis& B, const Deformation& d,
                                          std::int64_t prec) {
  FFElem one = FFElem::one(d.K);
  std::uint32_t mx = max_exp_x(B), my = max_exp_y(B);
  if (d.swapped) std::swap(mx, my);
  std::vector<Series<FFElem>> xp = {Series<FFElem>::exact_const(one)};
  std::vector<Series<FFElem>> yp = {Series<FFElem>::exact_const(one)};
  for (std::uint32_t k = 1; k <= mx; ++k) xp.push_back((xp.back() * d.X).truncated(prec));
  for (std::uint32_t k = 1; k <= my; ++k) yp.push_back((yp.back() * d.Y).truncated(prec));
  std::vector<Series<FFElem>> rows;
  rows.reserve(B.dimension());
  for (auto [i, j] : B.exponents) {
    if (d.swapped) std::swap(i, j);
    rows.push_back((xp[i] * yp[j]).truncated(prec));
  }
  return rows;
}

std::vector<std::int64_t> symbolic_generic_orders(const CurveModel& c, const MonomialBasis& B,
                                                  std::uint64_t d) {
  std::int64_t prec = static_cast<std::int64_t>(d) + 8;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Deformation def = build_deformation(c, prec);
    auto rows = symbolic_rows(B, def, prec);
    auto piv = algebra::pivot_orders(rows);
    if (!piv.deficient) return piv.orders;
    prec *= 2;
  }
  throw std::runtime_error("symbolic generic orders did not stabilize with increasing precision");
}

// Deterministic sample of places: the infinite place plus orbit
// representatives of small degree, at most `caps[e-1]` for degree e.
std::vector<PlacePoint> sample_places(const CurveModel& c, std::uint32_t max_degree) {
  static constexpr std::size_t caps[3] = {8, 8, 4};
  std::vector<PlacePoint> out;
  if (c.infinity.size() == 1) {
    PlacePoint p0;
    p0.at_infinity = true;
    out.push_back(p0);
  }
  for (std::uint32_t e = 1; e <= max_degree && e <= 3; ++e) {
    std::size_t cap = caps[e - 1];
    try {
      (void)curve::extension_field(c, e);
    } catch (const std::domain_error&) {
      break;
    }
    std::size_t taken = 0;
    curve::for_each_affine_point(c, e, [&](const PlacePoint& pt) {
      if (curve::point_degree(c, pt) != e) return true;
      if (e > 1) {
        // keep only the orbit representative with the smallest coordinates
        PlacePoint q = curve::frobenius_point(c, pt, c.base);
        for (std::uint32_t step = 1; step < e; ++step) {
          auto key = std::pair{gf::element_index(q.x), gf::element_index(q.y)};
          if (key < std::pair{gf::element_index(pt.x), gf::element_index(pt.y)}) return true;
          q = curve::frobenius_point(c, q, c.base);
        }
      }
      out.push_back(pt);
      return ++taken < cap;
    });
  }
  return out;
}

std::int64_t sum_orders(const std::vector<std::int64_t>& v, std::size_t from = 0) {
  std::int64_t s = 0;
  for (std::size_t i = from; i < v.size(); ++i) s += v[i];
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

MonomialBasis riemann_roch_basis(const CurveModel& c, std::uint64_t d) {
  auto [a, b] = infinite_pole_orders(c);
  if (a == 0 || b == 0) throw std::invalid_argument("infinite place with a zero pole order");
  if (std::gcd(a, b) != 1)
    throw std::invalid_argument("coordinate pole orders are not coprime; monomials cannot span");
  if (c.genus && *c.genus != (a - 1) * (b - 1) / 2)
    throw std::invalid_argument("pole orders do not match the genus; monomials cannot span");
  MonomialBasis B;
  B.d = d;
  B.pole_x = a;
  B.pole_y = b;
  for (std::uint64_t j = 0; j < a; ++j) {
    if (j * b > d) break;
    for (std::uint64_t i = 0; i * a + j * b <= d; ++i) {
      B.exponents.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
  }
  std::sort(B.exponents.begin(), B.exponents.end(),
            [&](const auto& l, const auto& r) {
              return l.first * a + l.second * b < r.first * a + r.second * b;
            });
  return B;
}

LocalCoordinates local_coordinates(const CurveModel& c, const PlacePoint& P, std::int64_t prec) {
  const BivarPoly& F = plane_equation(c);
  if (P.at_infinity) {
    if (P.inf_index != 0) throw std::invalid_argument("unknown infinite place");
    (void)infinite_pole_orders(c);
    auto e = expand_infinite(c, prec);
    return {std::move(e.x), std::move(e.y)};
  }
  if (!curve::on_curve(c, P)) throw std::invalid_argument("expansion at a point off the curve");
  gf::Field E = P.x.field();
  BivarPoly Fe = F.embedded_into(E);
  FieldElement fy = Fe.dy().eval(P.x, P.y);
  FieldElement fx = Fe.dx().eval(P.x, P.y);
  FieldElement zero = gf::zero(E), one = gf::one(E);
  auto lift = [](const FieldElement& v) { return v; };
  if (!fy.is_zero()) {
    GSeries X(zero, 0, {P.x, one}, algebra::kExactPrec);
    GSeries Y = newton_dependent(Fe, Fe.dy(), X, P.y, prec, lift);
    return {std::move(X), std::move(Y)};
  }
  if (!fx.is_zero()) {
    GSeries Y(zero, 0, {P.y, one}, algebra::kExactPrec);
    BivarPoly tr = transpose(Fe);
    GSeries X = newton_dependent(tr, tr.dy(), Y, P.x, prec, lift);
    return {std::move(X), std::move(Y)};
  }
  throw std::invalid_argument("expansion at a singular point of the model");
}

GSeries expand_at(const CurveModel& c, const BivarPoly& fn, const PlacePoint& P,
                  std::int64_t prec) {
  std::int64_t extra = 0;
  if (P.at_infinity) {
    auto [a, b] = infinite_pole_orders(c);
    for (const auto& [key, cf] : fn.terms()) {
      extra = std::max(extra, static_cast<std::int64_t>(key.first * a + key.second * b));
    }
  }
  LocalCoordinates L = local_coordinates(c, P, prec + extra);
  gf::Field E = P.at_infinity ? c.base : P.x.field();
  return algebra::eval_series(fn.embedded_into(E), L.x, L.y, [](const FieldElement& v) { return v; })
      .truncated(prec);
}

GSeries expand_monomial_at(const CurveModel& c, std::uint32_t i, std::uint32_t j,
                           const PlacePoint& P, std::int64_t prec) {
  std::int64_t extra = 0;
  if (P.at_infinity) {
    auto [a, b] = infinite_pole_orders(c);
    extra = static_cast<std::int64_t>(i * a + j * b);
  }
  LocalCoordinates L = local_coordinates(c, P, prec + extra);
  return (L.x.pow(i) * L.y.pow(j)).truncated(prec);
}

OrderData orders_at(const CurveModel& c, std::uint64_t d, const PlacePoint& P) {
  MonomialBasis B = riemann_roch_basis(c, d);
  std::int64_t prec = static_cast<std::int64_t>(d) + 8;
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto rows = basis_rows(c, B, P, prec);
    auto piv = algebra::pivot_orders(rows);
    if (!piv.deficient) {
      OrderData o;
      o.role = OrderRole::Pointwise;
      o.orders = std::move(piv.orders);
      return o;
    }
    prec *= 2;
  }
  throw std::runtime_error("vanishing orders did not stabilize with increasing precision");
}

OrderData generic_orders(const CurveModel& c, std::uint64_t d) {
  MonomialBasis B = riemann_roch_basis(c, d);
  std::vector<std::int64_t> sym = symbolic_generic_orders(c, B, d);

  std::vector<std::int64_t> floor;
  for (const auto& P : sample_places(c, 3)) {
    OrderData o = orders_at(c, d, P);
    if (floor.empty()) {
      floor = o.orders;
    } else {
      for (std::size_t i = 0; i < floor.size(); ++i)
        floor[i] = std::min(floor[i], o.orders[i]);
    }
  }
  if (floor != sym)
    throw std::runtime_error("generic orders disagree between the symbolic and sampled paths");
  OrderData out;
  out.role = OrderRole::Generic;
  out.orders = std::move(sym);
  return out;
}

namespace {

OrderData remove_for_frobenius(const OrderData& eps, std::optional<std::uint32_t> removal) {
  const std::size_t r = eps.orders.size() - 1;
  if (r == 0) throw std::invalid_argument("the system is a single point; no Frobenius sequence");
  std::uint32_t I = removal.value_or(r >= 2 ? static_cast<std::uint32_t>(r - 1)
                                            : static_cast<std::uint32_t>(r));
  if (I < 1 || I > r) throw std::invalid_argument("Frobenius removal index out of range");
  OrderData nu;
  nu.role = OrderRole::Frobenius;
  nu.removed_index = I;
  for (std::size_t i = 0; i < eps.orders.size(); ++i) {
    if (i != I) nu.orders.push_back(eps.orders[i]);
  }
  return nu;
}

}  // namespace

OrderData frobenius_orders(const CurveModel& c, std::uint64_t d,
                           std::optional<std::uint32_t> removal) {
  return remove_for_frobenius(generic_orders(c, d), removal);
}

std::int64_t wronskian_order_at(const CurveModel& c, std::uint64_t d,
                                const std::vector<std::int64_t>& eps, const PlacePoint& P) {
  MonomialBasis B = riemann_roch_basis(c, d);
  if (eps.size() != B.dimension())
    throw std::invalid_argument("order sequence length does not match the system dimension");
  const std::uint32_t p = c.base->p;
  std::int64_t prec = static_cast<std::int64_t>(d) + 8 + (eps.empty() ? 0 : eps.back());
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto rows = basis_rows(c, B, P, prec);
    std::vector<std::vector<GSeries>> m;
    m.reserve(eps.size());
    for (std::int64_t e : eps) {
      std::vector<GSeries> der;
      der.reserve(rows.size());
      for (const auto& r : rows) der.push_back(algebra::hasse_derivative(r, e, p));
      m.push_back(std::move(der));
    }
    auto det = algebra::series_det(std::move(m));
    if (!det.deficient) return det.det.valuation();
    prec *= 2;
  }
  throw std::runtime_error("ramification order did not stabilize with increasing precision");
}

bool frobenius_row_dependence(const CurveModel& c, std::uint64_t d,
                              const std::vector<std::int64_t>& orders) {
  MonomialBasis B = riemann_roch_basis(c, d);
  std::int64_t maxo = 0;
  for (std::int64_t o : orders) {
    if (o < 0) throw std::invalid_argument("negative derivative order");
    maxo = std::max(maxo, o);
  }
  std::int64_t prec = maxo + 2;
  Deformation def = build_deformation(c, prec);
  auto rows = symbolic_rows(B, def, prec);

  FFElem xe = def.swapped ? FFElem::y_gen(def.K) : FFElem::x_gen(def.K);
  FFElem ye = def.swapped ? FFElem::x_gen(def.K) : FFElem::y_gen(def.K);
  const std::uint64_t Q = c.base->size;
  FFElem xQ = xe.pow(Q), yQ = ye.pow(Q);

  // rows: the Frobenius image of the basis, then the Hasse coefficients
  std::vector<std::vector<FFElem>> mat;
  std::vector<FFElem> fr;
  fr.reserve(B.dimension());
  for (const auto& [i, j] : B.exponents) fr.push_back(xQ.pow(i) * yQ.pow(j));
  mat.push_back(std::move(fr));
  for (std::int64_t o : orders) {
    std::vector<FFElem> row;
    row.reserve(rows.size());
    for (const auto& r : rows) row.push_back(r.coeff_at(o));
    mat.push_back(std::move(row));
  }

  // row dependence = nonzero left kernel = nonzero right kernel of the transpose
  std::vector<std::vector<FFElem>> tr(B.dimension(),
                                      std::vector<FFElem>(mat.size(), FFElem::zero(def.K)));
  for (std::size_t i = 0; i < mat.size(); ++i)
    for (std::size_t j = 0; j < B.dimension(); ++j) tr[j][i] = mat[i][j];
  return !algebra::nullspace(std::move(tr), FFElem::zero(def.K)).empty();
}

SVDivisorReport sv_divisors(const CurveModel& c, std::uint64_t d,
                            std::optional<std::uint32_t> nu_removal, std::uint32_t search_degree,
                            bool strict) {
  if (!c.genus) throw std::invalid_argument("ramification summary needs a model with known genus");
  if (search_degree < 1 || search_degree > 3)
    throw std::invalid_argument("place search degree must be 1, 2 or 3");
  MonomialBasis B = riemann_roch_basis(c, d);
  SVDivisorReport rep;
  rep.search_degree = search_degree;
  rep.eps = generic_orders(c, d);
  rep.nu = remove_for_frobenius(rep.eps, nu_removal);
  const std::int64_t r = static_cast<std::int64_t>(B.dimension()) - 1;
  rep.two_g_minus_two = 2 * static_cast<std::int64_t>(*c.genus) - 2;
  rep.deg_R_formula =
      sum_orders(rep.eps.orders) * rep.two_g_minus_two + (r + 1) * static_cast<std::int64_t>(d);
  rep.deg_S_formula = sum_orders(rep.nu.orders, 1) * rep.two_g_minus_two +
                      static_cast<std::int64_t>(c.base->size + r) * static_cast<std::int64_t>(d);

  auto consider = [&](const PlacePoint& P, std::uint32_t deg) {
    OrderData o = orders_at(c, d, P);
    if (o.orders == rep.eps.orders) return;  // v_P(R) = 0 exactly at generic places
    std::int64_t v = wronskian_order_at(c, d, rep.eps.orders, P);
    std::int64_t lower = 0;
    for (std::size_t i = 0; i < o.orders.size(); ++i) lower += o.orders[i] - rep.eps.orders[i];
    if (v < lower)
      throw std::runtime_error("ramification order below the order-sequence bound; expansion bug");
    rep.ramified.push_back({P, deg, std::move(o.orders), v});
    rep.deg_R_pointwise += v * deg;
  };

  if (c.infinity.size() == 1) {
    PlacePoint p0;
    p0.at_infinity = true;
    consider(p0, 1);
  }
  for (std::uint32_t e = 1; e <= search_degree; ++e) {
    curve::for_each_affine_point(c, e, [&](const PlacePoint& pt) {
      if (curve::point_degree(c, pt) != e) return true;
      if (e > 1) {
        PlacePoint q = curve::frobenius_point(c, pt, c.base);
        for (std::uint32_t step = 1; step < e; ++step) {
          auto key = std::pair{gf::element_index(q.x), gf::element_index(q.y)};
          if (key < std::pair{gf::element_index(pt.x), gf::element_index(pt.y)}) return true;
          q = curve::frobenius_point(c, q, c.base);
        }
      }
      consider(pt, e);
      return true;
    });
  }
  rep.reconciled = rep.deg_R_pointwise == rep.deg_R_formula;
  if (strict && !rep.reconciled)
    throw std::runtime_error(
        "ramification mass is not exhausted by places of degree <= " +
        std::to_string(search_degree) + "; raise the search degree");
  return rep;
}

bool verify_frobenius_equivalence(const CurveModel& c, const PlacePoint& P) {
  if (P.at_infinity) return true;
  if (c.q < 2) throw std::invalid_argument("Frobenius equivalence needs the square-root parameter");
  const std::uint64_t q = c.q;
  MonomialBasis B = riemann_roch_basis(c, q + 1);
  if (!curve::on_curve(c, P)) throw std::invalid_argument("point is not on the curve");
  PlacePoint FrP = curve::frobenius_point(c, P, c.base);
  const bool fixed = FrP.x == P.x && FrP.y == P.y;
  std::int64_t prec = static_cast<std::int64_t>(q) + 4;
  auto rows = basis_rows(c, B, P, prec);

  gf::Field E = P.x.field();
  FieldElement zero = gf::zero(E);
  std::vector<std::vector<FieldElement>> m;
  const std::uint64_t vanish = fixed ? q + 1 : q;
  for (std::uint64_t v = 0; v < vanish; ++v) {
    std::vector<FieldElement> row;
    row.reserve(B.dimension());
    for (const auto& s : rows) row.push_back(s.coeff_at(static_cast<std::int64_t>(v)));
    m.push_back(std::move(row));
  }
  if (!fixed) {
    std::vector<FieldElement> row;
    row.reserve(B.dimension());
    for (const auto& [i, j] : B.exponents) row.push_back(gf::pow(FrP.x, i) * gf::pow(FrP.y, j));
    m.push_back(std::move(row));
  }
  return !algebra::nullspace(std::move(m), zero).empty();
}

}  // namespace maxcurve::linsys
