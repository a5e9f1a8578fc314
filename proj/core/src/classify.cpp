#include "maxcurve/classify.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "maxcurve/linsys.hpp"
#include "maxcurve/semigroup.hpp"
#include "maxcurve/util.hpp"

namespace maxcurve::classify {

namespace {

template <class A, class B>
[[noreturn]] void fail_identity(const std::string& what, const A& expected, const B& computed) {
  std::ostringstream os;
  os << what << ": expected " << expected << ", computed " << computed;
  throw std::runtime_error(os.str());
}

std::string orders_to_string(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

algebra::FPoly monic(const algebra::FPoly& p) { return p.scaled(p.lead().inverse()); }

// y^{q^2} - y over k
algebra::FPoly subfield_span(gf::Field k, std::uint64_t q) {
  algebra::FPoly s(gf::zero(k));
  s.set_coeff(static_cast<std::size_t>(q * q), gf::one(k));
  s.set_coeff(1, -gf::one(k));
  return s;
}

algebra::FPoly pow_mod(algebra::FPoly base, std::uint64_t e, const algebra::FPoly& mod) {
  base = algebra::poly_mod_reduce(base, mod);
  algebra::FPoly acc = algebra::FPoly::constant(gf::one(base.zero_elem().field()));
  while (e) {
    if (e & 1) acc = algebra::poly_mod_reduce(acc * base, mod);
    base = algebra::poly_mod_reduce(base * base, mod);
    e >>= 1;
  }
  return acc;
}

std::uint64_t discrete_log(const gf::FieldElement& u, const gf::FieldElement& xi) {
  gf::FieldElement acc = gf::one(u.field());
  for (std::uint64_t e = 0; e < u.field()->size; ++e) {
    if (acc == u) return e;
    acc *= xi;
  }
  throw std::logic_error("element outside the multiplicative group");
}

// square root of the field size the model certifies its count over
std::uint64_t certified_sqrt(const curve::CurveModel& c) {
  const std::uint32_t exponent = c.base->k * curve::maximality_extension(c);
  if (exponent % 2 != 0)
    throw std::invalid_argument("the certified field is not a square, no count parameter exists");
  return ipow_u64(c.base->p, exponent / 2);
}

}  // namespace

TypeCount classify_rational_points(const curve::CurveModel& c) {
  if (c.family != curve::Family::ArtinSchreierQuotient && c.family != curve::Family::Hermitian)
    throw std::invalid_argument("rational point classification needs the y^q + y = x^m model");
  const std::uint64_t q = c.q;
  const std::uint64_t m = c.m;
  const std::uint64_t n = (q + 1) / m;
  const std::int64_t g = static_cast<std::int64_t>(*c.genus);

  // strict degree-1 reconciliation: all ramification must sit on rational
  // points, which is exactly the Weierstrass locus claim being checked
  auto rep = linsys::sv_divisors(c, q + 1, std::nullopt, 1, true);

  std::vector<std::int64_t> contact_profile, pole_profile;
  for (std::uint64_t v = 0; v <= n; ++v) contact_profile.push_back(static_cast<std::int64_t>(v));
  contact_profile.push_back(static_cast<std::int64_t>(q + 1));
  pole_profile = {0, 1};
  for (std::uint64_t s = 1; s < n; ++s) pole_profile.push_back(static_cast<std::int64_t>(s * m));
  pole_profile.push_back(static_cast<std::int64_t>(q + 1));
  const bool merged = contact_profile == pole_profile;

  TypeCount out;
  std::optional<std::int64_t> observed_w2;
  for (const auto& rec : rep.ramified) {
    if (rec.degree != 1)
      fail_identity("Weierstrass point degree", 1, rec.degree);
    if (rec.orders != contact_profile && rec.orders != pole_profile)
      throw std::runtime_error("rational point with unexpected vanishing orders " +
                               orders_to_string(rec.orders));
    const bool pole_type = merged ? (rec.P.at_infinity || rec.P.x.is_zero())
                                  : rec.orders == pole_profile;
    if (pole_type) {
      ++out.T2;
      if (observed_w2 && *observed_w2 != rec.v_R)
        fail_identity("ramification weight at a totally ramified point", *observed_w2, rec.v_R);
      observed_w2 = rec.v_R;
    } else {
      ++out.T1;
      if (rec.v_R != 1) fail_identity("ramification weight at a generic-contact point", 1, rec.v_R);
    }
  }
  if (!observed_w2) fail_identity("totally ramified point count", q + 1, 0);
  out.w2 = *observed_w2;

  const std::int64_t w2_formula =
      static_cast<std::int64_t>(n) *
          (static_cast<std::int64_t>(n - 1) * static_cast<std::int64_t>(m) -
           static_cast<std::int64_t>(n) - 1) / 2 + 2;
  if (out.w2 != w2_formula) fail_identity("closed-form weight w2", w2_formula, out.w2);
  if (out.T2 != q + 1) fail_identity("totally ramified point count", q + 1, out.T2);

  const zeta::Int points = zeta::Int(q) * q + 2 * zeta::Int(g) * q + 1;
  if (zeta::Int(out.T1) + out.T2 != points)
    fail_identity("rational point census", points, zeta::Int(out.T1) + out.T2);
  auto enu = curve::enumerate_points(c, 1);
  if (enu.count != points) fail_identity("enumerated point count", points, enu.count);

  if (rep.deg_R_formula !=
      static_cast<std::int64_t>(out.T1) + out.w2 * static_cast<std::int64_t>(out.T2))
    fail_identity("deg R against the census", rep.deg_R_formula,
                  static_cast<std::int64_t>(out.T1) + out.w2 * static_cast<std::int64_t>(out.T2));
  // the degree-m projection is ramified exactly at the T2 points, totally
  const std::int64_t rh = -2 * static_cast<std::int64_t>(m) +
                          static_cast<std::int64_t>(m - 1) * static_cast<std::int64_t>(out.T2);
  if (2 * g - 2 != rh) fail_identity("ramification count of the degree-m projection", 2 * g - 2, rh);
  return out;
}

NongapProductReport check_nongap_product(const curve::CurveModel& c) {
  NongapProductReport out;
  out.q = certified_sqrt(c);
  auto basis = linsys::riemann_roch_basis(c, out.q + 1);
  if (basis.dimension() < 2)
    throw std::runtime_error("system of degree q+1 has defective dimension");
  out.n = basis.dimension() - 2;
  auto s = semigroup::from_generators({c.infinity[0].pole_x, c.infinity[0].pole_y});
  for (std::uint64_t m : semigroup::nongaps_upto(s, out.q + 1))
    if (m >= 1 && m * out.n == out.q + 1) out.m_candidates.push_back(m);
  out.holds = !out.m_candidates.empty();
  return out;
}

bool congruence_check(const algebra::FPoly& f, std::uint64_t n, std::uint64_t q) {
  gf::Field k = f.zero_elem().field();
  if (k == nullptr) throw std::invalid_argument("polynomial carries no field");
  if (k->size != q * q)
    throw std::invalid_argument("the polynomial must live over the size q^2 field");
  const auto span = subfield_span(k, q);
  return pow_mod(f, n, span) == pow_mod(f, n * q, span);
}

NormalFormWitness normalize_linearized(const gf::FieldElement& a1, const gf::FieldElement& aq,
                                       std::uint32_t m) {
  gf::Field k = a1.field();
  if (k == nullptr || aq.field() != k)
    throw std::invalid_argument("coefficients must share a field");
  if (k->k % 2 != 0) throw std::invalid_argument("the coefficient field must be a square");
  const std::uint64_t q = ipow_u64(k->p, k->k / 2);
  if (m == 0 || (q + 1) % m != 0) throw std::invalid_argument("m must divide q+1");
  if (a1.is_zero()) throw std::invalid_argument("a1 = 0: the map is inseparable");
  if (aq.is_zero()) throw std::invalid_argument("aq = 0: the map drops below degree q");

  algebra::FPoly f(gf::zero(k));
  f.set_coeff(1, a1);
  f.set_coeff(static_cast<std::size_t>(q), aq);
  if (monic(algebra::poly_gcd(f, subfield_span(k, q))) != monic(f))
    throw std::invalid_argument("the kernel is not rational: some root leaves the field");

  gf::Field sub = gf::make_field(k->p, k->k / 2);
  gf::FieldElement u = gf::zero(k);
  for (const auto& alpha : gf::enumerate_all(k)) {
    const auto v = a1 * alpha + aq * gf::pow(alpha, q);
    if (v.is_zero()) continue;
    if (u.is_zero()) {
      u = v;
    } else if (!gf::lies_in_subfield(v * u.inverse(), sub)) {
      throw std::invalid_argument("the image is not one-dimensional");
    }
  }

  const auto xi = gf::primitive_element(k);
  const std::uint64_t line = discrete_log(u, xi) % (q + 1);
  if (line % m != 0)
    throw std::invalid_argument("the image line is not an m-th power coset");
  const std::uint64_t r = line / m;

  const auto shrink = gf::pow_i(xi, -static_cast<std::int64_t>(r * m));
  const auto eps = shrink * a1;

  // (eps y)^q + eps y - (xi^{-r} v)^m must vanish identically once v^m is
  // rewritten through the defining equation; the residue collapses to a
  // polynomial identity in (v, y)
  algebra::BivarPoly target(k);
  target.add_term(0, static_cast<std::uint32_t>(q), gf::pow(eps, q));
  target.add_term(0, 1, eps);
  target.add_term(m, 0, -shrink);
  algebra::BivarPoly defining(k);
  defining.add_term(m, 0, gf::one(k));
  defining.add_term(0, 1, -a1);
  defining.add_term(0, static_cast<std::uint32_t>(q), -aq);
  algebra::BivarPoly scale(k);
  scale.add_term(0, 0, shrink);
  if (!(target + scale * defining).is_zero())
    throw std::runtime_error("substitution failed to flatten the defining equation");

  return {a1, aq, m, xi, r, eps};
}

QuarterGenusReport quarter_genus_pipeline(std::uint64_t q, std::optional<bool> point_level) {
  if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be an odd prime power >= 3");
  const std::uint64_t p = prime_power_decompose(q).first;

  QuarterGenusReport rep;
  rep.q = q;
  rep.m = (q + 1) / 2;
  rep.genus = (q - 1) * (q - 1) / 4;
  rep.degenerate = q == 3;
  rep.point_level = point_level.value_or(q <= 9) && q <= 9;

  if (!rep.degenerate) {
    const std::uint64_t bound = 2 * q + 2;
    auto H1 = semigroup::from_generators({q - 1, q, q + 1});
    auto H2 = semigroup::from_generators({rep.m, q});
    rep.h1_genus = H1.genus;
    rep.h2_genus = H2.genus;
    rep.h1_symmetric = H1.symmetric;
    rep.h2_symmetric = H2.symmetric;
    rep.h1_dim = semigroup::nongaps_upto(H1, bound).size();
    rep.h2_dim = semigroup::nongaps_upto(H2, bound).size();
    if (rep.h1_genus != rep.genus) fail_identity("gap count of <q-1, q, q+1>", rep.genus, rep.h1_genus);
    if (rep.h2_genus != rep.genus) fail_identity("gap count of <(q+1)/2, q>", rep.genus, rep.h2_genus);
    if (!rep.h1_symmetric || !rep.h2_symmetric)
      fail_identity("semigroup symmetry", true, false);
    if (rep.h1_dim != 9) fail_identity("non-gaps of <q-1, q, q+1> up to 2q+2", 9, rep.h1_dim);
    if (rep.h2_dim != 9) fail_identity("non-gaps of <(q+1)/2, q> up to 2q+2", 9, rep.h2_dim);

    // a curve of degree 2q+2 spanning P^r: division data and genus bound.
    // r = 7 must survive and everything above must fail, pinning dim = 9.
    for (std::uint64_t r = 7; r <= 2 * q + 2; ++r) {
      CastelnuovoRow row;
      row.r = r;
      row.M = (2 * q + 1) / r;
      row.e = (2 * q + 1) - row.M * r;
      row.bound = row.M * (2 * q + 1 - (r - row.e));
      row.eliminated = (q - 1) * (q - 1) / 2 > row.bound;
      rep.castelnuovo.push_back(row);
    }
    for (const auto& row : rep.castelnuovo)
      if ((row.r == 7) == row.eliminated)
        fail_identity("genus bound elimination at dimension " + std::to_string(row.r),
                      row.r != 7, row.eliminated);
    const auto& r8 = rep.castelnuovo[1];
    if ((2 * q + 1) % 8 == 3) {
      if (r8.M != (q - 1) / 4 || r8.e != 3)
        fail_identity("division data at dimension 8", "(q-1)/4, 3",
                      std::to_string(r8.M) + ", " + std::to_string(r8.e));
    } else {
      if (r8.M != (q - 3) / 4 || r8.e != 7)
        fail_identity("division data at dimension 8", "(q-3)/4, 7",
                      std::to_string(r8.M) + ", " + std::to_string(r8.e));
    }

    // candidate third order j: the doubled system admits at most 9 orders,
    // and the canonical gap structure is additively closed only for j = 2
    const std::set<std::uint64_t> expect_survivors = {2, rep.m, q - 1};
    std::set<std::uint64_t> survivors, closed;
    for (std::uint64_t j = 2; j <= q - 1; ++j) {
      OrderCandidate cand;
      cand.j = j;
      const std::set<std::uint64_t> doubled = {0, 1,     2,     j,     j + 1,
                                               2 * j, q, q + 1, q + j, 2 * q};
      cand.pair_orders = doubled.size();
      cand.survives = doubled.size() <= 9;
      if (cand.survives) {
        survivors.insert(j);
        auto gap = semigroup::gap_candidate_structure(q, j);
        cand.canonical_orders = gap.values.size();
        if (cand.canonical_orders != rep.genus)
          fail_identity("canonical order count at j = " + std::to_string(j), rep.genus,
                        cand.canonical_orders);
        cand.complement_closed = gap.complement_closed;
        cand.failure = gap.failure;
        if (gap.complement_closed) closed.insert(j);
      }
      rep.candidates.push_back(cand);
    }
    if (survivors != expect_survivors)
      fail_identity("surviving order candidates", "{2, (q+1)/2, q-1}", survivors.size());
    if (closed != std::set<std::uint64_t>{2})
      fail_identity("additively closed gap structure", "{2}", closed.size());
    rep.selected_j = 2;
  }

  if (rep.point_level) {
    auto c = curve::artin_schreier_quotient(static_cast<std::uint32_t>(p), q,
                                            static_cast<std::uint32_t>(rep.m));
    if (*c.genus != rep.genus) fail_identity("model genus", rep.genus, *c.genus);
    auto enu = curve::enumerate_points(c, 1);
    auto cert = zeta::certify_count(q, rep.genus, enu.count);
    rep.count = enu.count;
    rep.expected = cert.expected;
    rep.maximal = cert.maximal;
    if (!cert.maximal) fail_identity("point count", cert.expected, enu.count);

    auto s = semigroup::from_generators({q, rep.m});
    rep.m1 = semigroup::nth_element(s, 1);
    if (rep.m1 != rep.m) fail_identity("first positive non-gap", rep.m, rep.m1);

    rep.product = check_nongap_product(c);
    if (!rep.product.holds || rep.product.n != 2 ||
        std::find(rep.product.m_candidates.begin(), rep.product.m_candidates.end(), rep.m) ==
            rep.product.m_candidates.end())
      fail_identity("non-gap product at the distinguished place", rep.m, rep.product.n);

    auto sv = linsys::sv_divisors(c, q + 1, std::nullopt, 1, true);
    rep.deg_R = sv.deg_R_formula;
    rep.weierstrass_excess = rep.deg_R - enu.count.convert_to<std::int64_t>();
    const std::int64_t expect_excess =
        static_cast<std::int64_t>(q + 1) * (static_cast<std::int64_t>(q) - 3) / 2;
    if (rep.weierstrass_excess != expect_excess)
      fail_identity("Weierstrass mass beyond the rational points", expect_excess,
                    rep.weierstrass_excess);
    const std::int64_t closed_form = 3 * (2 * static_cast<std::int64_t>(rep.genus) - 2) -
                                     (static_cast<std::int64_t>(q) - 3) *
                                         static_cast<std::int64_t>(q + 1);
    if (closed_form != expect_excess)
      fail_identity("closed form of the Weierstrass excess", expect_excess, closed_form);
  }
  return rep;
}

}  // namespace maxcurve::classify
