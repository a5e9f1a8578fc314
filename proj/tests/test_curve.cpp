#include "doctest.h"

#include <utility>

#include "maxcurve/curve.hpp"
#include "maxcurve/util.hpp"
#include "maxcurve/zeta.hpp"

using namespace maxcurve;
using curve::CurveModel;
using curve::PlacePoint;

TEST_CASE("hermitian counts: q^3 + 1 rational points over the base") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    CAPTURE(p);
    CurveModel c = curve::hermitian(p, p);
    auto en = curve::enumerate_points(c, 1);
    CHECK(en.count == zeta::Int(p) * p * p + 1);
    CHECK(en.infinite == 1);
  }
  CHECK(curve::enumerate_points(curve::hermitian(2, 4), 1).count == 65);
}

TEST_CASE("hermitian q=3: genus 3, count 28, L = (1+3t)^6 from three extension counts") {
  CurveModel c = curve::hermitian(3, 3);
  REQUIRE(c.genus.has_value());
  CHECK(*c.genus == 3);
  std::vector<zeta::Int> counts;
  for (std::uint32_t e = 1; e <= 3; ++e) counts.push_back(curve::enumerate_points(c, e).count);
  CHECK(counts[0] == 28);   // 9 + 1 + 2*3*3
  CHECK(counts[1] == 28);   // 81 + 1 - 6*9
  CHECK(counts[2] == 892);  // 729 + 1 + 6*27
  auto L = zeta::lpoly_from_counts(9, 3, counts);
  CHECK(zeta::is_maximal_lpoly(L));
}

TEST_CASE("quotient family counts over F_25: (q,m) = (5,3) gives 66, (5,2) gives 46") {
  CurveModel c3 = curve::artin_schreier_quotient(5, 5, 3);
  REQUIRE(c3.genus.has_value());
  CHECK(*c3.genus == 4);
  CHECK(curve::enumerate_points(c3, 1).count == 66);  // 25 + 1 + 2*4*5
  CHECK(zeta::certify_count(5, 4, 66).maximal);

  CurveModel c2 = curve::artin_schreier_quotient(5, 5, 2);
  REQUIRE(c2.genus.has_value());
  CHECK(*c2.genus == 2);
  CHECK(curve::enumerate_points(c2, 1).count == 46);  // 25 + 1 + 2*2*5
}

TEST_CASE("quotient family rejects bad parameters") {
  CHECK_THROWS_AS(curve::artin_schreier_quotient(5, 5, 4), std::invalid_argument);
  CHECK_THROWS_AS(curve::artin_schreier_quotient(5, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(curve::artin_schreier_quotient(5, 25, 3), std::invalid_argument);  // 26 % 3 != 0
  CHECK_THROWS_AS(curve::artin_schreier_quotient(2, 5, 3), std::invalid_argument);   // q not a power of p
}

TEST_CASE("hyperelliptic example: genus 2, 118 points over F_81") {
  CurveModel c = curve::hyperelliptic_example();
  REQUIRE(c.genus.has_value());
  CHECK(*c.genus == 2);
  auto en = curve::enumerate_points(c, 1);
  CHECK(en.affine == 117);
  CHECK(en.infinite == 1);
  CHECK(en.count == 118);  // 81 + 1 + 2*2*9
  CHECK(zeta::certify_count(9, 2, 118).maximal);
}

TEST_CASE("suzuki s=0: 5 points over F_2, maximal over F_16 with 25") {
  CurveModel c = curve::suzuki(0);
  REQUIRE(c.genus.has_value());
  CHECK(*c.genus == 1);
  CHECK(curve::maximality_extension(c) == 4);
  CHECK(curve::enumerate_points(c, 1).count == 5);  // r^2 + 1
  auto en4 = curve::enumerate_points(c, 4);
  CHECK(en4.count == 25);  // 16 + 1 + 2*1*4
  auto L = zeta::lpoly_from_counts(16, 1, {en4.count});
  CHECK(zeta::is_maximal_lpoly(L));
}

TEST_CASE("fibered counts agree with the all-pairs oracle") {
  auto check_oracle = [](const CurveModel& c, std::uint32_t ext) {
    CAPTURE(curve::family_name(c.family));
    CAPTURE(ext);
    CHECK(curve::naive_affine_count(c, ext) == curve::enumerate_points(c, ext).affine);
  };
  check_oracle(curve::hermitian(2, 2), 1);
  check_oracle(curve::hermitian(2, 2), 2);
  check_oracle(curve::hermitian(3, 3), 1);
  check_oracle(curve::artin_schreier_quotient(5, 5, 3), 1);
  check_oracle(curve::artin_schreier_quotient(5, 5, 2), 1);
  check_oracle(curve::hyperelliptic_example(), 1);
  check_oracle(curve::suzuki(0), 1);
  check_oracle(curve::suzuki(0), 4);
}

TEST_CASE("ree affine counts agree with the all-triples oracle on small extensions") {
  CurveModel c = curve::ree(0);
  // over F_3 both right-hand sides vanish identically, so all 27 triples work
  CHECK(curve::naive_affine_count(c, 1) == 27);
  std::uint64_t streamed = 0;
  curve::for_each_affine_point(c, 2, [&](const PlacePoint& P) {
    CHECK(curve::on_curve(c, P));
    ++streamed;
    return true;
  });
  CHECK(streamed == curve::naive_affine_count(c, 2));
}

TEST_CASE("ree consistency report at s=0 lands on the smaller genus formula") {
  auto r = curve::ree_consistency_report(0);
  CHECK(r.r == 3);
  CHECK(r.r0 == 1);
  CHECK(r.affine6 == 1539);
  CHECK(r.n_inf == 1);
  CHECK(r.count6 == 1540);  // 729 + 1 + 2*15*27
  CHECK(r.g_hat == 15);
  CHECK(r.formula_full == 30);
  CHECK(r.formula_half == 15);
  CHECK_FALSE(r.matches_full);
  CHECK(r.matches_half);
  CHECK(zeta::certify_count(27, r.g_hat, r.count6).maximal);
}

TEST_CASE("ree enumeration only answers over the degree-6 extension") {
  CurveModel c = curve::ree(0);
  CHECK_THROWS_AS(curve::enumerate_points(c, 1), std::invalid_argument);
  CHECK_THROWS_AS(curve::enumerate_points(c, 6, true), std::invalid_argument);
  auto en = curve::enumerate_points(c, 6);
  CHECK_FALSE(en.model_complete);
  CHECK(en.affine == 1539);
  CHECK(en.infinite == 1);
}

TEST_CASE("point lists are ordered by element index and lie on the curve") {
  CurveModel c = curve::hermitian(3, 3);
  auto en = curve::enumerate_points(c, 1, true);
  REQUIRE(en.points.size() == 28);
  std::uint64_t affine_seen = 0;
  std::pair<std::uint64_t, std::uint64_t> prev{0, 0};
  bool first = true;
  for (const auto& P : en.points) {
    if (P.at_infinity) continue;
    ++affine_seen;
    CHECK(curve::on_curve(c, P));
    std::pair<std::uint64_t, std::uint64_t> key{gf::element_index(P.x), gf::element_index(P.y)};
    if (!first) CHECK(prev < key);
    prev = key;
    first = false;
  }
  CHECK(affine_seen == 27);
  CHECK(en.points.back().at_infinity);
}

TEST_CASE("streaming stops early when the callback returns false") {
  CurveModel c = curve::hermitian(3, 3);
  int seen = 0;
  curve::for_each_affine_point(c, 1, [&](const PlacePoint&) { return ++seen < 5; });
  CHECK(seen == 5);
}

TEST_CASE("frobenius orbits partition the points over an extension") {
  CurveModel c = curve::artin_schreier_quotient(3, 3, 2);
  auto en = curve::enumerate_points(c, 2, true);
  std::uint64_t weighted = 0;
  for (const auto& P : en.points) {
    if (P.at_infinity) continue;
    auto FP = curve::frobenius_point(c, P, c.base);
    CHECK(curve::on_curve(c, FP));
    std::uint32_t d = curve::point_degree(c, P);
    CHECK(2 % d == 0);  // orbit sizes divide the extension degree
    // count each orbit once, at its representative with the smallest key
    auto key_of = [](const PlacePoint& Q) {
      return std::pair{gf::element_index(Q.x), gf::element_index(Q.y)};
    };
    bool smallest = true;
    auto Q = FP;
    for (std::uint32_t i = 1; i < d; ++i) {
      if (key_of(Q) < key_of(P)) smallest = false;
      Q = curve::frobenius_point(c, Q, c.base);
    }
    if (smallest) weighted += d;
  }
  CHECK(weighted == en.affine);
}

TEST_CASE("degree-1 points over an extension are exactly the base points") {
  CurveModel c = curve::hermitian(3, 3);
  std::uint64_t deg1 = 0;
  curve::for_each_affine_point(c, 3, [&](const PlacePoint& P) {
    if (curve::point_degree(c, P) == 1) ++deg1;
    return true;
  });
  CHECK(deg1 == curve::enumerate_points(c, 1).affine);
}

TEST_CASE("hyperelliptic involution fixes the six ramification points") {
  CurveModel c = curve::hyperelliptic_example();
  std::uint64_t fixed = 0;
  curve::for_each_affine_point(c, 1, [&](const PlacePoint& P) {
    auto S = curve::involution(c, P);
    CHECK(curve::on_curve(c, S));
    if (S.x == P.x && S.y == P.y) ++fixed;
    return true;
  });
  // x = 0 and y^5 = 1: five affine points; the infinite place is the sixth
  CHECK(fixed == 5);
}

TEST_CASE("involution composed with the 81-power map has 40 non-rational fixed points") {
  CurveModel c = curve::hyperelliptic_example();
  std::uint64_t fixed_rational = 0, fixed_nonrational = 0;
  curve::for_each_affine_point(c, 2, [&](const PlacePoint& P) {
    auto S = curve::involution(c, P);
    auto SF = curve::frobenius_point(c, S, c.base);
    if (SF.x == P.x && SF.y == P.y) {
      (curve::point_degree(c, P) == 1 ? fixed_rational : fixed_nonrational) += 1;
    }
    return true;
  });
  // the fixed-point total is the quadratic twist count 82 - 36 = 46; the
  // rational ones are the involution's own fixed points (5 affine + infinity)
  CHECK(fixed_rational == 5);
  CHECK(fixed_nonrational == 40);
}

TEST_CASE("involution is an involution and rejects other families") {
  CurveModel c = curve::hyperelliptic_example();
  curve::for_each_affine_point(c, 1, [&](const PlacePoint& P) {
    auto S = curve::involution(c, curve::involution(c, P));
    CHECK((S.x == P.x && S.y == P.y));
    return false;  // one point suffices
  });
  CHECK_THROWS_AS(curve::involution(curve::hermitian(2, 2), PlacePoint{}), std::invalid_argument);
}

TEST_CASE("built-in models are smooth; a cuspidal plane model is not") {
  CHECK(curve::smoothness_check(curve::hermitian(2, 4), 1).empty());
  CHECK(curve::smoothness_check(curve::hyperelliptic_example(), 1).empty());
  CHECK(curve::smoothness_check(curve::suzuki(0), 2).empty());
  CHECK(curve::smoothness_check(curve::ree(0), 2).empty());

  gf::Field F25 = gf::make_field(5, 2);
  algebra::BivarPoly cusp(F25);  // y^2 = x^3
  cusp.set(0, 2, gf::one(F25));
  cusp.set(3, 0, -gf::one(F25));
  CurveModel g = curve::generic_plane(F25, cusp, std::nullopt, std::nullopt);
  auto sing = curve::smoothness_check(g, 1);
  REQUIRE(sing.size() == 1);
  CHECK(sing[0].x.is_zero());
  CHECK(sing[0].y.is_zero());
}

TEST_CASE("generic plane models count affine points by substitution") {
  gf::Field F7 = gf::make_field(7, 1);
  algebra::BivarPoly f(F7);  // y^2 = x^3 + 2
  f.set(0, 2, gf::one(F7));
  f.set(3, 0, -gf::one(F7));
  f.set(0, 0, -gf::from_int(F7, 2));
  curve::InfinitePlace inf{2, 3};
  CurveModel c = curve::generic_plane(F7, f, 1, inf);
  auto en = curve::enumerate_points(c, 1);
  CHECK(en.count == zeta::Int(curve::naive_affine_count(c, 1)) + 1);
  CHECK(en.model_complete);

  CurveModel c2 = curve::generic_plane(F7, f, std::nullopt, std::nullopt);
  auto en2 = curve::enumerate_points(c2, 1);
  CHECK_FALSE(en2.model_complete);
  CHECK(en2.infinite == 0);
}

TEST_CASE("enumeration respects the field and pair budgets") {
  CurveModel c = curve::hermitian(2, 8);  // base F_64
  CHECK_THROWS_AS(curve::enumerate_points(c, 5), std::domain_error);   // 64^5 = 2^30 elements
  CHECK_THROWS_AS(curve::naive_affine_count(c, 3), std::domain_error); // (2^18)^2 pairs
}

TEST_CASE("counts compose with zeta base change across extensions") {
  CurveModel c = curve::hermitian(2, 2);
  std::vector<zeta::Int> counts;
  for (std::uint32_t e = 1; e <= 3; ++e) counts.push_back(curve::enumerate_points(c, e).count);
  auto L = zeta::lpoly_from_counts(4, 1, {counts[0]});
  for (std::uint32_t e = 2; e <= 3; ++e) {
    CHECK(zeta::count_from_lpoly(zeta::base_change(L, e), 1) == counts[e - 1]);
  }
}
