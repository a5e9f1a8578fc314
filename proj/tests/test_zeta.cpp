#include "doctest.h"
#include "maxcurve/zeta.hpp"

#include <stdexcept>

using namespace maxcurve::zeta;

TEST_CASE("one-count reconstruction for the genus-1 curve with 9 points over F_4") {
  auto L = lpoly_from_counts(4, 1, {Int(9)});
  CHECK(L.c == std::vector<Int>{1, 4, 4});  // (1 + 2t)^2
  CHECK(is_maximal_lpoly(L));
  auto h = reciprocal_coeffs(L);
  CHECK(h == std::vector<Int>{4, 4, 1});  // (t + 2)^2
}

TEST_CASE("genus zero needs no counts") {
  auto L = lpoly_from_counts(7, 0, {});
  CHECK(L.c == std::vector<Int>{1});
  CHECK(count_from_lpoly(L, 1) == 8);
  CHECK(count_from_lpoly(L, 3) == 344);
}

TEST_CASE("counts round-trip through the L-polynomial") {
  // a genus-2 curve over F_9 hitting the maximal count 9 + 1 + 2*2*3 = 22;
  // all reciprocal roots are -3, so s_2 = 4*9 = 36 and N_2 = 81 + 1 - 36
  std::vector<Int> counts{Int(22), Int(46)};
  auto L = lpoly_from_counts(9, 2, counts);
  CHECK(is_maximal_lpoly(L));
  for (std::uint64_t i = 1; i <= 2; ++i) CHECK(count_from_lpoly(L, i) == counts[i - 1]);
  // and further counts stay within Weil bounds
  for (std::uint64_t i = 3; i <= 6; ++i) {
    Int dev = power_sum(L, i);
    CHECK(dev * dev <= Int(16) * boost::multiprecision::pow(Int(9), static_cast<unsigned>(i)));
  }
}

TEST_CASE("power sums of 1 + 2t + 2t^2 match the known sequence") {
  LPolynomial L{2, 1, {Int(1), Int(2), Int(2)}};
  validate(L);
  CHECK(power_sum(L, 1) == -2);
  CHECK(power_sum(L, 2) == 0);
  CHECK(power_sum(L, 3) == 4);
  CHECK(power_sum(L, 4) == -8);
  CHECK(count_from_lpoly(L, 1) == 5);
}

TEST_CASE("quartic base change of 1 + 2t + 2t^2 is maximal over F_16") {
  LPolynomial L{2, 1, {Int(1), Int(2), Int(2)}};
  auto L4 = base_change(L, 4);
  CHECK(L4.ell == 16);
  CHECK(L4.c == std::vector<Int>{1, 8, 16});  // (1 + 4t)^2
  CHECK(is_maximal_lpoly(L4));
  CHECK(count_from_lpoly(L4, 1) == 16 + 1 + 2 * 4);
}

TEST_CASE("sixth-power power sum of the reversed factor t^2 + 3t + 3") {
  // L-form of that monic factor is 1 + 3t + 3t^2
  LPolynomial L{3, 1, {Int(1), Int(3), Int(3)}};
  validate(L);
  CHECK(power_sum(L, 6) == -54);  // = -2 * 27
  auto L6 = base_change(L, 6);
  CHECK(L6.ell == 729);
  CHECK(is_maximal_lpoly(L6));  // (1 + 27t)^2
}

TEST_CASE("base change composes with counting") {
  LPolynomial L{4, 1, {Int(1), Int(4), Int(4)}};
  auto L3 = base_change(L, 3);
  for (std::uint64_t i = 1; i <= 3; ++i) {
    CHECK(count_from_lpoly(L3, i) == count_from_lpoly(L, 3 * i));
  }
}

TEST_CASE("invalid counts are rejected") {
  // N_1 = 20 over F_4 with g = 1 breaks the Weil bound |N - 5| <= 4
  CHECK_THROWS_AS(lpoly_from_counts(4, 1, {Int(20)}), std::invalid_argument);
  CHECK_THROWS_AS(lpoly_from_counts(4, 2, {Int(9)}), std::invalid_argument);  // wrong length
  // each count is within its Weil interval but the pair violates the
  // parity forced by Newton's identities: s_1 = 0 even, s_2 = 1 odd
  CHECK_THROWS_AS(lpoly_from_counts(4, 2, {Int(5), Int(16)}), std::invalid_argument);
}

TEST_CASE("maximality certificate arithmetic") {
  auto cert = certify_count(5, 4, Int(66));
  CHECK(cert.expected == 66);
  CHECK(cert.maximal);
  auto bad = certify_count(5, 4, Int(65));
  CHECK_FALSE(bad.maximal);
}

TEST_CASE("bound report for q=5, n=2") {
  auto r = bounds_report(5, 4, 2);
  CHECK(r.weil_count_upper == 66);
  CHECK(r.ihara_genus == 10);
  CHECK(r.ihara_ok);
  CHECK(r.dichotomy_small_4g == 16);
  CHECK(r.dichotomy_ok);  // 4*4 = 16 <= 16
  CHECK(r.castelnuovo_M == 2);
  CHECK(r.castelnuovo_e == 1);
  CHECK(r.castelnuovo_2g == 8);  // so g <= 4
  CHECK(r.castelnuovo_ok);
  CHECK(r.castelnuovo_closed_num == 64);  // (2q-n)^2 with n even
  CHECK(r.castelnuovo_closed_den == 8);
}

TEST_CASE("bound report for q=3, n=2 pins genus 1") {
  auto r = bounds_report(3, 1, 2);
  CHECK(r.castelnuovo_M == 1);
  CHECK(r.castelnuovo_e == 1);
  CHECK(r.castelnuovo_2g == 2);
  CHECK(r.castelnuovo_ok);
  auto r2 = bounds_report(3, 2, 2);
  CHECK_FALSE(r2.castelnuovo_ok);
}

TEST_CASE("ihara bound at q=4") {
  auto r = bounds_report(4, 6, 1);
  CHECK(r.ihara_genus == 6);
  CHECK(r.ihara_ok);
  CHECK_FALSE(bounds_report(4, 7, 1).ihara_ok);
}

TEST_CASE("odd-degree closed form and the M(q-n+e) bound agree at q=5, n=3") {
  auto r = bounds_report(5, 2, 3);
  CHECK(r.castelnuovo_M == 1);
  CHECK(r.castelnuovo_e == 2);
  CHECK(r.castelnuovo_2g == 4);
  CHECK(r.castelnuovo_closed_num == 48);  // (10-3)^2 - 1
  CHECK(r.castelnuovo_closed_den == 12);  // 48/12 = 4, matches exactly here
}

TEST_CASE("the discrete bound never exceeds the closed form") {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25}) {
    for (std::uint64_t n = 1; n <= q; ++n) {
      auto r = bounds_report(q, 1, n);
      CHECK(r.castelnuovo_2g * r.castelnuovo_closed_den <= r.castelnuovo_closed_num);
    }
  }
}

TEST_CASE("lewittes bound uses the smallest pole order") {
  auto r = bounds_report(5, 4, 2, 3);
  REQUIRE(r.lewittes_2g.has_value());
  CHECK(*r.lewittes_2g == 10);  // (3-1)*5
  CHECK(*r.lewittes_ok);        // 8 <= 10
  auto r2 = bounds_report(5, 6, 2, 3);
  CHECK_FALSE(*r2.lewittes_ok);
}

TEST_CASE("genus window at q=5") {
  auto r = genus_window_predicate(5, 4);
  CHECK(r.q_odd);
  CHECK_FALSE(r.q_power_of_3);
  CHECK_FALSE(r.q_is_3_mod_4);
  CHECK(r.window_low_4g == 12);   // q^2 - 3q + 2 = 12, so the window is 3 < g
  CHECK(r.window_high_4g == 16);  // (q-1)^2, g <= 4
  CHECK(r.in_window);
  CHECK(r.primary == WindowStatus::Concluded);
  CHECK(r.alternative == WindowStatus::NotApplicable);
  CHECK(r.conclusion_holds);

  auto r2 = genus_window_predicate(5, 3);
  CHECK_FALSE(r2.in_window);  // 12 < 12 fails
  CHECK(r2.primary == WindowStatus::NoConclusion);
}

TEST_CASE("genus window gates") {
  auto r9 = genus_window_predicate(9, 16);
  CHECK(r9.q_power_of_3);
  CHECK(r9.primary == WindowStatus::NotApplicable);
  CHECK(r9.alternative == WindowStatus::NotApplicable);

  auto r8 = genus_window_predicate(8, 12);
  CHECK_FALSE(r8.q_odd);
  CHECK(r8.primary == WindowStatus::NotApplicable);

  // q = 7 is 3 mod 4: the two readings split
  auto r7 = genus_window_predicate(7, 9);
  CHECK(r7.q_is_3_mod_4);
  CHECK(r7.in_window);  // 30 < 36 <= 36
  CHECK(r7.primary == WindowStatus::NotApplicable);
  CHECK(r7.alternative == WindowStatus::Concluded);
  CHECK(r7.conclusion_holds);
}

TEST_CASE("validate rejects broken polynomials") {
  LPolynomial bad{4, 1, {Int(1), Int(4), Int(5)}};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  LPolynomial bad2{4, 1, {Int(2), Int(4), Int(8)}};
  CHECK_THROWS_AS(validate(bad2), std::invalid_argument);
  // functional equation holds but the root modulus is wrong: 1 + 5t + 4t^2
  // = (1+t)(1+4t) has power sum s_2 = 17 > 2*2*sqrt(4)^2? s_2 = 25 - 8 = 17;
  // bound is 4g^2 ell = 16: violated
  LPolynomial bad3{4, 1, {Int(1), Int(5), Int(4)}};
  CHECK_THROWS_AS(validate(bad3), std::invalid_argument);
}
