#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

namespace maxcurve::zeta {

using Int = boost::multiprecision::cpp_int;

// Numerator of the zeta function in the form L(t) = prod (1 - alpha_i t),
// so that the count over the degree-i extension is ell^i + 1 - sum alpha^i.
// This orientation keeps every Newton-identity step integral. The monic
// companion h(t) = t^{2g} L(1/t) = prod (t - alpha_i) is available via
// reciprocal_coeffs.
struct LPolynomial {
  std::uint64_t ell = 0;  // base field size
  std::uint64_t g = 0;    // genus
  std::vector<Int> c;     // 2g+1 integer coefficients, c[0] = 1
};

// Checks c[0] = 1, the functional equation c[2g-i] = ell^(g-i) c[i], and
// that every power sum satisfies s_i^2 <= 4 g^2 ell^i for i = 1..2g.
// Throws std::invalid_argument on violation.
void validate(const LPolynomial& L);

// Reconstruction from exactly g point counts N_1..N_g over F_{ell^i}.
// Counts outside the Weil interval or producing non-integral Newton steps
// throw std::invalid_argument (they cannot come from a curve).
LPolynomial lpoly_from_counts(std::uint64_t ell, std::uint64_t g, const std::vector<Int>& counts);

// sum of the i-th powers of the reciprocal roots, exactly
Int power_sum(const LPolynomial& L, std::uint64_t i);

// ell^i + 1 - power_sum(L, i)
Int count_from_lpoly(const LPolynomial& L, std::uint64_t i);

// L-polynomial of the same curve over F_{ell^d}
LPolynomial base_change(const LPolynomial& L, std::uint32_t d);

// coefficients of h(t) = t^{2g} L(1/t), lowest degree first
std::vector<Int> reciprocal_coeffs(const LPolynomial& L);

// true exactly when L = (1 + q t)^{2g} with q^2 = ell
bool is_maximal_lpoly(const LPolynomial& L);

struct MaximalityCertificate {
  Int count;
  Int expected;  // q^2 + 1 + 2 g q
  bool maximal = false;
};

// Pure arithmetic: compares a point count over F_{q^2} with q^2 + 1 + 2gq.
MaximalityCertificate certify_count(std::uint64_t q, std::uint64_t g, const Int& count);

// The genus/degree bound calculators. All values exact integers; the two
// closed forms of the degree bound are reported as an exact fraction since
// they need not be integral.
struct BoundReport {
  std::uint64_t q = 0, g = 0, n = 0;
  std::optional<std::uint64_t> m1;

  Int weil_count_upper;  // q^2 + 1 + 2 g q, the count ceiling over F_{q^2}

  Int ihara_genus;  // q(q-1)/2
  bool ihara_ok = false;

  // either 4g <= (q-1)^2 or g = q(q-1)/2
  Int dichotomy_small_4g;  // (q-1)^2
  bool dichotomy_ok = false;

  // 2g <= M(q - n + e) with M = floor(q/n), e = q - Mn
  Int castelnuovo_M, castelnuovo_e, castelnuovo_2g;
  bool castelnuovo_ok = false;
  // (2q-n)^2 / 4n for even n, ((2q-n)^2 - 1) / 4n for odd n
  Int castelnuovo_closed_num, castelnuovo_closed_den;

  std::optional<Int> lewittes_2g;  // (m1 - 1) q
  std::optional<bool> lewittes_ok;
};

BoundReport bounds_report(std::uint64_t q, std::uint64_t g, std::uint64_t n,
                          std::optional<std::uint64_t> m1 = std::nullopt);

// Window predicate on (q, g): when the hypotheses on q hold and
// (q^2-3q+2)/4 < g <= (q-1)^2/4, the genus is pinned to (q-1)^2/4.
// The gate condition is stated in the source material with a double
// negative that parses two ways, so both readings are evaluated.
enum class WindowStatus { NotApplicable, NoConclusion, Concluded };

struct GenusWindowReport {
  bool q_odd = false, q_power_of_3 = false, q_is_3_mod_4 = false;
  bool in_window = false;        // 4g in (q^2-3q+2, (q-1)^2]
  Int window_low_4g, window_high_4g, pinned_4g;
  WindowStatus primary = WindowStatus::NotApplicable;      // gate: odd, not a power of 3, q % 4 != 3
  WindowStatus alternative = WindowStatus::NotApplicable;  // gate: odd, not a power of 3, q % 4 == 3
  bool conclusion_holds = false;  // g == (q-1)^2/4, meaningful when Concluded
};

GenusWindowReport genus_window_predicate(std::uint64_t q, std::uint64_t g);

}  // namespace maxcurve::zeta
