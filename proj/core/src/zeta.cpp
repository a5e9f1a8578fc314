#include "maxcurve/zeta.hpp"

#include <sstream>
#include <stdexcept>

#include "maxcurve/util.hpp"

namespace maxcurve::zeta {

namespace {

Int ipow(const Int& b, std::uint64_t e) {
  Int r = 1, base = b;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// power sums from coefficients by Newton's identities:
// k c_k + sum_{i=1..k} s_i c_{k-i} = 0 while k <= deg, then the linear
// recurrence sum_{i=0..deg} c_i s_{k-i} = 0 takes over.
std::vector<Int> power_sums_upto(const std::vector<Int>& c, std::uint64_t n) {
  const std::size_t deg = c.size() - 1;
  std::vector<Int> s(n + 1);
  s[0] = static_cast<std::int64_t>(deg);
  for (std::uint64_t k = 1; k <= n; ++k) {
    Int acc = 0;
    std::uint64_t lo = k > deg ? k - deg : 1;
    for (std::uint64_t i = lo; i < k; ++i) acc += s[i] * c[static_cast<std::size_t>(k - i)];
    if (k <= deg) acc += Int(k) * c[static_cast<std::size_t>(k)];
    s[k] = -acc;
  }
  return s;
}

// coefficients from power sums s_1..s_n of an degree-n polynomial
// prod (1 - alpha_i t); throws if a Newton step is not integral
std::vector<Int> coeffs_from_power_sums(const std::vector<Int>& s, std::uint64_t n) {
  std::vector<Int> c(n + 1);
  c[0] = 1;
  for (std::uint64_t k = 1; k <= n; ++k) {
    Int acc = 0;
    for (std::uint64_t i = 1; i <= k; ++i) acc += s[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k - i)];
    if (acc % Int(k) != 0) {
      throw std::invalid_argument("inconsistent point counts: Newton step is not integral");
    }
    c[static_cast<std::size_t>(k)] = -acc / Int(k);
  }
  return c;
}

}  // namespace

void validate(const LPolynomial& L) {
  const std::uint64_t twog = 2 * L.g;
  if (L.c.size() != twog + 1) throw std::invalid_argument("L-polynomial has wrong length");
  if (L.c[0] != 1) throw std::invalid_argument("L-polynomial must have constant term 1");
  for (std::uint64_t i = 0; i < L.g; ++i) {
    if (L.c[static_cast<std::size_t>(twog - i)] != ipow(Int(L.ell), L.g - i) * L.c[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("L-polynomial violates the functional equation");
    }
  }
  // |s_i| <= 2 g ell^(i/2), squared to stay integral
  auto s = power_sums_upto(L.c, twog == 0 ? 0 : twog);
  for (std::uint64_t i = 1; i <= twog; ++i) {
    if (s[i] * s[i] > Int(4) * Int(L.g) * Int(L.g) * ipow(Int(L.ell), i)) {
      throw std::invalid_argument("L-polynomial has a power sum outside the Weil bound");
    }
  }
}

LPolynomial lpoly_from_counts(std::uint64_t ell, std::uint64_t g, const std::vector<Int>& counts) {
  if (counts.size() != g) throw std::invalid_argument("need exactly g point counts");
  LPolynomial L;
  L.ell = ell;
  L.g = g;
  if (g == 0) {
    L.c = {Int(1)};
    return L;
  }
  std::vector<Int> s(g + 1);
  for (std::uint64_t i = 1; i <= g; ++i) {
    Int elli = ipow(Int(ell), i);
    Int dev = elli + 1 - counts[static_cast<std::size_t>(i - 1)];
    if (dev * dev > Int(4) * Int(g) * Int(g) * elli) {
      std::ostringstream os;
      os << "count N_" << i << " violates the Weil bound";
      throw std::invalid_argument(os.str());
    }
    s[static_cast<std::size_t>(i)] = dev;
  }
  std::vector<Int> c = coeffs_from_power_sums(s, g);
  c.resize(2 * g + 1);
  for (std::uint64_t i = 0; i < g; ++i) {
    c[static_cast<std::size_t>(2 * g - i)] = ipow(Int(ell), g - i) * c[static_cast<std::size_t>(i)];
  }
  L.c = std::move(c);
  // the reconstruction must reproduce its inputs
  for (std::uint64_t i = 1; i <= g; ++i) {
    if (count_from_lpoly(L, i) != counts[static_cast<std::size_t>(i - 1)]) {
      throw std::runtime_error("L-polynomial reconstruction failed to reproduce the counts");
    }
  }
  validate(L);
  return L;
}

Int power_sum(const LPolynomial& L, std::uint64_t i) {
  return power_sums_upto(L.c, i)[static_cast<std::size_t>(i)];
}

Int count_from_lpoly(const LPolynomial& L, std::uint64_t i) {
  return ipow(Int(L.ell), i) + 1 - power_sum(L, i);
}

LPolynomial base_change(const LPolynomial& L, std::uint32_t d) {
  if (d == 0) throw std::invalid_argument("base change degree must be positive");
  LPolynomial out;
  out.ell = ipow_u64(L.ell, d);
  out.g = L.g;
  const std::uint64_t twog = 2 * L.g;
  if (twog == 0) {
    out.c = {Int(1)};
    return out;
  }
  auto s = power_sums_upto(L.c, twog * d);
  std::vector<Int> sd(twog + 1);
  for (std::uint64_t k = 1; k <= twog; ++k) sd[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k * d)];
  out.c = coeffs_from_power_sums(sd, twog);
  return out;
}

std::vector<Int> reciprocal_coeffs(const LPolynomial& L) {
  std::vector<Int> h(L.c.rbegin(), L.c.rend());
  return h;
}

bool is_maximal_lpoly(const LPolynomial& L) {
  std::uint64_t q = static_cast<std::uint64_t>(boost::multiprecision::sqrt(Int(L.ell)).convert_to<std::uint64_t>());
  if (q * q != L.ell) return false;
  // L == (1 + q t)^{2g}: coefficient i is C(2g, i) q^i
  Int coef = 1;
  for (std::uint64_t i = 0; i <= 2 * L.g; ++i) {
    if (L.c[static_cast<std::size_t>(i)] != coef) return false;
    // next binomial times q: C(2g,i+1) q^{i+1}
    coef = coef * Int(2 * L.g - i) * Int(q) / Int(i + 1);
  }
  return true;
}

MaximalityCertificate certify_count(std::uint64_t q, std::uint64_t g, const Int& count) {
  MaximalityCertificate out;
  out.count = count;
  out.expected = Int(q) * Int(q) + 1 + Int(2) * Int(g) * Int(q);
  out.maximal = count == out.expected;
  return out;
}

BoundReport bounds_report(std::uint64_t q, std::uint64_t g, std::uint64_t n, std::optional<std::uint64_t> m1) {
  if (n == 0) throw std::invalid_argument("bounds_report needs n >= 1");
  auto [p, k] = prime_power_decompose(q);
  (void)p;
  (void)k;
  BoundReport r;
  r.q = q;
  r.g = g;
  r.n = n;
  r.m1 = m1;
  Int Q(q), G(g), N(n);

  r.weil_count_upper = Q * Q + 1 + 2 * G * Q;

  r.ihara_genus = Q * (Q - 1) / 2;
  r.ihara_ok = G <= r.ihara_genus;

  r.dichotomy_small_4g = (Q - 1) * (Q - 1);
  r.dichotomy_ok = 4 * G <= r.dichotomy_small_4g || G == r.ihara_genus;

  r.castelnuovo_M = Q / N;
  r.castelnuovo_e = Q - r.castelnuovo_M * N;
  r.castelnuovo_2g = r.castelnuovo_M * (Q - N + r.castelnuovo_e);
  r.castelnuovo_ok = 2 * G <= r.castelnuovo_2g;
  Int w = 2 * Q - N;
  r.castelnuovo_closed_num = w * w;
  if (n % 2 == 1) r.castelnuovo_closed_num -= 1;
  r.castelnuovo_closed_den = 4 * N;

  if (m1) {
    r.lewittes_2g = (Int(*m1) - 1) * Q;
    r.lewittes_ok = 2 * G <= *r.lewittes_2g;
  }
  return r;
}

GenusWindowReport genus_window_predicate(std::uint64_t q, std::uint64_t g) {
  auto [p, k] = prime_power_decompose(q);
  (void)k;
  GenusWindowReport r;
  r.q_odd = q % 2 == 1;
  r.q_power_of_3 = p == 3;
  r.q_is_3_mod_4 = q % 4 == 3;
  Int Q(q), G(g);
  r.window_low_4g = Q * Q - 3 * Q + 2;
  r.window_high_4g = (Q - 1) * (Q - 1);
  r.pinned_4g = r.window_high_4g;
  r.in_window = 4 * G > r.window_low_4g && 4 * G <= r.window_high_4g;
  bool gate_primary = r.q_odd && !r.q_power_of_3 && !r.q_is_3_mod_4;
  bool gate_alternative = r.q_odd && !r.q_power_of_3 && r.q_is_3_mod_4;
  auto status = [&](bool gate) {
    if (!gate) return WindowStatus::NotApplicable;
    return r.in_window ? WindowStatus::Concluded : WindowStatus::NoConclusion;
  };
  r.primary = status(gate_primary);
  r.alternative = status(gate_alternative);
  r.conclusion_holds = 4 * G == r.pinned_4g;
  return r;
}

}  // namespace maxcurve::zeta
