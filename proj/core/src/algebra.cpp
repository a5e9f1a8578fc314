#include "maxcurve/algebra.hpp"

#include <sstream>

namespace maxcurve::algebra {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// C(n, k) mod p for 0 <= n, k < p
std::uint64_t digit_binom(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    num = num * ((n - k + j) % p) % p;
    den = den * (j % p) % p;
  }
  return num * pow_mod(den, p - 2, p) % p;
}

}  // namespace

std::uint32_t binom_mod_p(std::int64_t n, std::int64_t k, std::uint32_t p) {
  if (k < 0) return 0;
  if (n < 0) {
    // C(n, k) = (-1)^k C(k - n - 1, k)
    std::uint32_t c = binom_mod_p(k - n - 1, k, p);
    if (k % 2 == 0 || c == 0) return c;
    return p - c;
  }
  if (k > n) return 0;
  std::uint64_t N = static_cast<std::uint64_t>(n), K = static_cast<std::uint64_t>(k);
  std::uint64_t r = 1;
  while (K) {
    std::uint64_t nd = N % p, kd = K % p;
    if (kd > nd) return 0;
    r = r * digit_binom(nd, kd, p) % p;
    N /= p;
    K /= p;
  }
  return static_cast<std::uint32_t>(r);
}

void BivarPoly::set(std::uint32_t i, std::uint32_t j, gf::FieldElement v) {
  Key key{i, j};
  if (v.is_zero()) {
    t_.erase(key);
  } else {
    if (v.field() != f_) throw std::invalid_argument("BivarPoly: coefficient from wrong field");
    t_[key] = std::move(v);
  }
}

void BivarPoly::add_term(std::uint32_t i, std::uint32_t j, const gf::FieldElement& v) {
  if (v.is_zero()) return;
  if (v.field() != f_) throw std::invalid_argument("BivarPoly: coefficient from wrong field");
  Key key{i, j};
  auto it = t_.find(key);
  if (it == t_.end()) {
    t_.emplace(key, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) t_.erase(it);
  }
}

std::uint32_t BivarPoly::deg_x() const {
  std::uint32_t d = 0;
  for (const auto& [key, c] : t_) d = std::max(d, key.first);
  return d;
}

std::uint32_t BivarPoly::deg_y() const {
  std::uint32_t d = 0;
  for (const auto& [key, c] : t_) d = std::max(d, key.second);
  return d;
}

std::int64_t BivarPoly::total_degree() const {
  std::int64_t d = -1;
  for (const auto& [key, c] : t_) d = std::max<std::int64_t>(d, key.first + key.second);
  return d;
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
  BivarPoly out = *this;
  for (const auto& [key, c] : o.t_) out.add_term(key.first, key.second, c);
  return out;
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const {
  BivarPoly out = *this;
  for (const auto& [key, c] : o.t_) out.add_term(key.first, key.second, -c);
  return out;
}

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
  BivarPoly out(f_);
  for (const auto& [ka, a] : t_) {
    for (const auto& [kb, b] : o.t_) {
      out.add_term(ka.first + kb.first, ka.second + kb.second, a * b);
    }
  }
  return out;
}

BivarPoly BivarPoly::dx() const {
  BivarPoly out(f_);
  for (const auto& [key, c] : t_) {
    if (key.first == 0) continue;
    out.add_term(key.first - 1, key.second, mul_small(c, key.first % f_->p));
  }
  return out;
}

BivarPoly BivarPoly::dy() const {
  BivarPoly out(f_);
  for (const auto& [key, c] : t_) {
    if (key.second == 0) continue;
    out.add_term(key.first, key.second - 1, mul_small(c, key.second % f_->p));
  }
  return out;
}

BivarPoly BivarPoly::hasse_dx(std::uint32_t j) const {
  BivarPoly out(f_);
  for (const auto& [key, c] : t_) {
    if (key.first < j) continue;
    out.add_term(key.first - j, key.second, mul_small(c, binom_mod_p(key.first, j, f_->p)));
  }
  return out;
}

BivarPoly BivarPoly::hasse_dy(std::uint32_t j) const {
  BivarPoly out(f_);
  for (const auto& [key, c] : t_) {
    if (key.second < j) continue;
    out.add_term(key.first, key.second - j, mul_small(c, binom_mod_p(key.second, j, f_->p)));
  }
  return out;
}

gf::FieldElement BivarPoly::eval(const gf::FieldElement& x, const gf::FieldElement& y) const {
  if (x.field() != f_ || y.field() != f_) {
    throw std::invalid_argument("BivarPoly::eval: point from wrong field (embed the polynomial first)");
  }
  std::vector<gf::FieldElement> xp{gf::one(f_)}, yp{gf::one(f_)};
  std::uint32_t dx_max = deg_x(), dy_max = deg_y();
  xp.reserve(dx_max + 1);
  yp.reserve(dy_max + 1);
  for (std::uint32_t i = 1; i <= dx_max; ++i) xp.push_back(xp.back() * x);
  for (std::uint32_t j = 1; j <= dy_max; ++j) yp.push_back(yp.back() * y);
  gf::FieldElement acc = gf::zero(f_);
  for (const auto& [key, c] : t_) acc += c * xp[key.first] * yp[key.second];
  return acc;
}

BivarPoly BivarPoly::embedded_into(gf::Field tgt) const {
  BivarPoly out(tgt);
  for (const auto& [key, c] : t_) out.set(key.first, key.second, gf::embed(c, tgt));
  return out;
}

FPoly BivarPoly::coeff_of_y(std::uint32_t j) const {
  FPoly out(gf::zero(f_));
  for (const auto& [key, c] : t_) {
    if (key.second == j) out.set_coeff(key.first, c);
  }
  return out;
}

std::string BivarPoly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << gf::element_index(c);
    if (key.first) os << "*x^" << key.first;
    if (key.second) os << "*y^" << key.second;
  }
  return os.str();
}

}  // namespace maxcurve::algebra
