#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxcurve/gf.hpp"

namespace maxcurve::algebra {

// Binomial coefficient mod p, defined for any integer upper argument via
// C(n, k) = n(n-1)...(n-k+1)/k!, so negative n reflects:
// C(n, k) = (-1)^k C(k-n-1, k). Nonnegative n uses Lucas' rule.
std::uint32_t binom_mod_p(std::int64_t n, std::int64_t k, std::uint32_t p);

// The element types these templates accept are field-like values that carry
// their own context: they provide +, -, *, unary -, ==, is_zero(),
// zero_like(), one_like(), inverse(). gf::FieldElement is the model.

// ---------------------------------------------------------------------------
// Dense univariate polynomial over a field-like E.

template <class E>
class Poly {
 public:
  explicit Poly(E zero) : zero_(std::move(zero)) {}
  Poly(E zero, std::vector<E> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(E v) {
    Poly p(v.zero_like());
    if (!v.is_zero()) p.c_.push_back(std::move(v));
    return p;
  }

  const E& zero_elem() const { return zero_; }
  bool is_zero() const { return c_.empty(); }
  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  const std::vector<E>& coeffs() const { return c_; }
  const E& coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
  const E& lead() const {
    if (c_.empty()) throw std::invalid_argument("lead of zero polynomial");
    return c_.back();
  }
  void set_coeff(std::size_t i, E v) {
    if (i >= c_.size()) {
      if (v.is_zero()) return;
      c_.resize(i + 1, zero_);
    }
    c_[i] = std::move(v);
    trim();
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly out(zero_);
    out.c_.reserve(c_.size());
    for (const auto& c : c_) out.c_.push_back(-c);
    return out;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out(a.zero_);
    if (a.is_zero() || b.is_zero()) return out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    out.trim();
    return out;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const E& s) const {
    Poly out(zero_);
    out.c_.reserve(c_.size());
    for (const auto& c : c_) out.c_.push_back(c * s);
    out.trim();
    return out;
  }
  // multiply by x^n
  Poly shifted(std::size_t n) const {
    if (is_zero()) return *this;
    Poly out(zero_);
    out.c_.assign(n, zero_);
    out.c_.insert(out.c_.end(), c_.begin(), c_.end());
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // quotient and remainder; the divisor's leading coefficient must be a unit
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    Poly q(zero_), r = *this;
    E li = d.lead().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
      E c = r.lead() * li;
      q.set_coeff(shift, c);
      for (std::size_t i = 0; i < d.c_.size(); ++i) r.c_[i + shift] -= c * d.c_[i];
      r.trim();
    }
    return {std::move(q), std::move(r)};
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(lead().inverse());
  }

  E eval(const E& x) const {
    E acc = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    Poly out(zero_);
    for (std::size_t i = 1; i < c_.size(); ++i) {
      E term = zero_;
      for (std::size_t rep = 0; rep < i; ++rep) term += c_[i];  // i * c_i in char p
      out.set_coeff(i - 1, std::move(term));
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  E zero_;
  std::vector<E> c_;
};

template <class E>
Poly<E> poly_gcd(Poly<E> a, Poly<E> b) {
  while (!b.is_zero()) {
    auto [q, r] = a.divmod(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// g = u*a + v*b with g monic (or zero when both inputs are zero)
template <class E>
struct PolyExtGcd {
  Poly<E> g, u, v;
};

template <class E>
PolyExtGcd<E> poly_ext_gcd(const Poly<E>& a, const Poly<E>& b) {
  Poly<E> r0 = a, r1 = b;
  Poly<E> s0 = Poly<E>::constant(a.zero_elem().one_like()), s1(a.zero_elem());
  Poly<E> t0(a.zero_elem()), t1 = Poly<E>::constant(a.zero_elem().one_like());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    Poly<E> s2 = s0 - q * s1;
    Poly<E> t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  E li = r0.lead().inverse();
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

using FPoly = Poly<gf::FieldElement>;

// ---------------------------------------------------------------------------
// Truncated Laurent series over a field-like E.
//
// A series knows the coefficients of t^e for e < prec(); exponents below
// val() and beyond the stored window are known zeros, exponents >= prec()
// are unknown. Exact values (constants, polynomials) carry prec() ==
// kExactPrec, which behaves as infinity for every exponent range in use.

inline constexpr std::int64_t kExactPrec = std::int64_t(1) << 60;

template <class E>
class Series {
 public:
  Series(E zero, std::int64_t val, std::vector<E> coeffs, std::int64_t prec)
      : zero_(std::move(zero)), val_(val), prec_(std::min(prec, kExactPrec)), c_(std::move(coeffs)) {
    normalize();
  }

  static Series exact_const(E v) {
    E z = v.zero_like();
    std::vector<E> c;
    c.push_back(std::move(v));
    return Series(std::move(z), 0, std::move(c), kExactPrec);
  }
  static Series exact_monomial(E v, std::int64_t e) {
    E z = v.zero_like();
    std::vector<E> c;
    c.push_back(std::move(v));
    return Series(std::move(z), e, std::move(c), kExactPrec);
  }
  static Series zero_mod(E zero, std::int64_t prec) { return Series(std::move(zero), prec, {}, prec); }

  const E& zero_elem() const { return zero_; }
  std::int64_t val() const { return val_; }
  std::int64_t prec() const { return prec_; }

  // smallest exponent with a nonzero known coefficient; prec() when the
  // series is zero as far as it is known
  std::int64_t valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return val_ + static_cast<std::int64_t>(i);
    return prec_;
  }
  bool is_zero_within_prec() const { return valuation() == prec_; }

  const E& coeff_at(std::int64_t e) const {
    if (e >= prec_) throw std::invalid_argument("series coefficient beyond precision");
    if (e < val_) return zero_;
    std::size_t i = static_cast<std::size_t>(e - val_);
    return i < c_.size() ? c_[i] : zero_;
  }

  // one past the last stored coefficient; everything in [stored_end, prec)
  // is a known zero
  std::int64_t stored_end() const { return val_ + static_cast<std::int64_t>(c_.size()); }

  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  friend Series operator+(const Series& a, const Series& b) { return combine(a, b, false); }
  friend Series operator-(const Series& a, const Series& b) { return combine(a, b, true); }
  Series operator-() const {
    Series out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
  }

  friend Series operator*(const Series& a, const Series& b) {
    std::int64_t prec = std::min(a.prec_ == kExactPrec ? kExactPrec : a.prec_ + b.val_,
                                 b.prec_ == kExactPrec ? kExactPrec : b.prec_ + a.val_);
    std::int64_t val = a.val_ + b.val_;
    if (a.c_.empty() || b.c_.empty()) return Series(a.zero_, val, {}, prec);
    std::vector<E> c(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Series(a.zero_, val, std::move(c), prec);
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  Series scaled(const E& s) const {
    Series out = *this;
    for (auto& c : out.c_) c = c * s;
    return out;
  }

  // multiply by t^k
  Series shifted(std::int64_t k) const {
    Series out = *this;
    out.val_ += k;
    if (out.prec_ != kExactPrec) out.prec_ += k;
    return out;
  }

  Series truncated(std::int64_t new_prec) const {
    if (new_prec >= prec_) return *this;
    Series out = *this;
    out.prec_ = new_prec;
    if (out.val_ >= new_prec) {
      out.val_ = new_prec;
      out.c_.clear();
    } else if (static_cast<std::int64_t>(out.c_.size()) > new_prec - out.val_) {
      out.c_.resize(static_cast<std::size_t>(new_prec - out.val_), zero_);
    }
    out.normalize();
    return out;
  }

  // multiplicative inverse; requires a nonzero known coefficient
  Series inverse() const {
    std::int64_t v = valuation();
    if (v == prec_) throw std::runtime_error("inverse of a series that is zero within precision");
    std::int64_t m = prec_ == kExactPrec ? kExactPrec : prec_ - v;  // relative precision
    if (m == kExactPrec) {
      // exact input: the inverse is exact only for monomials; otherwise the
      // caller must truncate first
      if (only_term_at(v)) {
        E u = coeff_at(v).inverse();
        return exact_monomial(std::move(u), -v);
      }
      throw std::runtime_error("inverse of an exact non-monomial series is not finite; truncate first");
    }
    std::size_t n = static_cast<std::size_t>(m);
    std::vector<E> u(n, zero_);
    for (std::size_t i = 0; i < n; ++i) u[i] = coeff_at(v + static_cast<std::int64_t>(i));
    std::vector<E> w(n, zero_);
    E u0i = u[0].inverse();
    w[0] = u0i;
    for (std::size_t k = 1; k < n; ++k) {
      E acc = zero_;
      for (std::size_t i = 1; i <= k; ++i) acc += u[i] * w[k - i];
      w[k] = -(u0i * acc);
    }
    return Series(zero_, -v, std::move(w), -v + m);
  }

  friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

  Series pow(std::uint64_t n) const {
    if (n == 0) return exact_const(zero_.one_like());
    Series acc = *this;
    for (std::uint64_t i = 1; i < n; ++i) acc *= *this;
    return acc;
  }

  friend bool operator==(const Series& a, const Series& b) {
    std::int64_t hi = std::min(a.prec_, b.prec_);
    std::int64_t lo = std::min(a.val_, b.val_);
    for (std::int64_t e = lo; e < hi; ++e)
      if (!(a.coeff_at(e) == b.coeff_at(e))) return false;
    return true;
  }

 private:
  bool only_term_at(std::int64_t v) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero() && val_ + static_cast<std::int64_t>(i) != v) return false;
    return true;
  }

  static Series combine(const Series& a, const Series& b, bool sub) {
    std::int64_t prec = std::min(a.prec_, b.prec_);
    std::int64_t val = std::min(a.val_, b.val_);
    if (val > prec) val = prec;
    // only stored coefficients can be nonzero, so the window ends with them
    std::int64_t hi = val;
    if (!a.c_.empty()) hi = std::max(hi, a.stored_end());
    if (!b.c_.empty()) hi = std::max(hi, b.stored_end());
    hi = std::min(hi, prec);
    std::vector<E> c(static_cast<std::size_t>(hi - val), a.zero_);
    for (std::int64_t e = val; e < hi; ++e) {
      const E& x = a.coeff_at(e);
      const E& y = b.coeff_at(e);
      c[static_cast<std::size_t>(e - val)] = sub ? x - y : x + y;
    }
    return Series(a.zero_, val, std::move(c), prec);
  }

  void normalize() {
    if (val_ > prec_) val_ = prec_;
    if (static_cast<std::int64_t>(c_.size()) > prec_ - val_ && prec_ != kExactPrec) {
      c_.resize(static_cast<std::size_t>(prec_ - val_), zero_);
    }
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      val_ += static_cast<std::int64_t>(lead);
    }
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (val_ > prec_) val_ = prec_;
  }

  E zero_;
  std::int64_t val_ = 0;
  std::int64_t prec_ = 0;
  std::vector<E> c_;
};

// a times a small nonnegative integer, by double-and-add
template <class E>
E mul_small(const E& a, std::uint32_t n) {
  E acc = a.zero_like();
  E base = a;
  while (n) {
    if (n & 1) acc += base;
    n >>= 1;
    if (n) base += base;
  }
  return acc;
}

// j-th Hasse derivative: t^e picks up the factor C(e, j). Dividing by j!
// is built into the binomial, so this stays meaningful in characteristic p.
template <class E>
Series<E> hasse_derivative(const Series<E>& s, std::int64_t j, std::uint32_t p) {
  if (j < 0) throw std::invalid_argument("negative Hasse derivative order");
  if (j == 0) return s;
  std::vector<E> c;
  for (std::int64_t e = s.val(); e < s.stored_end(); ++e) {
    c.push_back(mul_small(s.coeff_at(e), binom_mod_p(e, j, p)));
  }
  std::int64_t prec = s.prec() == kExactPrec ? kExactPrec : s.prec() - j;
  return Series<E>(s.zero_elem(), s.val() - j, std::move(c), prec);
}

// polynomial counterpart: x^e picks up C(e, j) and drops to x^{e-j};
// composition satisfies D^i D^j = C(i+j, i) D^{i+j}
template <class E>
Poly<E> hasse_derivative(const Poly<E>& f, std::uint64_t j, std::uint32_t p) {
  Poly<E> out(f.zero_elem());
  for (std::int64_t e = static_cast<std::int64_t>(j); e <= f.degree(); ++e) {
    out.set_coeff(static_cast<std::size_t>(e - static_cast<std::int64_t>(j)),
                  mul_small(f.coeff(static_cast<std::size_t>(e)),
                            binom_mod_p(e, static_cast<std::int64_t>(j), p)));
  }
  return out;
}

// remainder of f modulo m
template <class E>
Poly<E> poly_mod_reduce(const Poly<E>& f, const Poly<E>& m) {
  return f.divmod(m).second;
}

// ---------------------------------------------------------------------------
// Column-ordered Gaussian elimination over series rows.
//
// Sweeping exponents from low to high, a column is a pivot when it increases
// the rank of the coefficient matrix restricted to the columns seen so far.
// The pivot exponents are exactly the orders sought by the callers. When
// precision runs out before every row has found its pivot the result is
// flagged deficient and the caller re-expands with more terms.

struct PivotResult {
  std::vector<std::int64_t> orders;
  bool deficient = false;
};

template <class E>
PivotResult pivot_orders(const std::vector<Series<E>>& rows) {
  PivotResult out;
  if (rows.empty()) return out;
  std::int64_t lo = rows[0].val(), hi = rows[0].prec();
  for (const auto& r : rows) {
    lo = std::min(lo, r.val());
    hi = std::min(hi, r.prec());
  }
  if (hi <= lo) {
    out.deficient = true;
    return out;
  }
  const std::size_t n = rows.size();
  const std::size_t w = static_cast<std::size_t>(hi - lo);
  std::vector<std::vector<E>> m;
  m.reserve(n);
  for (const auto& r : rows) {
    std::vector<E> row;
    row.reserve(w);
    for (std::int64_t e = lo; e < hi; ++e) row.push_back(r.coeff_at(e));
    m.push_back(std::move(row));
  }
  std::vector<bool> used(n, false);
  std::size_t found = 0;
  for (std::size_t col = 0; col < w && found < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = 0; r < n; ++r) {
      if (!used[r] && !m[r][col].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv == n) continue;
    used[piv] = true;
    ++found;
    out.orders.push_back(lo + static_cast<std::int64_t>(col));
    E pi = m[piv][col].inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (used[r] || m[r][col].is_zero()) continue;
      E f = m[r][col] * pi;
      for (std::size_t c = col; c < w; ++c) m[r][c] -= f * m[piv][c];
    }
  }
  out.deficient = found < n;
  return out;
}

// Determinant of a square matrix of series by elimination on the entry of
// minimal valuation. Deficient when some elimination step cannot find a
// nonzero pivot within precision.
template <class E>
struct SeriesDet {
  Series<E> det;
  bool deficient = false;
};

template <class E>
SeriesDet<E> series_det(std::vector<std::vector<Series<E>>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("series_det: matrix not square");
  if (n == 0) throw std::invalid_argument("series_det: empty matrix");
  E zero = m[0][0].zero_elem();
  Series<E> det = Series<E>::exact_const(zero.one_like());
  bool flip = false;
  std::vector<std::size_t> rows(n), cols(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = cols[i] = i;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t bi = n, bj = n;
    std::int64_t best = 0;
    bool any = false;
    for (std::size_t i = step; i < n; ++i) {
      for (std::size_t j = step; j < n; ++j) {
        const auto& s = m[rows[i]][cols[j]];
        std::int64_t v = s.valuation();
        if (v < s.prec() && (!any || v < best)) {
          any = true;
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (!any) return {Series<E>::zero_mod(zero, 0), true};
    if (bi != step) {
      std::swap(rows[bi], rows[step]);
      flip = !flip;
    }
    if (bj != step) {
      std::swap(cols[bj], cols[step]);
      flip = !flip;
    }
    const Series<E>& pivot = m[rows[step]][cols[step]];
    det *= pivot;
    if (step + 1 == n) break;
    Series<E> pinv = pivot.inverse();
    for (std::size_t i = step + 1; i < n; ++i) {
      Series<E>& entry = m[rows[i]][cols[step]];
      if (entry.is_zero_within_prec()) continue;
      Series<E> f = entry * pinv;
      for (std::size_t j = step + 1; j < n; ++j) {
        m[rows[i]][cols[j]] -= f * m[rows[step]][cols[j]];
      }
      entry = Series<E>::zero_mod(zero, entry.prec());
    }
  }
  if (flip) det = -det;
  return {std::move(det), false};
}

// Right nullspace basis of an m x n matrix over a field-like E. Basis
// vectors correspond to the free columns, in ascending column order.
template <class E>
std::vector<std::vector<E>> nullspace(std::vector<std::vector<E>> m, const E& zero) {
  const std::size_t rows = m.size();
  if (rows == 0) throw std::invalid_argument("nullspace: empty matrix");
  const std::size_t cols = m[0].size();
  for (const auto& r : m)
    if (r.size() != cols) throw std::invalid_argument("nullspace: ragged matrix");
  std::vector<std::int64_t> pivot_of_col(cols, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    E pi = m[rank][col].inverse();
    for (std::size_t c = col; c < cols; ++c) m[rank][c] = m[rank][c] * pi;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      E f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    pivot_of_col[col] = static_cast<std::int64_t>(rank);
    ++rank;
  }
  std::vector<std::vector<E>> basis;
  for (std::size_t col = 0; col < cols; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    std::vector<E> v(cols, zero);
    v[col] = zero.one_like();
    for (std::size_t c = 0; c < cols; ++c) {
      if (pivot_of_col[c] >= 0) v[c] = -m[static_cast<std::size_t>(pivot_of_col[c])][col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Sparse bivariate polynomial over an explicit finite field.

class BivarPoly {
 public:
  using Key = std::pair<std::uint32_t, std::uint32_t>;  // exponents of (x, y)

  explicit BivarPoly(gf::Field f) : f_(f) {}

  gf::Field field() const { return f_; }
  const std::map<Key, gf::FieldElement>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void set(std::uint32_t i, std::uint32_t j, gf::FieldElement v);
  void add_term(std::uint32_t i, std::uint32_t j, const gf::FieldElement& v);

  std::uint32_t deg_x() const;
  std::uint32_t deg_y() const;
  std::int64_t total_degree() const;  // -1 for the zero polynomial

  BivarPoly operator+(const BivarPoly& o) const;
  BivarPoly operator-(const BivarPoly& o) const;
  BivarPoly operator*(const BivarPoly& o) const;

  BivarPoly dx() const;
  BivarPoly dy() const;

  gf::FieldElement eval(const gf::FieldElement& x, const gf::FieldElement& y) const;

  // same polynomial with coefficients pushed through the canonical embedding
  BivarPoly embedded_into(gf::Field tgt) const;

  // coefficient of y^j as a polynomial in x
  FPoly coeff_of_y(std::uint32_t j) const;

  // divided-power derivatives, exponent-indexed like the univariate version
  BivarPoly hasse_dx(std::uint32_t j) const;
  BivarPoly hasse_dy(std::uint32_t j) const;

  std::string to_string() const;

 private:
  gf::Field f_;
  std::map<Key, gf::FieldElement> t_;
};

// F(X(t), Y(t)) where the scalars of the series are produced from the
// coefficients of F by `lift` (typically an embedding into a bigger field or
// the constant injection into a function field).
template <class E, class Lift>
Series<E> eval_series(const BivarPoly& F, const Series<E>& X, const Series<E>& Y, Lift&& lift) {
  E zero = X.zero_elem();
  // Horner in y, then in x, walking the sparse terms grouped by y-degree.
  std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, gf::FieldElement>>> by_y;
  for (const auto& [key, c] : F.terms()) by_y[key.second].emplace_back(key.first, c);
  Series<E> acc = Series<E>::zero_mod(zero, kExactPrec);
  std::uint32_t prev_j = 0;
  bool first = true;
  // iterate y-degrees downward
  for (auto it = by_y.rbegin(); it != by_y.rend(); ++it) {
    std::uint32_t j = it->first;
    if (!first) {
      for (std::uint32_t step = prev_j; step > j; --step) acc *= Y;
    }
    first = false;
    prev_j = j;
    // Horner in x over the sparse x-exponents, descending
    Series<E> cx = Series<E>::zero_mod(zero, kExactPrec);
    std::uint32_t prev_i = 0;
    bool xfirst = true;
    for (auto xt = it->second.rbegin(); xt != it->second.rend(); ++xt) {
      if (!xfirst) {
        for (std::uint32_t step = prev_i; step > xt->first; --step) cx *= X;
      }
      xfirst = false;
      prev_i = xt->first;
      cx += Series<E>::exact_const(lift(xt->second));
    }
    if (!xfirst) {
      for (std::uint32_t step = prev_i; step > 0; --step) cx *= X;
    }
    acc += cx;
  }
  if (!first) {
    for (std::uint32_t step = prev_j; step > 0; --step) acc *= Y;
  }
  return acc;
}

}  // namespace maxcurve::algebra
