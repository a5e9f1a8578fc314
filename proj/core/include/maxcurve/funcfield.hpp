#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "maxcurve/algebra.hpp"
#include "maxcurve/gf.hpp"

namespace maxcurve::funcfield {

// ---------------------------------------------------------------------------
// Zech-logarithm tables for one small field. Symbolic work over F(x) spends
// nearly all of its time in coefficient arithmetic, where gf::FieldElement
// is too heavy (every product touches a heap-allocated digit vector). Here a
// nonzero element g^e is encoded as the integer e + 1, zero as 0;
// multiplication is exponent addition and addition is one table lookup.

class SmallField {
 public:
  static constexpr std::uint64_t kMaxSize = 1u << 16;

  gf::Field field() const { return f_; }
  std::uint64_t size() const { return f_->size; }
  std::uint32_t p() const { return f_->p; }
  std::uint64_t group_order() const { return n_; }

  std::uint32_t from_gf(const gf::FieldElement& a) const;
  gf::FieldElement to_gf(std::uint32_t r) const;
  std::uint32_t from_int(std::int64_t n) const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint64_t ea = a - 1, eb = b - 1;
    std::uint64_t d = eb + n_ - ea;
    if (d >= n_) d -= n_;
    std::uint32_t z = zech_[d];
    if (z == n_) return 0;
    std::uint64_t e = ea + z;
    if (e >= n_) e -= n_;
    return static_cast<std::uint32_t>(e) + 1;
  }
  std::uint32_t neg(std::uint32_t a) const {
    if (a == 0 || half_ == 0) return a;
    std::uint64_t e = a - 1 + half_;
    if (e >= n_) e -= n_;
    return static_cast<std::uint32_t>(e) + 1;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint64_t e = static_cast<std::uint64_t>(a - 1) + (b - 1);
    if (e >= n_) e -= n_;
    return static_cast<std::uint32_t>(e) + 1;
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

 private:
  friend const SmallField* tables(gf::Field f);
  explicit SmallField(gf::Field f);

  gf::Field f_ = nullptr;
  std::uint64_t n_ = 0;                   // multiplicative group order
  std::uint64_t half_ = 0;                // log of -1, 0 in characteristic 2
  std::vector<std::uint32_t> zech_;       // zech_[k]: 1 + g^k = g^{zech_[k]}, n_ when zero
  std::vector<std::uint32_t> from_idx_;   // element index -> representation
  std::vector<std::uint64_t> to_idx_;     // representation -> element index
};

// interned per field; throws std::domain_error past kMaxSize
const SmallField* tables(gf::Field f);

// Value-type element over SmallField tables. Satisfies the field-like
// concept the algebra templates expect.
class SF {
 public:
  SF() = default;
  SF(const SmallField* t, std::uint32_t rep) : t_(t), r_(rep) {}

  const SmallField* tab() const { return t_; }
  std::uint32_t rep() const { return r_; }
  gf::FieldElement to_gf() const { return t_->to_gf(r_); }

  bool is_zero() const { return r_ == 0; }
  SF zero_like() const { return SF(t_, 0); }
  SF one_like() const { return SF(t_, 1); }
  SF inverse() const { return SF(t_, t_->inv(r_)); }
  SF operator-() const { return SF(t_, t_->neg(r_)); }
  SF& operator+=(const SF& o) {
    if (t_ == nullptr) t_ = o.t_;
    r_ = t_->add(r_, o.r_);
    return *this;
  }
  SF& operator-=(const SF& o) {
    if (t_ == nullptr) t_ = o.t_;
    r_ = t_->sub(r_, o.r_);
    return *this;
  }
  SF& operator*=(const SF& o) {
    if (t_ == nullptr) t_ = o.t_;
    r_ = t_->mul(r_, o.r_);
    return *this;
  }
  friend SF operator+(SF a, const SF& b) { return a += b; }
  friend SF operator-(SF a, const SF& b) { return a -= b; }
  friend SF operator*(SF a, const SF& b) { return a *= b; }
  friend bool operator==(const SF& a, const SF& b) { return a.r_ == b.r_; }
  friend bool operator!=(const SF& a, const SF& b) { return a.r_ != b.r_; }

 private:
  const SmallField* t_ = nullptr;
  std::uint32_t r_ = 0;
};

inline SF lift_sf(const SmallField* t, const gf::FieldElement& a) { return SF(t, t->from_gf(a)); }

using SPoly = algebra::Poly<SF>;

SPoly spoly_from(const SmallField* t, const algebra::FPoly& f);

// ---------------------------------------------------------------------------
// Reduced fraction over F[x]: the denominator is monic and coprime to the
// numerator, zero is 0/1. Equality is therefore structural.

class RatFun {
 public:
  RatFun(SPoly num, SPoly den);

  static RatFun zero(const SmallField* t) { return constant(SF(t, 0)); }
  static RatFun constant(SF c);
  static RatFun variable(const SmallField* t);  // x
  static RatFun from_poly(SPoly p);

  const SPoly& num() const { return n_; }
  const SPoly& den() const { return d_; }
  const SmallField* tab() const { return t_; }
  bool is_zero() const { return n_.is_zero(); }
  bool is_polynomial() const { return d_.degree() == 0; }

  RatFun zero_like() const { return zero(t_); }
  RatFun one_like() const { return constant(SF(t_, 1)); }
  RatFun inverse() const;
  RatFun operator-() const;
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend bool operator==(const RatFun& a, const RatFun& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  // throws std::domain_error when x0 is a pole
  SF eval(const SF& x0) const;

 private:
  void normalize();
  const SmallField* t_ = nullptr;
  SPoly n_, d_;
};

// ---------------------------------------------------------------------------
// F(x)[y] / (m(y)) for a plane model whose leading y-coefficient is a
// nonzero constant; the modulus is stored monic. Inverses exist for every
// nonzero element exactly when the model is irreducible, which is not
// checked up front: a zero divisor surfaces as a runtime_error from
// FFElem::inverse.

struct FunctionField {
  gf::Field base = nullptr;
  const SmallField* tab = nullptr;
  algebra::Poly<RatFun> modulus;
  std::uint32_t deg = 0;

  FunctionField(gf::Field b, const SmallField* t, algebra::Poly<RatFun> m)
      : base(b), tab(t), modulus(std::move(m)), deg(static_cast<std::uint32_t>(modulus.degree())) {}
};

using FF = std::shared_ptr<const FunctionField>;

FF make_function_field(const algebra::BivarPoly& eq);

class FFElem {
 public:
  FFElem(FF K, algebra::Poly<RatFun> v);

  static FFElem zero(const FF& K);
  static FFElem one(const FF& K);
  static FFElem constant(const FF& K, const gf::FieldElement& c);
  static FFElem from_ratfun(const FF& K, RatFun r);
  static FFElem x_gen(const FF& K);
  static FFElem y_gen(const FF& K);
  static FFElem from_bivar(const FF& K, const algebra::BivarPoly& f);

  const FF& context() const { return K_; }
  const algebra::Poly<RatFun>& rep() const { return v_; }

  bool is_zero() const { return v_.is_zero(); }
  FFElem zero_like() const { return zero(K_); }
  FFElem one_like() const { return one(K_); }
  FFElem inverse() const;
  FFElem operator-() const { return FFElem(K_, -v_); }
  FFElem& operator+=(const FFElem& o);
  FFElem& operator-=(const FFElem& o);
  FFElem& operator*=(const FFElem& o);
  friend FFElem operator+(FFElem a, const FFElem& b) { return a += b; }
  friend FFElem operator-(FFElem a, const FFElem& b) { return a -= b; }
  friend FFElem operator*(FFElem a, const FFElem& b) { return a *= b; }
  friend bool operator==(const FFElem& a, const FFElem& b) { return a.v_ == b.v_; }
  friend bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }

  FFElem pow(std::uint64_t e) const;

 private:
  FF K_;
  algebra::Poly<RatFun> v_;
};

}  // namespace maxcurve::funcfield
