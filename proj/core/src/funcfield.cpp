#include "maxcurve/funcfield.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace maxcurve::funcfield {

SmallField::SmallField(gf::Field f) : f_(f) {
  n_ = f->size - 1;
  from_idx_.assign(f->size, 0);
  to_idx_.assign(n_ + 1, 0);
  zech_.assign(n_, 0);
  gf::FieldElement g = gf::primitive_element(f);
  gf::FieldElement acc = gf::one(f);
  for (std::uint64_t e = 0; e < n_; ++e) {
    std::uint64_t idx = gf::element_index(acc);
    from_idx_[idx] = static_cast<std::uint32_t>(e) + 1;
    to_idx_[e + 1] = idx;
    acc *= g;
  }
  const gf::FieldElement one = gf::one(f);
  acc = one;
  for (std::uint64_t k = 0; k < n_; ++k) {
    std::uint32_t r = from_idx_[gf::element_index(one + acc)];
    zech_[k] = r == 0 ? static_cast<std::uint32_t>(n_) : r - 1;
    acc *= g;
  }
  half_ = f->p == 2 ? 0 : n_ / 2;
}

std::uint32_t SmallField::from_gf(const gf::FieldElement& a) const {
  if (a.field() != f_) throw std::invalid_argument("SmallField: element from another field");
  return from_idx_[gf::element_index(a)];
}

gf::FieldElement SmallField::to_gf(std::uint32_t r) const {
  return gf::element_from_index(f_, to_idx_[r]);
}

std::uint32_t SmallField::from_int(std::int64_t n) const {
  std::int64_t m = n % static_cast<std::int64_t>(f_->p);
  if (m < 0) m += f_->p;
  return from_idx_[static_cast<std::uint64_t>(m)];
}

std::uint32_t SmallField::inv(std::uint32_t a) const {
  if (a == 0) throw std::invalid_argument("inverse of zero");
  std::uint64_t e = a - 1;
  return static_cast<std::uint32_t>(e == 0 ? 0 : n_ - e) + 1;
}

std::uint32_t SmallField::pow(std::uint32_t a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a - 1) * (e % n_)) % n_) + 1;
}

const SmallField* tables(gf::Field f) {
  if (f == nullptr) throw std::invalid_argument("tables: null field");
  if (f->size > SmallField::kMaxSize)
    throw std::domain_error("Zech tables are limited to fields of size 2^16");
  static std::mutex mu;
  static std::map<gf::Field, std::unique_ptr<SmallField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(f);
  if (it == cache.end()) {
    it = cache.emplace(f, std::unique_ptr<SmallField>(new SmallField(f))).first;
  }
  return it->second.get();
}

SPoly spoly_from(const SmallField* t, const algebra::FPoly& f) {
  std::vector<SF> c;
  c.reserve(f.coeffs().size());
  for (const auto& e : f.coeffs()) c.push_back(lift_sf(t, e));
  return SPoly(SF(t, 0), std::move(c));
}

// ---------------------------------------------------------------------------

RatFun::RatFun(SPoly num, SPoly den) : t_(num.zero_elem().tab()), n_(std::move(num)), d_(std::move(den)) {
  normalize();
}

RatFun RatFun::constant(SF c) {
  const SmallField* t = c.tab();
  return RatFun(SPoly::constant(c), SPoly::constant(SF(t, 1)));
}

RatFun RatFun::variable(const SmallField* t) {
  SPoly x(SF(t, 0), {SF(t, 0), SF(t, 1)});
  return RatFun(std::move(x), SPoly::constant(SF(t, 1)));
}

RatFun RatFun::from_poly(SPoly p) {
  const SmallField* t = p.zero_elem().tab();
  return RatFun(std::move(p), SPoly::constant(SF(t, 1)));
}

void RatFun::normalize() {
  if (d_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
  if (n_.is_zero()) {
    d_ = SPoly::constant(SF(t_, 1));
    return;
  }
  SPoly g = algebra::poly_gcd(n_, d_);
  if (g.degree() > 0) {
    n_ = n_.divmod(g).first;
    d_ = d_.divmod(g).first;
  }
  SF li = d_.lead().inverse();
  if (!(li == SF(t_, 1))) {
    n_ = n_.scaled(li);
    d_ = d_.scaled(li);
  }
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw std::invalid_argument("inverse of zero rational function");
  return RatFun(d_, n_);
}

RatFun RatFun::operator-() const {
  RatFun out = *this;
  out.n_ = -out.n_;
  return out;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.d_ == b.d_) return RatFun(a.n_ + b.n_, a.d_);
  return RatFun(a.n_ * b.d_ + b.n_ * a.d_, a.d_ * b.d_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return a.zero_like();
  // cross-reduce first so the product is already in lowest terms
  SPoly g1 = algebra::poly_gcd(a.n_, b.d_);
  SPoly g2 = algebra::poly_gcd(b.n_, a.d_);
  SPoly n1 = g1.degree() > 0 ? a.n_.divmod(g1).first : a.n_;
  SPoly d2 = g1.degree() > 0 ? b.d_.divmod(g1).first : b.d_;
  SPoly n2 = g2.degree() > 0 ? b.n_.divmod(g2).first : b.n_;
  SPoly d1 = g2.degree() > 0 ? a.d_.divmod(g2).first : a.d_;
  return RatFun(n1 * n2, d1 * d2);
}

SF RatFun::eval(const SF& x0) const {
  SF dv = d_.eval(x0);
  if (dv.is_zero()) throw std::domain_error("rational function evaluated at a pole");
  return n_.eval(x0) * dv.inverse();
}

// ---------------------------------------------------------------------------

FF make_function_field(const algebra::BivarPoly& eq) {
  gf::Field base = eq.field();
  const SmallField* t = tables(base);
  std::uint32_t n = eq.deg_y();
  if (n == 0) throw std::invalid_argument("function field: equation has no y term");
  algebra::FPoly lead = eq.coeff_of_y(n);
  if (lead.degree() != 0)
    throw std::invalid_argument("function field: leading y-coefficient is not constant");
  gf::FieldElement li = lead.coeff(0).inverse();
  std::vector<RatFun> coeffs;
  coeffs.reserve(n + 1);
  for (std::uint32_t j = 0; j <= n; ++j) {
    coeffs.push_back(RatFun::from_poly(spoly_from(t, eq.coeff_of_y(j).scaled(li))));
  }
  algebra::Poly<RatFun> m(RatFun::zero(t), std::move(coeffs));
  return std::make_shared<const FunctionField>(base, t, std::move(m));
}

FFElem::FFElem(FF K, algebra::Poly<RatFun> v) : K_(std::move(K)), v_(std::move(v)) {
  if (v_.degree() >= static_cast<std::int64_t>(K_->deg)) {
    v_ = algebra::poly_mod_reduce(v_, K_->modulus);
  }
}

FFElem FFElem::zero(const FF& K) {
  return FFElem(K, algebra::Poly<RatFun>(RatFun::zero(K->tab)));
}

FFElem FFElem::one(const FF& K) {
  return FFElem(K, algebra::Poly<RatFun>::constant(RatFun::constant(SF(K->tab, 1))));
}

FFElem FFElem::constant(const FF& K, const gf::FieldElement& c) {
  return FFElem(K, algebra::Poly<RatFun>::constant(RatFun::constant(lift_sf(K->tab, c))));
}

FFElem FFElem::from_ratfun(const FF& K, RatFun r) {
  return FFElem(K, algebra::Poly<RatFun>::constant(std::move(r)));
}

FFElem FFElem::x_gen(const FF& K) { return from_ratfun(K, RatFun::variable(K->tab)); }

FFElem FFElem::y_gen(const FF& K) {
  algebra::Poly<RatFun> y(RatFun::zero(K->tab));
  y.set_coeff(1, RatFun::constant(SF(K->tab, 1)));
  return FFElem(K, std::move(y));
}

FFElem FFElem::from_bivar(const FF& K, const algebra::BivarPoly& f) {
  // Horner over the sparse terms, outer in y, inner in x
  const SmallField* t = K->tab;
  std::map<std::uint32_t, std::map<std::uint32_t, gf::FieldElement>> by_y;
  for (const auto& [key, c] : f.terms()) by_y[key.second][key.first] = c;
  FFElem y = y_gen(K);
  FFElem acc = zero(K);
  std::uint32_t prev_j = 0;
  bool first = true;
  for (auto it = by_y.rbegin(); it != by_y.rend(); ++it) {
    if (!first)
      for (std::uint32_t s = prev_j; s > it->first; --s) acc *= y;
    first = false;
    prev_j = it->first;
    // the x-part is a plain polynomial
    SPoly cx(SF(t, 0));
    for (const auto& [i, c] : it->second) cx.set_coeff(i, lift_sf(t, c));
    acc += from_ratfun(K, RatFun::from_poly(std::move(cx)));
  }
  if (!first)
    for (std::uint32_t s = prev_j; s > 0; --s) acc *= y;
  return acc;
}

FFElem FFElem::inverse() const {
  if (is_zero()) throw std::invalid_argument("inverse of zero function field element");
  auto e = algebra::poly_ext_gcd(v_, K_->modulus);
  if (e.g.degree() != 0)
    throw std::runtime_error("function field element is a zero divisor; the model is reducible");
  return FFElem(K_, algebra::poly_mod_reduce(e.u, K_->modulus));
}

FFElem& FFElem::operator+=(const FFElem& o) {
  v_ += o.v_;
  return *this;
}

FFElem& FFElem::operator-=(const FFElem& o) {
  v_ -= o.v_;
  return *this;
}

FFElem& FFElem::operator*=(const FFElem& o) {
  v_ = algebra::poly_mod_reduce(v_ * o.v_, K_->modulus);
  return *this;
}

FFElem FFElem::pow(std::uint64_t e) const {
  FFElem acc = one(K_);
  FFElem base = *this;
  while (e) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

}  // namespace maxcurve::funcfield
