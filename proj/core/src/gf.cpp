#include "maxcurve/gf.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace maxcurve::gf {

namespace {

std::atomic<std::uint64_t> g_budget{1ull << 20};

// ---- F_p[x] helpers on raw little-endian coefficient vectors ----

using PVec = std::vector<std::uint32_t>;

std::uint32_t addm(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
std::uint32_t subm(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}
std::uint32_t mulm(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}
std::uint32_t invm(std::uint32_t a, std::uint32_t p) {
  if (a == 0) throw std::invalid_argument("division by zero in F_p");
  ExtGcd e = ext_gcd(static_cast<std::int64_t>(a), static_cast<std::int64_t>(p));
  std::int64_t x = e.x % p;
  if (x < 0) x += p;
  return static_cast<std::uint32_t>(x);
}

void ptrim(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int pdeg(const PVec& a) { return static_cast<int>(a.size()) - 1; }

PVec pmul(const PVec& a, const PVec& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
  }
  PVec out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p);
  ptrim(out);
  return out;
}

// a mod m, m monic
PVec pmod(PVec a, const PVec& m, std::uint32_t p) {
  ptrim(a);
  int dm = pdeg(m);
  while (pdeg(a) >= dm) {
    std::uint32_t c = a.back();
    int shift = pdeg(a) - dm;
    if (c != 0) {
      for (int i = 0; i <= dm; ++i) a[i + shift] = subm(a[i + shift], mulm(c, m[i], p), p);
    }
    a.pop_back();
    ptrim(a);
  }
  return a;
}

PVec pmulmod(const PVec& a, const PVec& b, const PVec& m, std::uint32_t p) {
  return pmod(pmul(a, b, p), m, p);
}

PVec pgcd(PVec a, PVec b, std::uint32_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // reduce a mod b (b not necessarily monic)
    std::uint32_t li = invm(b.back(), p);
    PVec bm = b;
    for (auto& c : bm) c = mulm(c, li, p);
    a = pmod(std::move(a), bm, p);
    std::swap(a, b);
  }
  if (!a.empty()) {
    std::uint32_t li = invm(a.back(), p);
    for (auto& c : a) c = mulm(c, li, p);
  }
  return a;
}

// x^(p^j) mod m via square-and-multiply on the exponent
PVec p_xpowpow(std::uint32_t p, std::uint32_t j, const PVec& m) {
  std::uint64_t e = ipow_u64(p, j);
  PVec base = pmod({0, 1}, m, p);
  PVec result = {1};
  while (e) {
    if (e & 1) result = pmulmod(result, base, m, p);
    base = pmulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

// Rabin irreducibility test for monic f of degree k over F_p.
bool irreducible(const PVec& f, std::uint32_t p, std::uint32_t k) {
  PVec x = pmod({0, 1}, f, p);
  PVec xq = p_xpowpow(p, k, f);
  if (xq != x) return false;
  for (std::uint64_t ell : prime_factors(k)) {
    PVec xd = p_xpowpow(p, k / static_cast<std::uint32_t>(ell), f);
    // gcd(x^(p^(k/ell)) - x, f) must be 1
    PVec diff = xd;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = subm(diff[1], 1, p);
    ptrim(diff);
    PVec g = pgcd(diff, f, p);
    if (pdeg(g) != 0) return false;
  }
  return true;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FieldDescriptor>> fields;
};
Registry& registry() {
  static Registry r;
  return r;
}

struct EmbeddingData {
  Field src = nullptr, tgt = nullptr;
  // column j = coefficients of root^j in tgt (k2 x k1, column major)
  std::vector<std::uint32_t> mat;
  // row-reduced [mat | I] for the section map: k2 rows, k1+k2 cols
  std::vector<std::uint32_t> red;
  std::vector<int> pivot_col;  // for each of the k1 pivots, its row in red
};

struct EmbeddingRegistry {
  std::mutex mu;
  std::map<std::pair<Field, Field>, std::unique_ptr<EmbeddingData>> cache;
};
EmbeddingRegistry& embeddings() {
  static EmbeddingRegistry r;
  return r;
}

PVec digits_of(std::uint64_t idx, std::uint32_t p, std::uint32_t k) {
  PVec c(k, 0);
  for (std::uint32_t i = 0; i < k && idx; ++i) {
    c[i] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  return c;
}

const FieldDescriptor& deref(Field f) {
  if (!f) throw std::invalid_argument("null field");
  return *f;
}

FieldElement make_elem(Field f, PVec c) {
  c.resize(deref(f).k, 0);
  return FieldElement(f, std::move(c));
}

void check_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) throw std::invalid_argument("field mismatch between operands");
}

// Horner evaluation of an F_p polynomial at a target-field element.
FieldElement eval_ppoly(const PVec& f, const FieldElement& at) {
  FieldElement acc = zero(at.field());
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = acc * at + from_int(at.field(), f[i]);
  }
  return acc;
}

const EmbeddingData& get_embedding(Field src, Field tgt) {
  if (!is_subfield(src, tgt)) throw std::invalid_argument("embed: not a subfield pair");
  auto& er = embeddings();
  {
    std::lock_guard<std::mutex> lk(er.mu);
    auto it = er.cache.find({src, tgt});
    if (it != er.cache.end()) return *it->second;
  }
  // build outside the lock (idempotent; last writer may be discarded)
  auto data = std::make_unique<EmbeddingData>();
  data->src = src;
  data->tgt = tgt;
  std::uint32_t p = src->p, k1 = src->k, k2 = tgt->k;
  FieldElement root = zero(tgt);
  bool found = false;
  for (std::uint64_t idx = 0; idx < tgt->size; ++idx) {
    FieldElement cand = element_from_index(tgt, idx);
    if (eval_ppoly(src->modulus, cand).is_zero()) {
      root = cand;
      found = true;
      break;
    }
  }
  if (!found) throw std::runtime_error("embed: no root of subfield modulus found");
  data->mat.assign(static_cast<std::size_t>(k1) * k2, 0);
  FieldElement pw = one(tgt);
  for (std::uint32_t j = 0; j < k1; ++j) {
    for (std::uint32_t i = 0; i < k2; ++i) data->mat[static_cast<std::size_t>(j) * k2 + i] = pw.coeffs()[i];
    pw *= root;
  }
  // row reduce [M | I] over F_p; M is k2 x k1
  std::uint32_t cols = k1 + k2;
  std::vector<std::uint32_t> red(static_cast<std::size_t>(k2) * cols, 0);
  for (std::uint32_t i = 0; i < k2; ++i) {
    for (std::uint32_t j = 0; j < k1; ++j) red[static_cast<std::size_t>(i) * cols + j] = data->mat[static_cast<std::size_t>(j) * k2 + i];
    red[static_cast<std::size_t>(i) * cols + k1 + i] = 1;
  }
  std::uint32_t row = 0;
  data->pivot_col.assign(k1, -1);
  for (std::uint32_t col = 0; col < k1 && row < k2; ++col) {
    std::uint32_t sel = row;
    while (sel < k2 && red[static_cast<std::size_t>(sel) * cols + col] == 0) ++sel;
    if (sel == k2) continue;
    for (std::uint32_t j = 0; j < cols; ++j) std::swap(red[static_cast<std::size_t>(sel) * cols + j], red[static_cast<std::size_t>(row) * cols + j]);
    std::uint32_t piv = red[static_cast<std::size_t>(row) * cols + col];
    std::uint32_t pi = invm(piv, p);
    for (std::uint32_t j = 0; j < cols; ++j) red[static_cast<std::size_t>(row) * cols + j] = mulm(red[static_cast<std::size_t>(row) * cols + j], pi, p);
    for (std::uint32_t r2 = 0; r2 < k2; ++r2) {
      if (r2 == row) continue;
      std::uint32_t c = red[static_cast<std::size_t>(r2) * cols + col];
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < cols; ++j) {
        red[static_cast<std::size_t>(r2) * cols + j] = subm(red[static_cast<std::size_t>(r2) * cols + j], mulm(c, red[static_cast<std::size_t>(row) * cols + j], p), p);
      }
    }
    data->pivot_col[col] = static_cast<int>(row);
    ++row;
  }
  for (std::uint32_t col = 0; col < k1; ++col) {
    if (data->pivot_col[col] < 0) throw std::runtime_error("embed: embedding matrix not of full rank");
  }
  data->red = std::move(red);

  std::lock_guard<std::mutex> lk(er.mu);
  auto it = er.cache.find({src, tgt});
  if (it == er.cache.end()) it = er.cache.emplace(std::make_pair(src, tgt), std::move(data)).first;
  return *it->second;
}

}  // namespace

std::uint64_t field_budget() { return g_budget.load(); }
void set_field_budget(std::uint64_t b) { g_budget.store(b); }

Field make_field(std::uint32_t p, std::uint32_t k) {
  if (!is_prime_u64(p)) throw std::invalid_argument("make_field: p is not prime");
  if (k == 0) throw std::invalid_argument("make_field: k must be positive");
  std::uint64_t size = ipow_u64(p, k);
  if (size > field_budget()) {
    std::ostringstream os;
    os << "make_field: p^k = " << size << " exceeds the field budget " << field_budget();
    throw std::domain_error(os.str());
  }
  auto& reg = registry();
  std::lock_guard<std::mutex> lk(reg.mu);
  auto it = reg.fields.find({p, k});
  if (it != reg.fields.end()) return it->second.get();

  auto fd = std::make_unique<FieldDescriptor>();
  fd->p = p;
  fd->k = k;
  fd->size = size;
  if (k == 1) {
    fd->modulus = {0, 1};  // x
  } else {
    bool found = false;
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      PVec f = digits_of(idx, p, k);
      f.push_back(1);  // monic of degree k
      if (irreducible(f, p, k)) {
        fd->modulus = std::move(f);
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("make_field: no irreducible modulus found");
  }
  Field out = fd.get();
  reg.fields.emplace(std::make_pair(p, k), std::move(fd));
  return out;
}

bool FieldElement::is_zero() const {
  for (auto c : c_)
    if (c) return false;
  return true;
}

FieldElement FieldElement::zero_like() const { return zero(f_); }
FieldElement FieldElement::one_like() const { return one(f_); }

FieldElement FieldElement::operator-() const {
  const auto& fd = deref(f_);
  PVec out(c_);
  for (auto& c : out) c = c ? fd.p - c : 0;
  return FieldElement(f_, std::move(out));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same_field(*this, o);
  const auto& fd = deref(f_);
  for (std::uint32_t i = 0; i < fd.k; ++i) c_[i] = addm(c_[i], o.c_[i], fd.p);
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_same_field(*this, o);
  const auto& fd = deref(f_);
  for (std::uint32_t i = 0; i < fd.k; ++i) c_[i] = subm(c_[i], o.c_[i], fd.p);
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same_field(*this, o);
  const auto& fd = deref(f_);
  PVec prod = pmod(pmul(c_, o.c_, fd.p), fd.modulus, fd.p);
  prod.resize(fd.k, 0);
  c_ = std::move(prod);
  return *this;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  return a.c_ == b.c_;
}

FieldElement FieldElement::inverse() const {
  const auto& fd = deref(f_);
  if (is_zero()) throw std::invalid_argument("inverse of zero");
  // extended Euclid in F_p[x] against the modulus
  PVec r0 = fd.modulus, r1 = c_;
  ptrim(r1);
  PVec s0 = {}, s1 = {1};
  while (!r1.empty()) {
    // divide r0 by r1
    PVec q;
    PVec rem = r0;
    int d1 = pdeg(r1);
    std::uint32_t li = invm(r1.back(), fd.p);
    while (pdeg(rem) >= d1) {
      int shift = pdeg(rem) - d1;
      std::uint32_t c = mulm(rem.back(), li, fd.p);
      if (static_cast<int>(q.size()) <= shift) q.resize(shift + 1, 0);
      q[shift] = addm(q[shift], c, fd.p);
      for (int i = 0; i <= d1; ++i) rem[i + shift] = subm(rem[i + shift], mulm(c, r1[i], fd.p), fd.p);
      ptrim(rem);
    }
    PVec s2 = s0;
    PVec qs = pmul(q, s1, fd.p);
    s2.resize(std::max(s2.size(), qs.size()), 0);
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = subm(s2[i], qs[i], fd.p);
    ptrim(s2);
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
  }
  if (pdeg(r0) != 0) throw std::runtime_error("inverse: gcd with modulus not constant");
  std::uint32_t li = invm(r0[0], fd.p);
  for (auto& c : s0) c = mulm(c, li, fd.p);
  s0 = pmod(std::move(s0), fd.modulus, fd.p);
  return make_elem(f_, std::move(s0));
}

FieldElement zero(Field f) { return make_elem(f, {}); }
FieldElement one(Field f) { return from_int(f, 1); }

FieldElement from_int(Field f, std::int64_t n) {
  const auto& fd = deref(f);
  std::int64_t r = n % static_cast<std::int64_t>(fd.p);
  if (r < 0) r += fd.p;
  PVec c;
  if (r) c.push_back(static_cast<std::uint32_t>(r));
  return make_elem(f, std::move(c));
}

std::uint64_t element_index(const FieldElement& a) {
  const auto& fd = deref(a.field());
  std::uint64_t idx = 0;
  for (std::uint32_t i = fd.k; i-- > 0;) idx = idx * fd.p + a.coeffs()[i];
  return idx;
}

FieldElement element_from_index(Field f, std::uint64_t idx) {
  const auto& fd = deref(f);
  if (idx >= fd.size) throw std::invalid_argument("element_from_index: index out of range");
  return make_elem(f, digits_of(idx, fd.p, fd.k));
}

std::vector<FieldElement> enumerate_all(Field f) {
  const auto& fd = deref(f);
  std::vector<FieldElement> all;
  all.reserve(static_cast<std::size_t>(fd.size));
  for (std::uint64_t i = 0; i < fd.size; ++i) all.push_back(element_from_index(f, i));
  return all;
}

FieldElement pow(const FieldElement& a, std::uint64_t e) {
  FieldElement result = one(a.field());
  FieldElement base = a;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

FieldElement pow_i(const FieldElement& a, std::int64_t e) {
  if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
  return pow(a.inverse(), static_cast<std::uint64_t>(-e));
}

FieldElement frobenius(const FieldElement& a, std::uint32_t e) {
  const auto& fd = deref(a.field());
  e %= fd.k;  // p-power Frobenius has order k
  if (e == 0) return a;
  const std::vector<std::uint32_t>* mat = nullptr;
  {
    std::lock_guard<std::mutex> lk(fd.mu);
    auto it = fd.frob_mats.find(e);
    if (it != fd.frob_mats.end()) mat = &it->second;
  }
  if (!mat) {
    // column i = (x^i)^(p^e) mod modulus
    std::vector<std::uint32_t> m(static_cast<std::size_t>(fd.k) * fd.k, 0);
    FieldElement xe = pow(make_elem(a.field(), {0, 1}), ipow_u64(fd.p, e));
    FieldElement col = one(a.field());
    for (std::uint32_t i = 0; i < fd.k; ++i) {
      for (std::uint32_t r = 0; r < fd.k; ++r) m[static_cast<std::size_t>(i) * fd.k + r] = col.coeffs()[r];
      col *= xe;
    }
    std::lock_guard<std::mutex> lk(fd.mu);
    auto [it, inserted] = fd.frob_mats.emplace(e, std::move(m));
    mat = &it->second;
    (void)inserted;
  }
  PVec out(fd.k, 0);
  for (std::uint32_t i = 0; i < fd.k; ++i) {
    std::uint32_t ci = a.coeffs()[i];
    if (ci == 0) continue;
    for (std::uint32_t r = 0; r < fd.k; ++r) {
      out[r] = addm(out[r], mulm(ci, (*mat)[static_cast<std::size_t>(i) * fd.k + r], fd.p), fd.p);
    }
  }
  return make_elem(a.field(), std::move(out));
}

bool is_subfield(Field sub, Field sup) {
  return sub && sup && sub->p == sup->p && sup->k % sub->k == 0;
}

FieldElement embed(const FieldElement& a, Field tgt) {
  if (a.field() == tgt) return a;
  const EmbeddingData& ed = get_embedding(a.field(), tgt);
  const auto& fd = deref(tgt);
  PVec out(fd.k, 0);
  std::uint32_t k1 = a.field()->k;
  for (std::uint32_t j = 0; j < k1; ++j) {
    std::uint32_t cj = a.coeffs()[j];
    if (cj == 0) continue;
    for (std::uint32_t i = 0; i < fd.k; ++i) {
      out[i] = addm(out[i], mulm(cj, ed.mat[static_cast<std::size_t>(j) * fd.k + i], fd.p), fd.p);
    }
  }
  return make_elem(tgt, std::move(out));
}

FieldElement section(const FieldElement& a, Field sub) {
  if (a.field() == sub) return a;
  const EmbeddingData& ed = get_embedding(sub, a.field());
  std::uint32_t p = sub->p, k1 = sub->k, k2 = a.field()->k;
  std::uint32_t cols = k1 + k2;
  // rhs transformed by the stored row reduction
  PVec rhs(k2, 0);
  for (std::uint32_t r = 0; r < k2; ++r) {
    std::uint64_t acc = 0;
    for (std::uint32_t j = 0; j < k2; ++j) {
      acc += static_cast<std::uint64_t>(ed.red[static_cast<std::size_t>(r) * cols + k1 + j]) * a.coeffs()[j];
    }
    rhs[r] = static_cast<std::uint32_t>(acc % p);
  }
  PVec sol(k1, 0);
  for (std::uint32_t col = 0; col < k1; ++col) sol[col] = rhs[static_cast<std::uint32_t>(ed.pivot_col[col])];
  // consistency: rows without pivots must have zero rhs
  for (std::uint32_t r = 0; r < k2; ++r) {
    bool pivot_row = false;
    for (std::uint32_t col = 0; col < k1; ++col)
      if (ed.pivot_col[col] == static_cast<int>(r)) pivot_row = true;
    if (!pivot_row && rhs[r] != 0) throw std::invalid_argument("section: element does not lie in the subfield");
  }
  return make_elem(sub, std::move(sol));
}

bool lies_in_subfield(const FieldElement& a, Field sub) {
  if (a.field() == sub) return true;
  if (!is_subfield(sub, a.field())) return false;
  // fixed field of Frobenius^k1
  return frobenius(a, sub->k) == a;
}

FieldElement trace(const FieldElement& a, Field sub) {
  if (!is_subfield(sub, a.field())) throw std::invalid_argument("trace: not a subfield");
  std::uint32_t d = a.field()->k / sub->k;
  FieldElement acc = a.zero_like();
  FieldElement term = a;
  for (std::uint32_t i = 0; i < d; ++i) {
    acc += term;
    term = frobenius(term, sub->k);
  }
  return section(acc, sub);
}

FieldElement norm(const FieldElement& a, Field sub) {
  if (!is_subfield(sub, a.field())) throw std::invalid_argument("norm: not a subfield");
  std::uint32_t d = a.field()->k / sub->k;
  FieldElement acc = a.one_like();
  FieldElement term = a;
  for (std::uint32_t i = 0; i < d; ++i) {
    acc *= term;
    term = frobenius(term, sub->k);
  }
  return section(acc, sub);
}

std::uint64_t multiplicative_order(const FieldElement& a) {
  if (a.is_zero()) throw std::invalid_argument("multiplicative_order of zero");
  std::uint64_t n = a.field()->size - 1;
  std::uint64_t ord = n;
  for (std::uint64_t ell : prime_factors(n)) {
    while (ord % ell == 0 && pow(a, ord / ell) == one(a.field())) ord /= ell;
  }
  return ord;
}

FieldElement primitive_element(Field f) {
  const auto& fd = deref(f);
  {
    std::lock_guard<std::mutex> lk(fd.mu);
    if (fd.primitive_idx) return element_from_index(f, *fd.primitive_idx);
  }
  std::uint64_t n = fd.size - 1;
  auto factors = prime_factors(n);
  for (std::uint64_t idx = 1; idx < fd.size; ++idx) {
    FieldElement cand = element_from_index(f, idx);
    bool ok = true;
    for (std::uint64_t ell : factors) {
      if (pow(cand, n / ell) == one(f)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::lock_guard<std::mutex> lk(fd.mu);
      fd.primitive_idx = idx;
      return cand;
    }
  }
  throw std::runtime_error("primitive_element: none found");
}

std::string to_string(const FieldElement& a) {
  std::ostringstream os;
  os << element_index(a) << " in GF(" << a.field()->p << "^" << a.field()->k << ")";
  return os.str();
}

}  // namespace maxcurve::gf
