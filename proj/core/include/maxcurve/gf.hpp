#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "maxcurve/util.hpp"

namespace maxcurve::gf {

// Explicit finite field F_{p^k} in polynomial basis. Descriptors are
// interned: make_field(p, k) always returns the same pointer, and the
// reduction modulus is the monic irreducible of degree k over F_p with
// the smallest coefficient encoding, so two runs agree bit for bit.
struct FieldDescriptor {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint64_t size = 0;                // p^k
  std::vector<std::uint32_t> modulus;    // monic, length k+1; x for k == 1

  // lazily built caches, guarded by mu
  mutable std::mutex mu;
  mutable std::map<std::uint32_t, std::vector<std::uint32_t>> frob_mats;
  mutable std::optional<std::uint64_t> primitive_idx;

  FieldDescriptor() = default;
  FieldDescriptor(const FieldDescriptor&) = delete;
  FieldDescriptor& operator=(const FieldDescriptor&) = delete;
};

using Field = const FieldDescriptor*;

// Elements in [0, p^k) are encoded as little-endian base-p digit strings of
// their coefficient vector: index = sum c_i p^i.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Field f, std::vector<std::uint32_t> c) : f_(f), c_(std::move(c)) {}

  Field field() const { return f_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  bool is_zero() const;
  FieldElement zero_like() const;
  FieldElement one_like() const;
  FieldElement inverse() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  Field f_ = nullptr;
  std::vector<std::uint32_t> c_;
};

// Budget on p^k; guards against accidentally huge towers. Overridable
// (MAXCURVE_FIELD_BUDGET is applied by the CLI).
std::uint64_t field_budget();
void set_field_budget(std::uint64_t b);

Field make_field(std::uint32_t p, std::uint32_t k);

FieldElement zero(Field f);
FieldElement one(Field f);
FieldElement from_int(Field f, std::int64_t n);  // image of n under Z -> F_p -> F_{p^k}

std::uint64_t element_index(const FieldElement& a);
FieldElement element_from_index(Field f, std::uint64_t idx);

// all field elements in index order
std::vector<FieldElement> enumerate_all(Field f);

FieldElement pow(const FieldElement& a, std::uint64_t e);
FieldElement pow_i(const FieldElement& a, std::int64_t e);  // negative e via inverse

// a^(p^e), the e-fold absolute Frobenius. Uses a cached k x k matrix over
// F_p, so it is linear-time per element after the first call.
FieldElement frobenius(const FieldElement& a, std::uint32_t e);

bool is_subfield(Field sub, Field sup);  // same p and k_sub | k_sup

// Field embedding F_{p^k1} -> F_{p^k2}. The generator image is the root of
// the source modulus with the smallest encoding in the target, so embeddings
// are canonical. section() inverts it and rejects values outside the image.
FieldElement embed(const FieldElement& a, Field tgt);
FieldElement section(const FieldElement& a, Field sub);
bool lies_in_subfield(const FieldElement& a, Field sub);

// Trace and norm onto a subfield; the result is returned inside `sub`.
FieldElement trace(const FieldElement& a, Field sub);
FieldElement norm(const FieldElement& a, Field sub);

// Smallest-encoding generator of the multiplicative group.
FieldElement primitive_element(Field f);

std::uint64_t multiplicative_order(const FieldElement& a);

std::string to_string(const FieldElement& a);

}  // namespace maxcurve::gf
