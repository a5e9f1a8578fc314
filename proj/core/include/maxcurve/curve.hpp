#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maxcurve/algebra.hpp"
#include "maxcurve/gf.hpp"
#include "maxcurve/zeta.hpp"

namespace maxcurve::curve {

enum class Family {
  ArtinSchreierQuotient,  // y^q + y = x^m over F_{q^2}, m | q+1
  Hermitian,              // the m = q+1 case
  HyperellipticExample,   // x^2 + y^5 = 1 over F_81
  Suzuki,                 // y^r - y = x^{r0}(x^r - x) over F_r, r = 2^{2s+1}
  Ree,                    // adds z^r - z = x^{2 r0}(x^r - x), r = 3^{2s+1}
  GenericPlane,
};

std::string family_name(Family f);

struct InfinitePlace {
  std::uint64_t pole_x = 0;
  std::uint64_t pole_y = 0;
};

struct CurveModel {
  Family family = Family::GenericPlane;
  gf::Field base = nullptr;             // F_{q^2}, or F_r for Suzuki/Ree
  std::uint64_t q = 0;                  // the quotient parameter; r for Suzuki/Ree
  std::uint32_t m = 0;                  // exponent of x for the quotient families
  std::uint32_t s = 0;                  // tower parameter for Suzuki/Ree
  std::optional<std::uint64_t> genus;   // unset when the model leaves it open (Ree)
  std::vector<algebra::BivarPoly> eqs;  // in (x, y); the second Ree equation is in (x, z)
  std::vector<InfinitePlace> infinity;  // one entry per infinite place; empty = count-only model
  bool model_complete = true;
};

// Throws std::invalid_argument on parameter violations (m must divide q+1,
// q must be a power of p) and std::domain_error past the field budget.
CurveModel artin_schreier_quotient(std::uint32_t p, std::uint64_t q, std::uint32_t m);
CurveModel hermitian(std::uint32_t p, std::uint64_t q);
CurveModel hyperelliptic_example();
CurveModel suzuki(std::uint32_t s);
CurveModel ree(std::uint32_t s);
CurveModel generic_plane(gf::Field base, algebra::BivarPoly f, std::optional<std::uint64_t> genus,
                         std::optional<InfinitePlace> inf);

// the field F_{|base|^ext}
gf::Field extension_field(const CurveModel& c, std::uint32_t ext);

// degree of the extension over which the family's maximality is certified
std::uint32_t maximality_extension(const CurveModel& c);

struct PlacePoint {
  bool at_infinity = false;
  std::size_t inf_index = 0;
  gf::FieldElement x, y;                // affine coordinates, over some extension
  std::optional<gf::FieldElement> z;    // third coordinate where the model has one
};

bool on_curve(const CurveModel& c, const PlacePoint& P);

struct EnumerationResult {
  zeta::Int count = 0;          // affine + infinite places rational over the extension
  std::uint64_t affine = 0;
  std::uint64_t infinite = 0;
  std::vector<PlacePoint> points;  // filled only when requested
  bool model_complete = true;
};

// Counts points over F_{|base|^ext}. Fibered families count additively via
// the image table of the separable map y -> y^q + y (resp. y^r - y), which
// is checked on the fly to have kernel size exactly q (resp. r). With
// `with_points` the affine points are listed in (x index, y index) order,
// followed by the infinite places.
// Throws std::domain_error when the extension exceeds the field budget and
// std::invalid_argument for unsupported Ree extensions (only ext = 6 has a
// determined infinite-place count).
EnumerationResult enumerate_points(const CurveModel& c, std::uint32_t ext, bool with_points = false);

// Streams affine points in (x index, y index[, z index]) order; return
// false from the callback to stop early.
void for_each_affine_point(const CurveModel& c, std::uint32_t ext,
                           const std::function<bool(const PlacePoint&)>& fn);

// All-pairs substitution count, for cross-checking the fibered method.
// Throws std::domain_error when the pair count exceeds 10^8.
std::uint64_t naive_affine_count(const CurveModel& c, std::uint32_t ext);

// Coordinatewise |relative_to|-power map; infinite places are fixed (every
// built-in family's infinity metadata is rational over the base).
PlacePoint frobenius_point(const CurveModel& c, const PlacePoint& P, gf::Field relative_to);

// Size of the orbit under the |base|-power Frobenius.
std::uint32_t point_degree(const CurveModel& c, const PlacePoint& P);

// (x, y) -> (-x, y) on the hyperelliptic example; throws on other families.
PlacePoint involution(const CurveModel& c, const PlacePoint& P);

// Affine points over F_{|base|^ext} where all defining equations and all
// their partial derivatives vanish. Built-in families return empty.
std::vector<PlacePoint> smoothness_check(const CurveModel& c, std::uint32_t ext);

// The Ree model is count-only: the infinite-place count over F_{r^6} is the
// unique value in [0, 2r^3) making the maximal-count congruence solvable,
// and the genus follows from it rather than from either disputed closed
// form. Both candidate formulas are evaluated for the report.
struct ReeReport {
  std::uint64_t r = 0, r0 = 0;
  std::uint64_t affine6 = 0;       // affine count over F_{r^6}
  std::uint64_t n_inf = 0;         // inferred infinite-place count
  zeta::Int count6;                // affine6 + n_inf
  std::uint64_t g_hat = 0;         // (count6 - r^6 - 1) / (2 r^3)
  std::uint64_t formula_full = 0;  // 3 r0 (r-1)(r+r0+1)
  std::uint64_t formula_half = 0;  // the same divided by 2
  bool matches_full = false;
  bool matches_half = false;
};

ReeReport ree_consistency_report(std::uint32_t s);

}  // namespace maxcurve::curve
