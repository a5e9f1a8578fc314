#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace maxcurve::semigroup {

// Numerical semigroup (cofinite submonoid of the nonnegative integers).
// The sieve is complete: `conductor` is certified by a run of multiplicity
// many consecutive members, after which membership is closed upward.
struct Semigroup {
  std::vector<std::uint64_t> generators;  // sorted, deduplicated, gcd 1
  std::vector<std::uint64_t> gaps;        // every nonmember, ascending
  std::uint64_t genus = 0;                // number of gaps
  std::int64_t frobenius = -1;            // largest gap, -1 when there is none
  std::uint64_t conductor = 0;            // least c with [c, infinity) contained
  bool symmetric = false;                 // frobenius == 2 genus - 1
  std::vector<bool> member;               // membership on [0, conductor + multiplicity)

  bool contains(std::uint64_t n) const {
    return n >= conductor || member[static_cast<std::size_t>(n)];
  }
};

// Throws std::invalid_argument unless the generators have gcd 1.
Semigroup from_generators(std::vector<std::uint64_t> gens);

// Builds the semigroup from explicit membership of an initial segment.
// Closure under addition is checked on the given window; the tail from the
// certified conductor on is filled in. Throws std::invalid_argument if the
// window shows no conductor run or 0 is missing, and std::runtime_error if
// the window is not additively closed.
Semigroup from_membership_window(const std::vector<bool>& member);

// m_0 = 0 < m_1 < m_2 < ...; returns the i-th smallest member.
std::uint64_t nth_element(const Semigroup& s, std::uint64_t i);

std::vector<std::uint64_t> nongaps_upto(const Semigroup& s, std::uint64_t bound);

// Genus of <r, s> for coprime r, s: (r-1)(s-1)/2.
std::uint64_t two_generator_genus(std::uint64_t r, std::uint64_t s);

// All values a + b j + c q over nonnegative a, b, c with a + b + c <= budget,
// deduplicated and ascending.
std::vector<std::uint64_t> bounded_combinations(std::uint64_t q, std::uint64_t j,
                                                std::uint64_t budget);

// Candidate gap analysis for a quarter-genus semigroup: the value set
// S = bounded_combinations(q, j, (q-3)/2), its shift 1 + S as the would-be
// gap set, and whether the complement of 1 + S is additively closed. The
// closure test is complete: sums past the largest excluded value are
// automatically members, so checking the window [0, 2(1 + max S)] decides.
struct GapStructure {
  std::uint64_t q = 0, j = 0;
  std::vector<std::uint64_t> values;    // S, ascending
  std::vector<std::uint64_t> excluded;  // 1 + S
  bool complement_closed = false;
  // a failing member pair (h1 <= h2 with h1 + h2 excluded) when not closed
  std::optional<std::pair<std::uint64_t, std::uint64_t>> failure;
};

// Requires odd q >= 5 and 2 <= j <= q-1; throws std::invalid_argument.
GapStructure gap_candidate_structure(std::uint64_t q, std::uint64_t j);

}  // namespace maxcurve::semigroup
