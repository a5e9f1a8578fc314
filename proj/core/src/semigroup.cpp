#include "maxcurve/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace maxcurve::semigroup {

namespace {

// locate the least c such that member[c .. c+run) are all true; -1 if none
std::int64_t find_run(const std::vector<bool>& member, std::uint64_t run) {
  std::uint64_t streak = 0;
  for (std::size_t i = 0; i < member.size(); ++i) {
    streak = member[i] ? streak + 1 : 0;
    if (streak == run) return static_cast<std::int64_t>(i - run + 1);
  }
  return -1;
}

Semigroup finish(std::vector<bool> member, std::vector<std::uint64_t> gens, std::uint64_t multiplicity,
                 std::int64_t run_at) {
  // the sieve is exact, and the certified run means nothing at or past
  // run_at is a gap
  Semigroup s;
  s.generators = std::move(gens);
  for (std::int64_t n = 0; n < run_at; ++n) {
    if (!member[static_cast<std::size_t>(n)]) s.gaps.push_back(static_cast<std::uint64_t>(n));
  }
  s.genus = s.gaps.size();
  s.frobenius = s.gaps.empty() ? -1 : static_cast<std::int64_t>(s.gaps.back());
  s.conductor = s.gaps.empty() ? 0 : s.gaps.back() + 1;
  s.symmetric = s.frobenius == 2 * static_cast<std::int64_t>(s.genus) - 1;
  member.resize(static_cast<std::size_t>(s.conductor + multiplicity), true);
  s.member = std::move(member);
  return s;
}

}  // namespace

Semigroup from_generators(std::vector<std::uint64_t> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (!gens.empty() && gens[0] == 0) gens.erase(gens.begin());
  if (gens.empty()) throw std::invalid_argument("semigroup needs a positive generator");
  std::uint64_t g = 0;
  for (auto v : gens) g = std::gcd(g, v);
  if (g != 1) throw std::invalid_argument("semigroup generators must have gcd 1");

  std::uint64_t multiplicity = gens[0];
  std::uint64_t bound = 2 * gens.back() + 2;
  for (;;) {
    std::vector<bool> member(static_cast<std::size_t>(bound), false);
    member[0] = true;
    for (std::uint64_t n = 1; n < bound; ++n) {
      for (auto v : gens) {
        if (v <= n && member[static_cast<std::size_t>(n - v)]) {
          member[static_cast<std::size_t>(n)] = true;
          break;
        }
      }
    }
    std::int64_t run_at = find_run(member, multiplicity);
    if (run_at >= 0) return finish(std::move(member), std::move(gens), multiplicity, run_at);
    bound *= 2;
  }
}

Semigroup from_membership_window(const std::vector<bool>& member) {
  if (member.empty() || !member[0]) throw std::invalid_argument("membership window must contain 0");
  std::uint64_t multiplicity = 0;
  for (std::size_t n = 1; n < member.size(); ++n) {
    if (member[n]) {
      multiplicity = n;
      break;
    }
  }
  if (multiplicity == 0) throw std::invalid_argument("membership window has no positive member");
  // closure on the window
  for (std::size_t a = 0; a < member.size(); ++a) {
    if (!member[a]) continue;
    for (std::size_t b = a; b < member.size(); ++b) {
      if (!member[b]) continue;
      std::size_t sum = a + b;
      if (sum < member.size() && !member[sum]) {
        throw std::runtime_error("membership window is not closed under addition");
      }
    }
  }
  std::int64_t run_at = find_run(member, multiplicity);
  if (run_at < 0) throw std::invalid_argument("membership window shows no conductor run");
  // recover a generating set: members not expressible as smaller members
  std::vector<std::uint64_t> gens;
  std::vector<bool> reach(member.size(), false);
  reach[0] = true;
  for (std::size_t n = 1; n < member.size(); ++n) {
    if (!member[n]) continue;
    bool sum_of_smaller = false;
    for (auto v : gens) {
      if (v <= n && reach[n - v]) {
        sum_of_smaller = true;
        break;
      }
    }
    if (!sum_of_smaller) gens.push_back(n);
    reach[n] = true;
  }
  return finish(member, std::move(gens), multiplicity, run_at);
}

std::uint64_t nth_element(const Semigroup& s, std::uint64_t i) {
  // members below the conductor come from the bitmap, then the tail is dense
  std::uint64_t seen = 0;
  for (std::uint64_t n = 0; n < s.conductor; ++n) {
    if (s.member[static_cast<std::size_t>(n)]) {
      if (seen == i) return n;
      ++seen;
    }
  }
  return s.conductor + (i - seen);
}

std::vector<std::uint64_t> nongaps_upto(const Semigroup& s, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n <= bound; ++n) {
    if (s.contains(n)) out.push_back(n);
  }
  return out;
}

std::uint64_t two_generator_genus(std::uint64_t r, std::uint64_t s) {
  if (std::gcd(r, s) != 1) throw std::invalid_argument("two_generator_genus needs coprime arguments");
  return (r - 1) * (s - 1) / 2;
}

std::vector<std::uint64_t> bounded_combinations(std::uint64_t q, std::uint64_t j,
                                                std::uint64_t budget) {
  std::set<std::uint64_t> vals;
  for (std::uint64_t c = 0; c <= budget; ++c) {
    for (std::uint64_t b = 0; b + c <= budget; ++b) {
      for (std::uint64_t a = 0; a + b + c <= budget; ++a) {
        vals.insert(a + b * j + c * q);
      }
    }
  }
  return {vals.begin(), vals.end()};
}

GapStructure gap_candidate_structure(std::uint64_t q, std::uint64_t j) {
  if (q < 5 || q % 2 == 0) throw std::invalid_argument("gap_candidate_structure needs odd q >= 5");
  if (j < 2 || j > q - 1) throw std::invalid_argument("gap_candidate_structure needs 2 <= j <= q-1");
  GapStructure out;
  out.q = q;
  out.j = j;
  out.values = bounded_combinations(q, j, (q - 3) / 2);
  out.excluded.reserve(out.values.size());
  for (auto v : out.values) out.excluded.push_back(v + 1);

  std::uint64_t top = out.excluded.back();
  std::vector<bool> member(static_cast<std::size_t>(2 * top + 1), true);
  for (auto e : out.excluded) member[static_cast<std::size_t>(e)] = false;
  out.complement_closed = true;
  for (std::uint64_t h1 = 1; h1 <= top && out.complement_closed; ++h1) {
    if (!member[static_cast<std::size_t>(h1)]) continue;
    for (std::uint64_t h2 = h1; h1 + h2 <= top; ++h2) {
      if (!member[static_cast<std::size_t>(h2)]) continue;
      if (!member[static_cast<std::size_t>(h1 + h2)]) {
        out.complement_closed = false;
        out.failure = {h1, h2};
        break;
      }
    }
  }
  return out;
}

}  // namespace maxcurve::semigroup
