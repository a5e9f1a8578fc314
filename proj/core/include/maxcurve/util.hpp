#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace maxcurve {

bool is_prime_u64(std::uint64_t n);

// n = p^e with p prime, e >= 1; throws std::invalid_argument otherwise.
std::pair<std::uint64_t, std::uint32_t> prime_power_decompose(std::uint64_t n);

// Prime factors of n, ascending, without multiplicity.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Overflow-checked p^e; throws std::overflow_error.
std::uint64_t ipow_u64(std::uint64_t p, std::uint32_t e);

// g = gcd(a,b) together with x,y such that a*x + b*y = g.
struct ExtGcd {
  std::int64_t g, x, y;
};
ExtGcd ext_gcd(std::int64_t a, std::int64_t b);

// Global worker count used by the point enumerators. Results never depend
// on it; chunks are merged in index order.
unsigned thread_count();
void set_thread_count(unsigned n);

// Runs fn(begin, end) over disjoint chunks of [0, total), possibly in
// parallel. fn must not touch shared state except through its own chunk
// slot; use parallel_map_reduce for value-returning work.
void parallel_chunks(std::uint64_t total,
                     const std::function<void(std::uint64_t, std::uint64_t, std::size_t)>& fn,
                     std::size_t* out_nchunks = nullptr);

}  // namespace maxcurve
