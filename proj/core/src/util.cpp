#include "maxcurve/util.hpp"

#include <atomic>
#include <thread>

namespace maxcurve {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
    if (n == d) return true;
    if (n % d == 0) return false;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<std::uint64_t, std::uint32_t> prime_power_decompose(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("prime_power_decompose: n < 2");
  std::uint64_t p = n;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t e = 0;
  std::uint64_t m = n;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  if (m != 1) throw std::invalid_argument("prime_power_decompose: not a prime power");
  return {p, e};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow_u64(std::uint64_t p, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (p != 0 && r > UINT64_MAX / p) throw std::overflow_error("ipow_u64 overflow");
    r *= p;
  }
  return r;
}

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
  if (b == 0) return {a, 1, 0};
  ExtGcd s = ext_gcd(b, a % b);
  return {s.g, s.y, s.x - (a / b) * s.y};
}

namespace {
std::atomic<unsigned> g_threads{0};  // 0 = hardware default
}

unsigned thread_count() {
  unsigned n = g_threads.load();
  if (n == 0) {
    n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
  }
  return n;
}

void set_thread_count(unsigned n) { g_threads.store(n); }

void parallel_chunks(std::uint64_t total,
                     const std::function<void(std::uint64_t, std::uint64_t, std::size_t)>& fn,
                     std::size_t* out_nchunks) {
  unsigned nt = thread_count();
  if (total == 0) {
    if (out_nchunks) *out_nchunks = 0;
    return;
  }
  if (nt <= 1 || total < 4096) {
    fn(0, total, 0);
    if (out_nchunks) *out_nchunks = 1;
    return;
  }
  std::uint64_t nchunks = nt;
  std::uint64_t per = (total + nchunks - 1) / nchunks;
  std::vector<std::thread> ts;
  std::size_t slot = 0;
  for (std::uint64_t b = 0; b < total; b += per, ++slot) {
    std::uint64_t e = std::min(total, b + per);
    ts.emplace_back([&fn, b, e, slot] { fn(b, e, slot); });
  }
  for (auto& t : ts) t.join();
  if (out_nchunks) *out_nchunks = slot;
}

}  // namespace maxcurve
