#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gso {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared numerical tolerances.
inline constexpr double kFeasTol = 1e-7;   // LP primal feasibility
inline constexpr double kOptTol = 1e-7;    // LP reduced-cost optimality
inline constexpr double kIntTol = 1e-6;    // integrality rounding
inline constexpr double kValueTol = 1e-9;  // oracle/verifier value comparisons

class GsoError : public std::runtime_error {
 public:
  explicit GsoError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw GsoError(msg);
}

// Deterministic stream splitting: one master seed fans out into independent
// substreams without correlated low bits.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 0x51ed2701)));
}

inline void hash_mix(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

inline std::size_t hash_doubles(const std::vector<double>& v) {
  std::size_t h = v.size();
  for (double d : v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    std::memcpy(&bits, &d, sizeof(bits));
    hash_mix(h, static_cast<std::size_t>(bits));
  }
  return h;
}

// Fixed-format floating point used in every serialized artifact so repeated
// runs are byte-identical.
inline std::string format_real(double v, int precision = 12) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

inline std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  double acc = 1.0;
  for (int i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
  return acc;
}

// Enumerates r-subsets of {0..n-1} in lexicographic order.
inline void for_each_combination(int n, int r,
                                 const std::function<void(const std::vector<int>&)>& fn) {
  if (r < 0 || r > n) return;
  std::vector<int> c(r);
  for (int i = 0; i < r; ++i) c[i] = i;
  while (true) {
    fn(c);
    int i = r - 1;
    while (i >= 0 && c[i] == n - r + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
  }
}

// Enumerates all permutations of {0..n-1} in lexicographic order.
inline void for_each_permutation(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    fn(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace gso
