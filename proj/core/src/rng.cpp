#include "qbc/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qbc::rng {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
  return Engine(splitmix64(seed ^ (0xD1B54A32D192ED03ull * (stream + 1))));
}

double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::uint64_t below(Engine& eng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("rng::below: n must be positive");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t x = eng();
    if (x < limit) return x % n;
  }
}

double normal01(Engine& eng) {
  for (;;) {
    const double u = 2.0 * uniform01(eng) - 1.0;
    const double v = 2.0 * uniform01(eng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double truncated_normal(double mu, double sigma, double lo, double hi,
                        Engine& eng, int max_rejects) {
  if (!(lo <= hi)) throw std::invalid_argument("truncated_normal: empty interval");
  if (sigma < 0.0) throw std::invalid_argument("truncated_normal: negative sigma");
  if (sigma == 0.0) return mu < lo ? lo : (mu > hi ? hi : mu);
  for (int i = 0; i < max_rejects; ++i) {
    const double x = mu + sigma * normal01(eng);
    if (lo <= x && x <= hi) return x;
  }
  // Pathological mean far outside the support: give up and take the nearer bound.
  return (mu - lo <= hi - mu) ? lo : hi;
}

}  // namespace qbc::rng
