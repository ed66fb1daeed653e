#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>

namespace valence {

// Deterministic random source. All draws go through hand-rolled
// transforms of the mt19937_64 stream so that a given seed produces the
// same values on every platform (std::normal_distribution and friends
// are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1)
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // inclusive bounds
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  // Box-Muller, spare value cached
  double gauss(double mean = 0.0, double sd = 1.0) {
    if (has_spare_) {
      has_spare_ = false;
      return mean + sd * spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 1e-300) u1 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return mean + sd * radius * std::cos(angle);
  }

  // stable sub-stream derivation (seed + index contract)
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t fnv1a64(std::string_view data);

// Thread cap from VALENCE_PIPE_THREADS (unset or 0 = hardware concurrency).
int thread_budget();

// Runs fn(i) for i in [0, n). Results must be stored by index by the
// caller; the schedule never affects output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

// Writes content to path via a temp file + rename.
void atomic_write_file(const std::string &path, const std::string &content);

std::string read_file(const std::string &path);

}  // namespace valence
