#pragma once

#include <cstdint>
#include <string_view>

namespace xrsim {

// Deterministic 64-bit generator. Every random stream in a run is derived
// from the run seed plus a stream label, so streams are mutually independent
// and adding a UE (a new label) does not perturb the draws of existing ones.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);

  // Uniform integer in [0, bound); bound must be > 0.
  uint64_t uniform_int(uint64_t bound);

  // Standard normal via Box-Muller; the second deviate is cached.
  double normal();
  double normal(double mean, double std);

  bool bernoulli(double p) { return uniform() < p; }

 private:
  uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stable sub-stream seed for (root seed, label). Uses FNV-1a over the label
// mixed through the generator's finalizer, so distinct labels give
// statistically independent streams and the mapping never changes between
// runs or platforms.
uint64_t derive_seed(uint64_t root, std::string_view label);

}  // namespace xrsim
