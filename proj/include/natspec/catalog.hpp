#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "natspec/certifier.hpp"

namespace natspec {

/// Seeded source shared by every generator; uniform() uses the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

/// The twelve named groups used throughout the suites.
const std::vector<std::string>& standard_groups();

/// Invariant-factor moduli (each dividing the next) of every abelian group of
/// order 2..max_order, ordered by order then lexicographically.
std::vector<std::vector<std::int64_t>> groups_up_to(std::int64_t max_order);

struct TwsInstance {
  std::string name;
  GroupFunction f;
  bool perturbed = false;
};

/// Integer bases on every standard group of order <= 64, each followed by
/// seeded perturbations of size at most 0.02.
std::vector<TwsInstance> tws_catalog(std::uint64_t seed, std::size_t perturbations = 3);

/// Symmetric real density whose transform is a small integer combination of
/// annihilator indicators plus a symmetric perturbation of size <= noise.
GroupFunction random_measure(const FiniteAbelianGroup& group, Rng& rng, double noise = 0.01);

/// Real function with entries uniform in [-1, 1] on the given side.
GroupFunction random_function(const FiniteAbelianGroup& group, Rng& rng, Side side = Side::Primal);

struct RiemannPreset {
  std::string name;
  std::vector<std::int64_t> h_moduli;
  std::size_t d = 1;
  std::vector<Frequency> freqs;
};

/// "single": one frequency; "two_frequency": r = 0 and r = 1 on the circle.
RiemannPreset riemann_preset(const std::string& name);

}  // namespace natspec
