#pragma once

#include <optional>

#include "natspec/fourier.hpp"

namespace natspec {

inline constexpr double kDefaultRoundingMargin = 1e-6;
inline constexpr double kRealTolerance = 1e-12;

struct RoundingResult {
  double distance = 0.0;
  std::optional<GroupFunction> rounded;
  std::vector<Index> support;
  /// Same values as `rounded`, as integers.
  std::vector<std::int64_t> integers;
};

/// sup_x |f(x) - nearest integer|. Throws NotRealValued for complex input.
double dist_to_int(const GroupFunction& f);

/// Nearest-integer rounding; throws TooCloseToHalf unless distance < 1/2 - margin.
RoundingResult round_int(const GroupFunction& f, double margin = kDefaultRoundingMargin);

struct RealReduction {
  GroupFunction real;
  double imag_sup = 0.0;
  double a_norm_real = 0.0;
  double a_norm_input = 0.0;
  /// ||Re f||_A <= ||f||_A up to 1e-10.
  bool dominated = true;
};
RealReduction real_reduce(const GroupFunction& f);

GroupFunction from_integers(const FiniteAbelianGroup& group, const std::vector<std::int64_t>& values,
                            Side side = Side::Primal);

}  // namespace natspec
