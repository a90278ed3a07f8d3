#pragma once

#include <string>
#include <vector>

#include "natspec/fourier.hpp"
#include "natspec/lp.hpp"

namespace natspec {

inline constexpr double kDefaultBpbC = 32.0;

/// Minimal-L1 real function on the points of a character table with
/// prescribed transform: 1 on lambda, 0 off support, free in between.
struct L1Solution {
  std::vector<double> values;
  std::vector<Complex> transform;
  std::vector<std::size_t> lambda;
  std::vector<std::size_t> support;
  double optimum = 0.0;
  LpResult lp;
  OptimalityCheck certificate;
};

/// Closes a character set under inversion; output sorted.
std::vector<std::size_t> symmetrize(const CharacterTable& table, std::vector<std::size_t> set);

/// (1/n) sum_p f(p) conj(chi_c(p)) for every character c.
std::vector<Complex> table_transform(const CharacterTable& table, const std::vector<double>& values);

L1Solution lp_min_l1(const CharacterTable& table, const std::vector<std::size_t>& lambda,
                     const std::vector<std::size_t>& support, const LpOptions& options = {});

struct BpbBoundReport {
  std::size_t support_size = 0;
  std::size_t lambda_size = 0;
  double constant = kDefaultBpbC;
  /// log of (C/eps)^(2|lambda|).
  double log_bound = 0.0;
  bool within_bound = true;
  std::string note;
};

struct BpbPolynomial {
  std::vector<double> values;
  std::vector<Complex> transform;
  std::vector<std::size_t> lambda;
  std::vector<std::size_t> support;
  double l1 = 0.0;
  double epsilon = 1.0;
  std::size_t lp_calls = 0;
  BpbBoundReport bound;
  double interpolation_error = 0.0;
  double off_support_max = 0.0;
  bool lp_certified = true;
};

/// Greedy support growth: adds the inverse-closed character pair that lowers
/// the LP optimum most (ties by enumeration order) until optimum <= 1 + eps.
BpbPolynomial bpb_search(const CharacterTable& table, const std::vector<std::size_t>& lambda, double epsilon,
                         double bound_constant = kDefaultBpbC, const LpOptions& options = {});

/// Group-level wrappers; the returned function is a primal density.
GroupFunction to_function(const FiniteAbelianGroup& group, const std::vector<double>& values);
L1Solution lp_min_l1(const FiniteAbelianGroup& group, const std::vector<Index>& lambda,
                     const std::vector<Index>& support, const LpOptions& options = {});
BpbPolynomial bpb_search(const FiniteAbelianGroup& group, const std::vector<Index>& lambda, double epsilon,
                         double bound_constant = kDefaultBpbC, const LpOptions& options = {});

}  // namespace natspec
