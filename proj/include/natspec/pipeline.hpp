#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "natspec/certifier.hpp"

namespace natspec {

enum class SequenceMode { LiteralGlow, LiteralNajp, Empirical };

std::string_view mode_name(SequenceMode mode) noexcept;
SequenceMode parse_mode(std::string_view name);

struct SequenceParams {
  /// Cap on the delta factor in the glow recursion.
  double delta_prime = 1.0;
  double c_double_prime = 328.0;
};

/// "pass", "fail" or "n/a" per consecutive pair.
using CheckMark = std::string;

struct DecaySequence {
  std::vector<double> log_a;
  SequenceMode mode = SequenceMode::Empirical;
  std::vector<CheckMark> checks;
  SequenceParams params;

  std::size_t size() const noexcept { return log_a.size(); }
  double a(std::size_t i) const { return std::exp(log_a[i]); }
};

/// log of min{(1/9) exp(-18 x^-2), delta'} evaluated from log x.
double log_glow_delta(double log_x, double delta_prime);
/// exp(C'' x^-6) evaluated from log x.
double najp_drop(double log_x, double c_double_prime);

/// Literal modes build the boundary sequence from a1; throws Unrepresentable
/// (with the maximal representable length in the message) past double range.
DecaySequence make_sequence(double a1, std::size_t length, SequenceMode mode, const SequenceParams& params = {});
/// Empirical mode: any strictly decreasing positive values with a1 <= 1.
DecaySequence make_empirical(const std::vector<double>& values);
/// Maximal representable length of a literal sequence starting at a1.
std::size_t max_literal_length(double a1, SequenceMode mode, const SequenceParams& params, std::size_t limit = 64);

enum class Preset { Nested, RandomDisjoint };

std::string_view preset_name(Preset preset) noexcept;
Preset parse_preset(std::string_view name);

struct SynthResult {
  GroupFunction mu;
  std::vector<Complex> mu_hat;
  std::vector<std::vector<Index>> chain;
  std::vector<std::vector<Index>> levels;
  double norm = 0.0;
  double range_error = 0.0;
  /// "ok" or "NormExceedsOne".
  std::string status = "ok";
};

/// Nested preset: mu^ = a_1 on K_1-perp and a_k on K_k-perp minus K_{k-1}-perp.
/// With no explicit chain, K_1 = G and each next group is a seeded random
/// maximal proper subgroup of the previous one.
SynthResult synth_measure(const FiniteAbelianGroup& group, const DecaySequence& seq, Preset preset,
                          std::uint64_t seed, const std::vector<Subgroup>* chain = nullptr,
                          std::size_t enumeration_cap = kDefaultEnumerationCap);

struct SknRecord {
  bool ran = false;
  bool verdict = false;
  double mu_z_norm = 0.0;
  double bound = 0.0;
  double distance = 0.0;
  bool rounding_matches_level = false;
  std::string note;
};

struct MajorantRecord {
  double lhs = 0.0;
  double sup_norm = 0.0;
  double tail_sum = 0.0;
  double rhs = 0.0;
  double f_l1 = 0.0;
  std::size_t f_support = 0;
  bool pass = false;
};

struct PipelineStep {
  std::size_t n = 0;
  double a = 0.0;
  double log_a = 0.0;
  std::size_t level_size = 0;
  double tau_norm = 0.0;
  /// Set when a_n is below machine precision relative to ||mu||.
  bool approximate = false;
  Inequality tau_bound;
  double mu_norm = 0.0;
  Inequality mu_bound;
  Inequality scaled_norm;
  SknRecord skn;
  // najp
  double nu_norm = 0.0;
  Inequality nu_bound;
  Inequality amu_bound;
  Inequality convolution_norm;
  MajorantRecord majorant;
  bool pass = false;
};

struct RhoGap {
  std::size_t m = 0;
  std::size_t n = 0;
  double gap = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct QReport {
  std::size_t n = 0;
  double r = 0.0;
  std::size_t q_size = 0;
  Inequality norm_hypothesis;
  Inequality decay_hypothesis;
  double log_bound_cubic = 0.0;
  double log_bound_r2logr = 0.0;
  bool within_cubic = true;
  bool within_r2logr = true;
};

struct PipelineReport {
  std::string kind;
  std::string group;
  DecaySequence sequence;
  std::vector<std::vector<Index>> levels;
  std::size_t zero_set = 0;
  double mu_norm = 0.0;
  std::vector<PipelineStep> steps;
  double telescoping_error = 0.0;
  std::vector<RhoGap> rho_gaps;
  Inequality rho_square;
  std::vector<Complex> sigma;
  bool natural_spectrum = true;
  std::vector<QReport> q_reports;
  bool strong_continuity = true;
  std::vector<std::string> notes;
  bool verdict = false;
};

struct PipelineOptions {
  double rounding_threshold = 0.1;
  double level_tol = 1e-12;
  double exact_tol = 1e-10;
  double c_prime = 2.0;
  CertifyOptions certify;
  LpOptions lp;
  double bpb_constant = kDefaultBpbC;
};

/// A_n = {gamma : mu^(gamma) = a_n}; throws LevelMismatch for stray values.
std::vector<std::vector<Index>> level_sets(const std::vector<Complex>& mu_hat, const DecaySequence& seq,
                                           double tol, std::size_t* zero_count = nullptr);

PipelineReport glow_run(const GroupFunction& mu, const DecaySequence& seq, const PipelineOptions& options = {});
PipelineReport najp_run(const GroupFunction& mu, const DecaySequence& seq, const PipelineOptions& options = {});

/// One row per step: n, a_n, ||tau_n||, bound, verdict.
std::string pipeline_csv(const PipelineReport& report);

}  // namespace natspec
