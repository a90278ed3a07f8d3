#pragma once

#include <limits>
#include <optional>

#include "natspec/bpb.hpp"
#include "natspec/check.hpp"
#include "natspec/idempotent.hpp"
#include "natspec/rounding.hpp"

namespace natspec {

struct CertifyOptions {
  /// Admission threshold on d(f, Z).
  double threshold = 0.02;
  /// First schedule value; NaN means threshold / 3.
  double eta0 = std::numeric_limits<double>::quiet_NaN();
  double corkey_threshold = 0.1;
  double bpb_constant = kDefaultBpbC;
  double exact_tol = 1e-10;
  double constraint_tol = 1e-8;
  bool retry = true;
  DecomposeOptions decompose;
  LpOptions lp;
};

struct EtaSchedule {
  double m = 0.0;
  std::size_t l = 0;
  std::vector<double> etas;
  /// ceil((1 + eps1) |G| / |K(eta_i)|), a measured bound on ||phi||_1.
  std::vector<double> f_caps;
  /// Report-only: log of ceil((1 + eps1) (C / eps1)^(2 F'(M, eta_i))).
  std::vector<double> log_f_paper;
  bool halved = false;
};

/// Per-eta summary of a chain used inside a certificate step.
struct ChainSummary {
  double eta = 0.0;
  std::size_t k_eta = 0;
  std::vector<Index> k_group;
  double threshold = 0.0;
  double log_f_prime = 0.0;
  bool a = false;
  bool b = false;
  bool c = false;
  bool d = false;
  bool dec = false;
  bool lower_k = false;
  bool leakage = false;
  bool pass = false;
};

struct DualWitness {
  std::vector<std::size_t> w_cosets;
  BpbPolynomial g;
  std::vector<Complex> phi;
  std::vector<Complex> phi_hat;
  double phi_l1 = 0.0;
  double pairing_imag = 0.0;
  Inequality claim_a;
  Inequality claim_b;
  Inequality claim_c;
  Inequality claim_d;
};

struct TwsStep {
  std::size_t depth = 0;
  double m = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double a_norm = 0.0;
  double distance = 0.0;
  double linf = 0.0;
  bool base = false;
  std::string note;

  EtaSchedule schedule;
  std::vector<ChainSummary> chains;
  bool chains_nested = true;
  std::vector<double> gaps;
  std::size_t i0 = 0;
  std::vector<Index> k_group;
  std::vector<Index> h_group;
  Inequality pigeonhole;
  Inequality pigeonhole_literal;
  Inequality rounding_margin;
  bool kh_rounding_equal = false;

  DualWitness witness;
  double a_norm_fh = 0.0;
  double a_norm_w = 0.0;
  double a_norm_residual = 0.0;
  double d_k = 0.0;
  double d_h = 0.0;
  double d_residual = 0.0;
  Inequality wazo;
  Inequality wazo_schedule;
  Inequality d_h_small;
  Inequality ju;
  Inequality zalind;
  Inequality mass;
  Inequality aproxadd;
  bool aproxadd_exact = false;

  double rhs_measured = 0.0;
  double certified_upper = 0.0;
  Inequality p_check;
  std::optional<std::size_t> child;
  bool pass = false;
};

struct TwsCertificate {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double a_norm_f = 0.0;
  double distance = 0.0;
  double threshold = 0.0;
  std::vector<TwsStep> steps;
  std::vector<std::int64_t> f_z;
  double a_norm_fz = 0.0;
  double certified_upper = 0.0;
  Inequality bound;
  bool retried = false;
  bool verdict = false;
  std::string schedule_note;
};

/// Recursive certificate for ||f_Z||_A <= (1 + eps1) ||f||_A + eps2.
TwsCertificate certify_tws(const GroupFunction& f, double eps1, double eps2, const CertifyOptions& options = {});

struct SknResult {
  GroupFunction mu_z;
  std::vector<std::int64_t> mu_hat_z;
  double imag_sup = 0.0;
  double mu_norm = 0.0;
  double mu_hat_a_norm = 0.0;
  Inequality bridge;
  double mu_z_norm = 0.0;
  Inequality bound;
  TwsCertificate certificate;
};

/// Runs the certificate on the transform of a measure density, read on the dual group.
SknResult skn_finite(const GroupFunction& mu, double eps1, double eps2, const CertifyOptions& options = {});

struct Frequency {
  std::vector<std::int64_t> chi;
  std::vector<std::int64_t> r;
  Complex coeff;
};

struct RiemannRow {
  std::size_t n = 0;
  double value = 0.0;
  double gap_to_reference = 0.0;
  double gap_to_previous = 0.0;
};

struct RiemannTable {
  std::vector<std::int64_t> h_moduli;
  std::size_t d = 0;
  std::size_t n0 = 1;
  std::size_t merged_duplicates = 0;
  std::vector<RiemannRow> rows;
  double reference = 0.0;
  bool cauchy = true;
};

/// Smallest N that keeps distinct frequency tuples distinct modulo N.
std::size_t separation_n(const std::vector<Frequency>& freqs);

RiemannTable riemann_a_norm(const std::vector<std::int64_t>& h_moduli, std::size_t d,
                            const std::vector<Frequency>& freqs, const std::vector<std::size_t>& ladder);

/// Evaluates one ladder rung by the explicit double sum.
double riemann_value(const FiniteAbelianGroup& h, std::size_t d, const std::vector<Frequency>& freqs, std::size_t n);

}  // namespace natspec
