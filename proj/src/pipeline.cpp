#include "natspec/pipeline.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <random>
#include <sstream>

namespace natspec {

namespace {

const double kLogMin = std::log(DBL_MIN);

bool representable(double log_a) { return std::isfinite(log_a) && log_a >= kLogMin; }

double next_literal(double log_a, SequenceMode mode, const SequenceParams& params) {
  if (mode == SequenceMode::LiteralGlow) return log_a + log_glow_delta(log_a, params.delta_prime);
  return log_a - najp_drop(log_a, params.c_double_prime);
}

CheckMark literal_check(double log_a, double log_next, SequenceMode mode, const SequenceParams& params) {
  if (mode == SequenceMode::Empirical) return "n/a";
  const double limit = next_literal(log_a, mode, params);
  if (!std::isfinite(limit)) return "fail";
  return log_next <= limit + 1e-12 * std::max(1.0, std::abs(limit)) ? "pass" : "fail";
}

GroupFunction inverse_of(const FiniteAbelianGroup& group, std::vector<Complex> hat) {
  GroupFunction f{group, Side::Dual, std::move(hat)};
  return dft(f, Direction::Inverse);
}

std::vector<Complex> level_spectrum(const FiniteAbelianGroup& group, const std::vector<std::vector<Index>>& levels,
                                    std::size_t from, std::size_t to, const std::vector<double>& weights) {
  std::vector<Complex> hat(group.order(), 0.0);
  for (std::size_t k = from; k < to; ++k) {
    for (auto g : levels[k]) hat[g] = weights[k];
  }
  return hat;
}

/// Subgroups strictly inside k with nothing strictly between.
std::vector<const Subgroup*> maximal_proper(const Subgroup& k, const std::vector<Subgroup>& all) {
  std::vector<const Subgroup*> inside;
  for (const auto& h : all) {
    if (h.size() < k.size() && h.is_subgroup_of(k)) inside.push_back(&h);
  }
  std::vector<const Subgroup*> out;
  for (const auto* h : inside) {
    bool maximal = true;
    for (const auto* l : inside) {
      if (l->size() > h->size() && h->is_subgroup_of(*l)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(h);
  }
  return out;
}

struct Peeling {
  std::vector<Complex> mu_hat;
  std::vector<std::vector<Index>> levels;
  std::size_t zero = 0;
  std::vector<double> a;
  std::vector<GroupFunction> mu_k;
  std::vector<double> mu_k_norm;
  double mu_norm = 0.0;
};

Peeling peel(const GroupFunction& mu, const DecaySequence& seq, const PipelineOptions& options) {
  if (mu.side != Side::Primal) throw Error(ErrorCode::SideMismatch, "measure density must be primal");
  Peeling p;
  p.mu_hat = dft(mu, Direction::Forward).values;
  p.levels = level_sets(p.mu_hat, seq, options.level_tol, &p.zero);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    p.a.push_back(seq.a(k));
    auto hat = level_spectrum(mu.group, p.levels, k, k + 1, std::vector<double>(seq.size(), 1.0));
    p.mu_k.push_back(inverse_of(mu.group, std::move(hat)));
    p.mu_k_norm.push_back(l1_norm(p.mu_k.back()));
  }
  p.mu_norm = l1_norm(mu);
  return p;
}

/// a_n^-1 tau_n built in the transform domain: a_k / a_n on levels k >= n.
GroupFunction scaled_tail(const FiniteAbelianGroup& group, const Peeling& p, const DecaySequence& seq,
                          std::size_t n) {
  std::vector<double> w(seq.size(), 0.0);
  for (std::size_t k = n; k < seq.size(); ++k) w[k] = std::exp(seq.log_a[k] - seq.log_a[n]);
  return inverse_of(group, level_spectrum(group, p.levels, n, seq.size(), w));
}

void fill_common(PipelineReport& report, const GroupFunction& mu, const DecaySequence& seq, const Peeling& p,
                 const PipelineOptions& options, bool glow) {
  report.group = mu.group.spec();
  report.sequence = seq;
  report.levels = p.levels;
  report.zero_set = p.zero;
  report.mu_norm = p.mu_norm;

  const std::size_t n_levels = seq.size();
  GroupFunction tau = mu;
  for (std::size_t n = 0; n < n_levels; ++n) {
    PipelineStep step;
    step.n = n + 1;
    step.a = p.a[n];
    step.log_a = seq.log_a[n];
    step.level_size = p.levels[n].size();
    const auto scaled = scaled_tail(mu.group, p, seq, n);
    const double scaled_norm = l1_norm(scaled);
    step.tau_norm = std::exp(step.log_a + std::log(scaled_norm));
    if (scaled_norm == 0.0) step.tau_norm = 0.0;
    step.approximate = step.a < DBL_EPSILON * std::max(p.mu_norm, DBL_MIN);
    step.tau_bound = leq(step.tau_norm, std::exp(-0.5 * step.log_a), options.exact_tol, glow);
    step.mu_norm = p.mu_k_norm[n];
    step.mu_bound = leq(step.mu_norm, 1.5 * std::exp(-1.5 * step.log_a) + 0.5, options.exact_tol, glow);
    step.scaled_norm = informational(leq(scaled_norm, std::exp(-1.5 * step.log_a), options.exact_tol));

    // Recursion tau_{n+1} = tau_n - a_n mu_n against the direct tail.
    std::vector<Complex> direct_hat(mu.group.order(), 0.0);
    for (std::size_t k = n; k < n_levels; ++k) {
      for (auto g : p.levels[k]) direct_hat[g] = p.a[k];
    }
    report.telescoping_error =
        std::max(report.telescoping_error, max_abs_diff(tau, inverse_of(mu.group, std::move(direct_hat))));
    tau -= p.a[n] * p.mu_k[n];
    report.steps.push_back(std::move(step));
  }
  if (n_levels > 0) {
    report.telescoping_error = std::max(report.telescoping_error, linf_norm(tau));
  }

  std::vector<double> squares(n_levels);
  for (std::size_t k = 0; k < n_levels; ++k) squares[k] = std::exp(2.0 * seq.log_a[k]);
  for (std::size_t n = 1; n <= n_levels; ++n) {
    for (std::size_t m = 1; m < n; ++m) {
      RhoGap gap;
      gap.m = m;
      gap.n = n;
      gap.gap = l1_norm(inverse_of(mu.group, level_spectrum(mu.group, p.levels, m, n, squares)));
      gap.bound = glow ? std::pow(3.0, -static_cast<double>(m)) : 6.0 / std::pow(2.0, static_cast<double>(m));
      gap.pass = gap.gap <= gap.bound + options.exact_tol;
      report.rho_gaps.push_back(gap);
    }
  }
  GroupFunction rho = GroupFunction::zeros(mu.group, Side::Primal);
  for (std::size_t k = 0; k < n_levels; ++k) rho += squares[k] * p.mu_k[k];
  const auto rho_hat = dft(rho, Direction::Forward).values;
  std::vector<Complex> mu_sq(p.mu_hat.size());
  for (std::size_t i = 0; i < mu_sq.size(); ++i) mu_sq[i] = p.mu_hat[i] * p.mu_hat[i];
  report.rho_square = leq(max_abs_diff(rho_hat, mu_sq), 0.0, options.exact_tol);

  const auto natural = natural_spectrum_check(mu);
  report.sigma = natural.sigma;
  report.natural_spectrum = natural.natural;
  report.strong_continuity = true;
  report.notes.push_back("strong continuity is vacuous on a finite group: there are no infinite-index subgroups");
  report.notes.push_back("every measure on a finite group has natural spectrum; the inference back to the "
                         "conclusion is not computed");

  for (std::size_t n = 0; n < n_levels; ++n) {
    QReport q;
    q.n = n + 1;
    q.r = std::ceil(17.0 * std::exp(-2.0 * seq.log_a[n]));
    for (const auto& v : p.mu_hat) {
      if (std::abs(v) >= p.a[n] * (1.0 - options.level_tol)) ++q.q_size;
    }
    q.norm_hypothesis = informational(lt(p.mu_norm / p.a[n], std::sqrt(q.r) / 4.0));
    const double log_ratio = n + 1 < n_levels ? seq.log_a[n + 1] - seq.log_a[n] : -HUGE_VAL;
    q.decay_hypothesis = informational(leq(log_ratio, -q.r));
    q.log_bound_cubic = options.c_prime * q.r * q.r * q.r;
    q.log_bound_r2logr = options.c_prime * q.r * q.r * std::log(q.r);
    const double log_q = q.q_size == 0 ? -HUGE_VAL : std::log(static_cast<double>(q.q_size));
    q.within_cubic = log_q <= q.log_bound_cubic;
    q.within_r2logr = log_q <= q.log_bound_r2logr;
    report.q_reports.push_back(q);
  }
}

void finish(PipelineReport& report, const PipelineOptions& options) {
  bool ok = report.rho_square.pass && report.telescoping_error <= options.exact_tol;
  for (const auto& s : report.steps) ok = ok && s.pass;
  for (const auto& g : report.rho_gaps) ok = ok && g.pass;
  report.verdict = ok;
}

}  // namespace

std::string_view mode_name(SequenceMode mode) noexcept {
  switch (mode) {
    case SequenceMode::LiteralGlow: return "literal_glow";
    case SequenceMode::LiteralNajp: return "literal_najp";
    case SequenceMode::Empirical: return "empirical";
  }
  return "?";
}

SequenceMode parse_mode(std::string_view name) {
  if (name == "literal_glow") return SequenceMode::LiteralGlow;
  if (name == "literal_najp") return SequenceMode::LiteralNajp;
  if (name == "empirical") return SequenceMode::Empirical;
  throw Error(ErrorCode::Parse, "unknown sequence mode '" + std::string(name) + "'");
}

double log_glow_delta(double log_x, double delta_prime) {
  const double paper = -std::log(9.0) - 18.0 * std::exp(-2.0 * log_x);
  return std::min(paper, std::log(delta_prime));
}

double najp_drop(double log_x, double c_double_prime) { return std::exp(c_double_prime * std::exp(-6.0 * log_x)); }

std::size_t max_literal_length(double a1, SequenceMode mode, const SequenceParams& params, std::size_t limit) {
  if (mode == SequenceMode::Empirical) return limit;
  double log_a = std::log(a1);
  std::size_t len = 1;
  while (len < limit) {
    const double next = next_literal(log_a, mode, params);
    if (!representable(next)) break;
    log_a = next;
    ++len;
  }
  return len;
}

DecaySequence make_sequence(double a1, std::size_t length, SequenceMode mode, const SequenceParams& params) {
  if (!(a1 > 0.0 && a1 <= 1.0)) throw Error(ErrorCode::InvalidArgument, "a1 must lie in (0, 1]");
  if (mode == SequenceMode::Empirical) {
    throw Error(ErrorCode::InvalidArgument, "empirical sequences are built from explicit values");
  }
  if (params.delta_prime <= 0.0) throw Error(ErrorCode::InvalidArgument, "delta' must be positive");
  DecaySequence seq;
  seq.mode = mode;
  seq.params = params;
  if (length == 0) return seq;
  seq.log_a.push_back(std::log(a1));
  while (seq.log_a.size() < length) {
    const double next = next_literal(seq.log_a.back(), mode, params);
    if (!representable(next)) {
      throw Error(ErrorCode::Unrepresentable, "term " + std::to_string(seq.log_a.size() + 1) +
                                                  " leaves double range; maximal representable length is " +
                                                  std::to_string(seq.log_a.size()));
    }
    seq.checks.push_back(literal_check(seq.log_a.back(), next, mode, params));
    seq.log_a.push_back(next);
  }
  return seq;
}

DecaySequence make_empirical(const std::vector<double>& values) {
  DecaySequence seq;
  seq.mode = SequenceMode::Empirical;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw Error(ErrorCode::InvalidArgument, "sequence values must be positive and finite");
    }
    if (i == 0 && values[i] > 1.0) throw Error(ErrorCode::InvalidArgument, "a1 must be at most 1");
    if (i > 0 && !(values[i] < values[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "sequence must be strictly decreasing");
    }
    seq.log_a.push_back(std::log(values[i]));
    if (i > 0) seq.checks.push_back("n/a");
  }
  return seq;
}

std::string_view preset_name(Preset preset) noexcept {
  return preset == Preset::Nested ? "nested" : "random_disjoint";
}

Preset parse_preset(std::string_view name) {
  if (name == "nested" || name == "nested_annihilator") return Preset::Nested;
  if (name == "random_disjoint" || name == "random") return Preset::RandomDisjoint;
  throw Error(ErrorCode::Parse, "unknown preset '" + std::string(name) + "'");
}

SynthResult synth_measure(const FiniteAbelianGroup& group, const DecaySequence& seq, Preset preset,
                          std::uint64_t seed, const std::vector<Subgroup>* chain, std::size_t enumeration_cap) {
  SynthResult out;
  const std::size_t n_levels = seq.size();
  std::vector<double> a(n_levels);
  for (std::size_t k = 0; k < n_levels; ++k) a[k] = seq.a(k);
  std::mt19937_64 rng(seed);

  if (preset == Preset::Nested) {
    std::vector<Subgroup> ks;
    if (chain != nullptr) {
      if (chain->size() < n_levels) {
        throw Error(ErrorCode::NotEnoughSpectrum, "chain has " + std::to_string(chain->size()) + " groups for " +
                                                      std::to_string(n_levels) + " levels");
      }
      for (std::size_t k = 0; k < n_levels; ++k) {
        const auto& h = (*chain)[k];
        if (!(h.parent() == group)) throw Error(ErrorCode::ParentMismatch, "chain subgroup of another group");
        if (k > 0 && !(h.is_subgroup_of(ks.back()) && h.size() < ks.back().size())) {
          throw Error(ErrorCode::InvalidArgument, "chain must be strictly decreasing");
        }
        ks.push_back(h);
      }
    } else if (n_levels > 0) {
      ks.push_back(whole_group(group));
      std::vector<Subgroup> all;
      if (n_levels > 1) all = enumerate_subgroups(group, enumeration_cap);
      while (ks.size() < n_levels) {
        const auto options = maximal_proper(ks.back(), all);
        if (options.empty()) {
          throw Error(ErrorCode::NotEnoughSpectrum, "subgroup chain ends after " + std::to_string(ks.size()) +
                                                        " levels; " + std::to_string(n_levels) + " requested");
        }
        ks.push_back(*options[rng() % options.size()]);
      }
    }
    std::vector<char> used(group.order(), 0);
    for (std::size_t k = 0; k < n_levels; ++k) {
      std::vector<Index> level;
      const auto perp = annihilator(group, ks[k]);
      for (auto g : perp.elements()) {
        if (!used[g]) {
          used[g] = 1;
          level.push_back(g);
        }
      }
      out.levels.push_back(std::move(level));
      out.chain.push_back(ks[k].elements());
    }
  } else {
    std::vector<std::vector<Index>> pairs;
    for (Index g = 0; g < group.order(); ++g) {
      const Index h = group.neg(g);
      if (g < h) pairs.push_back({g, h});
      if (g == h) pairs.push_back({g});
    }
    if (pairs.size() < n_levels) {
      throw Error(ErrorCode::NotEnoughSpectrum, std::to_string(pairs.size()) + " symmetric sets for " +
                                                    std::to_string(n_levels) + " levels");
    }
    for (std::size_t i = pairs.size(); i-- > 1;) std::swap(pairs[i], pairs[rng() % (i + 1)]);
    for (std::size_t k = 0; k < n_levels; ++k) {
      auto level = pairs[k];
      std::sort(level.begin(), level.end());
      out.levels.push_back(std::move(level));
    }
  }

  out.mu_hat = level_spectrum(group, out.levels, 0, n_levels, a);
  out.mu = inverse_of(group, out.mu_hat);
  for (auto& v : out.mu.values) v = Complex(v.real(), 0.0);
  out.norm = l1_norm(out.mu);
  out.range_error = max_abs_diff(dft(out.mu, Direction::Forward).values, out.mu_hat);
  if (out.norm > 1.0 + 1e-12) out.status = "NormExceedsOne";
  return out;
}

std::vector<std::vector<Index>> level_sets(const std::vector<Complex>& mu_hat, const DecaySequence& seq, double tol,
                                           std::size_t* zero_count) {
  std::vector<std::vector<Index>> levels(seq.size());
  std::size_t zero = 0;
  for (Index g = 0; g < mu_hat.size(); ++g) {
    const Complex v = mu_hat[g];
    double best = std::abs(v);
    std::size_t best_k = seq.size();
    for (std::size_t k = 0; k < seq.size(); ++k) {
      const double d = std::abs(v - Complex(seq.a(k), 0.0));
      if (d < best) {
        best = d;
        best_k = k;
      }
    }
    if (best > tol) {
      std::ostringstream os;
      os.precision(17);
      os << "transform value (" << v.real() << ", " << v.imag() << ") at index " << g << " matches no level";
      throw Error(ErrorCode::LevelMismatch, os.str());
    }
    if (best_k == seq.size()) {
      ++zero;
    } else {
      levels[best_k].push_back(g);
    }
  }
  if (zero_count != nullptr) *zero_count = zero;
  return levels;
}

PipelineReport glow_run(const GroupFunction& mu, const DecaySequence& seq, const PipelineOptions& options) {
  const auto p = peel(mu, seq, options);
  PipelineReport report;
  report.kind = "glow";
  fill_common(report, mu, seq, p, options, true);
  CertifyOptions copt = options.certify;
  copt.threshold = options.rounding_threshold;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    auto& step = report.steps[n];
    const auto scaled = scaled_tail(mu.group, p, seq, n);
    auto& rec = step.skn;
    try {
      const auto skn = skn_finite(scaled, 0.5, 0.5, copt);
      rec.ran = true;
      rec.mu_z_norm = skn.mu_z_norm;
      rec.bound = skn.bound.rhs;
      rec.distance = skn.certificate.distance;
      std::vector<std::int64_t> want(mu.group.order(), 0);
      for (auto g : p.levels[n]) want[g] = 1;
      rec.rounding_matches_level = skn.mu_hat_z == want;
      rec.verdict = skn.certificate.verdict && skn.bound.pass && skn.bridge.pass && rec.rounding_matches_level;
      if (!rec.rounding_matches_level) rec.note = "rounded transform differs from the level indicator";
    } catch (const Error& e) {
      rec.ran = false;
      rec.verdict = false;
      rec.distance = dist_to_int(real_reduce(dft(scaled, Direction::Forward)).real);
      rec.note = e.what();
    }
    step.pass = step.tau_bound.pass && step.mu_bound.pass && rec.verdict;
  }
  finish(report, options);
  return report;
}

PipelineReport najp_run(const GroupFunction& mu, const DecaySequence& seq, const PipelineOptions& options) {
  const auto p = peel(mu, seq, options);
  PipelineReport report;
  report.kind = "najp";
  fill_common(report, mu, seq, p, options, false);
  const auto& group = mu.group;
  GroupFunction nu = GroupFunction::zeros(group, Side::Primal);
  std::vector<Index> lambda;
  std::vector<char> in_lambda(group.order(), 0);
  const double tol = 1e-9;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    auto& step = report.steps[n];
    nu += p.a[n] * p.mu_k[n];
    for (auto g : p.levels[n]) {
      lambda.push_back(g);
      in_lambda[g] = 1;
    }
    std::sort(lambda.begin(), lambda.end());
    step.nu_norm = l1_norm(nu);
    step.nu_bound = leq(step.nu_norm, 3.0, options.exact_tol);
    step.amu_bound = leq(p.a[n] * p.mu_k_norm[n], 6.0, options.exact_tol);

    auto& maj = step.majorant;
    if (lambda.empty()) {
      maj.pass = true;
      step.convolution_norm = leq(0.0, 0.0);
      step.pass = step.nu_bound.pass && step.amu_bound.pass;
      continue;
    }
    const auto poly = bpb_search(group, lambda, 1.0, options.bpb_constant, options.lp);
    const auto f = to_function(group, poly.values);
    const auto diff = convolve(mu, f) - nu;
    maj.f_l1 = l1_norm(f);
    for (const auto& v : poly.transform) {
      if (std::abs(v) > 1e-12) ++maj.f_support;
    }
    maj.lhs = l1_norm(diff);
    maj.sup_norm = linf_norm(diff);
    for (Index g = 0; g < group.order(); ++g) {
      if (!in_lambda[g]) maj.tail_sum += std::abs(p.mu_hat[g] * poly.transform[g]);
    }
    const double next_a = n + 1 < seq.size() ? p.a[n + 1] : 0.0;
    maj.rhs = maj.f_l1 * next_a * static_cast<double>(maj.f_support);
    maj.pass = maj.lhs <= maj.sup_norm + tol && maj.sup_norm <= maj.tail_sum + tol && maj.tail_sum <= maj.rhs + tol;
    step.convolution_norm = leq(l1_norm(convolve(mu, f)), p.mu_norm * maj.f_l1, tol);
    step.pass = step.nu_bound.pass && step.amu_bound.pass && maj.pass && step.convolution_norm.pass;
  }
  finish(report, options);
  return report;
}

std::string pipeline_csv(const PipelineReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "n,a_n,tau_norm,bound,verdict\n";
  for (const auto& s : report.steps) {
    os << s.n << ',' << s.a << ',' << s.tau_norm << ',' << s.tau_bound.rhs << ',' << (s.pass ? "pass" : "fail")
       << '\n';
  }
  return os.str();
}

}  // namespace natspec
