#include "natspec/certifier.hpp"

#include <algorithm>
#include <cmath>

namespace natspec {

namespace {

constexpr double kUnbounded = std::numeric_limits<double>::max();

bool all_zero(const std::vector<std::int64_t>& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

class Certifier {
 public:
  Certifier(const CertifyOptions& opt, const FiniteAbelianGroup& group, double eta_scale, std::size_t depth_cap)
      : opt_(opt), group_(group), eta_scale_(eta_scale), depth_cap_(depth_cap) {
    subgroups_ = enumerate_subgroups(group, opt.decompose.enumeration_cap);
  }

  std::size_t level(const GroupFunction& f, double eps1, double eps2, double m, std::size_t depth) {
    if (depth > depth_cap_) {
      throw Error(ErrorCode::DepthExceeded, "mass failed to drop within " + std::to_string(depth_cap_) + " levels");
    }
    const std::size_t idx = steps_.size();
    steps_.emplace_back();
    TwsStep step;
    step.depth = depth;
    step.m = m;
    step.eps1 = eps1;
    step.eps2 = eps2;
    step.a_norm = a_norm(f);
    step.distance = dist_to_int(f);
    step.linf = linf_norm(f);
    const double target = (1.0 + eps1) * step.a_norm + eps2;

    if (step.distance >= 0.5 - kDefaultRoundingMargin) {
      step.note = "rounding undefined at this level";
      return finish_failed(idx, std::move(step), target);
    }
    const auto rounded = round_int(f);
    if (all_zero(rounded.integers)) {
      step.base = true;
      step.certified_upper = 0.0;
      step.p_check = leq(0.0, target, opt_.exact_tol);
      step.pass = step.p_check.pass;
      steps_[idx] = std::move(step);
      return idx;
    }

    const auto l = static_cast<std::size_t>(std::max(1.0, std::ceil(3.0 * m - 1e-12)));
    CorkeyOptions ck;
    ck.threshold = opt_.corkey_threshold;
    ck.exact_tol = opt_.exact_tol;
    ck.decompose = opt_.decompose;
    std::optional<CorkeySelector> selector;
    try {
      selector.emplace(f, m, ck, &subgroups_);
    } catch (const Error& e) {
      step.note = std::string("chain construction failed: ") + e.what();
      return finish_failed(idx, std::move(step), target);
    }

    // Schedule and chains.
    auto& sch = step.schedule;
    sch.m = m;
    sch.l = l;
    sch.halved = eta_scale_ != 1.0;
    double eta0 = std::isnan(opt_.eta0) ? opt_.threshold / 3.0 : opt_.eta0;
    eta0 = std::min(eta0, 1.0 / 6.0 - 1e-12) * eta_scale_;
    sch.etas.push_back(eta0);
    std::vector<CorkeyChain> chains;
    const double n = static_cast<double>(group_.order());
    for (std::size_t i = 0; i <= l; ++i) {
      chains.push_back(selector->chain(sch.etas[i]));
      const auto& ch = chains.back();
      const double cap = std::ceil((1.0 + eps1) * n / static_cast<double>(ch.k_group.size()) - 1e-12);
      sch.f_caps.push_back(cap);
      const double f_prime = std::exp(std::min(ch.log_f_prime, 700.0));
      sch.log_f_paper.push_back(std::min(kUnbounded, std::log1p(eps1) + 2.0 * f_prime * std::log(opt_.bpb_constant / eps1)));
      if (i < l) sch.etas.push_back(std::min(sch.etas[i], (eps2 / 4.0) / cap));
    }
    bool chains_ok = true;
    for (std::size_t i = 0; i <= l; ++i) {
      auto& ch = chains[i];
      for (std::size_t j = 0; j < i; ++j) {
        if (!ch.k_group.is_subgroup_of(chains[j].k_group)) ch.d = false;
      }
      ChainSummary s;
      s.eta = ch.eta;
      s.k_eta = ch.k_eta;
      s.k_group = ch.k_group.key();
      s.threshold = ch.threshold;
      s.log_f_prime = ch.log_f_prime;
      s.a = ch.a.pass;
      s.b = ch.b.pass;
      s.c = ch.c.pass;
      s.d = ch.d;
      s.dec = ch.dec;
      s.lower_k = ch.lower_k.pass;
      s.leakage = ch.leakage.pass;
      s.pass = ch.all_pass();
      chains_ok = chains_ok && s.pass;
      step.chains_nested = step.chains_nested && ch.d;
      step.chains.push_back(std::move(s));
    }

    // Pigeonhole selection of i0.
    std::vector<GroupFunction> proj;
    for (const auto& ch : chains) proj.push_back(band_project(f, ch.k_group));
    for (std::size_t i = 0; i < l; ++i) step.gaps.push_back(a_norm(proj[i] - proj[i + 1]));
    step.i0 = static_cast<std::size_t>(std::min_element(step.gaps.begin(), step.gaps.end()) - step.gaps.begin());
    const double ml = m / static_cast<double>(l);
    step.pigeonhole = leq(step.gaps[step.i0], ml, opt_.exact_tol);
    step.pigeonhole_literal = informational(lt(ml, 1.0 / 3.0));

    const Subgroup& kgroup = chains[step.i0].k_group;
    const Subgroup& hgroup = chains[step.i0 + 1].k_group;
    step.k_group = kgroup.key();
    step.h_group = hgroup.key();
    const GroupFunction& proj_k = proj[step.i0];
    const GroupFunction& proj_h = proj[step.i0 + 1];
    step.d_k = dist_to_int(proj_k);
    step.d_h = dist_to_int(proj_h);
    step.rounding_margin = lt(linf_norm(proj_k - proj_h) + step.d_k + step.d_h, 1.0);
    if (std::max(step.d_k, step.d_h) >= 0.5 - kDefaultRoundingMargin) {
      step.note = "projections not roundable";
      return finish_failed(idx, std::move(step), target);
    }
    const auto w_k = round_int(proj_k).integers;
    const auto w_h = round_int(proj_h).integers;
    step.kh_rounding_equal = w_k == w_h;

    // Dual witness.
    const GroupFunction w = from_integers(group_, w_h, f.side);
    const auto w_hat = transform_values(w);
    step.a_norm_w = 0.0;
    for (const auto& v : w_hat) step.a_norm_w += std::abs(v);
    const Subgroup perp = annihilator(group_, kgroup);
    GroupFunction phi0_hat = GroupFunction::zeros(group_, Side::Dual);
    for (auto gamma : perp.elements()) {
      const double r = std::abs(w_hat[gamma]);
      if (r > 1e-13) phi0_hat.values[gamma] = w_hat[gamma] / r;
    }
    const auto phi0 = dft(phi0_hat, Direction::Inverse).values;
    const QuotientDual quotient = quotient_dual_iso(group_, kgroup);
    const CharacterTable table = CharacterTable::of(quotient);
    auto& wit = step.witness;
    for (std::size_t c = 0; c < quotient.cosets.count(); ++c) {
      if (w_h[quotient.cosets.representatives[c]] != 0) wit.w_cosets.push_back(c);
    }
    if (wit.w_cosets.empty()) {
      step.note = "rounded projection vanishes";
      return finish_failed(idx, std::move(step), target);
    }
    wit.g = bpb_search(table, wit.w_cosets, eps1, opt_.bpb_constant, opt_.lp);
    wit.phi.resize(group_.order());
    for (Index x = 0; x < group_.order(); ++x) wit.phi[x] = phi0[x] * wit.g.transform[quotient.cosets.coset_of[x]];
    wit.phi_hat = transform_values(GroupFunction{group_, Side::Primal, wit.phi});
    Complex pairing = 0.0;
    for (Index x = 0; x < group_.order(); ++x) pairing += w.values[x] * std::conj(wit.phi[x]);
    pairing /= n;
    wit.pairing_imag = pairing.imag();
    wit.claim_a = eq(pairing.real(), step.a_norm_w, opt_.constraint_tol * std::max(1.0, step.a_norm_w));
    wit.claim_a.pass = wit.claim_a.pass && std::abs(pairing.imag()) <= opt_.constraint_tol * std::max(1.0, step.a_norm_w);
    double hat_max = 0.0;
    double off_perp = 0.0;
    for (Index g = 0; g < group_.order(); ++g) {
      hat_max = std::max(hat_max, std::abs(wit.phi_hat[g]));
      if (!perp.contains(g)) off_perp = std::max(off_perp, std::abs(wit.phi_hat[g]));
    }
    wit.claim_b = leq(hat_max, 1.0 + eps1, opt_.exact_tol);
    wit.claim_c = leq(off_perp, 0.0, opt_.exact_tol);
    wit.phi_l1 = 0.0;
    for (const auto& v : wit.phi) wit.phi_l1 += std::abs(v);
    wit.phi_l1 /= n;
    const double cap = sch.f_caps[step.i0];
    wit.claim_d = leq(wit.phi_l1, cap, opt_.exact_tol);

    // Inequality chain.
    step.a_norm_fh = a_norm(proj_h);
    const GroupFunction residual = f - proj_h;
    step.a_norm_residual = a_norm(residual);
    step.d_residual = dist_to_int(residual);
    step.rhs_measured = (1.0 + eps1) * step.a_norm_fh + step.d_h * wit.phi_l1;
    step.wazo = leq(step.a_norm_w, step.rhs_measured, 1e-9);
    const double eta_h = sch.etas[step.i0 + 1];
    step.wazo_schedule = informational(leq(step.a_norm_w, (1.0 + eps1) * step.a_norm_fh + 2.0 * eta_h * cap, 1e-9));
    step.d_h_small = informational(leq(step.d_h, 2.0 * eta_h, opt_.exact_tol));
    step.ju = eq(step.a_norm, step.a_norm_fh + step.a_norm_residual, opt_.exact_tol);
    step.zalind = leq(step.a_norm_residual, step.a_norm - 0.5, opt_.exact_tol);
    step.mass = leq(step.a_norm, m, opt_.exact_tol);
    step.aproxadd = lt(std::max({step.distance, step.d_h, step.d_residual}), 1.0 / 3.0);
    if (step.d_residual < 0.5 - kDefaultRoundingMargin) {
      const auto res_z = round_int(residual).integers;
      bool exact = true;
      for (Index x = 0; x < group_.order(); ++x) exact = exact && rounded.integers[x] == w_h[x] + res_z[x];
      step.aproxadd_exact = exact;
    }

    const bool required = chains_ok && step.chains_nested && step.pigeonhole.pass && step.rounding_margin.pass &&
                          step.kh_rounding_equal && wit.g.lp_certified && wit.claim_a.pass && wit.claim_b.pass &&
                          wit.claim_c.pass && wit.claim_d.pass && step.wazo.pass && step.ju.pass &&
                          step.zalind.pass && step.mass.pass && step.aproxadd.pass && step.aproxadd_exact;

    const std::size_t child = level(residual, eps1, eps2 / 2.0, m - 0.5, depth + 1);
    step.child = child;
    step.certified_upper = step.rhs_measured + steps_[child].certified_upper;
    step.p_check = leq(step.certified_upper, target, opt_.exact_tol);
    step.pass = required && step.p_check.pass && steps_[child].pass;
    steps_[idx] = std::move(step);
    return idx;
  }

  std::vector<TwsStep> take_steps() { return std::move(steps_); }

 private:
  std::size_t finish_failed(std::size_t idx, TwsStep step, double target) {
    step.certified_upper = kUnbounded;
    step.p_check = leq(kUnbounded, target, 0.0);
    step.pass = false;
    steps_[idx] = std::move(step);
    return idx;
  }

  const CertifyOptions& opt_;
  FiniteAbelianGroup group_;
  double eta_scale_;
  std::size_t depth_cap_;
  std::vector<Subgroup> subgroups_;
  std::vector<TwsStep> steps_;
};

}  // namespace

TwsCertificate certify_tws(const GroupFunction& f, double eps1, double eps2, const CertifyOptions& options) {
  if (!(eps1 > 0.0 && eps1 <= 1.0 && eps2 > 0.0 && eps2 <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "eps1 and eps2 must lie in (0, 1]");
  }
  TwsCertificate cert;
  cert.eps1 = eps1;
  cert.eps2 = eps2;
  cert.threshold = options.threshold;
  cert.distance = dist_to_int(f);
  if (cert.distance > options.threshold + options.exact_tol) {
    throw Error(ErrorCode::PreconditionRounding, "distance to the integers " + std::to_string(cert.distance) +
                                                     " exceeds the admission threshold " +
                                                     std::to_string(options.threshold));
  }
  cert.a_norm_f = a_norm(f);
  if (!std::isfinite(cert.a_norm_f)) throw Error(ErrorCode::InvalidArgument, "A-norm is not finite");
  cert.f_z = round_int(f).integers;
  cert.a_norm_fz = a_norm(from_integers(f.group, cert.f_z, f.side));
  const auto depth_cap = 2 * static_cast<std::size_t>(std::ceil(cert.a_norm_f)) + 2;

  auto run = [&](double scale) {
    Certifier c(options, f.group, scale, depth_cap);
    c.level(f, eps1, eps2, cert.a_norm_f, 0);
    return c.take_steps();
  };
  cert.steps = run(1.0);
  if (!cert.steps.front().pass && options.retry) {
    cert.steps = run(0.5);
    cert.retried = true;
  }
  cert.certified_upper = cert.steps.front().certified_upper;
  cert.bound = leq(cert.certified_upper, (1.0 + eps1) * cert.a_norm_f + eps2, options.exact_tol);
  cert.verdict = cert.steps.front().pass && cert.bound.pass;
  cert.schedule_note =
      "eta0 is a configured stand-in for the nonconstructive level threshold; on failure the schedule is retried "
      "once with every eta halved";
  return cert;
}

SknResult skn_finite(const GroupFunction& mu, double eps1, double eps2, const CertifyOptions& options) {
  if (mu.side != Side::Primal) throw Error(ErrorCode::SideMismatch, "measure density must be primal");
  SknResult out;
  const auto hat = dft(mu, Direction::Forward);
  const auto reduced = real_reduce(hat);
  out.imag_sup = reduced.imag_sup;
  if (out.imag_sup > kRealTolerance) {
    throw Error(ErrorCode::NotRealValued, "transform of the measure is not real");
  }
  const GroupFunction f = reduced.real;
  out.mu_norm = l1_norm(mu);
  out.mu_hat_a_norm = a_norm(f);
  out.bridge = eq(out.mu_norm, out.mu_hat_a_norm, options.exact_tol);
  out.certificate = certify_tws(f, eps1, eps2, options);
  out.mu_hat_z = out.certificate.f_z;
  out.mu_z = dft(from_integers(mu.group, out.mu_hat_z, Side::Dual), Direction::Inverse);
  out.mu_z_norm = l1_norm(out.mu_z);
  out.bound = leq(out.mu_z_norm, (1.0 + eps1) * out.mu_norm + eps2, options.constraint_tol);
  return out;
}

}  // namespace natspec
