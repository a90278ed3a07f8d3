// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "natspec/catalog.hpp"
#include "natspec/cli.hpp"
#include "natspec/io.hpp"
#include "natspec/selftest.hpp"

using namespace natspec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

constexpr std::uint64_t kSeed = 20240601;

// Direct character sums, independent of the library transform.
double direct_a_norm(const FiniteAbelianGroup& g, const std::vector<double>& f) {
  double total = 0.0;
  for (Index c = 0; c < g.order(); ++c) {
    Complex acc = 0.0;
    for (Index x = 0; x < g.order(); ++x) acc += f[x] * std::conj(pair(g, c, x));
    total += std::abs(acc) / static_cast<double>(g.order());
  }
  return total;
}

std::vector<Index> brute_annihilator(const FiniteAbelianGroup& g, const Subgroup& k) {
  std::vector<Index> out;
  for (Index c = 0; c < g.order(); ++c) {
    bool trivial = true;
    for (auto x : k.elements()) trivial = trivial && pair_is_trivial(g, c, x);
    if (trivial) out.push_back(c);
  }
  return out;
}

Outcome duality() {
  Outcome o;
  std::size_t subgroups = 0;
  double worst = 0.0;
  for (const auto& moduli : groups_up_to(64)) {
    const auto g = FiniteAbelianGroup::make(moduli);
    for (const auto& k : enumerate_subgroups(g, 64)) {
      ++subgroups;
      const auto perp = brute_annihilator(g, k);
      if (perp != annihilator(g, k).elements()) {
        o.pass = false;
        o.detail = "annihilator mismatch on " + g.spec();
      }
      if (perp.size() * k.size() != g.order()) {
        o.pass = false;
        o.detail = "count identity fails on " + g.spec();
      }
      const auto hat = dft(subgroup_haar(g, k), Direction::Forward);
      std::vector<char> in(g.order(), 0);
      for (auto c : perp) in[c] = 1;
      for (Index c = 0; c < g.order(); ++c) worst = std::max(worst, std::abs(hat.values[c] - (in[c] ? 1.0 : 0.0)));
    }
  }
  if (worst > 1e-12) o.pass = false;
  std::ostringstream os;
  os << subgroups << " subgroups, max |m_K^ - 1_perp| = " << worst;
  if (!o.detail.empty()) os << "; " << o.detail;
  o.detail = os.str();
  return o;
}

Outcome parseval() {
  Rng rng(kSeed);
  double worst_p = 0.0;
  double worst_r = 0.0;
  for (const auto& spec : standard_groups()) {
    const auto g = FiniteAbelianGroup::parse(spec);
    for (int t = 0; t < 50; ++t) {
      auto f = random_function(g, rng);
      for (auto& v : f.values) v += Complex(0.0, rng.uniform(-1.0, 1.0));
      const auto hat = dft(f, Direction::Forward);
      double lhs = 0.0;
      double rhs = 0.0;
      for (const auto& v : f.values) lhs += std::norm(v);
      lhs /= static_cast<double>(g.order());
      for (const auto& v : hat.values) rhs += std::norm(v);
      worst_p = std::max(worst_p, std::abs(lhs - rhs) / lhs);
      worst_r = std::max(worst_r, max_abs_diff(dft(hat, Direction::Inverse), f));
    }
  }
  std::ostringstream os;
  os << "600 functions, Parseval rel " << worst_p << ", roundtrip " << worst_r;
  return {worst_p <= 1e-9 && worst_r <= 1e-10, os.str()};
}

Outcome additivity() {
  Rng rng(kSeed + 3);
  std::vector<FiniteAbelianGroup> groups;
  for (const auto& m : groups_up_to(64)) groups.push_back(FiniteAbelianGroup::make(m));
  std::size_t failures = 0;
  std::size_t rejected = 0;
  const std::size_t trials = 10000;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& g = groups[t % groups.size()];
    auto gf = GroupFunction::zeros(g, Side::Primal);
    auto hf = GroupFunction::zeros(g, Side::Primal);
    for (Index i = 0; i < g.order(); ++i) {
      gf[i] = std::round(rng.uniform(-5.0, 5.0)) + rng.uniform(-0.166, 0.166);
      hf[i] = std::round(rng.uniform(-5.0, 5.0)) + rng.uniform(-0.166, 0.166);
    }
    const auto ff = gf + hf;
    if (!(dist_to_int(gf) < 1.0 / 3 && dist_to_int(hf) < 1.0 / 3 && dist_to_int(ff) < 1.0 / 3)) {
      ++rejected;
      continue;
    }
    const auto rf = round_int(ff).integers;
    const auto rg = round_int(gf).integers;
    const auto rh = round_int(hf).integers;
    for (Index i = 0; i < g.order(); ++i) {
      if (rf[i] != rg[i] + rh[i]) {
        ++failures;
        break;
      }
    }
  }
  std::ostringstream os;
  os << trials << " triples, " << failures << " failures, " << rejected << " rejected";
  return {failures == 0 && rejected == 0, os.str()};
}

// min ||f||_1 subject to the interpolation equations, by enumerating
// linearly independent point supports (basic solutions).
double brute_min_l1(const FiniteAbelianGroup& g, const std::vector<std::size_t>& lambda,
                    const std::vector<std::size_t>& support) {
  const std::size_t n = g.order();
  std::vector<char> in_l(n, 0), in_s(n, 0);
  for (auto c : lambda) in_l[c] = 1;
  for (auto c : support) in_s[c] = 1;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (Index c = 0; c < n; ++c) {
    if (in_s[c] && !in_l[c]) continue;
    std::vector<double> re(n), im(n);
    for (Index p = 0; p < n; ++p) {
      const auto v = std::conj(pair(g, c, p)) / static_cast<double>(n);
      re[p] = v.real();
      im[p] = v.imag();
    }
    rows.push_back(re);
    rhs.push_back(in_l[c] ? 1.0 : 0.0);
    rows.push_back(im);
    rhs.push_back(0.0);
  }
  double best = HUGE_VAL;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t p = 0; p < n; ++p) {
      if (mask >> p & 1) cols.push_back(p);
    }
    const std::size_t k = cols.size();
    // Normal equations on the chosen columns.
    std::vector<double> m(k * k, 0.0), r(k, 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t a = 0; a < k; ++a) {
        r[a] += rows[i][cols[a]] * rhs[i];
        for (std::size_t b = 0; b < k; ++b) m[a * k + b] += rows[i][cols[a]] * rows[i][cols[b]];
      }
    }
    std::vector<double> x(k, 0.0);
    if (k > 0) {
      // Gaussian elimination with partial pivoting; singular means dependent columns.
      bool singular = false;
      for (std::size_t col = 0; col < k && !singular; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < k; ++i) {
          if (std::abs(m[i * k + col]) > std::abs(m[piv * k + col])) piv = i;
        }
        if (std::abs(m[piv * k + col]) < 1e-12) {
          singular = true;
          break;
        }
        for (std::size_t j = 0; j < k; ++j) std::swap(m[col * k + j], m[piv * k + j]);
        std::swap(r[col], r[piv]);
        for (std::size_t i = col + 1; i < k; ++i) {
          const double f = m[i * k + col] / m[col * k + col];
          for (std::size_t j = col; j < k; ++j) m[i * k + j] -= f * m[col * k + j];
          r[i] -= f * r[col];
        }
      }
      if (singular) continue;
      for (std::size_t i = k; i-- > 0;) {
        double acc = r[i];
        for (std::size_t j = i + 1; j < k; ++j) acc -= m[i * k + j] * x[j];
        x[i] = acc / m[i * k + i];
      }
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double acc = -rhs[i];
      for (std::size_t a = 0; a < k; ++a) acc += rows[i][cols[a]] * x[a];
      residual = std::max(residual, std::abs(acc));
    }
    if (residual > 1e-9) continue;
    double l1 = 0.0;
    for (double v : x) l1 += std::abs(v);
    best = std::min(best, l1 / static_cast<double>(n));
  }
  return best;
}

Outcome lp_oracle() {
  std::size_t cases = 0;
  std::size_t searches = 0;
  double worst = 0.0;
  double worst_interp = 0.0;
  double worst_excess = -HUGE_VAL;
  std::string detail;
  bool ok = true;
  for (const auto& moduli : groups_up_to(8)) {
    const auto g = FiniteAbelianGroup::make(moduli);
    const std::size_t n = g.order();
    const auto table = CharacterTable::of(g);
    std::map<std::vector<std::size_t>, bool> searched;
    for (std::size_t smask = 1; smask < (std::size_t{1} << n); ++smask) {
      std::vector<std::size_t> s;
      for (std::size_t c = 0; c < n; ++c) {
        if (smask >> c & 1) s.push_back(c);
      }
      if (s.size() > 4) continue;
      for (std::size_t lmask = 1; lmask < (std::size_t{1} << s.size()); ++lmask) {
        std::vector<std::size_t> l;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (lmask >> i & 1) l.push_back(s[i]);
        }
        const auto ls = symmetrize(table, l);
        const auto ss = symmetrize(table, s);
        const double want = brute_min_l1(g, ls, ss);
        ++cases;
        try {
          const auto sol = lp_min_l1(g, l, s);
          worst = std::max(worst, std::abs(sol.optimum - want));
          if (std::abs(sol.optimum - want) > 1e-6) {
            ok = false;
            detail = "mismatch on " + g.spec();
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Infeasible || std::isfinite(want)) {
            ok = false;
            detail = std::string("unexpected ") + e.what();
          }
        }
        if (searched.emplace(ls, true).second) {
          for (double eps : {0.25, 1.0}) {
            const auto poly = bpb_search(g, l, eps);
            ++searches;
            worst_interp = std::max(worst_interp, poly.interpolation_error);
            worst_excess = std::max(worst_excess, poly.l1 - (1.0 + eps));
            if (poly.interpolation_error > 1e-8 || poly.l1 > 1.0 + eps + 1e-8) {
              ok = false;
              detail = "search bound fails on " + g.spec();
            }
          }
        }
      }
    }
  }
  std::ostringstream os;
  os << cases << " LPs vs vertex enumeration, max gap " << worst << "; " << searches
     << " searches, max interpolation error " << worst_interp << ", max l1 - (1+eps) " << worst_excess;
  if (!detail.empty()) os << "; " << detail;
  return {ok, os.str()};
}

Outcome corkey_suite() {
  const auto catalog = tws_catalog(kSeed);
  const std::vector<double> etas = {0.25, 0.125, 0.0625, 0.03125};
  std::size_t chains = 0;
  std::size_t failed = 0;
  std::string first_fail;
  for (const auto& inst : catalog) {
    const double m = a_norm(inst.f);
    std::vector<CorkeyChain> built;
    try {
      built = corkey_build(inst.f, etas, m);
    } catch (const Error& e) {
      ++failed;
      if (first_fail.empty()) first_fail = inst.name + ": " + e.what();
      continue;
    }
    for (const auto& c : built) {
      ++chains;
      const bool ok = c.a.pass && c.b.pass && c.c.pass && c.d && c.dec && c.lower_k.pass;
      if (!ok) {
        ++failed;
        if (first_fail.empty()) first_fail = inst.name;
      }
    }
  }
  std::ostringstream os;
  os << catalog.size() << " instances, " << chains << " chains, " << failed << " failures";
  if (!first_fail.empty()) os << " (first: " << first_fail << ")";
  return {failed == 0, os.str()};
}

Outcome tws_suite() {
  const auto catalog = tws_catalog(kSeed);
  std::size_t passes = 0;
  std::size_t runs = 0;
  std::size_t bad = 0;
  std::string first;
  for (double eps : {0.25, 0.5, 1.0}) {
    for (const auto& inst : catalog) {
      ++runs;
      const auto cert = certify_tws(inst.f, eps, eps);
      std::vector<double> fz(inst.f.size());
      for (Index i = 0; i < fz.size(); ++i) fz[i] = std::round(inst.f.values[i].real());
      const double direct = direct_a_norm(inst.f.group, fz);
      std::vector<double> fr(inst.f.size());
      for (Index i = 0; i < fr.size(); ++i) fr[i] = inst.f.values[i].real();
      const double norm_f = direct_a_norm(inst.f.group, fr);
      bool ok = true;
      if (cert.verdict) {
        ++passes;
        ok = direct <= (1.0 + eps) * norm_f + eps + 1e-8;
      }
      if (!inst.perturbed) ok = ok && cert.verdict && cert.a_norm_fz == cert.a_norm_f;
      if (!ok) {
        ++bad;
        if (first.empty()) first = inst.name;
      }
    }
  }
  std::ostringstream os;
  os << catalog.size() << " instances x 3 eps: " << passes << "/" << runs << " pass verdicts confirmed, " << bad
     << " problems";
  if (!first.empty()) os << " (first: " << first << ")";
  return {bad == 0 && catalog.size() >= 200, os.str()};
}

Outcome skn_bridge() {
  Rng rng(kSeed + 7);
  CertifyOptions options;
  options.decompose.enumeration_cap = 256;
  std::size_t runs = 0;
  std::size_t bad = 0;
  double worst = 0.0;
  std::string first;
  for (const auto& spec : standard_groups()) {
    const auto g = FiniteAbelianGroup::parse(spec);
    for (int t = 0; t < 100; ++t) {
      const auto mu = random_measure(g, rng);
      ++runs;
      const auto hat = real_reduce(dft(mu, Direction::Forward)).real;
      std::vector<double> dens(mu.size());
      for (Index i = 0; i < dens.size(); ++i) dens[i] = mu.values[i].real();
      double l1 = 0.0;
      for (double v : dens) l1 += std::abs(v);
      l1 /= static_cast<double>(g.order());
      // A-norm of the transform on the dual: character sums back over the points.
      double a = 0.0;
      for (Index x = 0; x < g.order(); ++x) {
        Complex acc = 0.0;
        for (Index c = 0; c < g.order(); ++c) acc += hat.values[c] * std::conj(pair(g, c, x));
        a += std::abs(acc);
      }
      a /= static_cast<double>(g.order());
      worst = std::max(worst, std::abs(l1 - a));
      bool ok = std::abs(l1 - a) <= 1e-10;
      const auto skn = skn_finite(mu, 0.5, 0.5, options);
      const auto tws = certify_tws(hat, 0.5, 0.5, options);
      ok = ok && skn.bridge.pass && skn.certificate.verdict == tws.verdict;
      if (!ok) {
        ++bad;
        if (first.empty()) first = spec;
      }
    }
  }
  std::ostringstream os;
  os << runs << " measures, max bridge gap " << worst << ", " << bad << " problems";
  if (!first.empty()) os << " (first: " << first << ")";
  return {bad == 0, os.str()};
}

Outcome riemann_suite() {
  const auto two = riemann_preset("two_frequency");
  const auto t = riemann_a_norm(two.h_moduli, two.d, two.freqs, parse_ladder("512,...,8192"));
  const double v512 = t.rows.front().value;
  const double v8192 = t.rows.back().value;
  const auto one = riemann_preset("single");
  const auto s = riemann_a_norm(one.h_moduli, one.d, one.freqs, parse_ladder("64,...,8192"));
  double worst_single = 0.0;
  for (const auto& r : s.rows) worst_single = std::max(worst_single, std::abs(r.value - 1.0));
  std::ostringstream os;
  os.precision(12);
  os << "two-frequency N=512 " << v512 << ", N=8192 " << v8192 << " (4/pi = " << 4.0 / std::numbers::pi
     << "), single max |v - 1| " << worst_single;
  return {std::abs(v512 - v8192) <= 1e-3 && worst_single <= 1e-12, os.str()};
}

bool induction_ok(const PipelineReport& r) {
  bool ok = r.verdict;
  for (const auto& s : r.steps) ok = ok && s.tau_bound.pass && s.mu_bound.pass;
  return ok;
}

Outcome pipelines() {
  Outcome o;
  std::ostringstream os;
  const auto seq = make_empirical({0.5, 0.02});
  {
    const auto g = FiniteAbelianGroup::parse("4");
    const std::vector<Index> two = {2};
    const std::vector<Subgroup> chain = {whole_group(g), subgroup_span(g, std::span<const Index>(two))};
    const auto synth = synth_measure(g, seq, Preset::Nested, kSeed, &chain);
    const auto r = glow_run(synth.mu, seq);
    const std::vector<double> rho = {0.25, 0.0, 0.0004, 0.0};
    double rho_err = 0.0;
    const auto hat = dft(synth.mu, Direction::Forward).values;
    for (std::size_t i = 0; i < 4; ++i) rho_err = std::max(rho_err, std::abs(hat[i] * hat[i] - rho[i]));
    const bool z4 = std::abs(r.mu_norm - 0.5) <= 1e-10 && std::abs(r.steps.at(1).tau_norm - 0.02) <= 1e-10 &&
                    std::abs(r.steps.at(0).mu_norm - 1.0) <= 1e-10 && rho_err <= 1e-10 && r.rho_square.pass &&
                    induction_ok(r);
    o.pass = o.pass && z4;
    os << "Z4 " << (z4 ? "ok" : "FAILED");
  }
  std::size_t instances = 0;
  std::size_t bad = 0;
  std::string first;
  for (const auto& spec : standard_groups()) {
    const auto g = FiniteAbelianGroup::parse(spec);
    if (g.order() > 64) continue;
    const auto subs = enumerate_subgroups(g, 64);
    for (const auto& k1 : subs) {
      for (const auto& k2 : subs) {
        if (!(k2.is_subgroup_of(k1) && k2.size() < k1.size())) continue;
        ++instances;
        const std::vector<Subgroup> chain = {k1, k2};
        const auto synth = synth_measure(g, seq, Preset::Nested, kSeed, &chain);
        const auto r = glow_run(synth.mu, seq);
        if (!(induction_ok(r) && synth.norm <= 0.5 + 1e-10)) {
          ++bad;
          if (first.empty()) first = spec;
        }
      }
    }
  }
  o.pass = o.pass && bad == 0;
  os << "; " << instances << " nested chains, " << bad << " failures";
  if (!first.empty()) os << " (first: " << first << ")";
  SequenceParams params;
  params.delta_prime = 1e300;
  const auto lit = make_sequence(1.0, 2, SequenceMode::LiteralGlow, params);
  const double want = -18.0 - std::log(9.0);
  const bool lit_ok = std::abs(lit.log_a.at(1) - want) <= 1e-9;
  o.pass = o.pass && lit_ok;
  os.precision(12);
  os << "; literal log a2 = " << lit.log_a.at(1);
  o.detail = os.str();
  return o;
}

std::map<std::string, std::string> read_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    out[std::filesystem::relative(e.path(), root).string()] = os.str();
  }
  return out;
}

Outcome determinism() {
  const auto base = std::filesystem::temp_directory_path() / "natspec_acceptance";
  std::filesystem::remove_all(base);
  std::ostringstream sink;
  const int a = run_command({"--seed", "7", "selftest", "--out", (base / "a").string()}, sink, sink);
  const int b = run_command({"--seed", "7", "selftest", "--out", (base / "b").string()}, sink, sink);
  const auto ta = read_tree(base / "a");
  const auto tb = read_tree(base / "b");
  std::filesystem::remove_all(base);
  std::ostringstream os;
  os << ta.size() << " files, exit codes " << a << "/" << b << ", trees "
     << (ta == tb ? "byte-identical" : "DIFFER");
  return {a == 0 && b == 0 && !ta.empty() && ta == tb, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "duality identities", 30, duality},
      {2, "Parseval and inversion", 10, parseval},
      {3, "rounding additivity", 10, additivity},
      {4, "LP oracle", 60, lp_oracle},
      {5, "corkey suite", 120, corkey_suite},
      {6, "tws certificates", 300, tws_suite},
      {7, "skn bridge", 30, skn_bridge},
      {8, "Riemann convergence", 20, riemann_suite},
      {9, "pipelines", 120, pipelines},
      {10, "end-to-end determinism", 600, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << ": " << o.detail << " ("
              << std::fixed << std::setprecision(2) << secs << " s, limit " << std::setprecision(0) << c.limit_s
              << " s" << (in_time ? "" : ", OVER TIME") << ")" << std::defaultfloat << std::setprecision(6)
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
