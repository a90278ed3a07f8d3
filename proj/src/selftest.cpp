#include "natspec/selftest.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>

#include "natspec/catalog.hpp"
#include "natspec/io.hpp"

namespace natspec {

bool SelftestResult::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

class Suite {
 public:
  Suite(const Config& config, std::string out) : config_(config), out_(std::move(out)) {}

  void record(const std::string& name, bool pass, const std::string& detail = {}) {
    result_.checks.push_back({name, pass, detail});
  }

  void write(const std::string& rel, const Json& j) {
    write_text((std::filesystem::path(out_) / rel).string(), dump(j));
    result_.files.push_back(rel);
  }

  void write_raw(const std::string& rel, const std::string& text) {
    write_text((std::filesystem::path(out_) / rel).string(), text);
    result_.files.push_back(rel);
  }

  template <class F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record(name, false, e.what());
    }
  }

  SelftestResult take() { return std::move(result_); }
  const Config& config() const { return config_; }

 private:
  const Config& config_;
  std::string out_;
  SelftestResult result_;
};

void duality(Suite& s) {
  Json rows = Json::array();
  bool ok = true;
  for (const char* spec : {"2x2x2", "4x4", "3x9", "2x4"}) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const auto subs = enumerate_subgroups(g, s.config().enumeration_cap);
    double worst = 0.0;
    bool counts = true;
    for (const auto& k : subs) {
      const auto perp = annihilator(g, k);
      const auto hat = dft(subgroup_haar(g, k), Direction::Forward);
      const auto want = GroupFunction::indicator(g, perp.elements(), Side::Dual);
      worst = std::max(worst, max_abs_diff(hat, want));
      counts = counts && perp.size() * k.size() == g.order();
    }
    ok = ok && worst <= 1e-12 && counts;
    rows.push_back({{"group", spec}, {"subgroups", subs.size()}, {"max_error", num(worst)}, {"counts", counts}});
  }
  s.record("duality", ok);
  s.write("groups/duality.json", rows);
}

void parseval(Suite& s, Rng& rng) {
  bool ok = true;
  Json rows = Json::array();
  for (const auto& spec : standard_groups()) {
    const auto g = FiniteAbelianGroup::parse(spec);
    double worst_parseval = 0.0;
    double worst_roundtrip = 0.0;
    for (int t = 0; t < 3; ++t) {
      const auto f = random_function(g, rng);
      const auto hat = dft(f, Direction::Forward);
      double lhs = 0.0;
      double rhs = 0.0;
      for (const auto& v : f.values) lhs += std::norm(v);
      lhs /= static_cast<double>(g.order());
      for (const auto& v : hat.values) rhs += std::norm(v);
      worst_parseval = std::max(worst_parseval, std::abs(lhs - rhs) / std::max(lhs, 1e-300));
      worst_roundtrip = std::max(worst_roundtrip, max_abs_diff(dft(hat, Direction::Inverse), f));
    }
    ok = ok && worst_parseval <= 1e-9 && worst_roundtrip <= 1e-10;
    rows.push_back({{"group", spec}, {"parseval", num(worst_parseval)}, {"roundtrip", num(worst_roundtrip)}});
  }
  s.record("parseval", ok);
  s.write("fourier/parseval.json", rows);
}

void additivity(Suite& s, Rng& rng) {
  const auto g = FiniteAbelianGroup::parse("4x4");
  std::size_t failures = 0;
  const std::size_t trials = 200;
  for (std::size_t t = 0; t < trials; ++t) {
    auto a = GroupFunction::zeros(g, Side::Primal);
    auto b = GroupFunction::zeros(g, Side::Primal);
    for (Index i = 0; i < g.order(); ++i) {
      a[i] = std::round(rng.uniform(-3.0, 3.0)) + rng.uniform(-0.16, 0.16);
      b[i] = std::round(rng.uniform(-3.0, 3.0)) + rng.uniform(-0.16, 0.16);
    }
    const auto sum = a + b;
    const auto ra = round_int(a).integers;
    const auto rb = round_int(b).integers;
    const auto rs = round_int(sum).integers;
    for (Index i = 0; i < g.order(); ++i) {
      if (rs[i] != ra[i] + rb[i]) {
        ++failures;
        break;
      }
    }
  }
  s.record("rounding_additivity", failures == 0, std::to_string(failures) + " failures");
  s.write("rounding/additivity.json", {{"group", g.spec()}, {"trials", trials}, {"failures", failures}});
}

void bpb(Suite& s) {
  const auto g = FiniteAbelianGroup::parse("2x2");
  const auto poly = bpb_search(g, {1, 3}, 0.5, s.config().bpb_C, s.config().lp());
  const bool ok = poly.interpolation_error <= 1e-8 && poly.l1 <= 1.5 + 1e-8;
  s.record("bpb", ok);
  s.write("bpb/2x2.json", json_of(poly));
}

void certificates(Suite& s) {
  const auto catalog = tws_catalog(s.config().seed, 1);
  bool ok = true;
  Json rows = Json::array();
  std::string last_group;
  for (const auto& inst : catalog) {
    const auto group = inst.name.substr(0, inst.name.find('/'));
    if (group == last_group) continue;
    last_group = group;
    const auto cert = certify_tws(inst.f, 0.5, 0.5, s.config().certify());
    const double direct = a_norm(from_integers(inst.f.group, round_int(inst.f).integers));
    const bool confirmed = !cert.verdict || direct <= 1.5 * cert.a_norm_f + 0.5 + s.config().tolerances.constraint;
    ok = ok && confirmed;
    rows.push_back({{"name", inst.name}, {"verdict", cert.verdict}, {"a_norm_fz", num(direct)},
                    {"confirmed", confirmed}});
    std::string file = inst.name;
    for (auto& c : file) {
      if (c == '/') c = '_';
    }
    s.write("certify/" + file + ".json", json_of(cert));
  }
  s.record("tws_confirmed", ok);
  s.write("certify/summary.json", rows);
}

void skn(Suite& s, Rng& rng) {
  bool ok = true;
  Json rows = Json::array();
  for (const char* spec : {"4", "2x2x2", "3x9"}) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const auto mu = random_measure(g, rng);
    const auto r = skn_finite(mu, 0.5, 0.5, s.config().certify());
    ok = ok && r.bridge.pass;
    rows.push_back({{"group", spec}, {"bridge", json_of(r.bridge)}, {"verdict", r.certificate.verdict}});
  }
  s.record("skn_bridge", ok);
  s.write("skn/bridge.json", rows);
}

void riemann(Suite& s) {
  const auto p = riemann_preset("two_frequency");
  const auto t = riemann_a_norm(p.h_moduli, p.d, p.freqs, {64, 128, 256, 512});
  const bool ok = std::abs(t.reference - 4.0 / std::numbers::pi) <= 1e-3 && t.cauchy;
  s.record("riemann_two_frequency", ok);
  s.write("riemann/two_frequency.json", json_of(t));
}

void pipelines(Suite& s) {
  const auto g = FiniteAbelianGroup::parse("4");
  const auto seq = make_empirical({0.5, 0.02});
  const std::vector<Subgroup> chain = {whole_group(g), subgroup_span(g, std::vector<Index>{2})};
  const auto synth = synth_measure(g, seq, Preset::Nested, s.config().seed, &chain, s.config().enumeration_cap);
  const auto glow = glow_run(synth.mu, seq, s.config().pipeline());
  const auto najp = najp_run(synth.mu, seq, s.config().pipeline());
  s.record("pipeline_glow_z4", glow.verdict);
  s.record("pipeline_najp_z4", najp.verdict);
  s.write("pipeline/synth_z4.json", json_of(synth));
  s.write("pipeline/glow_z4.json", json_of(glow));
  s.write_raw("pipeline/glow_z4.csv", pipeline_csv(glow));
  s.write("pipeline/najp_z4.json", json_of(najp));

  const auto lit = make_sequence(1.0, 2, SequenceMode::LiteralGlow, {1e300, s.config().najp_Cdoubleprime});
  const double want = -18.0 - std::log(9.0);
  s.record("literal_sequence", std::abs(lit.log_a[1] - want) <= 1e-9);
  s.write("pipeline/literal_glow.json", json_of(lit));
}

}  // namespace

SelftestResult run_selftest(const Config& config, const std::string& out_dir) {
  Suite s(config, out_dir);
  Rng rng(config.seed);
  s.write("config.json", json_of(config));
  s.guarded("duality", [&] { duality(s); });
  s.guarded("parseval", [&] { parseval(s, rng); });
  s.guarded("rounding_additivity", [&] { additivity(s, rng); });
  s.guarded("bpb", [&] { bpb(s); });
  s.guarded("tws_confirmed", [&] { certificates(s); });
  s.guarded("skn_bridge", [&] { skn(s, rng); });
  s.guarded("riemann_two_frequency", [&] { riemann(s); });
  s.guarded("pipelines", [&] { pipelines(s); });
  auto result = s.take();
  Json summary = Json::array();
  for (const auto& c : result.checks) summary.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  write_text((std::filesystem::path(out_dir) / "summary.json").string(),
             dump({{"checks", summary}, {"pass", result.pass()}}));
  result.files.push_back("summary.json");
  return result;
}

}  // namespace natspec
