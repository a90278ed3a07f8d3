#include "natspec/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>

#include "natspec/catalog.hpp"
#include "natspec/io.hpp"
#include "natspec/selftest.hpp"

namespace natspec {

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad integer '" + tok + "'");
    }
  }
  return out;
}

std::vector<std::size_t> parse_ladder(const std::string& text) {
  std::vector<std::string> toks;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (!tok.empty()) toks.push_back(tok);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i] != "...") {
      const auto v = parse_index_list(toks[i]);
      out.push_back(v.at(0));
      continue;
    }
    if (out.empty() || i + 1 >= toks.size()) throw Error(ErrorCode::Parse, "ellipsis needs values on both sides");
    const auto stop = parse_index_list(toks[i + 1]).at(0);
    for (std::size_t v = out.back() * 2; v < stop; v *= 2) out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::Parse, "empty ladder");
  return out;
}

namespace {

struct Args {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string group;
  std::string values;
  std::string input;
  std::string side = "primal";
  std::string op = "dft";
  double margin = kDefaultRoundingMargin;
  std::string lambda;
  std::string support;
  double eps = 0.5;
  std::string emit;
  std::string cost = "min_parts";
  std::string etas = "0.25,0.125,0.0625,0.03125";
  double m = -1.0;
  double eps1 = 0.5;
  double eps2 = 0.5;
  std::string h = "1";
  std::size_t d = 1;
  std::string freqs;
  std::string preset_name;
  std::string ladder = "64,128,...,8192";
  std::string seq;
  std::string preset = "nested";
  std::string chain;
  std::string csv;
  bool subgroups = false;
  std::string annihilate;
};

class Runner {
 public:
  Runner(const Args& a, const Config& c, std::ostream& out) : a_(a), c_(c), out_(out) {}

  int emit(const std::string& command, const Json& result, bool compact = false) {
    if (!a_.out.empty()) {
      Json wrapped = {{"command", command}, {"config", json_of(c_)}, {"result", result}};
      write_text(a_.out, dump(wrapped));
    } else if (compact) {
      out_ << result.dump() << "\n";
    } else {
      out_ << dump(result);
    }
    return kExitOk;
  }

  GroupFunction function_arg(Side default_side = Side::Primal) const {
    if (!a_.input.empty()) return group_function_from_json(json_arg(a_.input), c_.max_order);
    if (a_.group.empty() || a_.values.empty()) {
      throw Error(ErrorCode::Parse, "need --input, or --group with --values");
    }
    GroupFunction f;
    f.group = FiniteAbelianGroup::parse(a_.group, c_.max_order);
    f.side = a_.side == "dual" ? Side::Dual : a_.side == "primal" ? default_side : throw Error(ErrorCode::Parse, "bad --side");
    f.values = complex_values_from_json(parse_json(a_.values));
    if (f.values.size() != f.group.order()) {
      throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(f.group.order()) + " values");
    }
    return f;
  }

  FiniteAbelianGroup group_arg() const {
    if (a_.group.empty()) throw Error(ErrorCode::Parse, "--group is required");
    return FiniteAbelianGroup::parse(a_.group, c_.max_order);
  }

  int group() {
    const auto g = group_arg();
    Json j = json_of(g);
    if (a_.subgroups) {
      Json subs = Json::array();
      for (const auto& k : enumerate_subgroups(g, c_.enumeration_cap)) subs.push_back(json_of(k));
      j["subgroups"] = subs;
    }
    if (!a_.annihilate.empty()) {
      const auto gens = parse_index_list(a_.annihilate);
      for (auto x : gens) {
        if (x >= g.order()) throw Error(ErrorCode::InvalidArgument, "element index out of range");
      }
      const auto k = subgroup_span(g, std::span<const Index>(gens));
      j["span"] = json_of(k);
      j["annihilator"] = json_of(annihilator(g, k));
    }
    return emit("group", j);
  }

  int fourier() {
    const auto f = function_arg();
    if (a_.op == "dft") return emit("fourier", nums(dft(f, Direction::Forward).values), true);
    if (a_.op == "idft") {
      auto dual = f.with_side(Side::Dual);
      return emit("fourier", nums(dft(dual, Direction::Inverse).values), true);
    }
    if (a_.op == "norms") return emit("fourier", json_of(norms(f)));
    if (a_.op == "sigma") return emit("fourier", nums(spectrum_sigma(f)));
    if (a_.op == "natural") {
      const auto r = natural_spectrum_check(f);
      return emit("fourier", {{"sigma", nums(r.sigma)}, {"range_closure", nums(r.range_closure)},
                              {"natural", r.natural}});
    }
    throw Error(ErrorCode::Parse, "unknown --op '" + a_.op + "'");
  }

  int round() { return emit("round", json_of(round_int(function_arg(), a_.margin))); }

  int bpb() {
    const auto g = group_arg();
    const auto lambda = parse_index_list(a_.lambda);
    for (auto x : lambda) {
      if (x >= g.order()) throw Error(ErrorCode::InvalidArgument, "character index out of range");
    }
    Json result;
    GroupFunction f;
    if (!a_.support.empty()) {
      const auto sol = lp_min_l1(g, lambda, parse_index_list(a_.support), c_.lp());
      result = json_of(sol);
      f = to_function(g, sol.values);
    } else {
      const auto poly = bpb_search(g, lambda, a_.eps, c_.bpb_C, c_.lp());
      result = json_of(poly);
      f = to_function(g, poly.values);
    }
    if (!a_.emit.empty()) write_text(a_.emit, dump(json_of(f)));
    return emit("bpb", result);
  }

  DecomposeOptions decompose_options() const {
    auto o = c_.decompose();
    if (a_.cost == "min_parts") {
      o.cost = DecomposeCost::MinParts;
    } else if (a_.cost == "min_f_actual") {
      o.cost = DecomposeCost::MinFActual;
    } else {
      throw Error(ErrorCode::Parse, "unknown --cost '" + a_.cost + "'");
    }
    return o;
  }

  int decompose() { return emit("decompose", json_of(decompose_int(function_arg(), decompose_options()))); }

  int corkey() {
    const auto f = function_arg();
    std::vector<double> etas;
    for (const auto& v : complex_values_from_json(parse_json("[" + a_.etas + "]"))) etas.push_back(v.real());
    auto o = c_.corkey();
    o.decompose = decompose_options();
    const double m = a_.m >= 0.0 ? a_.m : a_norm(f);
    Json chains = Json::array();
    for (const auto& ch : corkey_build(f, etas, m, o)) chains.push_back(json_of(ch));
    return emit("corkey", {{"m", num(m)}, {"chains", chains}});
  }

  int certify() { return emit("certify", json_of(certify_tws(function_arg(), a_.eps1, a_.eps2, c_.certify()))); }

  int skn() { return emit("skn", json_of(skn_finite(function_arg(), a_.eps1, a_.eps2, c_.certify()))); }

  int riemann() {
    std::vector<std::int64_t> h;
    std::size_t d = a_.d;
    std::vector<Frequency> freqs;
    if (!a_.preset_name.empty()) {
      const auto p = riemann_preset(a_.preset_name);
      h = p.h_moduli;
      d = p.d;
      freqs = p.freqs;
    } else {
      h = FiniteAbelianGroup::parse(a_.h, c_.max_order).moduli();
      if (h.empty()) h = {1};
      if (a_.freqs.empty()) throw Error(ErrorCode::Parse, "need --freqs or --preset");
      freqs = frequencies_from_json(json_arg(a_.freqs));
    }
    return emit("riemann", json_of(riemann_a_norm(h, d, freqs, parse_ladder(a_.ladder))));
  }

  int pipeline(const std::string& kind) {
    const auto g = group_arg();
    if (a_.seq.empty()) throw Error(ErrorCode::Parse, "--seq is required");
    const auto seq = sequence_from_json(json_arg(a_.seq), c_.sequence());
    std::vector<Subgroup> chain;
    if (!a_.chain.empty()) {
      for (const auto& k : json_arg(a_.chain)) {
        const auto elems = k.get<std::vector<Index>>();
        chain.push_back(subgroup_span(g, std::span<const Index>(elems)));
      }
    }
    const auto synth = synth_measure(g, seq, parse_preset(a_.preset), a_.seed.value_or(c_.seed),
                                     a_.chain.empty() ? nullptr : &chain, c_.enumeration_cap);
    const auto report =
        kind == "glow" ? glow_run(synth.mu, seq, c_.pipeline()) : najp_run(synth.mu, seq, c_.pipeline());
    if (!a_.csv.empty()) write_text(a_.csv, pipeline_csv(report));
    return emit("pipeline " + kind, {{"synth", json_of(synth)}, {"report", json_of(report)}});
  }

  int selftest() {
    const std::string dir = a_.out.empty() ? "selftest_out" : a_.out;
    const auto r = run_selftest(c_, dir);
    for (const auto& c : r.checks) {
      out_ << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    }
    out_ << (r.pass() ? "selftest passed" : "selftest FAILED") << ", " << r.files.size() << " files in " << dir
         << "\n";
    return r.pass() ? kExitOk : kExitInternal;
  }

 private:
  const Args& a_;
  const Config& c_;
  std::ostream& out_;
};

void function_options(CLI::App* sub, Args& a) {
  sub->add_option("--group", a.group, "group spec, e.g. 2x4");
  sub->add_option("--values", a.values, "JSON array of values or [re, im] pairs");
  sub->add_option("--input", a.input, "group function JSON (file or inline)");
  sub->add_option("--side", a.side, "primal or dual")->check(CLI::IsMember({"primal", "dual"}));
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite-group Fourier certificates", "natspec"};
  app.require_subcommand(1);
  Args a;
  app.add_option("--config", a.config_path, "JSON config file (else $" + std::string(kConfigEnv) + ")");
  app.add_option("--seed", a.seed, "override the configured seed");

  auto* group = app.add_subcommand("group", "group summary, subgroups and annihilators");
  group->add_option("--group", a.group)->required();
  group->add_flag("--subgroups", a.subgroups, "list every subgroup");
  group->add_option("--annihilator", a.annihilate, "comma-separated generators; prints the span and its annihilator");
  group->add_option("--out", a.out);

  auto* fourier = app.add_subcommand("fourier", "transforms, norms and spectrum");
  function_options(fourier, a);
  fourier->add_option("--op", a.op)->check(CLI::IsMember({"dft", "idft", "norms", "sigma", "natural"}));
  fourier->add_option("--out", a.out);

  auto* round = app.add_subcommand("round", "nearest-integer rounding");
  function_options(round, a);
  round->add_option("--margin", a.margin);
  round->add_option("--out", a.out);

  auto* bpb = app.add_subcommand("bpb", "minimal-L1 interpolation search");
  bpb->add_option("--group", a.group)->required();
  bpb->add_option("--lambda", a.lambda, "comma-separated character indices")->required();
  bpb->add_option("--support", a.support, "solve one LP on this support instead of searching");
  bpb->add_option("--eps", a.eps);
  bpb->add_option("--emit", a.emit, "write the polynomial as group function JSON");
  bpb->add_option("--out", a.out);

  auto* decompose = app.add_subcommand("decompose", "integer idempotent decomposition");
  function_options(decompose, a);
  decompose->add_option("--cost", a.cost)->check(CLI::IsMember({"min_parts", "min_f_actual"}));
  decompose->add_option("--out", a.out);

  auto* corkey = app.add_subcommand("corkey", "subgroup chain selection");
  function_options(corkey, a);
  corkey->add_option("--etas", a.etas, "comma-separated, non-increasing");
  corkey->add_option("--m", a.m, "norm budget (default: the A-norm)");
  corkey->add_option("--cost", a.cost)->check(CLI::IsMember({"min_parts", "min_f_actual"}));
  corkey->add_option("--out", a.out);

  auto* certify = app.add_subcommand("certify", "rounding norm certificate");
  function_options(certify, a);
  certify->add_option("--eps1", a.eps1);
  certify->add_option("--eps2", a.eps2);
  certify->add_option("--out", a.out);

  auto* skn = app.add_subcommand("skn", "certificate for a measure density");
  function_options(skn, a);
  skn->add_option("--eps1", a.eps1);
  skn->add_option("--eps2", a.eps2);
  skn->add_option("--out", a.out);

  auto* riemann = app.add_subcommand("riemann", "Riemann-sum A-norm ladder");
  riemann->set_help_flag("--help", "print help");
  riemann->add_option("--h", a.h, "finite factor spec");
  riemann->add_option("--d", a.d, "torus dimension");
  riemann->add_option("--freqs", a.freqs, "frequency JSON (file or inline)");
  riemann->add_option("--preset", a.preset_name)->check(CLI::IsMember({"single", "two_frequency"}));
  riemann->add_option("--ladder", a.ladder);
  riemann->add_option("--out", a.out);

  auto* pipeline = app.add_subcommand("pipeline", "level-set peeling runs");
  pipeline->require_subcommand(1);
  std::string kind;
  for (const char* name : {"glow", "najp"}) {
    auto* sub = pipeline->add_subcommand(name, std::string(name) + " run");
    sub->add_option("--group", a.group)->required();
    sub->add_option("--seq", a.seq, "sequence JSON (file or inline)")->required();
    sub->add_option("--preset", a.preset)->check(CLI::IsMember({"nested", "nested_annihilator", "random_disjoint"}));
    sub->add_option("--seed", a.seed);
    sub->add_option("--chain", a.chain, "JSON list of generator lists, one subgroup per level");
    sub->add_option("--csv", a.csv, "write the per-step CSV summary");
    sub->add_option("--out", a.out);
    sub->callback([&kind, name] { kind = name; });
  }

  auto* selftest = app.add_subcommand("selftest", "property suite and artifact tree");
  selftest->add_option("--out", a.out, "artifact directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    auto config = load_config(a.config_path);
    if (a.seed) config.seed = *a.seed;
    Runner r(a, config, out);
    if (*group) return r.group();
    if (*fourier) return r.fourier();
    if (*round) return r.round();
    if (*bpb) return r.bpb();
    if (*decompose) return r.decompose();
    if (*corkey) return r.corkey();
    if (*certify) return r.certify();
    if (*skn) return r.skn();
    if (*riemann) return r.riemann();
    if (*pipeline) return r.pipeline(kind);
    if (*selftest) return r.selftest();
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == ErrorCode::Parse ? kExitUsage : kExitInternal;
  } catch (const std::exception& e) {
    err << "Internal: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

int run_command(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_command(args, std::cout, std::cerr);
}

}  // namespace natspec
