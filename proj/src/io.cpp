#include "natspec/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace natspec {

Json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return 0;
  if (std::abs(v) < 9.007199254740992e15 && v == std::trunc(v)) return static_cast<std::int64_t>(v);
  return v;
}

Json num(Complex v) { return Json::array({num(v.real()), num(v.imag())}); }

Json nums(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

Json nums(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(num(x));
  return out;
}

namespace {

template <class T>
Json list(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x);
  return out;
}

double real_of(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (s == "nan") return std::nan("");
    throw Error(ErrorCode::Parse, "expected a number, got '" + s + "'");
  }
  if (!j.is_number()) throw Error(ErrorCode::Parse, "expected a number");
  return j.get<double>();
}

Complex complex_of(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw Error(ErrorCode::Parse, "complex values are [re, im] pairs");
    return {real_of(j[0]), real_of(j[1])};
  }
  return {real_of(j), 0.0};
}

Json chain_summary(const ChainSummary& c) {
  return {{"eta", num(c.eta)},       {"k_eta", c.k_eta},   {"k_group", list(c.k_group)},
          {"threshold", num(c.threshold)}, {"log_f_prime", num(c.log_f_prime)},
          {"a", c.a},                {"b", c.b},           {"c", c.c},
          {"d", c.d},                {"dec", c.dec},       {"lower_k", c.lower_k},
          {"leakage", c.leakage},    {"pass", c.pass}};
}

Json schedule(const EtaSchedule& s) {
  return {{"m", num(s.m)},
          {"l", s.l},
          {"etas", nums(s.etas)},
          {"f_caps", nums(s.f_caps)},
          {"log_f_paper", nums(s.log_f_paper)},
          {"halved", s.halved}};
}

Json witness(const DualWitness& w) {
  return {{"w_cosets", list(w.w_cosets)},
          {"g", json_of(w.g)},
          {"phi", nums(w.phi)},
          {"phi_hat", nums(w.phi_hat)},
          {"phi_l1", num(w.phi_l1)},
          {"pairing_imag", num(w.pairing_imag)},
          {"claim_a", json_of(w.claim_a)},
          {"claim_b", json_of(w.claim_b)},
          {"claim_c", json_of(w.claim_c)},
          {"claim_d", json_of(w.claim_d)}};
}

Json step_json(const TwsStep& s) {
  Json j = {{"depth", s.depth},
            {"m", num(s.m)},
            {"eps1", num(s.eps1)},
            {"eps2", num(s.eps2)},
            {"a_norm", num(s.a_norm)},
            {"distance", num(s.distance)},
            {"linf", num(s.linf)},
            {"base", s.base},
            {"note", s.note},
            {"certified_upper", num(s.certified_upper)},
            {"child", s.child ? Json(*s.child) : Json(nullptr)},
            {"pass", s.pass}};
  if (s.base) return j;
  Json chains = Json::array();
  for (const auto& c : s.chains) chains.push_back(chain_summary(c));
  j["schedule"] = schedule(s.schedule);
  j["chains"] = chains;
  j["chains_nested"] = s.chains_nested;
  j["gaps"] = nums(s.gaps);
  j["i0"] = s.i0;
  j["k_group"] = list(s.k_group);
  j["h_group"] = list(s.h_group);
  j["pigeonhole"] = json_of(s.pigeonhole);
  j["pigeonhole_literal"] = json_of(s.pigeonhole_literal);
  j["rounding_margin"] = json_of(s.rounding_margin);
  j["kh_rounding_equal"] = s.kh_rounding_equal;
  j["witness"] = witness(s.witness);
  j["a_norm_fh"] = num(s.a_norm_fh);
  j["a_norm_w"] = num(s.a_norm_w);
  j["a_norm_residual"] = num(s.a_norm_residual);
  j["d_k"] = num(s.d_k);
  j["d_h"] = num(s.d_h);
  j["d_residual"] = num(s.d_residual);
  j["wazo"] = json_of(s.wazo);
  j["wazo_schedule"] = json_of(s.wazo_schedule);
  j["d_h_small"] = json_of(s.d_h_small);
  j["ju"] = json_of(s.ju);
  j["zalind"] = json_of(s.zalind);
  j["mass"] = json_of(s.mass);
  j["aproxadd"] = json_of(s.aproxadd);
  j["aproxadd_exact"] = s.aproxadd_exact;
  j["rhs_measured"] = num(s.rhs_measured);
  j["p_check"] = json_of(s.p_check);
  return j;
}

Json step_json(const PipelineStep& s, bool najp) {
  Json j = {{"n", s.n},
            {"a", num(s.a)},
            {"log_a", num(s.log_a)},
            {"level_size", s.level_size},
            {"tau_norm", num(s.tau_norm)},
            {"approximate", s.approximate},
            {"tau_bound", json_of(s.tau_bound)},
            {"mu_norm", num(s.mu_norm)},
            {"mu_bound", json_of(s.mu_bound)},
            {"scaled_norm", json_of(s.scaled_norm)},
            {"pass", s.pass}};
  if (najp) {
    j["nu_norm"] = num(s.nu_norm);
    j["nu_bound"] = json_of(s.nu_bound);
    j["amu_bound"] = json_of(s.amu_bound);
    j["convolution_norm"] = json_of(s.convolution_norm);
    j["majorant"] = {{"lhs", num(s.majorant.lhs)},
                     {"sup_norm", num(s.majorant.sup_norm)},
                     {"tail_sum", num(s.majorant.tail_sum)},
                     {"rhs", num(s.majorant.rhs)},
                     {"f_l1", num(s.majorant.f_l1)},
                     {"f_support", s.majorant.f_support},
                     {"pass", s.majorant.pass}};
  } else {
    j["skn"] = {{"ran", s.skn.ran},
                {"verdict", s.skn.verdict},
                {"mu_z_norm", num(s.skn.mu_z_norm)},
                {"bound", num(s.skn.bound)},
                {"distance", num(s.skn.distance)},
                {"rounding_matches_level", s.skn.rounding_matches_level},
                {"note", s.skn.note}};
  }
  return j;
}

}  // namespace

Json json_of(const FiniteAbelianGroup& g) {
  return {{"spec", g.spec()}, {"moduli", list(g.moduli())}, {"order", g.order()}, {"lcm", g.lcm()}};
}

Json json_of(const Subgroup& k) { return list(k.elements()); }

Json json_of(const GroupFunction& f) {
  return {{"group", f.group.spec()}, {"side", std::string(side_name(f.side))}, {"values", nums(f.values)}};
}

Json json_of(const NormReport& r) { return {{"l1", num(r.l1)}, {"linf", num(r.linf)}, {"a_norm", num(r.a_norm)}}; }

Json json_of(const Inequality& in) {
  return {{"relation", in.relation}, {"lhs", num(in.lhs)},   {"rhs", num(in.rhs)},          {"slack", num(in.slack)},
          {"tol", num(in.tol)},      {"pass", in.pass},      {"required", in.required}};
}

Json json_of(const RoundingResult& r) {
  Json j = {{"distance", num(r.distance)}, {"support", list(r.support)}, {"integers", list(r.integers)}};
  j["rounded"] = r.rounded ? json_of(*r.rounded) : Json(nullptr);
  return j;
}

Json json_of(const LpResult& r) {
  const char* status = r.status == LpStatus::Optimal ? "optimal" : r.status == LpStatus::Infeasible ? "infeasible"
                                                                                                   : "unbounded";
  return {{"status", status},
          {"objective", num(r.objective)},
          {"x", nums(r.x)},
          {"basis", list(r.basis)},
          {"kept_rows", list(r.kept_rows)},
          {"iterations", r.iterations}};
}

Json json_of(const OptimalityCheck& c) {
  return {{"primal_residual", num(c.primal_residual)},
          {"min_x", num(c.min_x)},
          {"min_reduced_cost", num(c.min_reduced_cost)},
          {"duality_gap", num(c.duality_gap)},
          {"pass", c.pass}};
}

Json json_of(const L1Solution& s) {
  return {{"values", nums(s.values)},   {"transform", nums(s.transform)}, {"lambda", list(s.lambda)},
          {"support", list(s.support)}, {"optimum", num(s.optimum)},     {"lp", json_of(s.lp)},
          {"certificate", json_of(s.certificate)}};
}

Json json_of(const BpbPolynomial& p) {
  const auto& b = p.bound;
  return {{"values", nums(p.values)},
          {"transform", nums(p.transform)},
          {"lambda", list(p.lambda)},
          {"support", list(p.support)},
          {"l1", num(p.l1)},
          {"epsilon", num(p.epsilon)},
          {"lp_calls", p.lp_calls},
          {"interpolation_error", num(p.interpolation_error)},
          {"off_support_max", num(p.off_support_max)},
          {"lp_certified", p.lp_certified},
          {"bound_report",
           {{"support_size", b.support_size},
            {"lambda_size", b.lambda_size},
            {"constant", num(b.constant)},
            {"log_bound", num(b.log_bound)},
            {"within_bound", b.within_bound},
            {"note", b.note}}}};
}

Json json_of(const IdempotentDecomposition& d) {
  Json parts = Json::array();
  for (const auto& p : d.parts) {
    parts.push_back({{"h", json_of(p.h)}, {"g", list(p.g)}, {"sup", p.sup}, {"cosets", p.cosets}});
  }
  return {{"parts", parts},
          {"l", d.l()},
          {"f_actual", d.f_actual},
          {"m", num(d.m)},
          {"budget", d.budget},
          {"cost", std::string(cost_name(d.cost))},
          {"nodes", d.nodes},
          {"node_cap_hit", d.node_cap_hit},
          {"trivial_fallback", d.trivial_fallback},
          {"zero_subsets_checked", d.zero_subsets_checked},
          {"zero_subsets_removed", d.zero_subsets_removed}};
}

Json json_of(const CorkeyChain& c) {
  Json kk = Json::array();
  for (const auto& k : c.kk) kk.push_back(json_of(k));
  return {{"decomposition", json_of(c.decomposition)},
          {"intersections", kk},
          {"ratios", nums(c.ratios)},
          {"eta", num(c.eta)},
          {"threshold", num(c.threshold)},
          {"k_eta", c.k_eta},
          {"k_group", json_of(c.k_group)},
          {"log_f_prime", num(c.log_f_prime)},
          {"f_prime", num(c.f_prime)},
          {"f_prime_range", c.f_prime_range},
          {"d_f", num(c.d_f)},
          {"d_projected", num(c.d_projected)},
          {"support_cosets", c.support_cosets},
          {"support_is_coset_union", c.support_is_coset_union},
          {"a", json_of(c.a)},
          {"b", json_of(c.b)},
          {"c", json_of(c.c)},
          {"d", c.d},
          {"dec", c.dec},
          {"smooth_exact", c.smooth_exact},
          {"lower_k", json_of(c.lower_k)},
          {"leakage", json_of(c.leakage)},
          {"reorder_ok", c.reorder_ok},
          {"pass", c.all_pass()}};
}

Json json_of(const TwsCertificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) steps.push_back(step_json(s));
  return {{"eps1", num(c.eps1)},
          {"eps2", num(c.eps2)},
          {"a_norm_f", num(c.a_norm_f)},
          {"distance", num(c.distance)},
          {"threshold", num(c.threshold)},
          {"steps", steps},
          {"f_z", list(c.f_z)},
          {"a_norm_fz", num(c.a_norm_fz)},
          {"certified_upper", num(c.certified_upper)},
          {"bound", json_of(c.bound)},
          {"retried", c.retried},
          {"verdict", c.verdict},
          {"schedule_note", c.schedule_note}};
}

Json json_of(const SknResult& r) {
  return {{"mu_z", json_of(r.mu_z)},
          {"mu_hat_z", list(r.mu_hat_z)},
          {"imag_sup", num(r.imag_sup)},
          {"mu_norm", num(r.mu_norm)},
          {"mu_hat_a_norm", num(r.mu_hat_a_norm)},
          {"bridge", json_of(r.bridge)},
          {"mu_z_norm", num(r.mu_z_norm)},
          {"bound", json_of(r.bound)},
          {"certificate", json_of(r.certificate)}};
}

Json json_of(const RiemannTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"n", r.n},
                    {"value", num(r.value)},
                    {"gap_to_reference", num(r.gap_to_reference)},
                    {"gap_to_previous", num(r.gap_to_previous)}});
  }
  return {{"h_moduli", list(t.h_moduli)},
          {"d", t.d},
          {"n0", t.n0},
          {"merged_duplicates", t.merged_duplicates},
          {"rows", rows},
          {"reference", num(t.reference)},
          {"cauchy", t.cauchy}};
}

Json json_of(const DecaySequence& s) {
  Json a = Json::array();
  for (double l : s.log_a) a.push_back(num(std::exp(l)));
  return {{"mode", std::string(mode_name(s.mode))},
          {"log_a", nums(s.log_a)},
          {"a", a},
          {"checks", list(s.checks)},
          {"params", {{"delta_prime", num(s.params.delta_prime)}, {"c_double_prime", num(s.params.c_double_prime)}}}};
}

Json json_of(const SynthResult& s) {
  return {{"mu", json_of(s.mu)},     {"mu_hat", nums(s.mu_hat)}, {"chain", s.chain},
          {"levels", s.levels},      {"norm", num(s.norm)},      {"range_error", num(s.range_error)},
          {"status", s.status}};
}

Json json_of(const PipelineReport& r) {
  const bool najp = r.kind == "najp";
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back(step_json(s, najp));
  Json gaps = Json::array();
  for (const auto& g : r.rho_gaps) {
    gaps.push_back({{"m", g.m}, {"n", g.n}, {"gap", num(g.gap)}, {"bound", num(g.bound)}, {"pass", g.pass}});
  }
  Json q = Json::array();
  for (const auto& x : r.q_reports) {
    q.push_back({{"n", x.n},
                 {"r", num(x.r)},
                 {"q_size", x.q_size},
                 {"norm_hypothesis", json_of(x.norm_hypothesis)},
                 {"decay_hypothesis", json_of(x.decay_hypothesis)},
                 {"log_bound_cubic", num(x.log_bound_cubic)},
                 {"log_bound_r2logr", num(x.log_bound_r2logr)},
                 {"within_cubic", x.within_cubic},
                 {"within_r2logr", x.within_r2logr}});
  }
  return {{"kind", r.kind},
          {"group", r.group},
          {"sequence", json_of(r.sequence)},
          {"levels", r.levels},
          {"zero_set", r.zero_set},
          {"mu_norm", num(r.mu_norm)},
          {"steps", steps},
          {"telescoping_error", num(r.telescoping_error)},
          {"rho_gaps", gaps},
          {"rho_square", json_of(r.rho_square)},
          {"sigma", nums(r.sigma)},
          {"natural_spectrum", r.natural_spectrum},
          {"q_reports", q},
          {"strong_continuity", r.strong_continuity},
          {"notes", r.notes},
          {"verdict", r.verdict}};
}

Json json_of(const Config& c) {
  Json j = c;
  // Route every double through num() so integral values print as integers.
  for (auto& [key, value] : j.items()) {
    if (value.is_number_float()) value = num(value.get<double>());
  }
  for (auto& [key, value] : j["tolerances"].items()) {
    if (value.is_number_float()) value = num(value.get<double>());
  }
  return j;
}

std::vector<Complex> complex_values_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "values must be an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(complex_of(v));
  return out;
}

GroupFunction group_function_from_json(const Json& j, std::int64_t max_order) {
  if (!j.is_object() || !j.contains("group") || !j.contains("values")) {
    throw Error(ErrorCode::Parse, "group function JSON needs 'group' and 'values'");
  }
  GroupFunction f;
  f.group = FiniteAbelianGroup::parse(j.at("group").get<std::string>(), max_order);
  const auto side = j.value("side", std::string("primal"));
  if (side == "primal") {
    f.side = Side::Primal;
  } else if (side == "dual") {
    f.side = Side::Dual;
  } else {
    throw Error(ErrorCode::Parse, "side must be 'primal' or 'dual'");
  }
  f.values = complex_values_from_json(j.at("values"));
  if (f.values.size() != f.group.order()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(f.group.order()) + " values, got " +
                                                  std::to_string(f.values.size()));
  }
  return f;
}

DecaySequence sequence_from_json(const Json& j, const SequenceParams& params) {
  if (!j.is_object() || j.size() != 1) throw Error(ErrorCode::Parse, "sequence JSON must have exactly one mode key");
  const auto it = j.begin();
  const auto mode = parse_mode(it.key());
  const Json& body = it.value();
  try {
    if (mode == SequenceMode::Empirical) return make_empirical(body.get<std::vector<double>>());
    return make_sequence(body.at("a1").get<double>(), body.at("length").get<std::size_t>(), mode, params);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("sequence: ") + e.what());
  }
}

std::vector<Frequency> frequencies_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "frequencies must be an array");
  std::vector<Frequency> out;
  try {
    for (const auto& f : j) {
      out.push_back({f.at("chi").get<std::vector<std::int64_t>>(), f.at("r").get<std::vector<std::int64_t>>(),
                     f.contains("coeff") ? complex_of(f.at("coeff")) : Complex(1.0, 0.0)});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("frequencies: ") + e.what());
  }
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

Json json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json(arg);
  std::ifstream in(arg);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + arg);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_json(os.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::Internal, "cannot write " + path);
  out << text;
}

}  // namespace natspec
