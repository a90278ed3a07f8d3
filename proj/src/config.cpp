#include "natspec/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace natspec {

namespace {

void check_tol(double v, const char* name) {
  if (!(v > 0.0 && v < 1e-2)) {
    throw Error(ErrorCode::InvalidArgument, std::string("tolerance ") + name + " must lie in (0, 1e-2)");
  }
}

}  // namespace

void Config::validate() const {
  if (max_order <= 0 || enumeration_cap == 0 || lp_cap == 0 || decompose_node_cap == 0) {
    throw Error(ErrorCode::InvalidArgument, "caps must be positive");
  }
  check_tol(tolerances.exact, "exact");
  check_tol(tolerances.sum, "sum");
  check_tol(tolerances.constraint, "constraint");
  if (!(rounding_threshold > 0.0 && rounding_threshold < 0.5) ||
      !(pipeline_rounding_threshold > 0.0 && pipeline_rounding_threshold < 0.5) ||
      !(corkey_threshold > 0.0 && corkey_threshold < 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "rounding thresholds must lie in (0, 1/2)");
  }
  if (eta0 < 0.0 || !(bpb_C > 1.0) || !(najp_Cprime > 0.0) || !(najp_Cdoubleprime > 0.0) || !(delta_prime > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "constants out of range");
  }
}

LpOptions Config::lp() const {
  LpOptions o;
  o.cell_cap = lp_cap;
  return o;
}

DecomposeOptions Config::decompose() const {
  DecomposeOptions o;
  o.node_cap = decompose_node_cap;
  o.enumeration_cap = enumeration_cap;
  return o;
}

CorkeyOptions Config::corkey() const {
  CorkeyOptions o;
  o.threshold = corkey_threshold;
  o.exact_tol = tolerances.exact;
  o.decompose = decompose();
  return o;
}

CertifyOptions Config::certify() const {
  CertifyOptions o;
  o.threshold = rounding_threshold;
  if (eta0 > 0.0) o.eta0 = eta0;
  o.corkey_threshold = corkey_threshold;
  o.bpb_constant = bpb_C;
  o.exact_tol = tolerances.exact;
  o.constraint_tol = tolerances.constraint;
  o.decompose = decompose();
  o.lp = lp();
  return o;
}

SequenceParams Config::sequence() const {
  SequenceParams p;
  p.delta_prime = delta_prime;
  p.c_double_prime = najp_Cdoubleprime;
  return p;
}

PipelineOptions Config::pipeline() const {
  PipelineOptions o;
  o.rounding_threshold = pipeline_rounding_threshold;
  o.exact_tol = tolerances.exact;
  o.c_prime = najp_Cprime;
  o.certify = certify();
  o.lp = lp();
  o.bpb_constant = bpb_C;
  return o;
}

Config load_config(const std::string& path) {
  std::string source = path;
  if (source.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env != nullptr) source = env;
  }
  Config c;
  if (!source.empty()) {
    std::ifstream in(source);
    if (!in) throw Error(ErrorCode::Parse, "cannot open config file " + source);
    try {
      c = nlohmann::json::parse(in).get<Config>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Parse, std::string("config: ") + e.what());
    }
  }
  c.validate();
  return c;
}

}  // namespace natspec
