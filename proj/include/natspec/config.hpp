#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "natspec/pipeline.hpp"

namespace natspec {

struct Tolerances {
  double exact = 1e-10;
  double sum = 1e-9;
  double constraint = 1e-8;
};

/// Every tunable constant, with defaults. Echoed into each artifact.
struct Config {
  std::int64_t max_order = 4096;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t lp_cap = 4'000'000;
  double rounding_threshold = 0.02;
  double pipeline_rounding_threshold = 0.1;
  double corkey_threshold = 0.1;
  /// 0 selects threshold / 3.
  double eta0 = 0.0;
  double bpb_C = kDefaultBpbC;
  double najp_Cprime = 2.0;
  double najp_Cdoubleprime = 328.0;
  double delta_prime = 1.0;
  std::size_t decompose_node_cap = 100'000;
  Tolerances tolerances;
  std::uint64_t seed = 20240601;

  void validate() const;

  LpOptions lp() const;
  DecomposeOptions decompose() const;
  CorkeyOptions corkey() const;
  CertifyOptions certify() const;
  SequenceParams sequence() const;
  PipelineOptions pipeline() const;
};

inline constexpr const char* kConfigEnv = "NATSPEC_CONFIG";

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(Tolerances, exact, sum, constraint)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(Config, max_order, enumeration_cap, lp_cap, rounding_threshold,
                                                pipeline_rounding_threshold, corkey_threshold, eta0, bpb_C,
                                                najp_Cprime, najp_Cdoubleprime, delta_prime, decompose_node_cap,
                                                tolerances, seed)

/// Reads `path`, or the file named by NATSPEC_CONFIG when `path` is empty,
/// or returns defaults when neither is set. Missing keys keep defaults.
Config load_config(const std::string& path = {});

}  // namespace natspec
