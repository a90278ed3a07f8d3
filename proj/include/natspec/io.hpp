#pragma once

#include <string>

#include <json.hpp>

#include "natspec/config.hpp"

namespace natspec {

using Json = nlohmann::json;

/// Integral values become JSON integers, -0 becomes 0, non-finite values
/// become the strings "inf", "-inf" and "nan".
Json num(double v);
Json num(Complex v);
Json nums(const std::vector<double>& v);
Json nums(const std::vector<Complex>& v);

Json json_of(const FiniteAbelianGroup& g);
Json json_of(const Subgroup& k);
Json json_of(const GroupFunction& f);
Json json_of(const NormReport& r);
Json json_of(const Inequality& in);
Json json_of(const RoundingResult& r);
Json json_of(const LpResult& r);
Json json_of(const OptimalityCheck& c);
Json json_of(const L1Solution& s);
Json json_of(const BpbPolynomial& p);
Json json_of(const IdempotentDecomposition& d);
Json json_of(const CorkeyChain& c);
Json json_of(const TwsCertificate& c);
Json json_of(const SknResult& r);
Json json_of(const RiemannTable& t);
Json json_of(const DecaySequence& s);
Json json_of(const SynthResult& s);
Json json_of(const PipelineReport& r);
Json json_of(const Config& c);

GroupFunction group_function_from_json(const Json& j, std::int64_t max_order = 4096);
/// {"empirical": [...]}, {"literal_glow": {"a1": .., "length": ..}} or the
/// same with "literal_najp".
DecaySequence sequence_from_json(const Json& j, const SequenceParams& params = {});
/// [{"chi": [..], "r": [..], "coeff": [re, im] | re}, ...]
std::vector<Frequency> frequencies_from_json(const Json& j);

/// Values as a JSON array of [re, im] pairs, or of plain reals.
std::vector<Complex> complex_values_from_json(const Json& j);

Json parse_json(const std::string& text);
/// Treats `arg` as inline JSON when it starts with '{' or '[', else as a path.
Json json_arg(const std::string& arg);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
void write_text(const std::string& path, const std::string& text);

}  // namespace natspec
