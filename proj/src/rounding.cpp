#include "natspec/rounding.hpp"

#include <cmath>

namespace natspec {

namespace {

void require_real(const GroupFunction& f) {
  if (!f.is_real(kRealTolerance)) throw Error(ErrorCode::NotRealValued, "function has nonzero imaginary part");
}

}  // namespace

double dist_to_int(const GroupFunction& f) {
  require_real(f);
  double d = 0.0;
  for (const auto& v : f.values) d = std::max(d, std::abs(v.real() - std::nearbyint(v.real())));
  return d;
}

RoundingResult round_int(const GroupFunction& f, double margin) {
  RoundingResult r;
  r.distance = dist_to_int(f);
  if (r.distance >= 0.5 - margin) {
    throw Error(ErrorCode::TooCloseToHalf, "distance to the integers " + std::to_string(r.distance) +
                                               " is not below 1/2 - " + std::to_string(margin));
  }
  GroupFunction out = GroupFunction::zeros(f.group, f.side);
  r.integers.resize(f.size());
  for (Index i = 0; i < f.size(); ++i) {
    const double n = std::round(f.values[i].real());
    r.integers[i] = static_cast<std::int64_t>(n);
    out.values[i] = static_cast<double>(r.integers[i]);
    if (r.integers[i] != 0) r.support.push_back(i);
  }
  r.rounded = std::move(out);
  return r;
}

RealReduction real_reduce(const GroupFunction& f) {
  RealReduction r{GroupFunction::zeros(f.group, f.side)};
  for (Index i = 0; i < f.size(); ++i) {
    r.real.values[i] = f.values[i].real();
    r.imag_sup = std::max(r.imag_sup, std::abs(f.values[i].imag()));
  }
  r.a_norm_real = a_norm(r.real);
  r.a_norm_input = a_norm(f);
  r.dominated = r.a_norm_real <= r.a_norm_input + 1e-10;
  return r;
}

GroupFunction from_integers(const FiniteAbelianGroup& group, const std::vector<std::int64_t>& values, Side side) {
  if (values.size() != group.order()) throw Error(ErrorCode::DimensionMismatch, "integer vector length mismatch");
  GroupFunction out = GroupFunction::zeros(group, side);
  for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = static_cast<double>(values[i]);
  return out;
}

}  // namespace natspec
