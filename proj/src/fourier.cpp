#include "natspec/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace natspec {

std::string_view side_name(Side side) noexcept { return side == Side::Primal ? "primal" : "dual"; }

GroupFunction GroupFunction::zeros(const FiniteAbelianGroup& group, Side side) {
  return GroupFunction{group, side, std::vector<Complex>(group.order())};
}

GroupFunction GroupFunction::from_real(const FiniteAbelianGroup& group, const std::vector<double>& values,
                                       Side side) {
  if (values.size() != group.order()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(group.order()) + " values, got " +
                                                  std::to_string(values.size()));
  }
  GroupFunction f = zeros(group, side);
  for (std::size_t i = 0; i < values.size(); ++i) f.values[i] = values[i];
  return f;
}

GroupFunction GroupFunction::indicator(const FiniteAbelianGroup& group, const std::vector<Index>& set,
                                       Side side) {
  GroupFunction f = zeros(group, side);
  for (auto i : set) f.values.at(i) = 1.0;
  return f;
}

GroupFunction GroupFunction::with_side(Side s) const {
  GroupFunction out = *this;
  out.side = s;
  return out;
}

bool GroupFunction::is_real(double tol) const {
  return std::all_of(values.begin(), values.end(), [tol](const Complex& v) { return std::abs(v.imag()) <= tol; });
}

std::vector<double> GroupFunction::real_part() const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
  return out;
}

namespace {

void require_compatible(const GroupFunction& a, const GroupFunction& b) {
  if (!(a.group == b.group)) {
    throw Error(ErrorCode::GroupMismatch, "functions live on " + a.group.spec() + " and " + b.group.spec());
  }
  if (a.side != b.side) throw Error(ErrorCode::SideMismatch, "functions live on different sides");
}

// In-place tensor DFT with per-axis cyclic transforms; sign = -1 forward, +1 inverse.
void tensor_dft(const FiniteAbelianGroup& group, std::vector<Complex>& data, int sign) {
  const std::size_t n_total = group.order();
  std::vector<Complex> line, out;
  for (std::size_t axis = 0; axis < group.rank(); ++axis) {
    const auto n = static_cast<std::size_t>(group.moduli()[axis]);
    if (n == 1) continue;
    const std::size_t stride = group.stride(axis);
    std::vector<Complex> roots(n);
    for (std::size_t k = 0; k < n; ++k) roots[k] = unit_root(sign * static_cast<std::int64_t>(k), static_cast<std::int64_t>(n));
    line.resize(n);
    out.resize(n);
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < n_total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t start = base + off;
        for (std::size_t x = 0; x < n; ++x) line[x] = data[start + x * stride];
        for (std::size_t k = 0; k < n; ++k) {
          Complex acc = 0.0;
          std::size_t p = 0;
          for (std::size_t x = 0; x < n; ++x) {
            acc += line[x] * roots[p];
            p += k;
            if (p >= n) p -= n;
          }
          out[k] = acc;
        }
        for (std::size_t k = 0; k < n; ++k) data[start + k * stride] = out[k];
      }
    }
  }
}

}  // namespace

GroupFunction& GroupFunction::operator+=(const GroupFunction& other) {
  require_compatible(*this, other);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
  return *this;
}

GroupFunction& GroupFunction::operator-=(const GroupFunction& other) {
  require_compatible(*this, other);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
  return *this;
}

GroupFunction& GroupFunction::operator*=(Complex s) {
  for (auto& v : values) v *= s;
  return *this;
}

GroupFunction operator+(GroupFunction a, const GroupFunction& b) { return a += b; }
GroupFunction operator-(GroupFunction a, const GroupFunction& b) { return a -= b; }
GroupFunction operator*(Complex s, GroupFunction a) { return a *= s; }

std::vector<Complex> transform_values(const GroupFunction& f) {
  std::vector<Complex> data = f.values;
  tensor_dft(f.group, data, -1);
  const double scale = 1.0 / static_cast<double>(f.group.order());
  for (auto& v : data) v *= scale;
  return data;
}

GroupFunction dft(const GroupFunction& f, Direction direction) {
  if (direction == Direction::Forward) {
    if (f.side != Side::Primal) throw Error(ErrorCode::SideMismatch, "forward transform needs a primal function");
    return GroupFunction{f.group, Side::Dual, transform_values(f)};
  }
  if (f.side != Side::Dual) throw Error(ErrorCode::SideMismatch, "inverse transform needs a dual function");
  GroupFunction out{f.group, Side::Primal, f.values};
  tensor_dft(f.group, out.values, +1);
  return out;
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
  require_compatible(f, g);
  auto fh = transform_values(f);
  const auto gh = transform_values(g);
  for (std::size_t i = 0; i < fh.size(); ++i) fh[i] *= gh[i];
  tensor_dft(f.group, fh, +1);
  return GroupFunction{f.group, f.side, std::move(fh)};
}

double l1_norm(const GroupFunction& f) {
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::abs(v);
  return acc / static_cast<double>(f.group.order());
}

double linf_norm(const GroupFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double a_norm(const GroupFunction& f) {
  double acc = 0.0;
  for (const auto& v : transform_values(f)) acc += std::abs(v);
  return acc;
}

NormReport norms(const GroupFunction& f) { return {l1_norm(f), linf_norm(f), a_norm(f)}; }

GroupFunction subgroup_haar(const FiniteAbelianGroup& group, const Subgroup& k) {
  if (!(k.parent() == group)) throw Error(ErrorCode::ParentMismatch, "subgroup of a different group");
  GroupFunction out = GroupFunction::zeros(group);
  const double height = static_cast<double>(group.order()) / static_cast<double>(k.size());
  for (auto e : k.elements()) out.values[e] = height;
  return out;
}

GroupFunction coset_average(const GroupFunction& f, const Subgroup& k) {
  if (!(k.parent() == f.group)) throw Error(ErrorCode::ParentMismatch, "subgroup of a different group");
  const auto& group = f.group;
  GroupFunction out = GroupFunction::zeros(group, f.side);
  std::vector<std::uint8_t> done(group.order(), 0);
  const double inv = 1.0 / static_cast<double>(k.size());
  for (Index x = 0; x < group.order(); ++x) {
    if (done[x]) continue;
    Complex acc = 0.0;
    for (auto e : k.elements()) acc += f.values[group.add(x, e)];
    acc *= inv;
    for (auto e : k.elements()) {
      const Index y = group.add(x, e);
      out.values[y] = acc;
      done[y] = 1;
    }
  }
  return out;
}

GroupFunction band_project(const GroupFunction& f, const Subgroup& k) {
  GroupFunction averaged = coset_average(f, k);
  const auto perp = annihilator(f.group, k);
  auto spectral = transform_values(f);
  for (Index g = 0; g < spectral.size(); ++g) {
    if (!perp.contains(g)) spectral[g] = 0.0;
  }
  tensor_dft(f.group, spectral, +1);
  const double scale = std::max(1.0, linf_norm(f));
  if (max_abs_diff(averaged.values, spectral) > 1e-10 * scale) {
    throw Error(ErrorCode::Internal, "coset average and spectral mask disagree");
  }
  return averaged;
}

std::vector<Complex> spectrum_sigma(const GroupFunction& f, double tol) {
  const auto hat = f.side == Side::Primal ? transform_values(f) : f.values;
  std::vector<Complex> out;
  for (const auto& v : hat) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Complex& u) { return std::abs(u - v) <= tol; });
    if (!seen) out.push_back(v);
  }
  return out;
}

NaturalSpectrumReport natural_spectrum_check(const GroupFunction& f, double tol) {
  NaturalSpectrumReport r;
  r.sigma = spectrum_sigma(f, tol);
  // The range of a transform on a finite set is already closed.
  r.range_closure = r.sigma;
  r.natural = r.sigma.size() == r.range_closure.size();
  return r;
}

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_diff(const GroupFunction& a, const GroupFunction& b) { return max_abs_diff(a.values, b.values); }

}  // namespace natspec
