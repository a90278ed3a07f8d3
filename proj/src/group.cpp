#include "natspec/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace natspec {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OverMaxOrder: return "OverMaxOrder";
    case ErrorCode::ZeroModulus: return "ZeroModulus";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OverEnumerationCap: return "OverEnumerationCap";
    case ErrorCode::ParentMismatch: return "ParentMismatch";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::SideMismatch: return "SideMismatch";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::NotRealValued: return "NotRealValued";
    case ErrorCode::TooCloseToHalf: return "TooCloseToHalf";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::OverLpCap: return "OverLpCap";
    case ErrorCode::Exhausted: return "Exhausted";
    case ErrorCode::RoundingTooFar: return "RoundingTooFar";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::PreconditionRounding: return "PreconditionRounding";
    case ErrorCode::ChainFailure: return "ChainFailure";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::NBelowSeparation: return "NBelowSeparation";
    case ErrorCode::Unrepresentable: return "Unrepresentable";
    case ErrorCode::NotEnoughSpectrum: return "NotEnoughSpectrum";
    case ErrorCode::NormExceedsOne: return "NormExceedsOne";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Complex unit_root(std::int64_t phase, std::int64_t modulus) {
  std::int64_t t = phase % modulus;
  if (t < 0) t += modulus;
  if ((4 * t) % modulus == 0) {
    switch ((4 * t) / modulus) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(modulus);
  return {std::cos(angle), std::sin(angle)};
}

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

struct FiniteAbelianGroup::Layout {
  std::vector<std::int64_t> moduli;
  std::vector<std::size_t> strides;
  std::vector<std::int64_t> weights;  // L / n_j
  std::vector<std::int64_t> table;    // order x rank coordinates
  std::size_t order = 1;
  std::int64_t lcm = 1;
};

FiniteAbelianGroup::FiniteAbelianGroup() : layout_(make({}).layout_) {}

FiniteAbelianGroup::FiniteAbelianGroup(std::shared_ptr<const Layout> layout)
    : layout_(std::move(layout)) {}

FiniteAbelianGroup FiniteAbelianGroup::make(std::vector<std::int64_t> moduli,
                                            std::int64_t max_order) {
  auto layout = std::make_shared<Layout>();
  std::int64_t order = 1;
  for (auto n : moduli) {
    if (n < 1) throw Error(ErrorCode::ZeroModulus, "every modulus must be at least 1");
    if (order > max_order / n) {
      throw Error(ErrorCode::OverMaxOrder,
                  "group order exceeds the configured maximum " + std::to_string(max_order));
    }
    order *= n;
    layout->lcm = std::lcm(layout->lcm, n);
  }
  if (order > max_order) {
    throw Error(ErrorCode::OverMaxOrder,
                "group order exceeds the configured maximum " + std::to_string(max_order));
  }
  const std::size_t d = moduli.size();
  layout->order = static_cast<std::size_t>(order);
  layout->strides.assign(d, 1);
  for (std::size_t j = d; j-- > 1;) {
    layout->strides[j - 1] = layout->strides[j] * static_cast<std::size_t>(moduli[j]);
  }
  for (auto n : moduli) layout->weights.push_back(layout->lcm / n);
  layout->table.resize(layout->order * d);
  for (std::size_t i = 0; i < layout->order; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      layout->table[i * d + j] =
          static_cast<std::int64_t>((i / layout->strides[j]) % static_cast<std::size_t>(moduli[j]));
    }
  }
  layout->moduli = std::move(moduli);
  return FiniteAbelianGroup(std::move(layout));
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view spec, std::int64_t max_order) {
  std::vector<std::int64_t> moduli;
  std::size_t pos = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  if (trim(spec).empty()) throw Error(ErrorCode::Parse, "empty group spec");
  while (pos <= spec.size()) {
    const auto next = spec.find_first_of("xX", pos);
    const auto piece = trim(spec.substr(pos, next == std::string_view::npos ? spec.npos : next - pos));
    if (piece.empty() || !std::all_of(piece.begin(), piece.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }) || piece.size() > 12) {
      throw Error(ErrorCode::Parse, "malformed group spec '" + std::string(spec) + "'");
    }
    moduli.push_back(std::stoll(std::string(piece)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return make(std::move(moduli), max_order);
}

const std::vector<std::int64_t>& FiniteAbelianGroup::moduli() const noexcept { return layout_->moduli; }
std::size_t FiniteAbelianGroup::rank() const noexcept { return layout_->moduli.size(); }
std::size_t FiniteAbelianGroup::order() const noexcept { return layout_->order; }
std::int64_t FiniteAbelianGroup::lcm() const noexcept { return layout_->lcm; }
std::size_t FiniteAbelianGroup::stride(std::size_t axis) const noexcept { return layout_->strides[axis]; }

std::string FiniteAbelianGroup::spec() const {
  if (layout_->moduli.empty()) return "1";
  std::string out;
  for (std::size_t j = 0; j < layout_->moduli.size(); ++j) {
    if (j) out += 'x';
    out += std::to_string(layout_->moduli[j]);
  }
  return out;
}

std::vector<std::int64_t> FiniteAbelianGroup::coords(Index i) const {
  const std::size_t d = rank();
  return {layout_->table.begin() + static_cast<std::ptrdiff_t>(i * d),
          layout_->table.begin() + static_cast<std::ptrdiff_t>((i + 1) * d)};
}

std::int64_t FiniteAbelianGroup::coord(Index i, std::size_t axis) const noexcept {
  return layout_->table[i * rank() + axis];
}

Index FiniteAbelianGroup::index(std::span<const std::int64_t> coords) const {
  if (coords.size() != rank()) {
    throw Error(ErrorCode::DimensionMismatch, "coordinate tuple has " + std::to_string(coords.size()) +
                                                  " entries, group rank is " + std::to_string(rank()));
  }
  Index out = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    const auto n = layout_->moduli[j];
    const auto c = ((coords[j] % n) + n) % n;
    out += static_cast<Index>(c) * layout_->strides[j];
  }
  return out;
}

Index FiniteAbelianGroup::index(const GroupElement& x) const { return index(std::span(x.coords)); }

Index FiniteAbelianGroup::add(Index a, Index b) const noexcept {
  const std::size_t d = rank();
  const auto* ca = &layout_->table[a * d];
  const auto* cb = &layout_->table[b * d];
  Index out = 0;
  for (std::size_t j = 0; j < d; ++j) {
    auto c = ca[j] + cb[j];
    if (c >= layout_->moduli[j]) c -= layout_->moduli[j];
    out += static_cast<Index>(c) * layout_->strides[j];
  }
  return out;
}

Index FiniteAbelianGroup::neg(Index a) const noexcept {
  const std::size_t d = rank();
  const auto* ca = &layout_->table[a * d];
  Index out = 0;
  for (std::size_t j = 0; j < d; ++j) {
    const auto c = ca[j] == 0 ? 0 : layout_->moduli[j] - ca[j];
    out += static_cast<Index>(c) * layout_->strides[j];
  }
  return out;
}

Index FiniteAbelianGroup::sub(Index a, Index b) const noexcept { return add(a, neg(b)); }

Index FiniteAbelianGroup::scale(Index a, std::int64_t k) const noexcept {
  const std::size_t d = rank();
  Index out = 0;
  for (std::size_t j = 0; j < d; ++j) {
    const auto n = layout_->moduli[j];
    auto c = (layout_->table[a * d + j] * (k % n)) % n;
    if (c < 0) c += n;
    out += static_cast<Index>(c) * layout_->strides[j];
  }
  return out;
}

std::int64_t FiniteAbelianGroup::phase(Index r, Index x) const noexcept {
  const std::size_t d = rank();
  const auto L = layout_->lcm;
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < d; ++j) {
    acc = (acc + layout_->table[r * d + j] * layout_->table[x * d + j] % layout_->moduli[j] *
                     layout_->weights[j]) % L;
  }
  return acc;
}

bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) noexcept {
  return a.layout_ == b.layout_ || a.layout_->moduli == b.layout_->moduli;
}

namespace {

void check_member(const FiniteAbelianGroup& group, const GroupElement& x) {
  if (x.coords.size() != group.rank()) {
    throw Error(ErrorCode::DimensionMismatch, "element has " + std::to_string(x.coords.size()) +
                                                  " coordinates, group rank is " +
                                                  std::to_string(group.rank()));
  }
  for (std::size_t j = 0; j < x.coords.size(); ++j) {
    if (x.coords[j] < 0 || x.coords[j] >= group.moduli()[j]) {
      throw Error(ErrorCode::InvalidArgument, "coordinate out of range for group " + group.spec());
    }
  }
}

}  // namespace

Complex pair(const FiniteAbelianGroup& group, const DualCharacter& r, const GroupElement& x) {
  check_member(group, r);
  check_member(group, x);
  return pair(group, group.index(r), group.index(x));
}

bool pair_is_trivial(const FiniteAbelianGroup& group, const DualCharacter& r, const GroupElement& x) {
  check_member(group, r);
  check_member(group, x);
  return pair_is_trivial(group, group.index(r), group.index(x));
}

Complex pair(const FiniteAbelianGroup& group, Index r, Index x) {
  return unit_root(group.phase(r, x), group.lcm());
}

bool pair_is_trivial(const FiniteAbelianGroup& group, Index r, Index x) {
  return group.phase(r, x) == 0;
}

// ---------------------------------------------------------------------------
// Subgroups

class SubgroupBuilder {
 public:
  static Subgroup from_mask(const FiniteAbelianGroup& parent, std::vector<std::uint8_t> mask) {
    return Subgroup(parent, std::move(mask));
  }

  /// Extends the subgroup with element list `elems`/mask by g, in place.
  static void extend(const FiniteAbelianGroup& group, std::vector<std::uint8_t>& mask,
                     std::vector<Index>& elems, Index g) {
    if (mask[g]) return;
    const std::vector<Index> base = elems;
    Index t = g;
    while (!mask[t]) {
      for (auto e : base) {
        const Index y = group.add(e, t);
        mask[y] = 1;
        elems.push_back(y);
      }
      t = group.add(t, g);
    }
  }
};

Subgroup::Subgroup() : mask_{1}, elements_{0} {}

Subgroup::Subgroup(FiniteAbelianGroup parent, std::vector<std::uint8_t> mask)
    : parent_(std::move(parent)), mask_(std::move(mask)) {
  for (Index i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) elements_.push_back(i);
  }
  std::vector<std::uint8_t> span(mask_.size(), 0);
  std::vector<Index> span_elems{0};
  span[0] = 1;
  for (auto e : elements_) {
    if (!span[e]) {
      generators_.push_back(e);
      SubgroupBuilder::extend(parent_, span, span_elems, e);
    }
  }
}

Subgroup Subgroup::from_elements(const FiniteAbelianGroup& parent, std::vector<Index> elements) {
  std::vector<std::uint8_t> mask(parent.order(), 0);
  for (auto e : elements) {
    if (e >= parent.order()) throw Error(ErrorCode::InvalidArgument, "element index out of range");
    mask[e] = 1;
  }
  if (!mask[0]) throw Error(ErrorCode::NotASubgroup, "identity missing");
  for (auto a : elements) {
    for (auto b : elements) {
      if (!mask[parent.sub(a, b)]) throw Error(ErrorCode::NotASubgroup, "set is not closed");
    }
  }
  return Subgroup(parent, std::move(mask));
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (!(parent_ == other.parent_)) return false;
  return std::all_of(elements_.begin(), elements_.end(), [&](Index e) { return other.contains(e); });
}

bool operator==(const Subgroup& a, const Subgroup& b) noexcept {
  return a.parent_ == b.parent_ && a.elements_ == b.elements_;
}

bool subgroup_order(const Subgroup& a, const Subgroup& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a.key() < b.key();
}

Subgroup trivial_subgroup(const FiniteAbelianGroup& group) {
  std::vector<std::uint8_t> mask(group.order(), 0);
  mask[0] = 1;
  return SubgroupBuilder::from_mask(group, std::move(mask));
}

Subgroup whole_group(const FiniteAbelianGroup& group) {
  return SubgroupBuilder::from_mask(group, std::vector<std::uint8_t>(group.order(), 1));
}

Subgroup subgroup_span(const FiniteAbelianGroup& group, std::span<const Index> gens) {
  std::vector<std::uint8_t> mask(group.order(), 0);
  std::vector<Index> elems{0};
  mask[0] = 1;
  for (auto g : gens) {
    if (g >= group.order()) throw Error(ErrorCode::InvalidArgument, "generator index out of range");
    SubgroupBuilder::extend(group, mask, elems, g);
  }
  return SubgroupBuilder::from_mask(group, std::move(mask));
}

Subgroup subgroup_span(const FiniteAbelianGroup& group, const std::vector<GroupElement>& gens) {
  std::vector<Index> idx;
  for (const auto& g : gens) {
    check_member(group, g);
    idx.push_back(group.index(g));
  }
  return subgroup_span(group, std::span<const Index>(idx));
}

Subgroup annihilator(const FiniteAbelianGroup& group, const Subgroup& k) {
  if (!(k.parent() == group)) throw Error(ErrorCode::ParentMismatch, "subgroup of a different group");
  std::vector<std::uint8_t> mask(group.order(), 0);
  for (Index gamma = 0; gamma < group.order(); ++gamma) {
    mask[gamma] = std::all_of(k.generators().begin(), k.generators().end(),
                              [&](Index x) { return pair_is_trivial(group, gamma, x); });
  }
  return SubgroupBuilder::from_mask(group, std::move(mask));
}

Subgroup subgroup_intersect(const Subgroup& a, const Subgroup& b) {
  if (!(a.parent() == b.parent())) throw Error(ErrorCode::ParentMismatch, "intersecting subgroups of different groups");
  std::vector<std::uint8_t> mask(a.parent().order(), 0);
  for (auto e : a.elements()) mask[e] = b.contains(e);
  return SubgroupBuilder::from_mask(a.parent(), std::move(mask));
}

std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianGroup& group, std::size_t cap) {
  if (group.order() > cap) {
    throw Error(ErrorCode::OverEnumerationCap, "order " + std::to_string(group.order()) +
                                                   " exceeds enumeration cap " + std::to_string(cap));
  }
  const std::size_t n = group.order();
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<std::pair<std::vector<std::uint8_t>, std::vector<Index>>> found;
  std::vector<std::uint8_t> mask0(n, 0);
  mask0[0] = 1;
  seen.insert(mask0);
  found.emplace_back(mask0, std::vector<Index>{0});
  for (std::size_t cursor = 0; cursor < found.size(); ++cursor) {
    for (Index g = 0; g < n; ++g) {
      if (found[cursor].first[g]) continue;
      auto mask = found[cursor].first;
      auto elems = found[cursor].second;
      SubgroupBuilder::extend(group, mask, elems, g);
      if (seen.insert(mask).second) found.emplace_back(std::move(mask), std::move(elems));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(SubgroupBuilder::from_mask(group, std::move(f.first)));
  std::sort(out.begin(), out.end(), subgroup_order);
  return out;
}

CosetPartition coset_partition(const Subgroup& k) {
  const auto& group = k.parent();
  constexpr auto unset = static_cast<std::size_t>(-1);
  CosetPartition out;
  out.coset_of.assign(group.order(), unset);
  for (Index x = 0; x < group.order(); ++x) {
    if (out.coset_of[x] != unset) continue;
    const std::size_t id = out.representatives.size();
    out.representatives.push_back(x);
    for (auto e : k.elements()) out.coset_of[group.add(x, e)] = id;
  }
  return out;
}

Complex QuotientDual::value(std::size_t coset, std::size_t j) const {
  return unit_root(phases[coset * annihilator.size() + j], kernel.parent().lcm());
}

QuotientDual quotient_dual_iso(const FiniteAbelianGroup& group, const Subgroup& k) {
  QuotientDual q{k, annihilator(group, k), coset_partition(k), {}};
  const auto& perp = q.annihilator.elements();
  const std::size_t m = perp.size();
  q.phases.resize(q.cosets.count() * m);
  for (std::size_t c = 0; c < q.cosets.count(); ++c) {
    const Index rep = q.cosets.representatives[c];
    for (std::size_t j = 0; j < m; ++j) q.phases[c * m + j] = group.phase(perp[j], rep);
    // Well-definedness: a second representative of the coset gives the same character.
    if (k.size() > 1) {
      const Index other = group.add(rep, k.elements()[1]);
      for (std::size_t j = 0; j < m; ++j) {
        if (group.phase(perp[j], other) != q.phases[c * m + j]) {
          throw Error(ErrorCode::Internal, "coset character depends on the representative");
        }
      }
    }
  }
  if (q.cosets.count() != m) {
    throw Error(ErrorCode::Internal, "|G/K| differs from |K-perp|");
  }
  return q;
}

CharacterTable CharacterTable::of(const FiniteAbelianGroup& group) {
  CharacterTable t;
  t.size = group.order();
  t.modulus = group.lcm();
  t.phase.resize(t.size * t.size);
  t.inverse.resize(t.size);
  for (Index c = 0; c < t.size; ++c) {
    t.inverse[c] = group.neg(c);
    for (Index p = 0; p < t.size; ++p) t.phase[c * t.size + p] = group.phase(c, p);
  }
  t.trivial = 0;
  return t;
}

CharacterTable CharacterTable::of(const QuotientDual& quotient) {
  const auto& group = quotient.kernel.parent();
  CharacterTable t;
  t.size = quotient.annihilator.size();
  t.modulus = group.lcm();
  t.phase = quotient.phases;
  t.inverse.resize(t.size);
  for (std::size_t c = 0; c < t.size; ++c) {
    t.inverse[c] = quotient.cosets.coset_of[group.neg(quotient.cosets.representatives[c])];
  }
  t.trivial = quotient.cosets.coset_of[0];
  return t;
}

}  // namespace natspec
