#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "natspec/error.hpp"

namespace natspec {

using Index = std::size_t;
using Complex = std::complex<double>;

inline constexpr std::int64_t kDefaultMaxOrder = 4096;
inline constexpr std::size_t kDefaultEnumerationCap = 64;

/// Coordinate tuple (c_1, ..., c_d) with 0 <= c_j < n_j. Characters use the
/// same coordinates: r pairs with x through exp(2 pi i sum r_j x_j / n_j).
struct GroupElement {
  std::vector<std::int64_t> coords;
};
using DualCharacter = GroupElement;

/// exp(2 pi i phase / modulus), exact at quarter turns.
Complex unit_root(std::int64_t phase, std::int64_t modulus);

/**
 * Z_{n_1} x ... x Z_{n_d}. Elements are enumerated lexicographically over
 * coordinate tuples (last coordinate fastest), and the dual group reuses the
 * same enumeration. Copies share the immutable layout.
 */
class FiniteAbelianGroup {
 public:
  /// The trivial group of rank 0.
  FiniteAbelianGroup();
  static FiniteAbelianGroup make(std::vector<std::int64_t> moduli,
                                 std::int64_t max_order = kDefaultMaxOrder);
  /// Parses "n1xn2x...xnd" (whitespace tolerated around factors).
  static FiniteAbelianGroup parse(std::string_view spec,
                                  std::int64_t max_order = kDefaultMaxOrder);

  const std::vector<std::int64_t>& moduli() const noexcept;
  std::size_t rank() const noexcept;
  std::size_t order() const noexcept;
  std::int64_t lcm() const noexcept;
  std::string spec() const;

  std::vector<std::int64_t> coords(Index i) const;
  std::int64_t coord(Index i, std::size_t axis) const noexcept;
  /// Reduces each coordinate modulo its factor.
  Index index(std::span<const std::int64_t> coords) const;
  Index index(const GroupElement& x) const;
  std::size_t stride(std::size_t axis) const noexcept;

  Index add(Index a, Index b) const noexcept;
  Index sub(Index a, Index b) const noexcept;
  Index neg(Index a) const noexcept;
  Index scale(Index a, std::int64_t k) const noexcept;

  /// sum_j r_j x_j (L / n_j) mod L with L = lcm of the moduli.
  std::int64_t phase(Index r, Index x) const noexcept;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) noexcept;

 private:
  struct Layout;
  explicit FiniteAbelianGroup(std::shared_ptr<const Layout> layout);
  std::shared_ptr<const Layout> layout_;
};

Complex pair(const FiniteAbelianGroup& group, const DualCharacter& r, const GroupElement& x);
bool pair_is_trivial(const FiniteAbelianGroup& group, const DualCharacter& r,
                     const GroupElement& x);
Complex pair(const FiniteAbelianGroup& group, Index r, Index x);
bool pair_is_trivial(const FiniteAbelianGroup& group, Index r, Index x);

/// A subgroup stored as an element mask together with a generating set. The
/// canonical key is the sorted element-index list.
class Subgroup {
 public:
  /// {0} inside the trivial group.
  Subgroup();
  /// Validates closure; throws NotASubgroup otherwise.
  static Subgroup from_elements(const FiniteAbelianGroup& parent, std::vector<Index> elements);

  const FiniteAbelianGroup& parent() const noexcept { return parent_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t index_in_parent() const noexcept { return parent_.order() / elements_.size(); }
  bool contains(Index i) const noexcept { return mask_[i] != 0; }
  const std::vector<Index>& elements() const noexcept { return elements_; }
  const std::vector<Index>& key() const noexcept { return elements_; }
  const std::vector<Index>& generators() const noexcept { return generators_; }
  bool is_trivial() const noexcept { return elements_.size() == 1; }
  bool is_whole() const noexcept { return elements_.size() == parent_.order(); }
  bool is_subgroup_of(const Subgroup& other) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept;

 private:
  friend class SubgroupBuilder;
  Subgroup(FiniteAbelianGroup parent, std::vector<std::uint8_t> mask);
  FiniteAbelianGroup parent_;
  std::vector<std::uint8_t> mask_;
  std::vector<Index> elements_;
  std::vector<Index> generators_;
};

/// Orders subgroups by descending size, then ascending canonical key.
bool subgroup_order(const Subgroup& a, const Subgroup& b);

Subgroup trivial_subgroup(const FiniteAbelianGroup& group);
Subgroup whole_group(const FiniteAbelianGroup& group);
Subgroup subgroup_span(const FiniteAbelianGroup& group, std::span<const Index> gens);
Subgroup subgroup_span(const FiniteAbelianGroup& group, const std::vector<GroupElement>& gens);
/// K-perp inside the dual, expressed in the shared coordinates.
Subgroup annihilator(const FiniteAbelianGroup& group, const Subgroup& k);
Subgroup subgroup_intersect(const Subgroup& a, const Subgroup& b);
std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianGroup& group,
                                          std::size_t cap = kDefaultEnumerationCap);

/// Cosets of a subgroup, labelled 0..count-1 in order of their minimal element.
struct CosetPartition {
  std::vector<std::size_t> coset_of;
  std::vector<Index> representatives;
  std::size_t count() const noexcept { return representatives.size(); }
};
CosetPartition coset_partition(const Subgroup& k);

/// The isomorphism G/K -> dual of K-perp, x + K |-> (gamma |-> gamma(x)).
struct QuotientDual {
  Subgroup kernel;
  Subgroup annihilator;
  CosetPartition cosets;
  /// phases[c * |K-perp| + j] = phase(annihilator.elements()[j], representatives[c]).
  std::vector<std::int64_t> phases;

  Complex value(std::size_t coset, std::size_t j) const;
};
QuotientDual quotient_dual_iso(const FiniteAbelianGroup& group, const Subgroup& k);

/**
 * Explicit pairing between a finite Abelian group A (the "points") and its
 * dual (the "characters"), both of size n. Used where A is not presented as
 * a product of cyclic groups, e.g. A = K-perp with dual G/K.
 */
struct CharacterTable {
  std::size_t size = 0;
  std::int64_t modulus = 1;
  /// phase[c * size + p]: character c evaluated at point p is exp(2 pi i phase / modulus).
  std::vector<std::int64_t> phase;
  std::vector<std::size_t> inverse;
  std::size_t trivial = 0;

  static CharacterTable of(const FiniteAbelianGroup& group);
  static CharacterTable of(const QuotientDual& quotient);

  Complex value(std::size_t character, std::size_t point) const {
    return unit_root(phase[character * size + point], modulus);
  }
};

}  // namespace natspec
