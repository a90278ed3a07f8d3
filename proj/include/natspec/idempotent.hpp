#pragma once

#include <optional>

#include "natspec/check.hpp"
#include "natspec/fourier.hpp"

namespace natspec {

enum class DecomposeCost { MinParts, MinFActual };

std::string_view cost_name(DecomposeCost cost) noexcept;

struct DecomposeOptions {
  DecomposeCost cost = DecomposeCost::MinParts;
  std::size_t node_cap = 100'000;
  std::size_t zero_subset_cap = 12;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

/// One summand: an integer function constant on cosets of `h`.
struct IdempotentPart {
  Subgroup h;
  std::vector<std::int64_t> g;
  std::int64_t sup = 0;
  std::size_t cosets = 0;
};

struct IdempotentDecomposition {
  std::vector<IdempotentPart> parts;
  std::int64_t f_actual = 0;
  /// A-norm of the target, which sets the part budget.
  double m = 0.0;
  std::size_t budget = 0;
  DecomposeCost cost = DecomposeCost::MinParts;
  std::size_t nodes = 0;
  bool node_cap_hit = false;
  bool trivial_fallback = false;
  bool zero_subsets_checked = true;
  std::size_t zero_subsets_removed = 0;

  std::size_t l() const noexcept { return parts.size(); }
};

/// {t : r(x + t) = r(x) for all x}.
Subgroup period_subgroup(const FiniteAbelianGroup& group, const std::vector<std::int64_t>& r);

/// Integer check of the three structural invariants.
bool sums_to(const IdempotentDecomposition& d, const std::vector<std::int64_t>& w);
bool parts_coset_constant(const IdempotentDecomposition& d);
/// nullopt when the subset check was skipped.
std::optional<bool> no_zero_subsets(const IdempotentDecomposition& d, std::size_t cap);

IdempotentDecomposition decompose_int(const FiniteAbelianGroup& group, const std::vector<std::int64_t>& w,
                                      const DecomposeOptions& options = {},
                                      const std::vector<Subgroup>* subgroups = nullptr);
IdempotentDecomposition decompose_int(const GroupFunction& w, const DecomposeOptions& options = {});

struct CorkeyChain {
  IdempotentDecomposition decomposition;  // reordered
  std::vector<Subgroup> kk;
  /// |K_k cap H_{k+1}| / |K_k| for k = 1..l-1.
  std::vector<double> ratios;
  double eta = 0.0;
  double threshold = 0.0;
  std::size_t k_eta = 0;
  Subgroup k_group;
  double log_f_prime = 0.0;
  std::size_t f_prime_range = 0;
  double d_f = 0.0;
  double d_projected = 0.0;
  std::size_t support_cosets = 0;
  bool support_is_coset_union = false;

  Inequality a;
  Inequality b;
  Inequality c;
  double f_prime = 0.0;
  /// Nesting against every chain with larger eta; filled in by corkey_build.
  bool d = true;
  bool dec = false;
  bool smooth_exact = false;
  Inequality lower_k;
  Inequality leakage;
  bool reorder_ok = false;

  bool all_pass() const;
};

struct CorkeyOptions {
  double threshold = 0.1;
  double exact_tol = 1e-10;
  DecomposeOptions decompose;
};

/// Decomposes f_Z once and answers K(eta) queries against the fixed chain.
class CorkeySelector {
 public:
  CorkeySelector(const GroupFunction& f, double m, const CorkeyOptions& options = {},
                 const std::vector<Subgroup>* subgroups = nullptr);

  CorkeyChain chain(double eta) const;
  const IdempotentDecomposition& decomposition() const noexcept { return decomposition_; }
  const std::vector<Subgroup>& intersections() const noexcept { return kk_; }
  double distance() const noexcept { return d_f_; }

 private:
  GroupFunction f_;
  double m_;
  CorkeyOptions options_;
  double d_f_ = 0.0;
  IdempotentDecomposition decomposition_;
  std::vector<Subgroup> kk_;
  std::vector<double> ratios_;
  bool reorder_ok_ = false;
};

/// Greedy reorder: position k holds the part maximizing |K_{k-1} cap H_j|.
IdempotentDecomposition greedy_reorder(IdempotentDecomposition d);

std::vector<CorkeyChain> corkey_build(const GroupFunction& f, const std::vector<double>& etas, double m,
                                      const CorkeyOptions& options = {});

}  // namespace natspec
