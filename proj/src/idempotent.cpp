#include "natspec/idempotent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "natspec/rounding.hpp"

namespace natspec {

std::string_view cost_name(DecomposeCost cost) noexcept {
  return cost == DecomposeCost::MinParts ? "min_parts" : "min_f_actual";
}

Subgroup period_subgroup(const FiniteAbelianGroup& group, const std::vector<std::int64_t>& r) {
  std::vector<Index> periods;
  for (Index t = 0; t < group.order(); ++t) {
    bool ok = true;
    for (Index x = 0; x < group.order() && ok; ++x) ok = r[group.add(x, t)] == r[x];
    if (ok) periods.push_back(t);
  }
  return subgroup_span(group, std::span<const Index>(periods));
}

namespace {

std::size_t count_cosets(const Subgroup& h, const std::vector<std::int64_t>& g) {
  const auto& group = h.parent();
  std::vector<std::uint8_t> seen(group.order(), 0);
  std::size_t count = 0;
  for (Index x = 0; x < group.order(); ++x) {
    if (g[x] == 0 || seen[x]) continue;
    ++count;
    for (auto e : h.elements()) seen[group.add(x, e)] = 1;
  }
  return count;
}

IdempotentPart make_part(const Subgroup& h, std::vector<std::int64_t> g) {
  IdempotentPart p{h, std::move(g), 0, 0};
  for (auto v : p.g) p.sup = std::max<std::int64_t>(p.sup, std::llabs(v));
  p.cosets = count_cosets(h, p.g);
  return p;
}

std::int64_t part_cost(const IdempotentPart& p) {
  return std::max<std::int64_t>(p.sup, static_cast<std::int64_t>(p.cosets));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool all_zero(const std::vector<std::int64_t>& r) {
  return std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v == 0; });
}

class Search {
 public:
  Search(const FiniteAbelianGroup& group, const std::vector<Subgroup>& subgroups, const DecomposeOptions& opt)
      : group_(group), subgroups_(subgroups), opt_(opt) {
    for (const auto& h : subgroups_) partitions_.push_back(coset_partition(h));
  }

  std::vector<IdempotentPart> candidates(const std::vector<std::int64_t>& r, bool with_finisher) const {
    std::vector<IdempotentPart> out;
    std::set<std::vector<std::int64_t>> seen;
    for (std::size_t s = 0; s < subgroups_.size(); ++s) {
      const auto& part = partitions_[s];
      const auto size = static_cast<std::int64_t>(subgroups_[s].size());
      std::vector<std::int64_t> sums(part.count(), 0);
      for (Index x = 0; x < r.size(); ++x) sums[part.coset_of[x]] += r[x];
      for (int variant = 0; variant < 3; ++variant) {
        std::vector<std::int64_t> level(part.count());
        for (std::size_t c = 0; c < part.count(); ++c) {
          const auto s2 = sums[c];
          switch (variant) {
            case 0: level[c] = floor_div(2 * s2 + size, 2 * size); break;
            case 1: level[c] = floor_div(s2, size); break;
            default: level[c] = -floor_div(-s2, size); break;
          }
        }
        std::vector<std::int64_t> g(r.size());
        for (Index x = 0; x < r.size(); ++x) g[x] = level[part.coset_of[x]];
        if (all_zero(g) || !seen.insert(g).second) continue;
        out.push_back(make_part(subgroups_[s], std::move(g)));
      }
    }
    if (with_finisher && seen.find(r) == seen.end()) out.push_back(make_part(period_subgroup(group_, r), r));
    return out;
  }

  void min_parts(const std::vector<std::int64_t>& w) {
    for (std::size_t limit = 1; limit <= budget_ && !found_ && !cap_hit_; ++limit) {
      explore_limited(w, 0, limit, 0);
    }
  }

  void min_f(const std::vector<std::int64_t>& w) { explore_free(w, 0, 0); }

  void seed(std::vector<IdempotentPart> parts) {
    best_f_ = 0;
    for (const auto& p : parts) best_f_ = std::max(best_f_, part_cost(p));
    best_ = std::move(parts);
    found_ = true;
  }

  std::size_t budget_ = 4;
  std::size_t nodes_ = 0;
  bool cap_hit_ = false;
  bool found_ = false;
  std::int64_t best_f_ = std::numeric_limits<std::int64_t>::max();
  std::vector<IdempotentPart> best_;

 private:
  bool tick() {
    if (nodes_ >= opt_.node_cap) {
      cap_hit_ = true;
      return false;
    }
    ++nodes_;
    return true;
  }

  void record(std::int64_t f) {
    const bool better = !found_ || f < best_f_ || (f == best_f_ && stack_.size() < best_.size());
    if (better) {
      best_ = stack_;
      best_f_ = f;
      found_ = true;
    }
  }

  void explore_limited(const std::vector<std::int64_t>& r, std::size_t depth, std::size_t limit, std::int64_t f) {
    if (depth + 1 == limit) {
      if (!tick()) return;
      auto fin = make_part(period_subgroup(group_, r), r);
      if (depth == 0 && fin.h.is_trivial()) return;
      const auto nf = std::max(f, part_cost(fin));
      if (found_ && nf >= best_f_) return;
      stack_.push_back(std::move(fin));
      record(nf);
      stack_.pop_back();
      return;
    }
    for (auto& cand : candidates(r, false)) {
      if (!tick()) return;
      const auto nf = std::max(f, part_cost(cand));
      if (found_ && nf >= best_f_) continue;
      std::vector<std::int64_t> next(r.size());
      for (Index x = 0; x < r.size(); ++x) next[x] = r[x] - cand.g[x];
      if (all_zero(next)) continue;
      stack_.push_back(std::move(cand));
      explore_limited(next, depth + 1, limit, nf);
      stack_.pop_back();
      if (cap_hit_) return;
    }
  }

  void explore_free(const std::vector<std::int64_t>& r, std::size_t depth, std::int64_t f) {
    if (depth == budget_) return;
    auto cands = candidates(r, true);
    std::stable_sort(cands.begin(), cands.end(),
                     [](const IdempotentPart& a, const IdempotentPart& b) { return part_cost(a) < part_cost(b); });
    for (auto& cand : cands) {
      if (!tick()) return;
      const auto nf = std::max(f, part_cost(cand));
      if (nf > best_f_) break;
      if (nf == best_f_ && depth + 1 >= best_.size()) continue;
      std::vector<std::int64_t> next(r.size());
      for (Index x = 0; x < r.size(); ++x) next[x] = r[x] - cand.g[x];
      stack_.push_back(std::move(cand));
      if (all_zero(next)) {
        record(nf);
      } else {
        explore_free(next, depth + 1, nf);
      }
      stack_.pop_back();
      if (cap_hit_) return;
    }
  }

  const FiniteAbelianGroup& group_;
  const std::vector<Subgroup>& subgroups_;
  DecomposeOptions opt_;
  std::vector<CosetPartition> partitions_;
  std::vector<IdempotentPart> stack_;
};

void finalize(IdempotentDecomposition& d) {
  d.f_actual = 0;
  for (const auto& p : d.parts) d.f_actual = std::max(d.f_actual, part_cost(p));
}

}  // namespace

bool sums_to(const IdempotentDecomposition& d, const std::vector<std::int64_t>& w) {
  std::vector<std::int64_t> acc(w.size(), 0);
  for (const auto& p : d.parts) {
    for (Index x = 0; x < w.size(); ++x) acc[x] += p.g[x];
  }
  return acc == w;
}

bool parts_coset_constant(const IdempotentDecomposition& d) {
  for (const auto& p : d.parts) {
    const auto& group = p.h.parent();
    for (Index x = 0; x < group.order(); ++x) {
      for (auto e : p.h.generators()) {
        if (p.g[group.add(x, e)] != p.g[x]) return false;
      }
    }
  }
  return true;
}

std::optional<bool> no_zero_subsets(const IdempotentDecomposition& d, std::size_t cap) {
  const std::size_t l = d.parts.size();
  if (l > cap) return std::nullopt;
  if (l < 2) return true;
  const std::size_t n = d.parts.front().g.size();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << l); ++mask) {
    bool zero = true;
    for (Index x = 0; x < n && zero; ++x) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < l; ++j) {
        if (mask >> j & 1) s += d.parts[j].g[x];
      }
      zero = s == 0;
    }
    if (zero) return false;
  }
  return true;
}

IdempotentDecomposition decompose_int(const FiniteAbelianGroup& group, const std::vector<std::int64_t>& w,
                                      const DecomposeOptions& options, const std::vector<Subgroup>* subgroups) {
  if (w.size() != group.order()) throw Error(ErrorCode::DimensionMismatch, "target length differs from group order");
  std::vector<Subgroup> owned;
  if (!subgroups) {
    owned = enumerate_subgroups(group, options.enumeration_cap);
    subgroups = &owned;
  }
  IdempotentDecomposition d;
  d.cost = options.cost;
  d.m = a_norm(from_integers(group, w));
  d.budget = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(2.0 * d.m - 1e-9)), 4);
  if (all_zero(w)) return d;

  Search search(group, *subgroups, options);
  search.budget_ = d.budget;
  auto trivial = std::vector<IdempotentPart>{make_part(trivial_subgroup(group), w)};
  if (options.cost == DecomposeCost::MinParts) {
    search.min_parts(w);
  } else {
    search.seed(trivial);
    search.min_f(w);
  }
  d.nodes = search.nodes_;
  d.node_cap_hit = search.cap_hit_;
  if (search.found_) {
    d.parts = std::move(search.best_);
  } else {
    d.parts = std::move(trivial);
  }
  d.trivial_fallback = d.parts.size() == 1 && d.parts.front().h.is_trivial();

  // Drop sub-collections of parts that cancel; the rest still sums to w.
  while (d.parts.size() >= 2 && d.parts.size() <= options.zero_subset_cap) {
    const std::size_t l = d.parts.size();
    std::uint64_t hit = 0;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << l) && !hit; ++mask) {
      bool zero = true;
      for (Index x = 0; x < w.size() && zero; ++x) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < l; ++j) {
          if (mask >> j & 1) s += d.parts[j].g[x];
        }
        zero = s == 0;
      }
      if (zero) hit = mask;
    }
    if (!hit) break;
    std::vector<IdempotentPart> kept;
    for (std::size_t j = 0; j < l; ++j) {
      if (hit >> j & 1) {
        ++d.zero_subsets_removed;
      } else {
        kept.push_back(std::move(d.parts[j]));
      }
    }
    d.parts = std::move(kept);
  }
  d.zero_subsets_checked = d.parts.size() <= options.zero_subset_cap;
  finalize(d);
  return d;
}

IdempotentDecomposition decompose_int(const GroupFunction& w, const DecomposeOptions& options) {
  if (dist_to_int(w) > 1e-9) throw Error(ErrorCode::InvalidArgument, "decomposition target is not integer-valued");
  const auto r = round_int(w);
  return decompose_int(w.group, r.integers, options);
}

IdempotentDecomposition greedy_reorder(IdempotentDecomposition d) {
  if (d.parts.empty()) return d;
  const auto& group = d.parts.front().h.parent();
  Subgroup current = whole_group(group);
  std::vector<IdempotentPart> ordered;
  auto rest = std::move(d.parts);
  while (!rest.empty()) {
    std::size_t pick = 0;
    std::size_t best = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      const std::size_t size = subgroup_intersect(current, rest[j].h).size();
      if (j == 0 || size > best || (size == best && rest[j].h.key() < rest[pick].h.key())) {
        best = size;
        pick = j;
      }
    }
    current = subgroup_intersect(current, rest[pick].h);
    ordered.push_back(std::move(rest[pick]));
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  d.parts = std::move(ordered);
  return d;
}

bool CorkeyChain::all_pass() const {
  return a.pass && b.pass && c.pass && d && dec && smooth_exact && lower_k.pass && leakage.pass && reorder_ok;
}

CorkeySelector::CorkeySelector(const GroupFunction& f, double m, const CorkeyOptions& options,
                               const std::vector<Subgroup>* subgroups)
    : f_(f), m_(m), options_(options) {
  d_f_ = dist_to_int(f);
  if (d_f_ > options.threshold) {
    throw Error(ErrorCode::RoundingTooFar, "distance to the integers " + std::to_string(d_f_) +
                                               " exceeds the corkey threshold " + std::to_string(options.threshold));
  }
  const auto rounded = round_int(f);
  if (all_zero(rounded.integers)) throw Error(ErrorCode::DecompositionFailed, "rounded function vanishes");
  decomposition_ = greedy_reorder(decompose_int(f.group, rounded.integers, options.decompose, subgroups));
  if (decomposition_.parts.empty()) throw Error(ErrorCode::DecompositionFailed, "empty decomposition");

  const auto& group = f.group;
  Subgroup current = whole_group(group);
  for (const auto& p : decomposition_.parts) {
    current = subgroup_intersect(current, p.h);
    kk_.push_back(current);
  }
  for (std::size_t k = 0; k + 1 < kk_.size(); ++k) {
    ratios_.push_back(static_cast<double>(subgroup_intersect(kk_[k], decomposition_.parts[k + 1].h).size()) /
                      static_cast<double>(kk_[k].size()));
  }
  reorder_ok_ = true;
  Subgroup prev = whole_group(group);
  for (std::size_t k = 0; k < kk_.size(); ++k) {
    const std::size_t chosen = subgroup_intersect(prev, decomposition_.parts[k].h).size();
    for (std::size_t j = k; j < kk_.size(); ++j) {
      if (subgroup_intersect(prev, decomposition_.parts[j].h).size() > chosen) reorder_ok_ = false;
    }
    prev = kk_[k];
  }
}

CorkeyChain CorkeySelector::chain(double eta) const {
  if (!(eta > 0.0 && eta <= 0.25)) throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1/4]");
  const auto& group = f_.group;
  const auto& parts = decomposition_.parts;
  const std::size_t l = parts.size();
  const double big_f = static_cast<double>(decomposition_.f_actual);

  CorkeyChain ch;
  ch.decomposition = decomposition_;
  ch.kk = kk_;
  ch.ratios = ratios_;
  ch.eta = eta;
  ch.reorder_ok = reorder_ok_;
  ch.d_f = d_f_;
  ch.threshold = eta / (static_cast<double>(std::max<std::size_t>(l, 1)) * big_f * big_f);
  ch.k_eta = l;
  for (std::size_t k = 1; k < l; ++k) {
    if (ratios_[k - 1] <= ch.threshold) {
      ch.k_eta = k;
      break;
    }
  }
  ch.k_group = kk_[ch.k_eta - 1];
  const auto& kgroup = ch.k_group;

  const GroupFunction proj = band_project(f_, kgroup);
  ch.d_projected = dist_to_int(proj);
  const double tol = options_.exact_tol;
  ch.a = leq(ch.d_projected, d_f_ + eta, tol);
  ch.b = geq(linf_norm(proj), 0.5, tol);

  std::vector<std::int64_t> head(group.order(), 0), tail(group.order(), 0);
  for (std::size_t j = 0; j < l; ++j) {
    auto& dst = j < ch.k_eta ? head : tail;
    for (Index x = 0; x < group.order(); ++x) dst[x] += parts[j].g[x];
  }

  // F' in the log domain over part counts up to max(floor(2M), l).
  ch.f_prime_range = std::max<std::size_t>({static_cast<std::size_t>(std::floor(2.0 * m_ + 1e-12)), l, 1});
  ch.log_f_prime = -std::numeric_limits<double>::infinity();
  for (std::size_t lp = 1; lp <= ch.f_prime_range; ++lp) {
    const double x = static_cast<double>(lp);
    const double v = -(x - 1.0) * std::log(eta) + x * std::log(x) + (2.0 * x - 1.0) * std::log(big_f);
    ch.log_f_prime = std::max(ch.log_f_prime, v);
  }
  ch.f_prime = ch.log_f_prime > 690.0 ? 1e300 : std::ceil(std::exp(ch.log_f_prime) - 1e-9);

  if (ch.d_projected < 0.5 - kDefaultRoundingMargin) {
    const auto rounded = round_int(proj);
    ch.dec = rounded.integers == head;
    std::vector<std::uint8_t> in_support(group.order(), 0);
    for (auto x : rounded.support) in_support[x] = 1;
    ch.support_is_coset_union = true;
    for (auto x : rounded.support) {
      for (auto e : kgroup.generators()) {
        if (!in_support[group.add(x, e)]) ch.support_is_coset_union = false;
      }
    }
    ch.support_cosets = rounded.support.size() / kgroup.size();
    ch.c = leq(static_cast<double>(ch.support_cosets), ch.f_prime, 0.0);
    ch.c.pass = ch.c.pass && ch.support_is_coset_union;
  } else {
    ch.c = leq(std::numeric_limits<double>::max(), ch.f_prime, 0.0);
    ch.c.pass = false;
  }

  const double log_thr = std::log(ch.threshold);
  const double lhs = std::log(static_cast<double>(kgroup.size()));
  const double rhs = static_cast<double>(l - 1) * log_thr + std::log(static_cast<double>(parts.front().h.size()));
  ch.lower_k = {l == 1 ? ">=" : ">", lhs, rhs, lhs - rhs, 0.0, l == 1 ? lhs >= rhs - 1e-12 : lhs > rhs, true};

  const auto leak = coset_average(from_integers(group, tail), kgroup);
  ch.leakage = leq(linf_norm(leak), eta, tol);
  const auto smooth = coset_average(from_integers(group, head), kgroup);
  ch.smooth_exact = max_abs_diff(smooth, from_integers(group, head)) <= 1e-9;
  return ch;
}

std::vector<CorkeyChain> corkey_build(const GroupFunction& f, const std::vector<double>& etas, double m,
                                      const CorkeyOptions& options) {
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!(etas[i] > 0.0 && etas[i] <= 0.25)) throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1/4]");
    if (i > 0 && etas[i] > etas[i - 1]) throw Error(ErrorCode::InvalidArgument, "etas must be non-increasing");
  }
  CorkeySelector selector(f, m, options);
  std::vector<CorkeyChain> out;
  for (double eta : etas) out.push_back(selector.chain(eta));
  for (std::size_t j = 0; j < out.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (!out[j].k_group.is_subgroup_of(out[i].k_group)) out[j].d = false;
    }
  }
  return out;
}

}  // namespace natspec
