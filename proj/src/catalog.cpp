#include "natspec/catalog.hpp"

#include <algorithm>

namespace natspec {

namespace {

void extend_factors(std::vector<std::int64_t>& cur, std::int64_t order, std::int64_t max_order,
                    std::vector<std::vector<std::int64_t>>& out) {
  if (!cur.empty()) out.push_back(cur);
  // Grow by prepending a divisor of the current first factor.
  const std::int64_t first = cur.empty() ? 0 : cur.front();
  if (cur.empty()) {
    for (std::int64_t d = 2; d <= max_order; ++d) {
      cur.push_back(d);
      extend_factors(cur, d, max_order, out);
      cur.pop_back();
    }
    return;
  }
  for (std::int64_t d = 2; d <= first && order * d <= max_order; ++d) {
    if (first % d != 0) continue;
    cur.insert(cur.begin(), d);
    extend_factors(cur, order * d, max_order, out);
    cur.erase(cur.begin());
  }
}

std::int64_t product(const std::vector<std::int64_t>& v) {
  std::int64_t p = 1;
  for (auto x : v) p *= x;
  return p;
}

std::vector<std::int64_t> indicator_ints(const FiniteAbelianGroup& g, const std::vector<Index>& set) {
  std::vector<std::int64_t> out(g.order(), 0);
  for (auto i : set) out[i] = 1;
  return out;
}

std::vector<Index> coset(const FiniteAbelianGroup& g, const Subgroup& h, Index x) {
  std::vector<Index> out;
  for (auto e : h.elements()) out.push_back(g.add(x, e));
  return out;
}

}  // namespace

const std::vector<std::string>& standard_groups() {
  static const std::vector<std::string> groups = {"2",   "3",   "4",       "2x2",     "6",     "2x4",
                                                  "2x2x2", "3x9", "4x4", "2x2x2x2", "5x5x5", "16x16"};
  return groups;
}

std::vector<std::vector<std::int64_t>> groups_up_to(std::int64_t max_order) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  extend_factors(cur, 1, max_order, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const auto pa = product(a);
    const auto pb = product(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

std::vector<TwsInstance> tws_catalog(std::uint64_t seed, std::size_t perturbations) {
  Rng rng(seed);
  std::vector<TwsInstance> out;
  for (const auto& spec : standard_groups()) {
    const auto g = FiniteAbelianGroup::parse(spec);
    if (g.order() > 64) continue;
    const auto all = enumerate_subgroups(g, 64);
    std::vector<const Subgroup*> proper;
    for (const auto& h : all) {
      if (!h.is_trivial() && !h.is_whole()) proper.push_back(&h);
    }
    const Subgroup trivial = trivial_subgroup(g);
    const Subgroup whole = whole_group(g);
    const Subgroup* big = &trivial;
    const Subgroup* small = &trivial;
    for (const auto* h : proper) {
      if (big == &trivial || h->size() > big->size()) big = h;
      if (small == &trivial || h->size() < small->size()) small = h;
    }
    const Subgroup* h1 = proper.empty() ? &trivial : proper.front();
    const Subgroup* h2 = proper.size() > 1 ? proper.back() : &whole;
    Index x = 0;
    while (small->contains(x) && x + 1 < g.order()) ++x;

    std::vector<std::pair<std::string, std::vector<std::int64_t>>> bases;
    bases.emplace_back("one_G", std::vector<std::int64_t>(g.order(), 1));
    bases.emplace_back("one_H", indicator_ints(g, big->elements()));
    {
      auto v = indicator_ints(g, h1->elements());
      const auto w = indicator_ints(g, h2->elements());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
      bases.emplace_back("one_H1_plus_one_H2", v);
    }
    {
      auto v = indicator_ints(g, big->elements());
      const auto w = indicator_ints(g, coset(g, *small, x));
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = 2 * v[i] - w[i];
      bases.emplace_back("two_H_minus_coset", v);
    }
    {
      std::vector<std::int64_t> v(g.order(), 0);
      v[0] = 1;
      bases.emplace_back("delta0", v);
    }
    {
      auto v = indicator_ints(g, big->elements());
      for (auto& e : v) e += 1;
      bases.emplace_back("one_G_plus_one_H", v);
    }
    for (const auto& [name, ints] : bases) {
      const auto base = from_integers(g, ints, Side::Primal);
      out.push_back({spec + "/" + name, base, false});
      for (std::size_t k = 0; k < perturbations; ++k) {
        auto f = base;
        for (auto& v : f.values) v += rng.uniform(-0.02, 0.02);
        out.push_back({spec + "/" + name + "/p" + std::to_string(k + 1), f, true});
      }
    }
  }
  return out;
}

GroupFunction random_measure(const FiniteAbelianGroup& group, Rng& rng, double noise) {
  static const std::int64_t coeffs[] = {-1, 1, 1, 2};
  std::vector<Complex> hat(group.order(), 0.0);
  const std::size_t terms = 1 + rng.below(2);
  for (std::size_t t = 0; t < terms; ++t) {
    const Index gen = static_cast<Index>(rng.below(group.order()));
    const std::vector<Index> gens = {gen};
    const auto k = subgroup_span(group, std::span<const Index>(gens));
    const auto c = static_cast<double>(coeffs[rng.below(4)]);
    const auto perp = annihilator(group, k);
    for (auto g : perp.elements()) hat[g] += c;
  }
  for (Index g = 0; g < group.order(); ++g) {
    const Index h = group.neg(g);
    if (h < g) continue;
    const double e = rng.uniform(-noise, noise);
    hat[g] += e;
    if (h != g) hat[h] += e;
  }
  auto mu = dft(GroupFunction{group, Side::Dual, hat}, Direction::Inverse);
  for (auto& v : mu.values) v = Complex(v.real(), 0.0);
  return mu;
}

GroupFunction random_function(const FiniteAbelianGroup& group, Rng& rng, Side side) {
  GroupFunction f = GroupFunction::zeros(group, side);
  for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
  return f;
}

RiemannPreset riemann_preset(const std::string& name) {
  if (name == "single") return {name, {1}, 1, {{{0}, {3}, Complex(1.0, 0.0)}}};
  if (name == "two_frequency") {
    return {name, {1}, 1, {{{0}, {0}, Complex(1.0, 0.0)}, {{0}, {1}, Complex(1.0, 0.0)}}};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown Riemann preset '" + name + "'");
}

}  // namespace natspec
