#include <doctest.h>

#include "natspec/catalog.hpp"
#include "natspec/error.hpp"
#include "natspec/fourier.hpp"

using namespace natspec;

namespace {

// Transform by the defining character sum.
std::vector<Complex> direct_forward(const GroupFunction& f) {
  const auto& g = f.group;
  std::vector<Complex> out(g.order());
  for (Index c = 0; c < g.order(); ++c) {
    for (Index x = 0; x < g.order(); ++x) out[c] += f[x] * std::conj(pair(g, c, x));
    out[c] /= static_cast<double>(g.order());
  }
  return out;
}

GroupFunction complex_random(const FiniteAbelianGroup& g, Rng& rng) {
  auto f = GroupFunction::zeros(g);
  for (auto& v : f.values) v = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return f;
}

std::vector<Complex> cvec(std::initializer_list<double> re) {
  std::vector<Complex> out;
  for (double v : re) out.emplace_back(v, 0.0);
  return out;
}

}  // namespace

TEST_CASE("transform examples") {
  const auto z2 = FiniteAbelianGroup::make({2});
  CHECK(max_abs_diff(dft(GroupFunction::from_real(z2, {2, 0}), Direction::Forward).values, cvec({1, 1})) < 1e-15);
  CHECK(max_abs_diff(dft(GroupFunction::from_real(z2, {1, 1}), Direction::Forward).values, cvec({1, 0})) < 1e-15);
  const auto z4 = FiniteAbelianGroup::make({4});
  const auto hat = dft(GroupFunction::from_real(z4, {2, 0, 2, 0}), Direction::Forward);
  CHECK(hat.side == Side::Dual);
  CHECK(max_abs_diff(hat.values, cvec({1, 0, 1, 0})) < 1e-15);
}

TEST_CASE("transform matches direct sums and inverts") {
  Rng rng(11);
  for (const auto& name : standard_groups()) {
    const auto g = FiniteAbelianGroup::parse(name);
    if (g.order() > 256) continue;
    const auto f = complex_random(g, rng);
    const auto hat = dft(f, Direction::Forward);
    CHECK_MESSAGE(max_abs_diff(hat.values, direct_forward(f)) < 1e-12, name);
    CHECK(max_abs_diff(dft(hat, Direction::Inverse), f) < 1e-12);
    CHECK(max_abs_diff(transform_values(f), hat.values) < 1e-12);

    double lhs = 0.0, rhs = 0.0;
    for (auto v : f.values) lhs += std::norm(v);
    for (auto v : hat.values) rhs += std::norm(v);
    CHECK(lhs / static_cast<double>(g.order()) == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("side mismatch is rejected") {
  const auto g = FiniteAbelianGroup::make({3});
  const auto f = GroupFunction::from_real(g, {1, 2, 3});
  CHECK_THROWS_AS(dft(f, Direction::Inverse), Error);
  CHECK_THROWS_AS(dft(f.with_side(Side::Dual), Direction::Forward), Error);
  CHECK_THROWS_AS(f + f.with_side(Side::Dual), Error);
}

TEST_CASE("convolution") {
  const auto z2 = FiniteAbelianGroup::make({2});
  const auto ones = GroupFunction::from_real(z2, {1, 1});
  CHECK(max_abs_diff(convolve(ones, ones), ones) < 1e-15);

  Rng rng(3);
  for (const std::string name : {"12", "2x6", "3x3"}) {
    const auto g = FiniteAbelianGroup::parse(name);
    auto dirac = GroupFunction::zeros(g);
    dirac[0] = static_cast<double>(g.order());
    const auto f = complex_random(g, rng);
    const auto h = complex_random(g, rng);
    CHECK(max_abs_diff(convolve(dirac, f), f) < 1e-12);

    // Direct sum and the product rule.
    const auto fh = convolve(f, h);
    for (Index x = 0; x < g.order(); ++x) {
      Complex s = 0.0;
      for (Index y = 0; y < g.order(); ++y) s += f[y] * h[g.sub(x, y)];
      CHECK(std::abs(fh[x] - s / static_cast<double>(g.order())) < 1e-12);
    }
    const auto a = direct_forward(f), b = direct_forward(h), ab = direct_forward(fh);
    for (Index c = 0; c < g.order(); ++c) CHECK(std::abs(ab[c] - a[c] * b[c]) < 1e-12);

    for (const auto& k : enumerate_subgroups(g, 1000)) {
      const auto m = subgroup_haar(g, k);
      CHECK(max_abs_diff(convolve(m, m), m) < 1e-12);
    }
  }
}

TEST_CASE("norms") {
  const auto z2 = FiniteAbelianGroup::make({2});
  const auto r = norms(GroupFunction::from_real(z2, {2, 0}));
  CHECK(r.l1 == doctest::Approx(1.0));
  CHECK(r.linf == doctest::Approx(2.0));
  CHECK(r.a_norm == doctest::Approx(2.0));

  const auto g = FiniteAbelianGroup::make({3, 3});
  auto chi = GroupFunction::zeros(g);
  for (Index x = 0; x < g.order(); ++x) chi[x] = pair(g, 4, x);
  const auto c = norms(chi);
  CHECK(c.l1 == doctest::Approx(1.0));
  CHECK(c.linf == doctest::Approx(1.0));
  CHECK(c.a_norm == doctest::Approx(1.0));

  const auto z = norms(GroupFunction::zeros(g));
  CHECK(z.l1 == 0.0);
  CHECK(z.linf == 0.0);
  CHECK(z.a_norm == 0.0);

  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto f = complex_random(g, rng);
    double direct = 0.0;
    for (auto v : direct_forward(f)) direct += std::abs(v);
    CHECK(a_norm(f) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(linf_norm(f) <= a_norm(f) + 1e-12);
    CHECK(l1_norm(f) <= linf_norm(f) + 1e-12);
  }
}

TEST_CASE("haar densities and band projection") {
  const auto z4 = FiniteAbelianGroup::make({4});
  const auto k = Subgroup::from_elements(z4, {0, 2});
  CHECK(max_abs_diff(subgroup_haar(z4, k).values, cvec({2, 0, 2, 0})) < 1e-15);

  Rng rng(9);
  for (const std::string name : {"8", "2x4", "2x2x2", "3x6"}) {
    const auto g = FiniteAbelianGroup::parse(name);
    const auto f = complex_random(g, rng);
    Complex mean = 0.0;
    for (auto v : f.values) mean += v;
    mean /= static_cast<double>(g.order());
    const auto whole = band_project(f, whole_group(g));
    for (auto v : whole.values) CHECK(std::abs(v - mean) < 1e-12);

    auto dirac = GroupFunction::zeros(g);
    dirac[0] = static_cast<double>(g.order());
    for (const auto& h : enumerate_subgroups(g, 1000)) {
      const auto m = subgroup_haar(g, h);
      CHECK(max_abs_diff(band_project(dirac, h), m) < 1e-12);
      CHECK(max_abs_diff(band_project(f, h), convolve(f, m)) < 1e-12);
      CHECK(max_abs_diff(coset_average(f, h), convolve(f, m)) < 1e-12);
      const auto hat = direct_forward(m);
      const auto perp = annihilator(g, h);
      for (Index c = 0; c < g.order(); ++c) CHECK(std::abs(hat[c] - (perp.contains(c) ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("spectrum") {
  const auto z2 = FiniteAbelianGroup::make({2});
  const auto s1 = spectrum_sigma(GroupFunction::from_real(z2, {2, 0}));
  REQUIRE(s1.size() == 1);
  CHECK(std::abs(s1[0] - 1.0) < 1e-12);
  const auto s0 = spectrum_sigma(GroupFunction::zeros(z2));
  REQUIRE(s0.size() == 1);
  CHECK(std::abs(s0[0]) < 1e-12);

  const auto z4 = FiniteAbelianGroup::make({4});
  const double a1 = 0.5, a2 = 0.02;
  const auto mu = GroupFunction::from_real(z4, {a1 + a2, a1 - a2, a1 + a2, a1 - a2});
  const auto s = spectrum_sigma(mu);
  REQUIRE(s.size() == 3);
  CHECK(std::abs(s[0] - a1) < 1e-12);
  CHECK(std::abs(s[1]) < 1e-12);
  CHECK(std::abs(s[2] - a2) < 1e-12);

  const auto report = natural_spectrum_check(mu);
  CHECK(report.natural);
}
