#include <doctest.h>

#include "natspec/catalog.hpp"
#include "natspec/error.hpp"
#include "natspec/rounding.hpp"

using namespace natspec;

TEST_CASE("distance to the integers") {
  const auto z3 = FiniteAbelianGroup::make({3});
  CHECK(dist_to_int(GroupFunction::from_real(z3, {0.9, 2.1, -0.4})) == doctest::Approx(0.4));
  CHECK(dist_to_int(GroupFunction::from_real(z3, {3, -2, 0})) == 0.0);
  CHECK(dist_to_int(GroupFunction::from_real(z3, {0.5, 0.5, 0.5})) == 0.5);

  auto complex = GroupFunction::zeros(z3);
  complex[1] = Complex(0.0, 0.25);
  CHECK_THROWS_AS(dist_to_int(complex), Error);
}

TEST_CASE("nearest integer rounding") {
  const auto z3 = FiniteAbelianGroup::make({3});
  const auto r = round_int(GroupFunction::from_real(z3, {0.9, 2.1, -0.4}));
  CHECK(r.integers == std::vector<std::int64_t>{1, 2, 0});
  CHECK(r.support == std::vector<Index>{0, 1});
  REQUIRE(r.rounded);
  CHECK(r.rounded->values[1] == Complex(2, 0));

  const auto g = FiniteAbelianGroup::make({2, 4});
  const auto k = subgroup_span(g, std::vector<Index>{g.index(std::vector<std::int64_t>{0, 2})});
  const auto ind = GroupFunction::indicator(g, k.elements());
  CHECK(max_abs_diff(*round_int(ind).rounded, ind) == 0.0);

  const auto near_half = GroupFunction::from_real(z3, {0.49, 0.49, 0.49});
  CHECK(round_int(near_half).integers == std::vector<std::int64_t>{0, 0, 0});
  CHECK(round_int(near_half, 0.005).integers == std::vector<std::int64_t>{0, 0, 0});
  try {
    round_int(near_half, 0.02);
    FAIL("expected TooCloseToHalf");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooCloseToHalf);
  }
  CHECK_THROWS_AS(round_int(GroupFunction::from_real(z3, {0.5, 0, 0})), Error);
}

TEST_CASE("rounding is additive below the half threshold") {
  Rng rng(17);
  const auto g = FiniteAbelianGroup::make({2, 6});
  for (int t = 0; t < 500; ++t) {
    std::vector<double> a(g.order()), b(g.order()), s(g.order());
    const double da = rng.uniform(0, 0.24), db = rng.uniform(0, 0.24);
    for (Index i = 0; i < g.order(); ++i) {
      a[i] = static_cast<double>(static_cast<std::int64_t>(rng.below(9)) - 4) + rng.uniform(-da, da);
      b[i] = static_cast<double>(static_cast<std::int64_t>(rng.below(9)) - 4) + rng.uniform(-db, db);
      s[i] = a[i] + b[i];
    }
    const auto fa = GroupFunction::from_real(g, a), fb = GroupFunction::from_real(g, b);
    const auto fs = GroupFunction::from_real(g, s);
    REQUIRE(dist_to_int(fa) + dist_to_int(fb) < 0.5);
    const auto ra = round_int(fa).integers, rb = round_int(fb).integers, rs = round_int(fs).integers;
    for (Index i = 0; i < g.order(); ++i) CHECK(rs[i] == ra[i] + rb[i]);
    CHECK(dist_to_int(fs) <= dist_to_int(fa) + dist_to_int(fb) + 1e-12);
  }
}

TEST_CASE("real part reduction") {
  const auto z2 = FiniteAbelianGroup::make({2});
  auto f = GroupFunction::zeros(z2);
  f[0] = Complex(1, 0.1);
  f[1] = Complex(1, -0.1);
  const auto r = real_reduce(f);
  CHECK(max_abs_diff(r.real.values, {Complex(1, 0), Complex(1, 0)}) == 0.0);
  CHECK(r.imag_sup == doctest::Approx(0.1));
  CHECK(r.dominated);

  const auto real = GroupFunction::from_real(z2, {0.3, -2});
  CHECK(max_abs_diff(real_reduce(real).real, real) == 0.0);

  auto imag = GroupFunction::zeros(z2);
  imag[0] = Complex(0, 0.7);
  imag[1] = Complex(0, -1.5);
  const auto ri = real_reduce(imag);
  CHECK(l1_norm(ri.real) == 0.0);
  CHECK(ri.imag_sup == doctest::Approx(1.5));

  // The real part never has larger A-norm.
  Rng rng(2);
  const auto g = FiniteAbelianGroup::make({3, 5});
  for (int t = 0; t < 50; ++t) {
    auto h = GroupFunction::zeros(g);
    for (auto& v : h.values) v = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const auto rh = real_reduce(h);
    CHECK(rh.dominated);
    CHECK(rh.a_norm_real <= rh.a_norm_input + 1e-12);
  }
}

TEST_CASE("integer vectors") {
  const auto z3 = FiniteAbelianGroup::make({3});
  const auto f = from_integers(z3, {1, -2, 0}, Side::Dual);
  CHECK(f.side == Side::Dual);
  CHECK(f[1] == Complex(-2, 0));
  CHECK_THROWS_AS(from_integers(z3, {1, 2}), Error);
}
