#include <doctest.h>

#include "natspec/catalog.hpp"
#include "natspec/certifier.hpp"
#include "natspec/error.hpp"

using namespace natspec;

namespace {

double direct_a_norm(const FiniteAbelianGroup& g, const std::vector<std::int64_t>& f) {
  double total = 0.0;
  for (Index c = 0; c < g.order(); ++c) {
    Complex acc = 0.0;
    for (Index x = 0; x < g.order(); ++x) acc += static_cast<double>(f[x]) * std::conj(pair(g, c, x));
    total += std::abs(acc);
  }
  return total / static_cast<double>(g.order());
}

void check_steps(const TwsCertificate& cert) {
  REQUIRE_FALSE(cert.steps.empty());
  for (const auto& s : cert.steps) {
    if (s.child) CHECK(*s.child < cert.steps.size());
    if (s.base) CHECK(s.linf <= 0.2 + 1e-12);
  }
}

}  // namespace

TEST_CASE("integer input certifies with equal norms") {
  const auto z2 = FiniteAbelianGroup::make({2});
  const auto f = GroupFunction::from_real(z2, {1, 1});
  const auto cert = certify_tws(f, 0.5, 0.5);
  CHECK(cert.verdict);
  CHECK(cert.f_z == std::vector<std::int64_t>{1, 1});
  CHECK(cert.a_norm_fz == doctest::Approx(1.0));
  CHECK(cert.a_norm_f == doctest::Approx(1.0));
  CHECK(cert.bound.rhs == doctest::Approx(1.5 * 1.0 + 0.5));
  check_steps(cert);
}

TEST_CASE("small functions hit the base case") {
  const auto g = FiniteAbelianGroup::make({2, 3});
  const auto f = GroupFunction::from_real(g, {0.01, -0.015, 0.0, 0.02, 0.005, -0.01});
  const auto cert = certify_tws(f, 0.5, 0.5);
  CHECK(cert.verdict);
  CHECK(cert.f_z == std::vector<std::int64_t>(6, 0));
  CHECK(cert.a_norm_fz == 0.0);
  CHECK(cert.steps.front().base);
}

TEST_CASE("perturbed haar density") {
  const auto z4 = FiniteAbelianGroup::make({4});
  const auto f = GroupFunction::from_real(z4, {2.02, 0.0, 1.98, 0.0});
  const auto cert = certify_tws(f, 0.5, 0.5);
  CHECK(cert.verdict);
  CHECK(cert.f_z == std::vector<std::int64_t>{2, 0, 2, 0});
  CHECK(cert.a_norm_fz == doctest::Approx(direct_a_norm(z4, cert.f_z)).epsilon(1e-12));
  CHECK(cert.a_norm_fz <= 1.5 * cert.a_norm_f + 0.5);
  check_steps(cert);
  const auto& top = cert.steps.front();
  CHECK_FALSE(top.base);
  CHECK_FALSE(top.k_group.empty());
  CHECK_FALSE(top.h_group.empty());
  CHECK(top.witness.claim_a.pass);
  CHECK(top.witness.claim_b.pass);
  CHECK(top.witness.claim_c.pass);
  CHECK(top.witness.claim_d.pass);
}

TEST_CASE("catalog certificates agree with direct norms") {
  for (const auto& inst : tws_catalog(99, 1)) {
    if (inst.f.group.order() > 16) continue;
    for (double eps : {0.25, 1.0}) {
      const auto cert = certify_tws(inst.f, eps, eps);
      CHECK_MESSAGE(cert.verdict, inst.name);
      CHECK(cert.a_norm_fz == doctest::Approx(direct_a_norm(inst.f.group, cert.f_z)).epsilon(1e-9));
      CHECK(cert.a_norm_fz <= (1.0 + eps) * cert.a_norm_f + eps + 1e-8);
      const auto rounded = round_int(inst.f);
      CHECK(cert.f_z == rounded.integers);
      if (!inst.perturbed) CHECK(cert.a_norm_fz == doctest::Approx(cert.a_norm_f).epsilon(1e-12));
      check_steps(cert);
    }
  }
}

TEST_CASE("certificate preconditions") {
  const auto z2 = FiniteAbelianGroup::make({2});
  const auto f = GroupFunction::from_real(z2, {1, 1});
  CHECK_THROWS_AS(certify_tws(f, 0.0, 0.5), Error);
  CHECK_THROWS_AS(certify_tws(f, 0.5, 1.5), Error);
  try {
    certify_tws(GroupFunction::from_real(z2, {1.2, 1}), 0.5, 0.5);
    FAIL("expected PreconditionRounding");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionRounding);
  }
}

TEST_CASE("measure rounding on the dual") {
  const auto z2 = FiniteAbelianGroup::make({2});
  const auto mu = GroupFunction::from_real(z2, {1.01, 0.99});
  const auto r = skn_finite(mu, 0.5, 0.5);
  CHECK(r.mu_norm == doctest::Approx(1.0));
  CHECK(r.bridge.pass);
  CHECK(r.mu_hat_z == std::vector<std::int64_t>{1, 0});
  CHECK(r.mu_z_norm == doctest::Approx(1.0));
  CHECK(r.bound.pass);
  CHECK(r.bound.rhs == doctest::Approx(2.0));

  // Integer transform: unchanged.
  const auto z4 = FiniteAbelianGroup::make({4});
  const auto haar = GroupFunction::from_real(z4, {2, 0, 2, 0});
  const auto rh = skn_finite(haar, 0.5, 0.5);
  CHECK(max_abs_diff(rh.mu_z, haar) < 1e-12);

  // Transform 0.01 everywhere rounds to zero.
  const auto small = GroupFunction::from_real(z4, {0.04, 0, 0, 0});
  const auto rs = skn_finite(small, 0.5, 0.5);
  CHECK(rs.mu_hat_z == std::vector<std::int64_t>(4, 0));
  CHECK(rs.mu_z_norm == 0.0);

  CHECK_THROWS_AS(skn_finite(haar.with_side(Side::Dual), 0.5, 0.5), Error);
}

TEST_CASE("random measures") {
  Rng rng(4242);
  for (const std::string name : {"8", "2x4", "3x3", "2x2x2", "12"}) {
    const auto g = FiniteAbelianGroup::parse(name);
    for (int t = 0; t < 4; ++t) {
      const auto mu = random_measure(g, rng);
      const auto r = skn_finite(mu, 0.5, 0.5);
      CHECK(r.bridge.pass);
      CHECK(r.imag_sup < 1e-12);
      CHECK_MESSAGE(r.bound.pass, name);
      CHECK(r.certificate.verdict);
      // Independent l1 of the rounded measure.
      const auto back = dft(from_integers(g, r.mu_hat_z, Side::Dual), Direction::Inverse);
      CHECK(l1_norm(back) == doctest::Approx(r.mu_z_norm).epsilon(1e-12));
    }
  }
}
