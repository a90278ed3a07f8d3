#include <doctest.h>

#include <numbers>

#include "natspec/catalog.hpp"
#include "natspec/error.hpp"
#include "natspec/pipeline.hpp"

using namespace natspec;

namespace {

SynthResult z4_instance(double a1 = 0.5, double a2 = 0.02) {
  const auto z4 = FiniteAbelianGroup::make({4});
  return synth_measure(z4, make_empirical({a1, a2}), Preset::Nested, 1);
}

}  // namespace

TEST_CASE("literal sequences") {
  SequenceParams params;
  params.delta_prime = 1e300;
  const auto seq = make_sequence(1.0, 2, SequenceMode::LiteralGlow, params);
  REQUIRE(seq.size() == 2);
  CHECK(seq.log_a[0] == 0.0);
  CHECK(seq.log_a[1] == doctest::Approx(-18.0 - std::log(9.0)).epsilon(1e-14));
  CHECK(log_glow_delta(0.0, 1e300) == doctest::Approx(-18.0 - std::log(9.0)));
  CHECK(log_glow_delta(0.0, 1e-20) == doctest::Approx(std::log(1e-20)));

  try {
    make_sequence(1.0, 3, SequenceMode::LiteralGlow, params);
    FAIL("expected Unrepresentable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unrepresentable);
    CHECK(std::string(e.what()).find("length is 2") != std::string::npos);
  }
  CHECK(max_literal_length(1.0, SequenceMode::LiteralGlow, params) == 2);
  CHECK(max_literal_length(1.0, SequenceMode::LiteralNajp, {}) >= 1);
  CHECK_THROWS_AS(make_sequence(1.5, 2, SequenceMode::LiteralGlow), Error);
}

TEST_CASE("empirical sequences") {
  const auto seq = make_empirical({0.5, 0.02});
  CHECK(seq.mode == SequenceMode::Empirical);
  CHECK(seq.a(1) == doctest::Approx(0.02));
  CHECK(seq.checks == std::vector<CheckMark>{"n/a"});
  CHECK_THROWS_AS(make_empirical({0.5, 0.5}), Error);
  CHECK_THROWS_AS(make_empirical({1.5}), Error);
  CHECK_THROWS_AS(make_empirical({0.5, -0.1}), Error);
  CHECK(parse_mode(mode_name(SequenceMode::LiteralNajp)) == SequenceMode::LiteralNajp);
  CHECK(parse_preset(preset_name(Preset::RandomDisjoint)) == Preset::RandomDisjoint);
}

TEST_CASE("nested synthesis") {
  const double a1 = 0.5, a2 = 0.02;
  const auto s = z4_instance(a1, a2);
  CHECK(s.status == "ok");
  const std::vector<Complex> want{a1 + a2, a1 - a2, a1 + a2, a1 - a2};
  CHECK(max_abs_diff(s.mu.values, want) < 1e-14);
  CHECK(s.norm == doctest::Approx(a1));
  CHECK(max_abs_diff(s.mu_hat, {a1, 0, a2, 0}) < 1e-14);

  const auto g = FiniteAbelianGroup::make({2, 4});
  const auto one = synth_measure(g, make_empirical({0.3}), Preset::Nested, 5);
  for (auto v : one.mu.values) CHECK(std::abs(v - 0.3) < 1e-14);
  CHECK(one.norm == doctest::Approx(0.3));

  const auto none = synth_measure(g, make_empirical({}), Preset::Nested, 5);
  CHECK(l1_norm(none.mu) == 0.0);

  // Chain is decreasing with consecutive index a prime.
  const auto big = FiniteAbelianGroup::make({2, 2, 6});
  const auto deep = synth_measure(big, make_empirical({0.5, 0.1, 0.02, 0.004}), Preset::Nested, 9);
  for (std::size_t k = 1; k < deep.chain.size(); ++k) {
    CHECK(deep.chain[k].size() < deep.chain[k - 1].size());
    CHECK(std::includes(deep.chain[k - 1].begin(), deep.chain[k - 1].end(), deep.chain[k].begin(),
                        deep.chain[k].end()));
  }
}

TEST_CASE("level sets") {
  const auto s = z4_instance();
  const auto seq = make_empirical({0.5, 0.02});
  std::size_t zeros = 0;
  const auto levels = level_sets(s.mu_hat, seq, 1e-12, &zeros);
  CHECK(levels == std::vector<std::vector<Index>>{{0}, {2}});
  CHECK(zeros == 2);
  CHECK_THROWS_AS(level_sets({0.5, 0.3, 0.02, 0}, seq, 1e-12), Error);
}

TEST_CASE("glow report on the hand instance") {
  const auto s = z4_instance();
  const auto r = glow_run(s.mu, make_empirical({0.5, 0.02}));
  REQUIRE(r.steps.size() == 2);
  CHECK(r.steps[1].tau_norm == doctest::Approx(0.02));
  CHECK(r.steps[1].tau_bound.rhs == doctest::Approx(1.0 / std::sqrt(0.02)));
  CHECK(r.steps[0].mu_norm == doctest::Approx(1.0));
  CHECK(r.steps[0].mu_bound.rhs == doctest::Approx(1.5 * std::pow(0.5, -1.5) + 0.5));
  CHECK(r.rho_square.pass);
  CHECK(r.telescoping_error < 1e-14);
  for (const auto& step : r.steps) {
    CHECK(step.pass);
    CHECK(step.skn.ran);
    CHECK(step.skn.rounding_matches_level);
  }
  CHECK(r.verdict);
  CHECK(r.natural_spectrum);
  const auto csv = pipeline_csv(r);
  CHECK(csv.rfind("n,a_n,tau_norm,bound,verdict\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("single level collapses") {
  const auto g = FiniteAbelianGroup::make({2, 4});
  const auto s = synth_measure(g, make_empirical({0.4}), Preset::Nested, 3);
  const auto r = glow_run(s.mu, make_empirical({0.4}));
  REQUIRE(r.steps.size() == 1);
  CHECK(r.verdict);
  const auto n = najp_run(s.mu, make_empirical({0.4}));
  CHECK(n.verdict);
  CHECK(n.steps[0].nu_norm == doctest::Approx(s.norm));
}

TEST_CASE("najp report on the hand instance") {
  const auto s = z4_instance();
  const auto r = najp_run(s.mu, make_empirical({0.5, 0.02}));
  REQUIRE(r.steps.size() == 2);
  const auto& m = r.steps[0].majorant;
  CHECK(m.f_l1 == doctest::Approx(1.0));
  CHECK(m.f_support == 1);
  CHECK(m.lhs < 1e-14);
  CHECK(m.rhs == doctest::Approx(0.02));
  CHECK(m.pass);
  CHECK(r.verdict);
}

TEST_CASE("decay violations still produce a report") {
  const auto z4 = FiniteAbelianGroup::make({4});
  const auto seq = make_empirical({0.5, 0.49});
  const auto s = synth_measure(z4, seq, Preset::Nested, 1);
  const auto r = glow_run(s.mu, seq);
  CHECK(r.steps.size() == 2);
  const auto n = najp_run(s.mu, seq);
  CHECK(n.steps.size() == 2);
}

TEST_CASE("random disjoint preset") {
  const auto g = FiniteAbelianGroup::make({3, 6});
  const auto seq = make_empirical({0.5, 0.05, 0.005});
  const auto s = synth_measure(g, seq, Preset::RandomDisjoint, 21);
  if (s.status == "ok") {
    const auto levels = level_sets(s.mu_hat, seq, 1e-12);
    for (std::size_t k = 0; k < levels.size(); ++k) CHECK(levels[k] == s.levels[k]);
    CHECK(s.norm == doctest::Approx(l1_norm(s.mu)).epsilon(1e-12));
  } else {
    CHECK(s.status == "NormExceedsOne");
  }
}
