#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "specamb/verify.hpp"

using namespace specamb;

namespace {

Joint2<Rational> worked_xy() {
  return Joint2<Rational>({"x1", "x2"}, {"y1", "y2"},
                          {{Rational(1, 4), Rational(1, 4)},
                           {Rational(1, 8), Rational(3, 8)}});
}

Joint3<Rational> copy_bit() {
  std::vector<Rational> m(8, Rational(0));
  m[0] = Rational(1, 2);
  m[7] = Rational(1, 2);
  return Joint3<Rational>({"x1", "x2"}, {"y1", "y2"}, {"z1", "z2"}, m);
}

Joint3<Rational> independent_bits() {
  return Joint3<Rational>({"x1", "x2"}, {"y1", "y2"}, {"z1", "z2"},
                          std::vector<Rational>(8, Rational(1, 8)));
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("postulate 1 holds on fixtures including the extended-real case") {
  const Joint2<double> u({"x1", "x2"}, {"y1", "y2"}, {{0.25, 0.25}, {0.25, 0.25}});
  auto r = check_postulate1(u, "x1", "y1");
  CHECK(r.passed());
  CHECK(r.max_residual == 0.0);
  CHECK(r.evaluations == 1);

  CHECK(check_postulate1(worked_xy(), "x1", "y1").passed());

  // zero joint mass with positive marginals: pmi = -inf, i_minus = +inf
  const Joint2<double> z({"x1", "x2"}, {"y1", "y2"}, {{0.0, 0.5}, {0.25, 0.25}});
  CHECK(check_postulate1(z, "x1", "y1").passed());

  // zero marginal is a skip, not a failure
  const Joint2<double> zr({"x1", "x2"}, {"y1", "y2"}, {{0.0, 0.0}, {0.5, 0.5}});
  const auto skipped = check_postulate1(zr, "x1", "y1");
  CHECK(skipped.passed());
  CHECK(skipped.evaluations == 0);
  CHECK(skipped.skipped == 1);
  CHECK(skipped.skip_reasons == std::vector<std::string>{"p_x_zero"});
}

TEST_CASE("postulate 2 monotonicity scans") {
  const auto r = check_postulate2(64);
  CHECK(r.passed());
  CHECK(r.evaluations == 3);

  CHECK(code_of([] { check_postulate2(2); }) == Errc::InvalidScanConfig);
  CHECK(code_of([] {
          monotonicity_scan(ScanKind::SpecificityVsInformative, 0.6, 0.4, 8);
        }) == Errc::InvalidScanConfig);

  // the sampled specificity matches its closed form -log2(1 - 0.1 - t)
  const auto s = monotonicity_scan(ScanKind::SpecificityVsInformative, 0.2, 0.1, 8);
  for (std::size_t k = 0; k < s.varied.size(); ++k) {
    CHECK(s.i_plus[k] ==
          doctest::Approx(-std::log2(1.0 - 0.1 - s.varied[k])).epsilon(1e-9));
  }

  // the tradeoff scan keeps the total source mass, and hence i_plus, fixed
  const auto c = monotonicity_scan(ScanKind::TradeoffVsInformative, 0.3, 0.2, 8);
  for (std::size_t k = 1; k < c.i_plus.size(); ++k) {
    CHECK(c.i_plus[k] == doctest::Approx(c.i_plus[0]).epsilon(1e-12));
    CHECK(c.i_minus[k] < c.i_minus[k - 1]);
  }
}

TEST_CASE("postulate 3 self-information") {
  const auto r = check_postulate3(worked_xy(), "x1");
  CHECK(r.passed());

  // p(x) = 1/2: the self-channel gives exactly one bit of specificity
  const Joint2<double> u({"x1", "x2"}, {"y1", "y2"}, {{0.25, 0.25}, {0.25, 0.25}});
  const auto d = decompose(
      Joint2<double>({"x1", "x2"}, {"x1", "x2"}, {{0.5, 0.0}, {0.0, 0.5}}), "x1", "x1");
  CHECK(d.i_plus == doctest::Approx(1.0));
  CHECK(d.i_minus == doctest::Approx(0.0));
  CHECK(check_postulate3(u, "x2").passed());

  // sure event: zero information about itself
  const Joint2<Rational> sure({"x1"}, {"y1", "y2"},
                              {{Rational(1, 2), Rational(1, 2)}});
  const auto rs = check_postulate3(sure, "x1");
  CHECK(rs.passed());
  CHECK(rs.max_residual == 0.0);
}

TEST_CASE("postulate 4 chain rule on fixtures") {
  CHECK(check_postulate4(independent_bits(), "x1", "y1", "z1").passed());
  CHECK(check_postulate4(copy_bit(), "x1", "y1", "z1").passed());

  // i_plus(yz->x) = 1 bit = i_plus(y->x) + i_plus(z->x|y) on the copied bit
  const auto joint = decompose_joint_source(copy_bit(), "y1", "z1", "x1");
  CHECK(joint.i_plus == doctest::Approx(1.0));
  const auto first = decompose(marginal_pair(copy_bit(), Var::X, Var::Y), "x1", "y1");
  const auto second =
      decompose(condition_pair(copy_bit(), Var::X, Var::Z, "y1"), "x1", "z1");
  CHECK(first.i_plus == doctest::Approx(1.0));
  CHECK(second.i_plus == doctest::Approx(0.0));  // p(z1|y1) = 1

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto j = random_joint3<Rational>(2, 2, 2, trial_seed(11, seed), 4);
    for (const auto& x : j.x_labels()) {
      for (const auto& y : j.y_labels()) {
        for (const auto& z : j.z_labels()) {
          const auto r = check_postulate4(j, x, y, z);
          CHECK(r.passed());
        }
      }
    }
  }
}

TEST_CASE("corollary 3 identities") {
  CHECK(check_corollary3(independent_bits(), "x1", "y1", "z1").passed());

  // copied bit: i_plus(y->x|z) = h(y|z) = 0 = i_minus(y->z)
  const auto d_cond = decompose_conditional(copy_bit(), "y1", "x1", "z1");
  const auto d_yz =
      decompose(marginal_pair(copy_bit(), Var::Z, Var::Y), "z1", "y1");
  CHECK(d_cond.i_plus == doctest::Approx(0.0));
  CHECK(d_yz.i_minus == doctest::Approx(0.0));
  CHECK(check_corollary3(copy_bit(), "x1", "y1", "z1").passed());

  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto j = random_joint3<Rational>(2, 2, 2, trial_seed(23, seed), 5);
    for (const auto& x : j.x_labels()) {
      for (const auto& y : j.y_labels()) {
        for (const auto& z : j.z_labels()) {
          CHECK(check_corollary3(j, x, y, z).passed());
        }
      }
    }
  }
}

TEST_CASE("corollary 4 target chain rule and its component-wise caveat") {
  SuiteStats stats;
  CHECK(check_corollary4(independent_bits(), "x1", "y1", "z1", {}, &stats).passed());
  CHECK(check_corollary4(copy_bit(), "x1", "y1", "z1", {}, &stats).passed());

  // copied bit: i(y->xz) = 1 = i(y->x) + i(y->z|x) = 1 + 0
  const auto d_xz = decompose_joint_target(copy_bit(), "y1", "x1", "z1");
  const auto d_x = decompose(marginal_pair(copy_bit(), Var::X, Var::Y), "x1", "y1");
  CHECK(d_xz.pmi == doctest::Approx(1.0));
  CHECK(d_x.pmi == doctest::Approx(1.0));

  stats = SuiteStats{};
  std::uint64_t evaluated = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto j = random_joint3<Rational>(2, 2, 2, trial_seed(31, seed), 5);
    for (const auto& x : j.x_labels()) {
      for (const auto& y : j.y_labels()) {
        for (const auto& z : j.z_labels()) {
          const auto r = check_corollary4(j, x, y, z, {}, &stats);
          CHECK(r.passed());
          evaluated += r.evaluations;
        }
      }
    }
  }
  // the net chain rule always holds, the component-wise one genuinely breaks
  CHECK(evaluated > 0);
  CHECK(stats.iplus_target_chain_counterexamples > 0);
  CHECK(stats.iminus_target_chain_counterexamples > 0);
}

TEST_CASE("lemma dispatch covers the degenerate regimes") {
  // purely informative worked grid
  const Joint2<Rational> xz({"x1", "x2"}, {"z1", "z2"},
                            {{Rational(1, 2), Rational(0)},
                             {Rational(1, 4), Rational(1, 4)}});
  const auto ri = check_lemmas(xz, "x1", "z1");
  CHECK(ri.passed());
  CHECK(ri.evaluations == 1);

  // purely misinformative: i_minus = 1 bit, pmi = log2(2/3) < 0
  const Joint2<Rational> mis({"x1", "x2"}, {"y1", "y2"},
                             {{Rational(1, 4), Rational(1, 4)},
                              {Rational(1, 2), Rational(0)}});
  const auto d = decompose(mis, "x1", "y1");
  CHECK(d.i_minus == doctest::Approx(1.0));
  CHECK(d.pmi < 0.0);
  CHECK(check_lemmas(mis, "x1", "y1").passed());

  // single-row grid: p(x-bar) = 0
  const Joint2<Rational> single({"x1"}, {"y1", "y2"},
                                {{Rational(1, 4), Rational(3, 4)}});
  const auto rl = check_lemmas(single, "x1", "y1");
  CHECK(rl.passed());
  CHECK(rl.evaluations == 1);

  // mixed case carries no lemma and is skipped with a reason
  const auto rm = check_lemmas(worked_xy(), "x1", "y1");
  CHECK(rm.evaluations == 0);
  CHECK(rm.skip_reasons == std::vector<std::string>{"mixed_case_no_lemma"});
}

TEST_CASE("run_suite aggregates and stays deterministic") {
  SuiteConfig cfg;
  cfg.seed = 0;
  cfg.trials = 1;
  cfg.shape = {1, 2, 1};
  cfg.backend = Backend::Rational;
  const auto degenerate = run_suite(cfg);
  CHECK(degenerate.all_passed());

  cfg.seed = 42;
  cfg.trials = 100;
  cfg.shape = {2, 2, 2};
  const auto exact = run_suite(cfg);
  CHECK(exact.all_passed());
  for (const auto& c : exact.checks) {
    INFO(c.name);
    CHECK(c.passed());
  }

  const auto again = run_suite(cfg);
  CHECK(dump_json(report_to_json(exact)) == dump_json(report_to_json(again)));

  cfg.backend = Backend::Float;
  const auto approx = run_suite(cfg);
  CHECK(approx.all_passed());

  // two-variable shapes skip the three-variable checks with a reason
  cfg.shape = {2, 2};
  cfg.trials = 5;
  const auto flat = run_suite(cfg);
  CHECK(flat.all_passed());
  for (const auto& c : flat.checks) {
    if (c.name == "postulate4_chain_rule" || c.name == "corollary3_identities" ||
        c.name == "corollary4_target_chain") {
      CHECK(c.evaluations == 0);
      CHECK(c.skip_reasons == std::vector<std::string>{"two_variable_shape"});
    }
  }

  CHECK(code_of([] {
          SuiteConfig bad;
          bad.trials = 0;
          run_suite(bad);
        }) == Errc::InvalidArgument);
  CHECK(code_of([] {
          SuiteConfig bad;
          bad.shape = {2};
          run_suite(bad);
        }) == Errc::InvalidArgument);
}

TEST_CASE("rational and float backends agree on the same fixtures") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto jq = random_joint2<Rational>(2, 3, trial_seed(7, seed), 4);
    const auto jf = to_float(jq);
    for (const auto& x : jq.x_labels()) {
      for (const auto& y : jq.y_labels()) {
        const auto rq = check_postulate1(jq, x, y);
        const auto rf = check_postulate1(jf, x, y);
        if (rq.passed() && rq.evaluations > 0) {
          CHECK(rf.passed());
          CHECK(rf.max_residual <= 1e-9);
        }
        const auto eq = check_exclusion_forms(jq, x, y);
        const auto ef = check_exclusion_forms(jf, x, y);
        if (eq.passed() && eq.evaluations > 0) CHECK(ef.passed());
      }
    }
  }
}

TEST_CASE("sabotaged ambiguity makes the verifier fail with a witness") {
  SuiteConfig cfg;
  cfg.seed = 5;
  cfg.trials = 10;
  cfg.shape = {2, 2, 2};
  cfg.backend = Backend::Rational;
  cfg.options.sabotage_ambiguity = true;
  const auto report = run_suite(cfg);
  CHECK(!report.all_passed());
  bool witnessed = false;
  for (const auto& c : report.checks) {
    if (!c.passed()) {
      CHECK(c.witness.has_value());
      witnessed = true;
    }
  }
  CHECK(witnessed);

  // the float backend must catch it too
  cfg.backend = Backend::Float;
  CHECK(!run_suite(cfg).all_passed());
}

TEST_CASE("report serialisation is schema-stable") {
  SuiteConfig cfg;
  cfg.seed = 1;
  cfg.trials = 2;
  cfg.shape = {2, 2};
  const auto report = run_suite(cfg);
  const Json doc = report_to_json(report);
  CHECK(doc["seed"] == 1);
  CHECK(doc["trials"] == 2);
  CHECK(doc["backend"] == "float");
  CHECK(doc["checks"].is_array());
  CHECK(doc["checks"].size() == 9);
  for (const auto& c : doc["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("status"));
    CHECK(c.contains("max_residual"));
  }
  CHECK(doc.contains("counterexamples"));
  CHECK(doc["all_passed"] == true);
}
