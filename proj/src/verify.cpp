#include "specamb/verify.hpp"

#include <string>
#include <vector>

namespace specamb {

namespace {

// Denominator granularity cycles so that coarse grids (frequent zero masses
// and pure exclusion cases) and fine grids both appear in every ensemble.
constexpr unsigned kDenomBitsSchedule[] = {2, 3, 4, 5, 8, 16};
constexpr std::size_t kDenomBitsCount = sizeof(kDenomBitsSchedule) / sizeof(unsigned);

constexpr const char* kCheckNames[] = {
    "postulate1_decomposition", "postulate2_monotonicity",
    "postulate3_self_information", "postulate4_chain_rule",
    "corollary3_identities", "corollary4_target_chain",
    "lemmas_special_cases", "exclusion_form_equivalence",
    "average_nonnegativity",
};

enum CheckSlot {
  kPostulate1,
  kPostulate2,
  kPostulate3,
  kPostulate4,
  kCorollary3,
  kCorollary4,
  kLemmas,
  kExclusionForms,
  kAverage,
  kSlotCount,
};

template <class T>
void run_two_var_checks(const Joint2<T>& j, const CheckOptions& opt,
                        std::vector<CheckResult>& slots) {
  for (std::size_t xi = 0; xi < j.x_size(); ++xi) {
    const auto& x = j.x_labels()[xi];
    slots[kPostulate3].absorb(check_postulate3(j, x, opt));
    for (std::size_t yj = 0; yj < j.y_size(); ++yj) {
      const auto& y = j.y_labels()[yj];
      slots[kPostulate1].absorb(check_postulate1(j, x, y, opt));
      slots[kExclusionForms].absorb(check_exclusion_forms(j, x, y, opt));
      slots[kLemmas].absorb(check_lemmas(j, x, y, opt));
    }
  }
  for (const auto& y : j.y_labels()) {
    slots[kAverage].absorb(check_average_nonnegativity(j, y, opt));
  }
}

template <class T>
void run_three_var_checks(const Joint3<T>& j, const CheckOptions& opt,
                          std::vector<CheckResult>& slots, SuiteStats& stats) {
  for (const auto& x : j.x_labels()) {
    for (const auto& y : j.y_labels()) {
      for (const auto& z : j.z_labels()) {
        slots[kPostulate4].absorb(check_postulate4(j, x, y, z, opt));
        slots[kCorollary3].absorb(check_corollary3(j, x, y, z, opt));
        slots[kCorollary4].absorb(check_corollary4(j, x, y, z, opt, &stats));
      }
    }
  }
}

template <class T>
void run_trials(const SuiteConfig& cfg, std::vector<CheckResult>& slots,
                SuiteStats& stats) {
  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t sub_seed = trial_seed(cfg.seed, trial);
    const unsigned denom_bits = kDenomBitsSchedule[trial % kDenomBitsCount];
    if (cfg.shape.size() == 2) {
      const Joint2<T> j = random_joint2<T>(cfg.shape[0], cfg.shape[1], sub_seed, denom_bits);
      run_two_var_checks(j, cfg.options, slots);
    } else {
      const Joint3<T> j =
          random_joint3<T>(cfg.shape[0], cfg.shape[1], cfg.shape[2], sub_seed, denom_bits);
      run_two_var_checks(marginal_pair(j, Var::X, Var::Y), cfg.options, slots);
      run_three_var_checks(j, cfg.options, slots, stats);
    }
  }
  if (cfg.shape.size() == 2) {
    slots[kPostulate4].record_skip("two_variable_shape");
    slots[kCorollary3].record_skip("two_variable_shape");
    slots[kCorollary4].record_skip("two_variable_shape");
  }
}

}  // namespace

ScanSeries monotonicity_scan(ScanKind kind, double fixed_a, double fixed_b,
                             std::size_t resolution, const CheckOptions& opt) {
  if (resolution < 3) {
    fail(Errc::InvalidScanConfig, "scan needs at least 3 grid points");
  }
  const double margin = 0.02;
  const double span = 1.0 - fixed_a - fixed_b - 2.0 * margin;
  if (!(fixed_a > 0.0) || !(fixed_b > 0.0) || !(span > 0.0)) {
    fail(Errc::InvalidScanConfig, "fixed masses leave no room to vary");
  }
  ScanSeries series;
  const std::vector<std::string> xs = {"x1", "x2"};
  const std::vector<std::string> ys = {"y1", "y2"};
  for (std::size_t k = 0; k < resolution; ++k) {
    const double t = margin + span * static_cast<double>(k) /
                                  static_cast<double>(resolution - 1);
    const double rest = 1.0 - fixed_a - fixed_b - t;
    // Grid cells: [x1][y1]=p(x,y), [x1][y2]=p(x,yb), [x2][y1]=p(xb,y),
    // [x2][y2]=p(xb,yb).
    double pxy, pxyb, pxby, pxbyb;
    switch (kind) {
      case ScanKind::SpecificityVsInformative:
        pxy = fixed_a, pxyb = fixed_b, pxbyb = t, pxby = rest;
        break;
      case ScanKind::AmbiguityVsMisinformative:
        pxby = fixed_a, pxbyb = fixed_b, pxyb = t, pxy = rest;
        break;
      case ScanKind::TradeoffVsInformative:
        pxy = fixed_a, pxby = fixed_b, pxbyb = t, pxyb = rest;
        break;
      default:
        fail(Errc::InvalidScanConfig, "unknown scan kind");
    }
    const Joint2<double> j(xs, ys, {{pxy, pxyb}, {pxby, pxbyb}});
    const auto d = detail::eval_decomposition(j, "x1", "y1", opt);
    series.varied.push_back(t);
    series.i_plus.push_back(d.i_plus);
    series.i_minus.push_back(d.i_minus);
  }
  return series;
}

CheckResult check_postulate2(std::size_t resolution, const CheckOptions& opt) {
  CheckResult result("postulate2_monotonicity");
  const auto strictly_increasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (!(v[i] > v[i - 1])) return false;
    }
    return true;
  };
  const auto strictly_decreasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (!(v[i] < v[i - 1])) return false;
    }
    return true;
  };
  const auto constant_within = [](const std::vector<double>& v, double tol) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (std::abs(v[i] - v[i - 1]) > tol) return false;
    }
    return true;
  };

  const auto fail_with = [&](const char* which) {
    Json w;
    w["scan"] = which;
    w["resolution"] = resolution;
    result.record_fail(0.0, std::move(w));
  };

  // (a) i_plus grows with the informative exclusion, retained masses fixed.
  const auto a = monotonicity_scan(ScanKind::SpecificityVsInformative, 0.2, 0.1,
                                   resolution, opt);
  if (strictly_increasing(a.i_plus)) {
    result.record_pass(0.0);
  } else {
    fail_with("i_plus_vs_informative");
  }

  // (b) i_minus grows with the misinformative exclusion.
  const auto b = monotonicity_scan(ScanKind::AmbiguityVsMisinformative, 0.2, 0.1,
                                   resolution, opt);
  if (strictly_increasing(b.i_minus)) {
    result.record_pass(0.0);
  } else {
    fail_with("i_minus_vs_misinformative");
  }

  // (c) trading misinformative for informative exclusion: i_minus falls;
  // i_plus depends only on the fixed total p(y), so it must stay level.
  const auto c =
      monotonicity_scan(ScanKind::TradeoffVsInformative, 0.3, 0.2, resolution, opt);
  if (strictly_decreasing(c.i_minus) && constant_within(c.i_plus, kInternalTolerance)) {
    result.record_pass(0.0);
  } else {
    fail_with("tradeoff_vs_informative");
  }

  return result;
}

VerificationReport run_suite(const SuiteConfig& config) {
  if (config.trials < 1) fail(Errc::InvalidArgument, "trials must be >= 1");
  if (config.shape.size() != 2 && config.shape.size() != 3) {
    fail(Errc::InvalidArgument, "shape must list 2 or 3 alphabet sizes");
  }
  std::size_t cells = 1;
  for (const auto dim : config.shape) {
    if (dim < 1) fail(Errc::InvalidArgument, "alphabet sizes must be >= 1");
    cells *= dim;
  }
  if (cells > 4096) fail(Errc::InvalidArgument, "shape too large");

  VerificationReport report;
  report.seed = config.seed;
  report.trials = config.trials;
  report.shape = config.shape;
  report.backend = config.backend;

  std::vector<CheckResult> slots;
  slots.reserve(kSlotCount);
  for (const char* name : kCheckNames) slots.emplace_back(name);

  if (config.backend == Backend::Rational) {
    run_trials<Rational>(config, slots, report.stats);
  } else {
    run_trials<double>(config, slots, report.stats);
  }
  slots[kPostulate2].absorb(check_postulate2(config.scan_resolution, config.options));

  report.checks = std::move(slots);
  return report;
}

Json report_to_json(const VerificationReport& report) {
  Json doc;
  doc["seed"] = report.seed;
  doc["trials"] = report.trials;
  doc["shape"] = report.shape;
  doc["backend"] = std::string(to_string(report.backend));
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json entry;
    entry["name"] = c.name;
    entry["status"] = c.passed() ? "pass" : "fail";
    entry["max_residual"] = ext_real_to_json(c.max_residual);
    entry["evaluations"] = c.evaluations;
    entry["skipped"] = c.skipped;
    entry["skip_reasons"] = c.skip_reasons;
    if (c.witness) entry["witness"] = *c.witness;
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  Json counterexamples;
  counterexamples["iplus_target_chain"] = report.stats.iplus_target_chain_counterexamples;
  counterexamples["iminus_target_chain"] = report.stats.iminus_target_chain_counterexamples;
  doc["counterexamples"] = std::move(counterexamples);
  doc["all_passed"] = report.all_passed();
  return doc;
}

}  // namespace specamb
