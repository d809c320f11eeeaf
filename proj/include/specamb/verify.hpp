#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specamb/distribution.hpp"
#include "specamb/error.hpp"
#include "specamb/io.hpp"
#include "specamb/measures.hpp"
#include "specamb/sampling.hpp"

namespace specamb {

enum class Backend { Float, Rational };

inline std::string_view to_string(Backend b) {
  return b == Backend::Float ? "float" : "rational";
}

enum class CheckStatus { Pass, Fail };

struct CheckOptions {
  LogBase base = {};
  double tol = 1e-9;
  // Negative-control hook: evaluates the ambiguity as h(y) instead of
  // h(y|x), which must make the identity checks fail.
  bool sabotage_ambiguity = false;
};

/// Outcome of one named property over any number of fixtures. Failures keep
/// the first witness; skips are never silent, each carries a reason.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double max_residual = 0.0;
  std::optional<Json> witness;
  std::uint64_t evaluations = 0;
  std::uint64_t skipped = 0;
  std::vector<std::string> skip_reasons;

  explicit CheckResult(std::string check_name = {}) : name(std::move(check_name)) {}

  bool passed() const { return status == CheckStatus::Pass; }

  void record_pass(double residual) {
    ++evaluations;
    max_residual = std::max(max_residual, residual);
  }

  void record_fail(double residual, Json fail_witness) {
    ++evaluations;
    max_residual = std::max(max_residual, residual);
    if (status == CheckStatus::Pass) witness = std::move(fail_witness);
    status = CheckStatus::Fail;
  }

  void record_skip(std::string reason) {
    ++skipped;
    if (std::find(skip_reasons.begin(), skip_reasons.end(), reason) ==
        skip_reasons.end()) {
      skip_reasons.push_back(std::move(reason));
    }
  }

  void absorb(const CheckResult& other) {
    evaluations += other.evaluations;
    skipped += other.skipped;
    max_residual = std::max(max_residual, other.max_residual);
    if (other.status == CheckStatus::Fail) {
      if (status == CheckStatus::Pass) witness = other.witness;
      status = CheckStatus::Fail;
    }
    for (const auto& reason : other.skip_reasons) {
      if (std::find(skip_reasons.begin(), skip_reasons.end(), reason) ==
          skip_reasons.end()) {
        skip_reasons.push_back(reason);
      }
    }
  }
};

/// Ensemble-level observations that are reported rather than asserted:
/// how often the component-wise target chain equalities genuinely fail.
struct SuiteStats {
  std::uint64_t iplus_target_chain_counterexamples = 0;
  std::uint64_t iminus_target_chain_counterexamples = 0;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::vector<std::size_t> shape;
  Backend backend = Backend::Float;
  std::vector<CheckResult> checks;
  SuiteStats stats;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed()) return false;
    }
    return true;
  }
};

Json report_to_json(const VerificationReport& report);

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  std::vector<std::size_t> shape = {2, 2};  // two or three alphabet sizes
  Backend backend = Backend::Float;
  CheckOptions options;
  std::size_t scan_resolution = 64;
};

/// Runs every check over `trials` seeded random distributions and aggregates
/// one result per check. Deterministic in its serialised output for a fixed
/// (seed, trials, shape, backend).
VerificationReport run_suite(const SuiteConfig& config);

// ---------------------------------------------------------------------------
// Monotonicity scans (Postulate 2). Float-only: the scan parameters are
// decimal grid points, not distribution data.
// ---------------------------------------------------------------------------

enum class ScanKind {
  SpecificityVsInformative,     // fix p(x,y), p(x,yb); vary p(xb,yb)
  AmbiguityVsMisinformative,    // fix p(xb,y), p(xb,yb); vary p(x,yb)
  TradeoffVsInformative,        // fix p(x,y), p(xb,y); vary p(xb,yb)
};

struct ScanSeries {
  std::vector<double> varied;  // the grid of the varied mass
  std::vector<double> i_plus;
  std::vector<double> i_minus;
};

ScanSeries monotonicity_scan(ScanKind kind, double fixed_a, double fixed_b,
                             std::size_t resolution, const CheckOptions& opt = {});

CheckResult check_postulate2(std::size_t resolution, const CheckOptions& opt = {});

// ---------------------------------------------------------------------------
// Per-fixture checks. All are templated over the numeric backend; on the
// rational backend identities are tested on the exact log-arguments, on the
// float backend within opt.tol.
// ---------------------------------------------------------------------------

namespace detail {

// Distance between extended reals; equal infinities count as zero.
inline double ext_distance(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b ? 0.0 : kInfinity;
  return std::abs(a - b);
}

template <class T>
Decomposition<T> apply_sabotage(Decomposition<T> d, const CheckOptions& opt) {
  if (opt.sabotage_ambiguity) {
    d.ambiguity_arg = d.specificity_arg;
    d.i_minus = d.i_plus;
  }
  return d;
}

template <class T>
Decomposition<T> eval_decomposition(const Joint2<T>& j, std::string_view x,
                                    std::string_view y, const CheckOptions& opt) {
  return apply_sabotage(decompose(j, x, y, opt.base), opt);
}

template <class T>
Json witness2(const Joint2<T>& j, std::string_view x, std::string_view y,
              std::string_view detail_text) {
  Json w;
  w["distribution"] = joint2_to_json(j);
  Json events;
  events["x"] = std::string(x);
  events["y"] = std::string(y);
  w["events"] = std::move(events);
  w["detail"] = std::string(detail_text);
  return w;
}

template <class T>
Json witness3(const Joint3<T>& j, std::string_view x, std::string_view y,
              std::string_view z, std::string_view detail_text) {
  Json w;
  w["distribution"] = joint3_to_json(j);
  Json events;
  events["x"] = std::string(x);
  events["y"] = std::string(y);
  events["z"] = std::string(z);
  w["events"] = std::move(events);
  w["detail"] = std::string(detail_text);
  return w;
}

// Equality of two decomposition ingredients: exact on rationals, within tol
// on floats (as extended reals).
template <class T>
bool args_equal(const T& a, const T& b, double value_a, double value_b, double tol,
                double& residual) {
  if constexpr (is_exact_backend<T>) {
    const bool equal = a == b;
    residual = equal ? 0.0 : ext_distance(value_a, value_b);
    return equal;
  } else {
    residual = ext_distance(value_a, value_b);
    return residual <= tol;
  }
}

}  // namespace detail

/// Postulate 1: i(x;y) = i_plus - i_minus with both components non-negative.
template <class T>
CheckResult check_postulate1(const Joint2<T>& j, std::string_view x, std::string_view y,
                             const CheckOptions& opt = {}) {
  CheckResult result("postulate1_decomposition");
  if (j.x_mass(j.x_index(x)) == T(0)) {
    result.record_skip("p_x_zero");
    return result;
  }
  if (j.y_mass(j.y_index(y)) == T(0)) {
    result.record_skip("p_y_zero");
    return result;
  }
  const auto d = detail::eval_decomposition(j, x, y, opt);

  const bool nonneg = d.i_plus >= -opt.tol && d.i_minus >= -opt.tol;
  bool identity;
  double residual;
  if constexpr (is_exact_backend<T>) {
    identity = d.pmi_ratio * d.specificity_arg == d.ambiguity_arg;
    residual = identity ? 0.0 : detail::ext_distance(d.pmi, d.i_plus - d.i_minus);
  } else {
    residual = detail::ext_distance(d.pmi, d.i_plus - d.i_minus);
    identity = residual <= opt.tol;
  }
  if (nonneg && identity) {
    result.record_pass(residual);
  } else {
    result.record_fail(residual,
                       detail::witness2(j, x, y,
                                        nonneg ? "pmi != i_plus - i_minus"
                                               : "negative component"));
  }
  return result;
}

/// The exclusion forms of the components agree with the entropic forms:
/// -log(1 - mis - inf) = i_plus and -log(1 - mis/p(x)) = i_minus.
template <class T>
CheckResult check_exclusion_forms(const Joint2<T>& j, std::string_view x,
                                  std::string_view y, const CheckOptions& opt = {}) {
  CheckResult result("exclusion_form_equivalence");
  const T p_x = j.x_mass(j.x_index(x));
  if (p_x == T(0)) {
    result.record_skip("p_x_zero");
    return result;
  }
  if (j.y_mass(j.y_index(y)) == T(0)) {
    result.record_skip("p_y_zero");
    return result;
  }
  const auto d = detail::eval_decomposition(j, x, y, opt);
  const T spec_exc = specificity_arg_from_exclusions(d.split);
  const T amb_exc = ambiguity_arg_from_exclusions(d.split, p_x);

  double res_plus, res_minus;
  const bool plus_ok =
      detail::args_equal(spec_exc, d.specificity_arg,
                         detail::neg_log(to_double(spec_exc), opt.base), d.i_plus,
                         opt.tol, res_plus);
  const bool minus_ok =
      detail::args_equal(amb_exc, d.ambiguity_arg,
                         detail::neg_log(to_double(amb_exc), opt.base), d.i_minus,
                         opt.tol, res_minus);
  const double residual = std::max(res_plus, res_minus);
  if (plus_ok && minus_ok) {
    result.record_pass(residual);
  } else {
    result.record_fail(residual,
                       detail::witness2(j, x, y, "exclusion form mismatch"));
  }
  return result;
}

/// Postulate 3: on the self-channel, i_plus(x -> x) = h(x) and
/// i_minus(x -> x) = 0.
template <class T>
CheckResult check_postulate3(const Joint2<T>& j, std::string_view x,
                             const CheckOptions& opt = {}) {
  CheckResult result("postulate3_self_information");
  const std::size_t xi = j.x_index(x);
  const T p_x = j.x_mass(xi);
  if (p_x == T(0)) {
    result.record_skip("p_x_zero");
    return result;
  }
  // Diagonal embedding Y := X of the target marginal.
  const std::size_t n = j.x_size();
  std::vector<std::vector<T>> grid(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) grid[i][i] = j.x_mass(i);
  const Joint2<T> self(j.x_labels(), j.x_labels(), std::move(grid));

  const auto d = detail::eval_decomposition(self, x, x, opt);
  bool ok;
  double residual;
  if constexpr (is_exact_backend<T>) {
    ok = d.specificity_arg == p_x && d.ambiguity_arg == T(1) &&
         d.pmi_ratio * p_x == T(1);
    residual = ok ? 0.0 : detail::ext_distance(d.i_minus, 0.0);
  } else {
    const double h_x = detail::neg_log(p_x, opt.base);
    residual = std::max({detail::ext_distance(d.i_plus, h_x), std::abs(d.i_minus),
                         detail::ext_distance(d.pmi, h_x)});
    ok = residual <= opt.tol;
  }
  if (ok) {
    result.record_pass(residual);
  } else {
    result.record_fail(residual, detail::witness2(self, x, x, "self-channel violation"));
  }
  return result;
}

/// Postulate 4: both chain-rule orderings for i_plus and i_minus, plus the
/// equivalence of one-shot and sequential conditioning.
template <class T>
CheckResult check_postulate4(const Joint3<T>& j, std::string_view x, std::string_view y,
                             std::string_view z, const CheckOptions& opt = {}) {
  CheckResult result("postulate4_chain_rule");
  const T p_x = prob(j, Assignment{EventSel{std::string(x)}, {}, {}});
  const T p_yz = prob(j, Assignment{{}, EventSel{std::string(y)}, EventSel{std::string(z)}});
  if (p_yz == T(0)) {
    result.record_skip("p_yz_zero");
    return result;
  }
  const T p_xy = prob(j, Assignment{EventSel{std::string(x)}, EventSel{std::string(y)}, {}});
  const T p_xz = prob(j, Assignment{EventSel{std::string(x)}, {}, EventSel{std::string(z)}});

  double worst = 0.0;
  bool ok = true;
  std::string detail_text;

  // Endpoint equivalence of the three conditioning routes (needs only p(y,z) > 0).
  {
    std::vector<T> oneshot;
    oneshot.reserve(j.x_size());
    for (std::size_t i = 0; i < j.x_size(); ++i) {
      oneshot.push_back(j.mass(i, j.y_index(y), j.z_index(z)) / p_yz);
    }
    const Marginal<T> via_y = condition(condition_pair(j, Var::X, Var::Z, y), z);
    const Marginal<T> via_z = condition(condition_pair(j, Var::X, Var::Y, z), y);
    for (std::size_t i = 0; i < j.x_size(); ++i) {
      double r1, r2;
      const bool eq1 =
          detail::args_equal(oneshot[i], via_y.mass(i), to_double(oneshot[i]),
                             to_double(via_y.mass(i)), opt.tol, r1);
      const bool eq2 =
          detail::args_equal(oneshot[i], via_z.mass(i), to_double(oneshot[i]),
                             to_double(via_z.mass(i)), opt.tol, r2);
      worst = std::max({worst, r1, r2});
      if (!eq1 || !eq2) ok = false;
      if (!ok && detail_text.empty()) detail_text = "conditioning order mismatch";
    }
  }

  // Component chains need the joint-source decomposition and, per ordering,
  // a positive intermediate joint event.
  if (p_x == T(0)) {
    result.record_skip("p_x_zero");
  } else {
    const auto d_joint =
        detail::apply_sabotage(decompose_joint_source(j, y, z, x, opt.base), opt);
    const auto check_order = [&](Var first_var, std::string_view first,
                                 std::string_view second, const T& p_x_first,
                                 std::string_view skip_reason) {
      if (p_x_first == T(0)) {
        result.record_skip(std::string(skip_reason));
        return;
      }
      const Var second_var = first_var == Var::Y ? Var::Z : Var::Y;
      const auto d_first = detail::apply_sabotage(
          decompose(marginal_pair(j, Var::X, first_var), x, first, opt.base), opt);
      const auto d_second = detail::apply_sabotage(
          decompose(condition_pair(j, Var::X, second_var, first), x, second, opt.base),
          opt);
      double res_plus, res_minus;
      const bool plus_ok = detail::args_equal(
          d_joint.specificity_arg,
          T(d_first.specificity_arg * d_second.specificity_arg), d_joint.i_plus,
          d_first.i_plus + d_second.i_plus, opt.tol, res_plus);
      const bool minus_ok = detail::args_equal(
          d_joint.ambiguity_arg, T(d_first.ambiguity_arg * d_second.ambiguity_arg),
          d_joint.i_minus, d_first.i_minus + d_second.i_minus, opt.tol, res_minus);
      worst = std::max({worst, res_plus, res_minus});
      if (!(plus_ok && minus_ok)) {
        ok = false;
        if (detail_text.empty()) detail_text = "component chain rule violated";
      }
    };
    check_order(Var::Y, y, z, p_xy, "zero_intermediate_event_xy");
    check_order(Var::Z, z, y, p_xz, "zero_intermediate_event_xz");
  }

  if (ok) {
    result.record_pass(worst);
  } else {
    result.record_fail(worst, detail::witness3(j, x, y, z, detail_text));
  }
  return result;
}

/// Corollary 3: i_plus(y->x) = i_plus(y->z); i_plus(y->x|z) = i_minus(y->z);
/// i_minus(y->x|z) = i_minus(y->xz). Each identity is evaluated through two
/// independent computation routes.
template <class T>
CheckResult check_corollary3(const Joint3<T>& j, std::string_view x, std::string_view y,
                             std::string_view z, const CheckOptions& opt = {}) {
  CheckResult result("corollary3_identities");
  const T p_x = prob(j, Assignment{EventSel{std::string(x)}, {}, {}});
  const T p_y = prob(j, Assignment{{}, EventSel{std::string(y)}, {}});
  const T p_z = prob(j, Assignment{{}, {}, EventSel{std::string(z)}});
  if (p_y == T(0)) {
    result.record_skip("p_y_zero");
    return result;
  }
  if (p_x == T(0)) {
    result.record_skip("p_x_zero");
    return result;
  }
  if (p_z == T(0)) {
    result.record_skip("p_z_zero");
    return result;
  }
  const T p_xz = prob(j, Assignment{EventSel{std::string(x)}, {}, EventSel{std::string(z)}});
  const T p_yz = prob(j, Assignment{{}, EventSel{std::string(y)}, EventSel{std::string(z)}});

  double worst = 0.0;
  bool ok = true;
  bool evaluated = false;
  std::string detail_text;

  const auto d_yx =
      detail::apply_sabotage(decompose(marginal_pair(j, Var::X, Var::Y), x, y, opt.base), opt);
  const auto d_yz =
      detail::apply_sabotage(decompose(marginal_pair(j, Var::Z, Var::Y), z, y, opt.base), opt);

  // (i) specificity does not depend on the target variable.
  {
    double res;
    evaluated = true;
    if (!detail::args_equal(d_yx.specificity_arg, d_yz.specificity_arg, d_yx.i_plus,
                            d_yz.i_plus, opt.tol, res)) {
      ok = false;
      detail_text = "i_plus(y->x) != i_plus(y->z)";
    }
    worst = std::max(worst, res);
  }

  // (ii) and (iii) need the conditional decomposition given z.
  if (p_xz == T(0)) {
    result.record_skip("p_xz_zero");
  } else if (p_yz == T(0)) {
    result.record_skip("p_yz_zero");
  } else {
    const auto d_cond =
        detail::apply_sabotage(decompose_conditional(j, y, x, z, opt.base), opt);
    double res;
    evaluated = true;
    if (!detail::args_equal(d_cond.specificity_arg, d_yz.ambiguity_arg, d_cond.i_plus,
                            d_yz.i_minus, opt.tol, res)) {
      ok = false;
      detail_text = "i_plus(y->x|z) != i_minus(y->z)";
    }
    worst = std::max(worst, res);

    const auto d_jt =
        detail::apply_sabotage(decompose_joint_target(j, y, x, z, opt.base), opt);
    if (!detail::args_equal(d_cond.ambiguity_arg, d_jt.ambiguity_arg, d_cond.i_minus,
                            d_jt.i_minus, opt.tol, res)) {
      ok = false;
      detail_text = "i_minus(y->x|z) != i_minus(y->xz)";
    }
    worst = std::max(worst, res);
  }

  if (!evaluated) return result;
  if (ok) {
    result.record_pass(worst);
  } else {
    result.record_fail(worst, detail::witness3(j, x, y, z, detail_text));
  }
  return result;
}

/// Corollary 4: the net chain rule over targets, i(y->xz) = i(y->x) +
/// i(y->z|x). The component-wise analogue genuinely fails in general; those
/// failures are counted into `stats` rather than asserted.
template <class T>
CheckResult check_corollary4(const Joint3<T>& j, std::string_view x, std::string_view y,
                             std::string_view z, const CheckOptions& opt = {},
                             SuiteStats* stats = nullptr) {
  CheckResult result("corollary4_target_chain");
  const T p_x = prob(j, Assignment{EventSel{std::string(x)}, {}, {}});
  const T p_y = prob(j, Assignment{{}, EventSel{std::string(y)}, {}});
  if (p_x == T(0)) {
    result.record_skip("p_x_zero");
    return result;
  }
  if (p_y == T(0)) {
    result.record_skip("p_y_zero");
    return result;
  }
  const T p_xy = prob(j, Assignment{EventSel{std::string(x)}, EventSel{std::string(y)}, {}});
  const T p_xz = prob(j, Assignment{EventSel{std::string(x)}, {}, EventSel{std::string(z)}});
  if (p_xz == T(0)) {
    result.record_skip("p_xz_zero");
    return result;
  }
  if (p_xy == T(0)) {
    result.record_skip("zero_intermediate_event_xy");
    return result;
  }

  const auto d_xz =
      detail::apply_sabotage(decompose_joint_target(j, y, x, z, opt.base), opt);
  const auto d_x =
      detail::apply_sabotage(decompose(marginal_pair(j, Var::X, Var::Y), x, y, opt.base), opt);
  const auto d_zgx = detail::apply_sabotage(
      decompose(condition_pair(j, Var::Z, Var::Y, x), z, y, opt.base), opt);

  double residual;
  bool ok;
  if constexpr (is_exact_backend<T>) {
    ok = d_xz.pmi_ratio == d_x.pmi_ratio * d_zgx.pmi_ratio;
    residual = ok ? 0.0 : detail::ext_distance(d_xz.pmi, d_x.pmi + d_zgx.pmi);
  } else {
    residual = detail::ext_distance(d_xz.pmi, d_x.pmi + d_zgx.pmi);
    ok = residual <= opt.tol;
  }

  if (stats) {
    bool plus_breaks, minus_breaks;
    if constexpr (is_exact_backend<T>) {
      plus_breaks =
          d_xz.specificity_arg != d_x.specificity_arg * d_zgx.specificity_arg;
      minus_breaks = d_xz.ambiguity_arg != d_x.ambiguity_arg * d_zgx.ambiguity_arg;
    } else {
      plus_breaks =
          detail::ext_distance(d_xz.i_plus, d_x.i_plus + d_zgx.i_plus) > opt.tol;
      minus_breaks =
          detail::ext_distance(d_xz.i_minus, d_x.i_minus + d_zgx.i_minus) > opt.tol;
    }
    if (plus_breaks) ++stats->iplus_target_chain_counterexamples;
    if (minus_breaks) ++stats->iminus_target_chain_counterexamples;
  }

  if (ok) {
    result.record_pass(residual);
  } else {
    result.record_fail(residual, detail::witness3(j, x, y, z, "target chain rule violated"));
  }
  return result;
}

/// Degenerate-case contracts: the purely informative case (Lemma 2), the
/// purely misinformative case (Lemma 3), and the no-complement case
/// (Lemma 1, p(x-bar) = 0), including the closed-form pmi of each.
template <class T>
CheckResult check_lemmas(const Joint2<T>& j, std::string_view x, std::string_view y,
                         const CheckOptions& opt = {}) {
  CheckResult result("lemmas_special_cases");
  const T p_x = j.x_mass(j.x_index(x));
  if (p_x == T(0)) {
    result.record_skip("p_x_zero");
    return result;
  }
  if (j.y_mass(j.y_index(y)) == T(0)) {
    result.record_skip("p_y_zero");
    return result;
  }
  const auto d = detail::eval_decomposition(j, x, y, opt);

  bool ok = true;
  double residual = 0.0;
  std::string which;

  if (p_x == T(1)) {
    // Lemma 1: no complementary target mass; y cannot inform about x.
    which = "no_complement";
    if constexpr (is_exact_backend<T>) {
      ok = d.pmi_ratio == T(1) && d.ambiguity_arg == d.specificity_arg;
      residual = ok ? 0.0 : std::abs(d.pmi);
    } else {
      residual = std::max(std::abs(d.pmi),
                          detail::ext_distance(d.i_plus, d.i_minus));
      ok = residual <= opt.tol;
    }
  } else {
    switch (d.split.kind) {
      case ExclusionKind::Null: {
        which = "null_exclusion";
        if constexpr (is_exact_backend<T>) {
          ok = d.specificity_arg == T(1) && d.ambiguity_arg == T(1) &&
               d.pmi_ratio == T(1);
          residual = 0.0;
        } else {
          residual = std::max({std::abs(d.i_plus), std::abs(d.i_minus), std::abs(d.pmi)});
          ok = residual <= opt.tol;
        }
        break;
      }
      case ExclusionKind::PurelyInformative: {
        which = "purely_informative";
        const T& inf_mass = d.split.informative;
        if constexpr (is_exact_backend<T>) {
          ok = d.ambiguity_arg == T(1) &&
               d.pmi_ratio * (T(1) - inf_mass) == T(1) && d.pmi_ratio > T(1);
          residual = ok ? 0.0 : std::abs(d.i_minus);
        } else {
          residual = std::max(std::abs(d.i_minus),
                              detail::ext_distance(
                                  d.pmi, pmi_purely_informative(inf_mass, opt.base)));
          ok = residual <= opt.tol && d.pmi > 0.0;
        }
        break;
      }
      case ExclusionKind::PurelyMisinformative: {
        which = "purely_misinformative";
        const T& mis_mass = d.split.misinformative;
        if constexpr (is_exact_backend<T>) {
          ok = d.pmi_ratio * (T(1) - mis_mass) * p_x == p_x - mis_mass &&
               d.pmi_ratio < T(1) && d.ambiguity_arg < T(1) &&
               d.specificity_arg > d.ambiguity_arg;
          residual = 0.0;
        } else {
          residual = detail::ext_distance(
              d.pmi, pmi_purely_misinformative(mis_mass, p_x, opt.base));
          ok = residual <= opt.tol && d.pmi < 0.0 && d.i_minus > 0.0 &&
               d.i_plus < d.i_minus;
        }
        break;
      }
      case ExclusionKind::Mixed:
        result.record_skip("mixed_case_no_lemma");
        return result;
    }
  }

  if (ok) {
    result.record_pass(residual);
  } else {
    result.record_fail(residual,
                       detail::witness2(j, x, y, "lemma violated: " + which));
  }
  return result;
}

/// The average information a source event provides about the target variable
/// is non-negative (it is a KL divergence).
template <class T>
CheckResult check_average_nonnegativity(const Joint2<T>& j, std::string_view y,
                                        const CheckOptions& opt = {}) {
  CheckResult result("average_nonnegativity");
  if (j.y_mass(j.y_index(y)) == T(0)) {
    result.record_skip("p_y_zero");
    return result;
  }
  const double value = average_info_to_target(j, y, opt.base);
  const double residual = std::max(0.0, -value);
  if (value >= -1e-12) {
    result.record_pass(residual);
  } else {
    result.record_fail(residual, detail::witness2(j, y, y, "negative average information"));
  }
  return result;
}

}  // namespace specamb
