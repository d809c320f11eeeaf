#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "specamb/distribution.hpp"
#include "specamb/error.hpp"
#include "specamb/rational.hpp"

namespace specamb {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Logarithm base for all information values. Any base > 1; defaults to
/// base 2 so results are in bits.
class LogBase {
 public:
  LogBase() : LogBase(2.0) {}

  static LogBase bits() { return LogBase(2.0); }
  static LogBase nats() { return LogBase(std::exp(1.0)); }
  static LogBase of(double base) {
    if (!(base > 1.0)) {
      fail(Errc::InvalidArgument, "log base must be > 1, got " + std::to_string(base));
    }
    return LogBase(base);
  }

  double base() const { return base_; }
  double log(double v) const { return std::log(v) * inv_ln_base_; }

 private:
  explicit LogBase(double base) : base_(base), inv_ln_base_(1.0 / std::log(base)) {}
  double base_;
  double inv_ln_base_;
};

namespace detail {

// -log of a probability in [0,1]; 0 maps to +infinity, 1 to exactly 0.
inline double neg_log(double p, LogBase base) {
  if (p == 0.0) return kInfinity;
  const double v = -base.log(p);
  return v == 0.0 ? 0.0 : v;
}

inline double signed_log(double ratio, LogBase base) {
  if (ratio == 0.0) return -kInfinity;
  const double v = base.log(ratio);
  return v == 0.0 ? 0.0 : v;
}

}  // namespace detail

/// The directed split of one pointwise mutual information value. The
/// components are evaluated as extended reals; the exact probability
/// arguments behind each logarithm are kept alongside so the rational
/// backend can test identities without irrational arithmetic:
///   i_plus  = -log(specificity_arg)
///   i_minus = -log(ambiguity_arg)
///   pmi     =  log(pmi_ratio)
template <class T>
struct Decomposition {
  double pmi;      // may be -inf when the joint event has zero mass
  double i_plus;   // >= 0
  double i_minus;  // >= 0, may be +inf
  LogBase base;
  ExclusionSplit<T> split;

  T specificity_arg;  // p(y)-like mass, in (0, 1]
  T ambiguity_arg;    // p(y|x)-like mass, in [0, 1]
  T pmi_ratio;        // p(x,y) / (p(x) p(y))-like ratio, >= 0

  std::string target_event;  // x side
  std::string source_event;  // y side
  std::string given_event;   // conditioning event, empty unless conditional
};

/// Shannon information content -log p of a single event.
template <class T>
double pointwise_entropy(const T& p, LogBase base = {}) {
  if constexpr (is_exact_backend<T>) {
    if (p < 0 || p > 1) {
      fail(Errc::InvalidArgument, "probability " + rational_to_string(p) + " outside [0,1]");
    }
  } else {
    if (!(p >= -kInternalTolerance && p <= 1.0 + kInternalTolerance)) {
      fail(Errc::InvalidArgument, "probability " + std::to_string(p) + " outside [0,1]");
    }
  }
  return detail::neg_log(to_double(p), base);
}

/// Pointwise mutual information log p(x,y) / (p(x) p(y)).
template <class T>
double pmi(const Joint2<T>& j, std::string_view x, std::string_view y,
           LogBase base = {}) {
  const std::size_t xi = j.x_index(x);
  const std::size_t yj = j.y_index(y);
  const T p_x = j.x_mass(xi);
  const T p_y = j.y_mass(yj);
  if (p_x == T(0)) fail(Errc::ZeroMarginal, "p(" + std::string(x) + ") = 0");
  if (p_y == T(0)) fail(Errc::ZeroMarginal, "p(" + std::string(y) + ") = 0");
  const T ratio = j.mass(xi, yj) / (p_x * p_y);
  return detail::signed_log(to_double(ratio), base);
}

/// Directed decomposition of pmi into specificity and ambiguity:
/// i_plus = -log p(y) and i_minus = -log p(y|x).
template <class T>
Decomposition<T> decompose(const Joint2<T>& j, std::string_view x, std::string_view y,
                           LogBase base = {}) {
  const std::size_t xi = j.x_index(x);
  const std::size_t yj = j.y_index(y);
  const T p_x = j.x_mass(xi);
  const T p_y = j.y_mass(yj);
  if (p_x == T(0)) fail(Errc::ZeroMarginal, "p(" + std::string(x) + ") = 0");
  if (p_y == T(0)) fail(Errc::ZeroMarginal, "p(" + std::string(y) + ") = 0");
  const T p_xy = j.mass(xi, yj);

  Decomposition<T> d{
      /*pmi=*/0.0,
      /*i_plus=*/0.0,
      /*i_minus=*/0.0,
      base,
      exclusion_split(j, x, y),
      /*specificity_arg=*/p_y,
      /*ambiguity_arg=*/p_xy / p_x,
      /*pmi_ratio=*/p_xy / (p_x * p_y),
      std::string(x),
      std::string(y),
      std::string(),
  };
  d.i_plus = detail::neg_log(to_double(d.specificity_arg), base);
  d.i_minus = detail::neg_log(to_double(d.ambiguity_arg), base);
  d.pmi = detail::signed_log(to_double(d.pmi_ratio), base);
  return d;
}

/// Mass argument of the specificity written in terms of the exclusions:
/// 1 - p(x,y-bar) - p(x-bar,y-bar), which equals p(y).
template <class T>
T specificity_arg_from_exclusions(const ExclusionSplit<T>& split) {
  return T(1) - split.misinformative - split.informative;
}

/// Mass argument of the ambiguity written in terms of the exclusions:
/// 1 - p(x,y-bar) / p(x), which equals p(y|x).
template <class T>
T ambiguity_arg_from_exclusions(const ExclusionSplit<T>& split, const T& p_x) {
  if (p_x == T(0)) fail(Errc::ZeroMarginal, "p(x) = 0");
  if (split.misinformative > p_x) {
    fail(Errc::MisinformativeExceedsEvent, "misinformative exclusion exceeds p(x)");
  }
  return (p_x - split.misinformative) / p_x;
}

template <class T>
double i_plus_from_exclusions(const ExclusionSplit<T>& split, LogBase base = {}) {
  const T arg = specificity_arg_from_exclusions(split);
  if (arg <= T(0)) {
    fail(Errc::DegenerateTotalExclusion, "exclusions sum to 1, p(y) = 0");
  }
  return detail::neg_log(to_double(arg), base);
}

template <class T>
double i_minus_from_exclusions(const ExclusionSplit<T>& split, const T& p_x,
                               LogBase base = {}) {
  return detail::neg_log(to_double(ambiguity_arg_from_exclusions(split, p_x)), base);
}

/// Closed form of the pmi when the exclusion is purely informative:
/// -log(1 - p(x-bar,y-bar)). Strictly positive for a positive exclusion.
template <class T>
double pmi_purely_informative(const T& informative_mass, LogBase base = {}) {
  if (informative_mass < T(0) || informative_mass > T(1)) {
    fail(Errc::InvalidArgument, "informative mass outside [0,1]");
  }
  if (informative_mass == T(1)) {
    fail(Errc::DegenerateTotalExclusion, "informative exclusion of 1 leaves p(y) = 0");
  }
  return detail::neg_log(to_double(T(1) - informative_mass), base);
}

/// Closed form of the pmi when the exclusion is purely misinformative:
/// log( (1 - p(x,y-bar)/p(x)) / (1 - p(x,y-bar)) ). Non-positive; -inf when
/// the misinformative exclusion consumes all of p(x).
template <class T>
double pmi_purely_misinformative(const T& misinformative_mass, const T& p_x,
                                 LogBase base = {}) {
  if (p_x == T(0)) fail(Errc::ZeroMarginal, "p(x) = 0");
  if (p_x > T(1) || misinformative_mass < T(0)) {
    fail(Errc::InvalidArgument, "masses outside [0,1]");
  }
  if (misinformative_mass > p_x) {
    fail(Errc::MisinformativeExceedsEvent, "misinformative exclusion exceeds p(x)");
  }
  if (misinformative_mass == p_x) return -kInfinity;  // p(x,y) = 0 limit
  const T ratio = ((p_x - misinformative_mass) / p_x) / (T(1) - misinformative_mass);
  return detail::signed_log(to_double(ratio), base);
}

/// i(y -> x | z): plain decomposition on the distribution conditioned on z.
template <class T>
Decomposition<T> decompose_conditional(const Joint3<T>& j, std::string_view source_y,
                                       std::string_view target_x,
                                       std::string_view given_z, LogBase base = {}) {
  const Joint2<T> cond = condition_pair(j, Var::X, Var::Y, given_z);
  Decomposition<T> d = decompose(cond, target_x, source_y, base);
  d.given_event = std::string(given_z);
  return d;
}

/// i(yz -> x): plain decomposition with the source pair fused.
template <class T>
Decomposition<T> decompose_joint_source(const Joint3<T>& j, std::string_view source_y,
                                        std::string_view source_z,
                                        std::string_view target_x, LogBase base = {}) {
  j.y_index(source_y);
  j.z_index(source_z);
  Decomposition<T> d = decompose(fuse_sources(j), target_x,
                                 fused_label(source_y, source_z), base);
  d.source_event = std::string(source_y) + "," + std::string(source_z);
  return d;
}

/// i(y -> xz): plain decomposition with the target pair fused.
template <class T>
Decomposition<T> decompose_joint_target(const Joint3<T>& j, std::string_view source_y,
                                        std::string_view target_x,
                                        std::string_view target_z, LogBase base = {}) {
  j.x_index(target_x);
  j.z_index(target_z);
  Decomposition<T> d = decompose(fuse_targets(j), fused_label(target_x, target_z),
                                 source_y, base);
  d.target_event = std::string(target_x) + "," + std::string(target_z);
  return d;
}

/// I(X; y) = sum_x p(x|y) i(x;y), the Kullback-Leibler divergence of the
/// posterior from the prior. Non-negative up to rounding.
template <class T>
double average_info_to_target(const Joint2<T>& j, std::string_view source_y,
                              LogBase base = {}) {
  const std::size_t yj = j.y_index(source_y);
  const T p_y = j.y_mass(yj);
  if (p_y == T(0)) fail(Errc::ZeroMarginal, "p(" + std::string(source_y) + ") = 0");
  double total = 0.0;
  for (std::size_t xi = 0; xi < j.x_size(); ++xi) {
    const T p_x = j.x_mass(xi);
    if (p_x == T(0)) continue;
    const T p_xy = j.mass(xi, yj);
    if (p_xy == T(0)) continue;  // zero-weight term, limit value 0
    const double weight = to_double(p_xy / p_y);
    total += weight * base.log(to_double(p_xy / (p_x * p_y)));
  }
  return total;
}

}  // namespace specamb
