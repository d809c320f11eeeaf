#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "specamb/error.hpp"
#include "specamb/rational.hpp"

namespace specamb {

// Input mass sums may carry file rounding; internal identities are tighter.
inline constexpr double kMassSumTolerance = 1e-9;
inline constexpr double kInternalTolerance = 1e-12;

enum class Axis { X, Y };
enum class Var { X, Y, Z };

enum class ExclusionKind { PurelyInformative, PurelyMisinformative, Mixed, Null };

inline std::string_view to_string(ExclusionKind kind) {
  switch (kind) {
    case ExclusionKind::PurelyInformative: return "PurelyInformative";
    case ExclusionKind::PurelyMisinformative: return "PurelyMisinformative";
    case ExclusionKind::Mixed: return "Mixed";
    case ExclusionKind::Null: return "Null";
  }
  return "Unknown";
}

/// The two categories of probability mass removed when the source event is
/// observed: mass off the target event (informative) and mass on it
/// (misinformative). Their sum is the total excluded mass 1 - p(y).
template <class T>
struct ExclusionSplit {
  T informative;     // p(x-complement, y-complement)
  T misinformative;  // p(x, y-complement)
  ExclusionKind kind;
};

template <class T>
ExclusionSplit<T> make_exclusion_split(T informative, T misinformative) {
  ExclusionKind kind;
  const bool inf_zero = informative == T(0);
  const bool mis_zero = misinformative == T(0);
  if (inf_zero && mis_zero) {
    kind = ExclusionKind::Null;
  } else if (mis_zero) {
    kind = ExclusionKind::PurelyInformative;
  } else if (inf_zero) {
    kind = ExclusionKind::PurelyMisinformative;
  } else {
    kind = ExclusionKind::Mixed;
  }
  return ExclusionSplit<T>{std::move(informative), std::move(misinformative), kind};
}

namespace detail {

inline void check_labels_unique(const std::vector<std::string>& labels,
                                std::string_view axis_name) {
  if (labels.empty()) {
    fail(Errc::DimensionMismatch, std::string(axis_name) + " alphabet is empty");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      fail(Errc::DuplicateLabel,
           "label '" + label + "' repeats in " + std::string(axis_name) + " alphabet");
    }
  }
}

inline std::unordered_map<std::string, std::size_t> build_index(
    const std::vector<std::string>& labels) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  return index;
}

inline std::size_t lookup(const std::unordered_map<std::string, std::size_t>& index,
                          std::string_view label, std::string_view axis_name) {
  auto it = index.find(std::string(label));
  if (it == index.end()) {
    fail(Errc::UnknownLabel,
         "no event '" + std::string(label) + "' in " + std::string(axis_name) + " alphabet");
  }
  return it->second;
}

template <class T>
void check_mass_nonnegative(const T& mass) {
  if constexpr (is_exact_backend<T>) {
    if (mass < 0) fail(Errc::NegativeMass, "mass " + rational_to_string(mass) + " < 0");
  } else {
    if (!(mass >= -kInternalTolerance)) {
      fail(Errc::NegativeMass, "mass " + std::to_string(mass) + " < 0");
    }
  }
}

template <class T>
void check_total_mass(const T& sum) {
  if constexpr (is_exact_backend<T>) {
    if (sum != 1) {
      fail(Errc::MassSumNotOne,
           "masses sum to " + rational_to_string(sum) + ", deviation " +
               rational_to_string(sum - 1));
    }
  } else {
    const double deviation = sum - 1.0;
    if (!(std::abs(deviation) <= kMassSumTolerance)) {
      fail(Errc::MassSumNotOne, "masses sum to " + std::to_string(sum) +
                                    ", deviation " + std::to_string(deviation));
    }
  }
}

}  // namespace detail

/// A distribution over one labeled alphabet. Immutable after construction.
template <class T>
class Marginal {
 public:
  Marginal(std::vector<std::string> labels, std::vector<T> masses)
      : labels_(std::move(labels)), masses_(std::move(masses)) {
    detail::check_labels_unique(labels_, "marginal");
    if (labels_.size() != masses_.size()) {
      fail(Errc::DimensionMismatch, "marginal has " + std::to_string(labels_.size()) +
                                        " labels but " + std::to_string(masses_.size()) +
                                        " masses");
    }
    T sum(0);
    for (const auto& m : masses_) {
      detail::check_mass_nonnegative(m);
      sum += m;
    }
    detail::check_total_mass(sum);
    index_ = detail::build_index(labels_);
  }

  std::size_t size() const { return masses_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<T>& masses() const { return masses_; }
  const T& mass(std::size_t i) const { return masses_[i]; }

  std::size_t index_of(std::string_view label) const {
    return detail::lookup(index_, label, "marginal");
  }
  const T& mass_of(std::string_view label) const { return masses_[index_of(label)]; }

 private:
  std::vector<std::string> labels_;
  std::vector<T> masses_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Two-variable joint distribution P(X,Y) over labeled finite alphabets.
/// Entry (i, j) is p(x_i, y_j). Immutable after construction; zero rows and
/// columns are permitted, operations needing positive mass fail at call time.
template <class T>
class Joint2 {
 public:
  Joint2(std::vector<std::string> x_labels, std::vector<std::string> y_labels,
         std::vector<std::vector<T>> masses)
      : x_labels_(std::move(x_labels)), y_labels_(std::move(y_labels)) {
    detail::check_labels_unique(x_labels_, "X");
    detail::check_labels_unique(y_labels_, "Y");
    if (masses.size() != x_labels_.size()) {
      fail(Errc::DimensionMismatch, "grid has " + std::to_string(masses.size()) +
                                        " rows for " + std::to_string(x_labels_.size()) +
                                        " X labels");
    }
    masses_.reserve(x_labels_.size() * y_labels_.size());
    T sum(0);
    for (const auto& row : masses) {
      if (row.size() != y_labels_.size()) {
        fail(Errc::DimensionMismatch, "row has " + std::to_string(row.size()) +
                                          " entries for " +
                                          std::to_string(y_labels_.size()) + " Y labels");
      }
      for (const auto& m : row) {
        detail::check_mass_nonnegative(m);
        sum += m;
        masses_.push_back(m);
      }
    }
    detail::check_total_mass(sum);
    x_index_ = detail::build_index(x_labels_);
    y_index_ = detail::build_index(y_labels_);
  }

  std::size_t x_size() const { return x_labels_.size(); }
  std::size_t y_size() const { return y_labels_.size(); }
  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }

  const T& mass(std::size_t xi, std::size_t yj) const {
    return masses_[xi * y_size() + yj];
  }

  std::size_t x_index(std::string_view label) const {
    return detail::lookup(x_index_, label, "X");
  }
  std::size_t y_index(std::string_view label) const {
    return detail::lookup(y_index_, label, "Y");
  }

  // row / column sums
  T x_mass(std::size_t xi) const {
    T sum(0);
    for (std::size_t j = 0; j < y_size(); ++j) sum += mass(xi, j);
    return sum;
  }
  T y_mass(std::size_t yj) const {
    T sum(0);
    for (std::size_t i = 0; i < x_size(); ++i) sum += mass(i, yj);
    return sum;
  }

 private:
  std::vector<std::string> x_labels_, y_labels_;
  std::vector<T> masses_;  // row-major, X-major
  std::unordered_map<std::string, std::size_t> x_index_, y_index_;
};

/// Three-variable joint distribution P(X,Y,Z).
template <class T>
class Joint3 {
 public:
  Joint3(std::vector<std::string> x_labels, std::vector<std::string> y_labels,
         std::vector<std::string> z_labels, std::vector<T> masses)
      : x_labels_(std::move(x_labels)),
        y_labels_(std::move(y_labels)),
        z_labels_(std::move(z_labels)),
        masses_(std::move(masses)) {
    detail::check_labels_unique(x_labels_, "X");
    detail::check_labels_unique(y_labels_, "Y");
    detail::check_labels_unique(z_labels_, "Z");
    if (masses_.size() != x_labels_.size() * y_labels_.size() * z_labels_.size()) {
      fail(Errc::DimensionMismatch,
           "grid has " + std::to_string(masses_.size()) + " cells for shape " +
               std::to_string(x_labels_.size()) + "x" + std::to_string(y_labels_.size()) +
               "x" + std::to_string(z_labels_.size()));
    }
    T sum(0);
    for (const auto& m : masses_) {
      detail::check_mass_nonnegative(m);
      sum += m;
    }
    detail::check_total_mass(sum);
    x_index_ = detail::build_index(x_labels_);
    y_index_ = detail::build_index(y_labels_);
    z_index_ = detail::build_index(z_labels_);
  }

  std::size_t x_size() const { return x_labels_.size(); }
  std::size_t y_size() const { return y_labels_.size(); }
  std::size_t z_size() const { return z_labels_.size(); }
  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }
  const std::vector<std::string>& z_labels() const { return z_labels_; }

  const T& mass(std::size_t xi, std::size_t yj, std::size_t zk) const {
    return masses_[(xi * y_size() + yj) * z_size() + zk];
  }

  std::size_t x_index(std::string_view label) const {
    return detail::lookup(x_index_, label, "X");
  }
  std::size_t y_index(std::string_view label) const {
    return detail::lookup(y_index_, label, "Y");
  }
  std::size_t z_index(std::string_view label) const {
    return detail::lookup(z_index_, label, "Z");
  }

 private:
  std::vector<std::string> x_labels_, y_labels_, z_labels_;
  std::vector<T> masses_;  // x-major, then y, then z
  std::unordered_map<std::string, std::size_t> x_index_, y_index_, z_index_;
};

template <class T>
Marginal<T> marginal(const Joint2<T>& j, Axis axis) {
  if (axis == Axis::X) {
    std::vector<T> masses;
    masses.reserve(j.x_size());
    for (std::size_t i = 0; i < j.x_size(); ++i) masses.push_back(j.x_mass(i));
    return Marginal<T>(j.x_labels(), std::move(masses));
  }
  std::vector<T> masses;
  masses.reserve(j.y_size());
  for (std::size_t jj = 0; jj < j.y_size(); ++jj) masses.push_back(j.y_mass(jj));
  return Marginal<T>(j.y_labels(), std::move(masses));
}

/// P(X | y): the column of the given Y event, renormalised.
template <class T>
Marginal<T> condition(const Joint2<T>& j, std::string_view given_y) {
  const std::size_t yj = j.y_index(given_y);
  const T p_y = j.y_mass(yj);
  if (p_y == T(0)) {
    fail(Errc::ZeroConditioningEvent,
         "p(" + std::string(given_y) + ") = 0, conditional undefined");
  }
  std::vector<T> masses;
  masses.reserve(j.x_size());
  for (std::size_t i = 0; i < j.x_size(); ++i) masses.push_back(j.mass(i, yj) / p_y);
  return Marginal<T>(j.x_labels(), std::move(masses));
}

/// Splits the mass excluded by observing y into the part off the target
/// event x (informative) and the part on it (misinformative).
template <class T>
ExclusionSplit<T> exclusion_split(const Joint2<T>& j, std::string_view x,
                                  std::string_view y) {
  const std::size_t xi = j.x_index(x);
  const std::size_t yj = j.y_index(y);
  T informative(0), misinformative(0);
  for (std::size_t jj = 0; jj < j.y_size(); ++jj) {
    if (jj == yj) continue;
    misinformative += j.mass(xi, jj);
    for (std::size_t i = 0; i < j.x_size(); ++i) {
      if (i != xi) informative += j.mass(i, jj);
    }
  }
  return make_exclusion_split(std::move(informative), std::move(misinformative));
}

/// One event of a variable, or the complement of one event (every other
/// label in that alphabet). Complements are always derived, never stored.
struct EventSel {
  std::string label;
  bool complement = false;
};

/// Partial assignment over (X, Y, Z); unset slots are marginalised out.
struct Assignment {
  std::optional<EventSel> x, y, z;
};

template <class T>
T prob(const Joint3<T>& j, const Assignment& a) {
  if (!a.x && !a.y && !a.z) {
    fail(Errc::InvalidArgument, "assignment selects no variable");
  }
  const auto matches = [](const std::optional<EventSel>& sel, std::size_t index,
                          std::size_t selected) {
    if (!sel) return true;
    return sel->complement ? index != selected : index == selected;
  };
  const std::size_t xi = a.x ? j.x_index(a.x->label) : 0;
  const std::size_t yj = a.y ? j.y_index(a.y->label) : 0;
  const std::size_t zk = a.z ? j.z_index(a.z->label) : 0;
  T sum(0);
  for (std::size_t i = 0; i < j.x_size(); ++i) {
    if (!matches(a.x, i, xi)) continue;
    for (std::size_t jj = 0; jj < j.y_size(); ++jj) {
      if (!matches(a.y, jj, yj)) continue;
      for (std::size_t k = 0; k < j.z_size(); ++k) {
        if (!matches(a.z, k, zk)) continue;
        sum += j.mass(i, jj, k);
      }
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Transforms between arities. These let every decomposition variant reuse the
// plain two-variable path.
// ---------------------------------------------------------------------------

template <class T>
Joint3<T> embed_as_joint3(const Joint2<T>& j, std::string z_label = "z1") {
  std::vector<T> masses;
  masses.reserve(j.x_size() * j.y_size());
  for (std::size_t i = 0; i < j.x_size(); ++i) {
    for (std::size_t jj = 0; jj < j.y_size(); ++jj) masses.push_back(j.mass(i, jj));
  }
  return Joint3<T>(j.x_labels(), j.y_labels(), {std::move(z_label)}, std::move(masses));
}

namespace detail {

template <class T>
const std::vector<std::string>& axis_labels(const Joint3<T>& j, Var v) {
  switch (v) {
    case Var::X: return j.x_labels();
    case Var::Y: return j.y_labels();
    case Var::Z: return j.z_labels();
  }
  fail(Errc::InvalidArgument, "bad axis");
}

template <class T>
std::size_t axis_index(const Joint3<T>& j, Var v, std::string_view label) {
  switch (v) {
    case Var::X: return j.x_index(label);
    case Var::Y: return j.y_index(label);
    case Var::Z: return j.z_index(label);
  }
  fail(Errc::InvalidArgument, "bad axis");
}

template <class T>
const T& cell(const Joint3<T>& j, Var row, Var col, std::size_t r, std::size_t c,
              std::size_t other) {
  std::size_t idx[3];
  idx[static_cast<int>(row)] = r;
  idx[static_cast<int>(col)] = c;
  const int row_i = static_cast<int>(row), col_i = static_cast<int>(col);
  for (int v = 0; v < 3; ++v) {
    if (v != row_i && v != col_i) idx[v] = other;
  }
  return j.mass(idx[0], idx[1], idx[2]);
}

template <class T>
std::size_t other_axis_size(const Joint3<T>& j, Var row, Var col) {
  const int row_i = static_cast<int>(row), col_i = static_cast<int>(col);
  for (int v = 0; v < 3; ++v) {
    if (v != row_i && v != col_i) {
      return axis_labels(j, static_cast<Var>(v)).size();
    }
  }
  fail(Errc::InvalidArgument, "row and column axes coincide");
}

}  // namespace detail

/// Joint distribution of two of the three variables, the third summed out.
template <class T>
Joint2<T> marginal_pair(const Joint3<T>& j, Var row, Var col) {
  if (row == col) fail(Errc::InvalidArgument, "row and column axes coincide");
  const auto& row_labels = detail::axis_labels(j, row);
  const auto& col_labels = detail::axis_labels(j, col);
  const std::size_t other_n = detail::other_axis_size(j, row, col);
  std::vector<std::vector<T>> grid(row_labels.size(),
                                   std::vector<T>(col_labels.size(), T(0)));
  for (std::size_t r = 0; r < row_labels.size(); ++r) {
    for (std::size_t c = 0; c < col_labels.size(); ++c) {
      for (std::size_t o = 0; o < other_n; ++o) {
        grid[r][c] += detail::cell(j, row, col, r, c, o);
      }
    }
  }
  return Joint2<T>(row_labels, col_labels, std::move(grid));
}

/// Joint distribution of two variables conditioned on one event of the
/// third: P(row, col | given).
template <class T>
Joint2<T> condition_pair(const Joint3<T>& j, Var row, Var col,
                         std::string_view given_label) {
  if (row == col) fail(Errc::InvalidArgument, "row and column axes coincide");
  const int row_i = static_cast<int>(row), col_i = static_cast<int>(col);
  Var given = Var::X;
  for (int v = 0; v < 3; ++v) {
    if (v != row_i && v != col_i) given = static_cast<Var>(v);
  }
  const std::size_t g = detail::axis_index(j, given, given_label);
  const auto& row_labels = detail::axis_labels(j, row);
  const auto& col_labels = detail::axis_labels(j, col);
  T p_given(0);
  for (std::size_t r = 0; r < row_labels.size(); ++r) {
    for (std::size_t c = 0; c < col_labels.size(); ++c) {
      p_given += detail::cell(j, row, col, r, c, g);
    }
  }
  if (p_given == T(0)) {
    fail(Errc::ZeroConditioningEvent,
         "p(" + std::string(given_label) + ") = 0, conditional undefined");
  }
  std::vector<std::vector<T>> grid(row_labels.size(),
                                   std::vector<T>(col_labels.size(), T(0)));
  for (std::size_t r = 0; r < row_labels.size(); ++r) {
    for (std::size_t c = 0; c < col_labels.size(); ++c) {
      grid[r][c] = detail::cell(j, row, col, r, c, g) / p_given;
    }
  }
  return Joint2<T>(row_labels, col_labels, std::move(grid));
}

// Separator for product-alphabet labels; not expected in user labels.
inline constexpr char kFusedLabelSep = '\x1f';

inline std::string fused_label(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size() + b.size() + 1);
  out.append(a);
  out.push_back(kFusedLabelSep);
  out.append(b);
  return out;
}

/// P(X, YZ): the source pair fused into one product alphabet.
template <class T>
Joint2<T> fuse_sources(const Joint3<T>& j) {
  std::vector<std::string> col_labels;
  col_labels.reserve(j.y_size() * j.z_size());
  for (const auto& y : j.y_labels()) {
    for (const auto& z : j.z_labels()) col_labels.push_back(fused_label(y, z));
  }
  std::vector<std::vector<T>> grid(j.x_size());
  for (std::size_t i = 0; i < j.x_size(); ++i) {
    grid[i].reserve(col_labels.size());
    for (std::size_t jj = 0; jj < j.y_size(); ++jj) {
      for (std::size_t k = 0; k < j.z_size(); ++k) grid[i].push_back(j.mass(i, jj, k));
    }
  }
  return Joint2<T>(j.x_labels(), std::move(col_labels), std::move(grid));
}

/// P(XZ, Y): the target pair fused into one product alphabet.
template <class T>
Joint2<T> fuse_targets(const Joint3<T>& j) {
  std::vector<std::string> row_labels;
  row_labels.reserve(j.x_size() * j.z_size());
  for (const auto& x : j.x_labels()) {
    for (const auto& z : j.z_labels()) row_labels.push_back(fused_label(x, z));
  }
  std::vector<std::vector<T>> grid;
  grid.reserve(row_labels.size());
  for (std::size_t i = 0; i < j.x_size(); ++i) {
    for (std::size_t k = 0; k < j.z_size(); ++k) {
      std::vector<T> row;
      row.reserve(j.y_size());
      for (std::size_t jj = 0; jj < j.y_size(); ++jj) row.push_back(j.mass(i, jj, k));
      grid.push_back(std::move(row));
    }
  }
  return Joint2<T>(std::move(row_labels), j.y_labels(), std::move(grid));
}

/// Float view of an exact distribution, for rendering and display.
inline Joint2<double> to_float(const Joint2<Rational>& j) {
  std::vector<std::vector<double>> grid(j.x_size(), std::vector<double>(j.y_size()));
  for (std::size_t i = 0; i < j.x_size(); ++i) {
    for (std::size_t jj = 0; jj < j.y_size(); ++jj) {
      grid[i][jj] = to_double(j.mass(i, jj));
    }
  }
  return Joint2<double>(j.x_labels(), j.y_labels(), std::move(grid));
}

inline Joint3<double> to_float(const Joint3<Rational>& j) {
  std::vector<double> masses;
  masses.reserve(j.x_size() * j.y_size() * j.z_size());
  for (std::size_t i = 0; i < j.x_size(); ++i) {
    for (std::size_t jj = 0; jj < j.y_size(); ++jj) {
      for (std::size_t k = 0; k < j.z_size(); ++k) {
        masses.push_back(to_double(j.mass(i, jj, k)));
      }
    }
  }
  return Joint3<double>(j.x_labels(), j.y_labels(), j.z_labels(), std::move(masses));
}

}  // namespace specamb
