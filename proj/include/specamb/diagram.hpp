#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "specamb/distribution.hpp"

namespace specamb {

enum class Panel { Prior, Exclusion, Posterior };

/// What to draw: a joint distribution, the realised source/target events,
/// and which panels of the exclusion story to show.
struct DiagramSpec {
  Joint2<double> joint;
  std::string target_x;
  std::string source_y;
  std::vector<Panel> panels = {Panel::Prior, Panel::Exclusion, Panel::Posterior};
  int width_px = 420;   // SVG canvas
  int height_px = 280;  // SVG canvas
  int unit_height = 2;  // ASCII rows per 1/8 of total mass
};

/// Stacked-bar text diagram. Retained blocks are '#', informative exclusions
/// '|', misinformative exclusions '/'. Block heights use largest-remainder
/// rounding so every panel's rows sum to the full resolution.
std::string render_ascii(const DiagramSpec& spec);

/// Single-file SVG with embedded hatch patterns; deterministic output for
/// snapshot testing.
std::string render_svg(const DiagramSpec& spec);

enum class ChainOrdering { OneShot, YThenZ, ZThenY };

/// Multi-stage SVG diagram of the exclusions two source events induce in
/// sequence or at once. The final posterior panel is identical across
/// orderings.
std::string render_chain(const Joint3<double>& joint, std::string_view target_x,
                         std::string_view source_y, std::string_view source_z,
                         ChainOrdering ordering, int width_px = 760,
                         int height_px = 280);

/// Integer row heights proportional to masses, totals preserved exactly.
/// Exposed for tests.
std::vector<int> block_rows_largest_remainder(const std::vector<double>& masses,
                                              int total_rows);

}  // namespace specamb
