#include "specamb/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "specamb/error.hpp"

namespace specamb {

namespace {

constexpr std::size_t kMaxBlocksPerPanel = 12;

enum class Fill { Retained, InformativeExcluded, MisinformativeExcluded };

struct Block {
  std::string label;
  double mass;  // fraction of the panel total; each panel sums to 1
  Fill fill;
};

struct PanelModel {
  std::string title;
  std::vector<Block> blocks;
};

std::string pair_label(const std::string& a, const std::string& b) {
  return a + "," + b;
}

void check_block_budget(std::size_t blocks) {
  if (blocks > kMaxBlocksPerPanel) {
    fail(Errc::InvalidArgument,
         "panel would hold " + std::to_string(blocks) + " joint events; limit is " +
             std::to_string(kMaxBlocksPerPanel));
  }
}

// Blocks of the full joint, source-major: every X block of y1, then of y2...
std::vector<Block> joint_blocks(const Joint2<double>& j, std::size_t target_xi,
                                std::size_t source_yj, bool hatch_exclusions) {
  check_block_budget(j.x_size() * j.y_size());
  std::vector<Block> blocks;
  blocks.reserve(j.x_size() * j.y_size());
  for (std::size_t yj = 0; yj < j.y_size(); ++yj) {
    for (std::size_t xi = 0; xi < j.x_size(); ++xi) {
      Fill fill = Fill::Retained;
      if (hatch_exclusions && yj != source_yj) {
        fill = xi == target_xi ? Fill::MisinformativeExcluded
                               : Fill::InformativeExcluded;
      }
      blocks.push_back({pair_label(j.x_labels()[xi], j.y_labels()[yj]),
                        j.mass(xi, yj), fill});
    }
  }
  return blocks;
}

std::vector<PanelModel> build_panels(const DiagramSpec& spec) {
  if (spec.panels.empty()) fail(Errc::InvalidArgument, "no panels requested");
  const std::size_t xi = spec.joint.x_index(spec.target_x);
  const std::size_t yj = spec.joint.y_index(spec.source_y);

  std::vector<PanelModel> panels;
  panels.reserve(spec.panels.size());
  for (const Panel p : spec.panels) {
    switch (p) {
      case Panel::Prior:
        panels.push_back({"prior", joint_blocks(spec.joint, xi, yj, false)});
        break;
      case Panel::Exclusion:
        panels.push_back({"exclude " + spec.source_y,
                          joint_blocks(spec.joint, xi, yj, true)});
        break;
      case Panel::Posterior: {
        const Marginal<double> posterior = condition(spec.joint, spec.source_y);
        check_block_budget(posterior.size());
        std::vector<Block> blocks;
        blocks.reserve(posterior.size());
        for (std::size_t i = 0; i < posterior.size(); ++i) {
          blocks.push_back({posterior.labels()[i], posterior.mass(i), Fill::Retained});
        }
        panels.push_back({"given " + spec.source_y, std::move(blocks)});
        break;
      }
    }
  }
  return panels;
}

// ---------------------------------------------------------------------------
// ASCII
// ---------------------------------------------------------------------------

char fill_char(Fill f) {
  switch (f) {
    case Fill::Retained: return '#';
    case Fill::InformativeExcluded: return '|';
    case Fill::MisinformativeExcluded: return '/';
  }
  return '?';
}

std::vector<std::string> render_panel_ascii(const PanelModel& panel, int total_rows) {
  constexpr int kBarWidth = 10;
  std::vector<double> masses;
  masses.reserve(panel.blocks.size());
  for (const auto& b : panel.blocks) masses.push_back(b.mass);
  const std::vector<int> rows = block_rows_largest_remainder(masses, total_rows);

  std::vector<std::string> lines;
  lines.push_back(panel.title);
  lines.emplace_back(kBarWidth, '-');
  for (std::size_t b = 0; b < panel.blocks.size(); ++b) {
    if (rows[b] == 0) continue;  // zero-mass blocks are omitted
    for (int r = 0; r < rows[b]; ++r) {
      std::string line(kBarWidth, fill_char(panel.blocks[b].fill));
      if (r == 0) line += " " + panel.blocks[b].label;
      lines.push_back(std::move(line));
    }
    lines.emplace_back(kBarWidth, '-');
  }
  return lines;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const char* fill_attr(Fill f) {
  switch (f) {
    case Fill::Retained: return "#d8d8d8";
    case Fill::InformativeExcluded: return "url(#hatch-informative)";
    case Fill::MisinformativeExcluded: return "url(#hatch-misinformative)";
  }
  return "none";
}

std::string render_panels_svg(const std::vector<PanelModel>& panels, int width_px,
                              int height_px) {
  if (width_px <= 0 || height_px <= 0) {
    fail(Errc::InvalidArgument, "canvas dimensions must be positive");
  }
  const double margin = 8.0;
  const double title_h = 18.0;
  const double gap = 16.0;
  const double n = static_cast<double>(panels.size());
  const double panel_w = (width_px - 2.0 * margin - gap * (n - 1.0)) / n;
  const double bar_top = margin + title_h;
  const double bar_h = height_px - bar_top - margin;
  if (panel_w < 24.0 || bar_h < 24.0) {
    fail(Errc::InvalidArgument, "canvas too small for the requested panels");
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px
      << "\" height=\"" << height_px << "\" viewBox=\"0 0 " << width_px << " "
      << height_px << "\">\n";
  svg << "  <defs>\n"
      << "    <pattern id=\"hatch-informative\" patternUnits=\"userSpaceOnUse\" "
         "width=\"6\" height=\"6\">\n"
      << "      <path d=\"M 3 0 L 3 6\" stroke=\"#35618d\" stroke-width=\"1.4\"/>\n"
      << "    </pattern>\n"
      << "    <pattern id=\"hatch-misinformative\" patternUnits=\"userSpaceOnUse\" "
         "width=\"6\" height=\"6\">\n"
      << "      <path d=\"M 0 6 L 6 0\" stroke=\"#8d3535\" stroke-width=\"1.4\"/>\n"
      << "    </pattern>\n"
      << "  </defs>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const double x0 = margin + static_cast<double>(p) * (panel_w + gap);
    svg << "  <g id=\"panel-" << p << "\">\n";
    svg << "    <text x=\"" << fmt(x0) << "\" y=\"" << fmt(margin + 12.0)
        << "\" font-family=\"monospace\" font-size=\"11\">" << panels[p].title
        << "</text>\n";
    double total = 0.0;
    for (const auto& b : panels[p].blocks) total += b.mass;
    double cursor = bar_top;
    for (const auto& b : panels[p].blocks) {
      const double h = total > 0.0 ? b.mass / total * bar_h : 0.0;
      if (b.mass == 0.0) {
        svg << "    <!-- zero-mass " << b.label << " -->\n";
        continue;
      }
      svg << "    <rect x=\"" << fmt(x0) << "\" y=\"" << fmt(cursor) << "\" width=\""
          << fmt(panel_w) << "\" height=\"" << fmt(h) << "\" fill=\""
          << fill_attr(b.fill) << "\" stroke=\"#444444\" stroke-width=\"0.6\"/>\n";
      svg << "    <text x=\"" << fmt(x0 + 4.0) << "\" y=\"" << fmt(cursor + h / 2.0 + 3.0)
          << "\" font-family=\"monospace\" font-size=\"9\">p(" << b.label
          << ")</text>\n";
      cursor += h;
    }
    svg << "  </g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// ---------------------------------------------------------------------------
// Chain panels over three variables
// ---------------------------------------------------------------------------

std::vector<Block> joint3_blocks(const Joint3<double>& j, std::size_t txi,
                                 std::size_t syj, std::size_t szk, bool hatch,
                                 bool exclude_y, bool exclude_z) {
  check_block_budget(j.x_size() * j.y_size() * j.z_size());
  std::vector<Block> blocks;
  for (std::size_t yj = 0; yj < j.y_size(); ++yj) {
    for (std::size_t zk = 0; zk < j.z_size(); ++zk) {
      for (std::size_t xi = 0; xi < j.x_size(); ++xi) {
        Fill fill = Fill::Retained;
        const bool excluded = (exclude_y && yj != syj) || (exclude_z && zk != szk);
        if (hatch && excluded) {
          fill = xi == txi ? Fill::MisinformativeExcluded : Fill::InformativeExcluded;
        }
        blocks.push_back({j.x_labels()[xi] + "," + j.y_labels()[yj] + "," +
                              j.z_labels()[zk],
                          j.mass(xi, yj, zk), fill});
      }
    }
  }
  return blocks;
}

// P(X, other | first): blocks of the intermediate stage, optionally hatching
// the second event's exclusions.
std::vector<Block> conditional_blocks(const Joint3<double>& j, std::size_t txi,
                                      bool given_is_y, std::size_t given_index,
                                      bool hatch_second, std::size_t second_index) {
  double p_given = 0.0;
  for (std::size_t xi = 0; xi < j.x_size(); ++xi) {
    for (std::size_t yj = 0; yj < j.y_size(); ++yj) {
      for (std::size_t zk = 0; zk < j.z_size(); ++zk) {
        if ((given_is_y ? yj : zk) == given_index) p_given += j.mass(xi, yj, zk);
      }
    }
  }
  if (p_given == 0.0) {
    fail(Errc::ZeroConditioningEvent, "conditioning event has zero mass");
  }
  const std::size_t other_n = given_is_y ? j.z_size() : j.y_size();
  const auto& other_labels = given_is_y ? j.z_labels() : j.y_labels();
  check_block_budget(j.x_size() * other_n);
  std::vector<Block> blocks;
  for (std::size_t o = 0; o < other_n; ++o) {
    for (std::size_t xi = 0; xi < j.x_size(); ++xi) {
      const double m = given_is_y ? j.mass(xi, given_index, o)
                                  : j.mass(xi, o, given_index);
      Fill fill = Fill::Retained;
      if (hatch_second && o != second_index) {
        fill = xi == txi ? Fill::MisinformativeExcluded : Fill::InformativeExcluded;
      }
      blocks.push_back({j.x_labels()[xi] + "," + other_labels[o], m / p_given, fill});
    }
  }
  return blocks;
}

std::vector<Block> final_posterior_blocks(const Joint3<double>& j, std::size_t syj,
                                          std::size_t szk) {
  double p_yz = 0.0;
  for (std::size_t xi = 0; xi < j.x_size(); ++xi) p_yz += j.mass(xi, syj, szk);
  if (p_yz == 0.0) {
    fail(Errc::ZeroConditioningEvent, "joint conditioning event has zero mass");
  }
  check_block_budget(j.x_size());
  std::vector<Block> blocks;
  for (std::size_t xi = 0; xi < j.x_size(); ++xi) {
    blocks.push_back({j.x_labels()[xi], j.mass(xi, syj, szk) / p_yz, Fill::Retained});
  }
  return blocks;
}

}  // namespace

std::vector<int> block_rows_largest_remainder(const std::vector<double>& masses,
                                              int total_rows) {
  if (total_rows < 0) fail(Errc::InvalidArgument, "negative row budget");
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  std::vector<int> rows(masses.size(), 0);
  if (total <= 0.0) return rows;

  std::vector<double> fractions(masses.size(), 0.0);
  int assigned = 0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double quota = masses[i] / total * total_rows;
    rows[i] = static_cast<int>(std::floor(quota));
    fractions[i] = quota - rows[i];
    assigned += rows[i];
  }
  std::vector<std::size_t> order(masses.size());
  std::iota(order.begin(), order.end(), 0);
  // largest remainder first; ties break toward the earlier block
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fractions[a] > fractions[b];
  });
  for (std::size_t k = 0; assigned < total_rows && k < order.size(); ++k) {
    if (masses[order[k]] <= 0.0) continue;
    ++rows[order[k]];
    ++assigned;
  }
  return rows;
}

std::string render_ascii(const DiagramSpec& spec) {
  if (spec.unit_height < 1) fail(Errc::InvalidArgument, "unit_height must be >= 1");
  const int total_rows = spec.unit_height * 8;
  const auto panels = build_panels(spec);

  std::vector<std::vector<std::string>> columns;
  std::size_t line_count = 0;
  std::vector<std::size_t> widths;
  for (const auto& panel : panels) {
    columns.push_back(render_panel_ascii(panel, total_rows));
    line_count = std::max(line_count, columns.back().size());
    std::size_t w = 0;
    for (const auto& line : columns.back()) w = std::max(w, line.size());
    widths.push_back(w);
  }

  std::string out;
  for (std::size_t r = 0; r < line_count; ++r) {
    std::string line;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::string cell = r < columns[c].size() ? columns[c][r] : std::string();
      cell.resize(widths[c], ' ');
      if (c > 0) line += "   ";
      line += cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

std::string render_svg(const DiagramSpec& spec) {
  return render_panels_svg(build_panels(spec), spec.width_px, spec.height_px);
}

std::string render_chain(const Joint3<double>& joint, std::string_view target_x,
                         std::string_view source_y, std::string_view source_z,
                         ChainOrdering ordering, int width_px, int height_px) {
  const std::size_t txi = joint.x_index(target_x);
  const std::size_t syj = joint.y_index(source_y);
  const std::size_t szk = joint.z_index(source_z);
  const std::string y(source_y), z(source_z);

  std::vector<PanelModel> panels;
  switch (ordering) {
    case ChainOrdering::OneShot:
      panels.push_back({"joint", joint3_blocks(joint, txi, syj, szk, false, false, false)});
      panels.push_back({"exclude " + y + "," + z,
                        joint3_blocks(joint, txi, syj, szk, true, true, true)});
      panels.push_back({"given " + y + "," + z, final_posterior_blocks(joint, syj, szk)});
      break;
    case ChainOrdering::YThenZ:
      panels.push_back({"joint", joint3_blocks(joint, txi, syj, szk, false, false, false)});
      panels.push_back({"exclude " + y,
                        joint3_blocks(joint, txi, syj, szk, true, true, false)});
      panels.push_back({"given " + y,
                        conditional_blocks(joint, txi, true, syj, false, szk)});
      panels.push_back({"exclude " + z,
                        conditional_blocks(joint, txi, true, syj, true, szk)});
      panels.push_back({"given " + y + "," + z, final_posterior_blocks(joint, syj, szk)});
      break;
    case ChainOrdering::ZThenY:
      panels.push_back({"joint", joint3_blocks(joint, txi, syj, szk, false, false, false)});
      panels.push_back({"exclude " + z,
                        joint3_blocks(joint, txi, syj, szk, true, false, true)});
      panels.push_back({"given " + z,
                        conditional_blocks(joint, txi, false, szk, false, syj)});
      panels.push_back({"exclude " + y,
                        conditional_blocks(joint, txi, false, szk, true, syj)});
      panels.push_back({"given " + y + "," + z, final_posterior_blocks(joint, syj, szk)});
      break;
  }
  return render_panels_svg(panels, width_px, height_px);
}

}  // namespace specamb
