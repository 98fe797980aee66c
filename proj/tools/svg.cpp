#include "svg.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace pbursts::tools {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 20.0;
constexpr double kMarginBottom = 50.0;

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    }
    const double span = hi - lo;
    const double margin = span > 0.0 ? 0.05 * span : 0.5;
    lo -= margin;
    hi += margin;
  }
};

}  // namespace

void write_scatter_svg(const std::filesystem::path& path,
                       const std::vector<ScoreVector>& frontier,
                       const std::vector<ScoreVector>& baseline,
                       const std::string& x_label, const std::string& y_label) {
  Extent ex;
  Extent ey;
  for (const auto* points : {&frontier, &baseline}) {
    for (const ScoreVector& p : *points) {
      if (p.size() != 2) throw std::invalid_argument("scatter requires two criteria");
      ex.include(p[0]);
      ey.include(p[1]);
    }
  }
  ex.pad();
  ey.pad();

  const auto sx = [&](double v) {
    return kMarginLeft + (v - ex.lo) / (ex.hi - ex.lo) * (kWidth - kMarginLeft - kMarginRight);
  };
  const auto sy = [&](double v) {
    return kHeight - kMarginBottom -
           (v - ey.lo) / (ey.hi - ey.lo) * (kHeight - kMarginTop - kMarginBottom);
  };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
      kWidth, kHeight);

  // Axes with four ticks per side.
  svg += fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n"
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{3}\" stroke=\"black\"/>\n",
      kMarginLeft, kHeight - kMarginBottom, kWidth - kMarginRight, kMarginTop);
  for (int i = 0; i <= 3; ++i) {
    const double fx = ex.lo + (ex.hi - ex.lo) * i / 3.0;
    const double fy = ey.lo + (ey.hi - ey.lo) * i / 3.0;
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"black\"/>\n"
        "<text x=\"{0:.2f}\" y=\"{3}\" font-size=\"11\" text-anchor=\"middle\">{4:.4g}</text>\n",
        sx(fx), kHeight - kMarginBottom, kHeight - kMarginBottom + 5,
        kHeight - kMarginBottom + 18, fx);
    svg += fmt::format(
        "<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n"
        "<text x=\"{3}\" y=\"{4:.2f}\" font-size=\"11\" text-anchor=\"end\">{5:.4g}</text>\n",
        kMarginLeft - 5, sy(fy), kMarginLeft, kMarginLeft - 8, sy(fy) + 4, fy);
  }
  svg += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
      (kMarginLeft + kWidth - kMarginRight) / 2, kHeight - 8, x_label);
  svg += fmt::format(
      "<text x=\"14\" y=\"{:.2f}\" font-size=\"13\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 14 {:.2f})\">{}</text>\n",
      (kMarginTop + kHeight - kMarginBottom) / 2, (kMarginTop + kHeight - kMarginBottom) / 2,
      y_label);

  for (const ScoreVector& p : baseline) {
    svg += fmt::format(
        "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"#9e9e9e\" fill-opacity=\"0.6\"/>\n",
        sx(p[0]), sy(p[1]));
  }

  std::vector<ScoreVector> line = frontier;
  std::sort(line.begin(), line.end());
  if (line.size() > 1) {
    std::string pts;
    for (const ScoreVector& p : line) pts += fmt::format("{:.2f},{:.2f} ", sx(p[0]), sy(p[1]));
    svg += fmt::format(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n", pts);
  }
  for (const ScoreVector& p : line) {
    svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3.5\" fill=\"#1f77b4\"/>\n",
                       sx(p[0]), sy(p[1]));
  }
  svg += "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << svg;
}

}  // namespace pbursts::tools
