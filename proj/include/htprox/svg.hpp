#pragma once

#include <string>
#include <utility>
#include <vector>

namespace htprox {

struct SvgSeries {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

// minimal self-contained line plot; log-scaled axes drop nonpositive points
std::string render_svg_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel,
                            const std::vector<SvgSeries>& series, bool logx,
                            bool logy);

}  // namespace htprox
