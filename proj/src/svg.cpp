#include "htprox/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace htprox {
namespace {

constexpr double kW = 720.0;
constexpr double kH = 480.0;
constexpr double kMargin = 60.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

std::string render_svg_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel,
                            const std::vector<SvgSeries>& series, bool logx,
                            bool logy) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  auto tx = [logx](double v) { return logx ? std::log10(v) : v; };
  auto ty = [logy](double v) { return logy ? std::log10(v) : v; };
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if ((logx && x <= 0.0) || (logy && y <= 0.0)) continue;
      xmin = std::min(xmin, tx(x));
      xmax = std::max(xmax, tx(x));
      ymin = std::min(ymin, ty(y));
      ymax = std::max(ymax, ty(y));
    }
  }
  if (!(xmax > xmin)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymax > ymin)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pw = kW - 2.0 * kMargin;
  const double ph = kH - 2.0 * kMargin;
  auto px = [&](double v) { return kMargin + (tx(v) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double v) { return kH - kMargin - (ty(v) - ymin) / (ymax - ymin) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double gx = kMargin + pw * i / 4.0;
    const double gy = kH - kMargin - ph * i / 4.0;
    const double vx = logx ? std::pow(10.0, fx) : fx;
    const double vy = logy ? std::pow(10.0, fy) : fy;
    out << "<line x1=\"" << fmt(gx) << "\" y1=\"" << kH - kMargin
        << "\" x2=\"" << fmt(gx) << "\" y2=\"" << kH - kMargin + 5
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(gx) << "\" y=\"" << kH - kMargin + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt_tick(vx) << "</text>\n";
    out << "<line x1=\"" << kMargin - 5 << "\" y1=\"" << fmt(gy) << "\" x2=\""
        << kMargin << "\" y2=\"" << fmt(gy) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMargin - 8 << "\" y=\"" << fmt(gy + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt_tick(vy) << "</text>\n";
  }
  out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << xlabel << "</text>\n";
  out << "<text x=\"18\" y=\"" << kH / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << kH / 2 << ")\">" << ylabel << "</text>\n";

  double ly = kMargin + 16.0;
  for (const auto& s : series) {
    std::ostringstream path;
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if ((logx && x <= 0.0) || (logy && y <= 0.0)) continue;
      path << (first ? "M" : "L") << fmt(px(x)) << " " << fmt(py(y)) << " ";
      first = false;
    }
    out << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\""
        << s.color << "\" stroke-width=\"1.5\"/>\n";
    out << "<line x1=\"" << kW - kMargin - 150 << "\" y1=\"" << fmt(ly)
        << "\" x2=\"" << kW - kMargin - 126 << "\" y2=\"" << fmt(ly)
        << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kW - kMargin - 120 << "\" y=\"" << fmt(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name
        << "</text>\n";
    ly += 16.0;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace htprox
