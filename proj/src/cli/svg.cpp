#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sshd::cli {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 160, kTop = 40, kBottom = 60;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

// Blue to yellow ramp on [0, 1].
std::string color(double u) {
  u = std::clamp(u, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 * std::pow(u, 0.8)));
  const int g = static_cast<int>(std::lround(40 + 200 * u));
  const int b = static_cast<int>(std::lround(120 * (1.0 - u) + 30));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

void header(std::ostringstream &s, const std::string &title) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(title) << "</text>\n";
}

} // namespace

std::string heatmap_svg(const Eigen::MatrixXd &values, const std::vector<double> &rowCoords,
                        long firstCol, const std::string &title) {
  std::ostringstream s;
  header(s, title);
  const long R = values.rows(), C = values.cols();
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const double vmax = R * C > 0 ? values.maxCoeff() : 0.0;
  if (R > 0 && C > 0) {
    const double cw = pw / static_cast<double>(C), rh = ph / static_cast<double>(R);
    for (long i = 0; i < R; ++i)
      for (long j = 0; j < C; ++j) {
        const double u = vmax > 0 ? std::sqrt(values(i, j) / vmax) : 0.0;
        s << "<rect x=\"" << num(kLeft + j * cw) << "\" y=\"" << num(kTop + (R - 1 - i) * rh)
          << "\" width=\"" << num(cw + 0.05) << "\" height=\"" << num(rh + 0.05) << "\" fill=\""
          << color(u) << "\"/>\n";
      }
    s << "<text x=\"" << kLeft << "\" y=\"" << kHeight - kBottom + 16 << "\">n = " << firstCol
      << "</text>\n"
      << "<text x=\"" << kWidth - kRight << "\" y=\"" << kHeight - kBottom + 16
      << "\" text-anchor=\"end\">n = " << firstCol + C - 1 << "</text>\n"
      << "<text x=\"" << kLeft - 6 << "\" y=\"" << kHeight - kBottom
      << "\" text-anchor=\"end\">t = " << label(rowCoords.front()) << "</text>\n"
      << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\">t = "
      << label(rowCoords.back()) << "</text>\n";
  }
  const double lx = kWidth - kRight + 30;
  for (int k = 0; k <= 20; ++k) {
    const double u = k / 20.0;
    s << "<rect x=\"" << lx << "\" y=\"" << num(kTop + (1.0 - u) * ph * 0.95) << "\" width=\"20\" height=\""
      << num(ph * 0.05 + 0.5) << "\" fill=\"" << color(u) << "\"/>\n";
  }
  s << "<text x=\"" << lx + 26 << "\" y=\"" << kTop + 10 << "\">" << label(vmax) << "</text>\n"
    << "<text x=\"" << lx + 26 << "\" y=\"" << kTop + ph << "\">0</text>\n"
    << "<text x=\"" << lx << "\" y=\"" << kTop + ph + 20 << "\">|psi_n(t)| (sqrt scale)</text>\n"
    << "</svg>\n";
  return s.str();
}

std::string loglog_svg(const std::vector<Series> &series, const std::string &title,
                       const std::string &xLabel, const std::string &yLabel) {
  std::ostringstream s;
  header(s, title);
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto &sr : series)
    for (std::size_t i = 0; i < sr.x.size() && i < sr.y.size(); ++i)
      if (sr.x[i] > 0 && sr.y[i] > 0) {
        x0 = std::min(x0, std::log10(sr.x[i]));
        x1 = std::max(x1, std::log10(sr.x[i]));
        y0 = std::min(y0, std::log10(sr.y[i]));
        y1 = std::max(y1, std::log10(sr.y[i]));
      }
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n"
    << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
    << escape(xLabel) << "</text>\n"
    << "<text x=\"20\" y=\"" << kTop + ph / 2 << "\" transform=\"rotate(-90 20 " << kTop + ph / 2
    << ")\" text-anchor=\"middle\">" << escape(yLabel) << "</text>\n";
  if (!(x1 >= x0)) {
    s << "</svg>\n";
    return s.str();
  }
  if (x1 - x0 < 1e-12) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 < 1e-12) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double lx) { return kLeft + (lx - x0) / (x1 - x0) * pw; };
  auto py = [&](double ly) { return kTop + (y1 - ly) / (y1 - y0) * ph; };
  for (int d = static_cast<int>(std::ceil(x0)); d <= static_cast<int>(std::floor(x1)); ++d)
    s << "<line x1=\"" << num(px(d)) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(px(d))
      << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/><text x=\"" << num(px(d)) << "\" y=\""
      << kTop + ph + 20 << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  for (int d = static_cast<int>(std::ceil(y0)); d <= static_cast<int>(std::floor(y1)); ++d)
    s << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py(d)) << "\" x2=\"" << kLeft << "\" y2=\""
      << num(py(d)) << "\" stroke=\"black\"/><text x=\"" << kLeft - 8 << "\" y=\"" << num(py(d) + 4)
      << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto &sr = series[k];
    const char *col = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
    std::ostringstream path;
    bool started = false;
    for (std::size_t i = 0; i < sr.x.size() && i < sr.y.size(); ++i) {
      if (!(sr.x[i] > 0 && sr.y[i] > 0))
        continue;
      path << (started ? " L" : "M") << num(px(std::log10(sr.x[i]))) << " "
           << num(py(std::log10(sr.y[i])));
      started = true;
    }
    if (started)
      s << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << col
        << "\" stroke-width=\"1.5\"" << (sr.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    const double ly = kTop + 10 + 18 * static_cast<double>(k);
    s << "<line x1=\"" << kWidth - kRight + 10 << "\" y1=\"" << ly << "\" x2=\""
      << kWidth - kRight + 34 << "\" y2=\"" << ly << "\" stroke=\"" << col << "\" stroke-width=\"1.5\""
      << (sr.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/><text x=\"" << kWidth - kRight + 40
      << "\" y=\"" << ly + 4 << "\">" << escape(sr.label) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

} // namespace sshd::cli
