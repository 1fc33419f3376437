#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sshd::cli {

struct Series {
  std::string label;
  std::vector<double> x, y;
  bool dashed = false;
};

// Heatmap of values(row, col); rows run along the vertical axis.
std::string heatmap_svg(const Eigen::MatrixXd &values, const std::vector<double> &rowCoords,
                        long firstCol, const std::string &title);

// Log-log line plot; nonpositive samples are skipped.
std::string loglog_svg(const std::vector<Series> &series, const std::string &title,
                       const std::string &xLabel, const std::string &yLabel);

} // namespace sshd::cli
