#pragma once

// Minimal static SVG line plots.

#include <string>
#include <vector>

namespace cgkit::svg {

struct Series {
  std::string name;
  std::vector<double> x, y;  ///< non-finite points are skipped
};

/// Deterministic output: coordinates are printed with fixed precision.
std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series);

}  // namespace cgkit::svg
