#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zopt {

struct PlotCurve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

/// Log-log line chart. Points with x <= 0 or y <= 0 (or non-finite) are
/// dropped. Presentation only.
void write_loglog_svg(std::ostream& out, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<PlotCurve>& curves);

}  // namespace zopt
