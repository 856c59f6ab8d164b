#pragma once

#include <string>
#include <vector>

namespace wsl {

// Deterministic CSV: numbers formatted with %.12g, rows written in insertion
// order, '\n' line endings.
struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
  std::string to_string() const;
  void write(const std::string& path) const;  // atomic rename
};

std::string fmt_num(double v);

// Minimal hand-rolled SVG plot with optional log scales and fitted-line
// overlays.
struct SvgPlot {
  std::string title, x_label, y_label;
  bool log_x = true, log_y = true;

  void add_series(const std::string& name, const std::vector<double>& xs,
                  const std::vector<double>& ys);
  // y = intercept + slope * x in plot (possibly log) coordinates.
  void add_fit(const std::string& name, double slope, double intercept);
  // Closed polygon in data coordinates (used with linear axes).
  void add_polygon(const std::string& name, const std::vector<double>& xs,
                   const std::vector<double>& ys);
  std::string to_string() const;
  void write(const std::string& path) const;

 private:
  struct Series {
    std::string name;
    std::vector<double> xs, ys;
  };
  struct Fit {
    std::string name;
    double slope, intercept;
  };
  std::vector<Series> series_;
  std::vector<Fit> fits_;
  std::vector<Series> polygons_;
};

void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace wsl
