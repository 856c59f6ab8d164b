#include "wsl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wsl {

namespace {
// Escape the characters with meaning in CSV and XML text nodes.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};
}  // namespace

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void Csv::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size())
    throw std::invalid_argument("csv: row width does not match the header");
  rows.push_back(std::move(cells));
}

std::string Csv::to_string() const {
  std::ostringstream out;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(columns[i]);
  }
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

void Csv::write(const std::string& path) const {
  write_text_atomic(path, to_string());
}

void SvgPlot::add_series(const std::string& name,
                         const std::vector<double>& xs,
                         const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("plot: series length mismatch");
  series_.push_back({name, xs, ys});
}

void SvgPlot::add_fit(const std::string& name, double slope,
                      double intercept) {
  fits_.push_back({name, slope, intercept});
}

void SvgPlot::add_polygon(const std::string& name,
                          const std::vector<double>& xs,
                          const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("plot: polygon length mismatch");
  polygons_.push_back({name, xs, ys});
}

std::string SvgPlot::to_string() const {
  const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
  auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool any = false;
  auto absorb = [&](const std::vector<Series>& list) {
    for (const auto& s : list)
      for (size_t i = 0; i < s.xs.size(); ++i) {
        if ((log_x && s.xs[i] <= 0) || (log_y && s.ys[i] <= 0)) continue;
        double x = tx(s.xs[i]), y = ty(s.ys[i]);
        if (!any) {
          xmin = xmax = x;
          ymin = ymax = y;
          any = true;
        } else {
          xmin = std::min(xmin, x);
          xmax = std::max(xmax, x);
          ymin = std::min(ymin, y);
          ymax = std::max(ymax, y);
        }
      }
  };
  absorb(series_);
  absorb(polygons_);
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;
  auto px = [&](double v) {
    return ml + (tx(v) - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  auto py = [&](double v) {
    return H - mb - (ty(v) - ymin) / (ymax - ymin) * (H - mt - mb);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-size=\"16\">" << xml_escape(title) << "</text>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(x_label)
      << (log_x ? " (log10)" : "") << "</text>\n";
  out << "<text x=\"16\" y=\"" << H / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 "
         "16 "
      << H / 2 << ")\">" << xml_escape(y_label) << (log_y ? " (log10)" : "")
      << "</text>\n";
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
      << "\" height=\"" << H - mt - mb
      << "\" fill=\"none\" stroke=\"#888\"/>\n";

  int color = 0;
  for (const auto& p : polygons_) {
    out << "<polygon fill=\"" << kPalette[color % 6]
        << "\" fill-opacity=\"0.15\" stroke=\"" << kPalette[color % 6]
        << "\" points=\"";
    for (size_t i = 0; i < p.xs.size(); ++i) {
      if (i) out << ' ';
      out << fmt_num(px(p.xs[i])) << ',' << fmt_num(py(p.ys[i]));
    }
    out << "\"><title>" << xml_escape(p.name) << "</title></polygon>\n";
    ++color;
  }
  for (const auto& s : series_) {
    const char* c = kPalette[color % 6];
    out << "<polyline fill=\"none\" stroke=\"" << c << "\" points=\"";
    bool first = true;
    for (size_t i = 0; i < s.xs.size(); ++i) {
      if ((log_x && s.xs[i] <= 0) || (log_y && s.ys[i] <= 0)) continue;
      if (!first) out << ' ';
      out << fmt_num(px(s.xs[i])) << ',' << fmt_num(py(s.ys[i]));
      first = false;
    }
    out << "\"><title>" << xml_escape(s.name) << "</title></polyline>\n";
    for (size_t i = 0; i < s.xs.size(); ++i) {
      if ((log_x && s.xs[i] <= 0) || (log_y && s.ys[i] <= 0)) continue;
      out << "<circle cx=\"" << fmt_num(px(s.xs[i])) << "\" cy=\""
          << fmt_num(py(s.ys[i])) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
    }
    ++color;
  }
  // Fits live in plot coordinates: y = intercept + slope * x across the view.
  for (const auto& f : fits_) {
    const char* c = kPalette[color % 6];
    double y0 = f.intercept + f.slope * xmin;
    double y1 = f.intercept + f.slope * xmax;
    auto sx = [&](double v) {
      return ml + (v - xmin) / (xmax - xmin) * (W - ml - mr);
    };
    auto sy = [&](double v) {
      return H - mb - (v - ymin) / (ymax - ymin) * (H - mt - mb);
    };
    out << "<line x1=\"" << fmt_num(sx(xmin)) << "\" y1=\"" << fmt_num(sy(y0))
        << "\" x2=\"" << fmt_num(sx(xmax)) << "\" y2=\"" << fmt_num(sy(y1))
        << "\" stroke=\"" << c << "\" stroke-dasharray=\"6 3\"><title>"
        << xml_escape(f.name) << "</title></line>\n";
    ++color;
  }
  out << "</svg>\n";
  return out.str();
}

void SvgPlot::write(const std::string& path) const {
  write_text_atomic(path, to_string());
}

void write_text_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("atomic rename failed: " + path);
  }
}

}  // namespace wsl
