#include "spectra/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

std::string points_csv(const PointCloud& pts) {
  std::string out = "re,im\n";
  for (const auto& z : pts) out += csv_line({format_double(z.real()), format_double(z.imag())});
  return out;
}

nlohmann::json points_json(const PointCloud& pts) {
  auto arr = nlohmann::json::array();
  for (const auto& z : pts) arr.push_back({z.real(), z.imag()});
  return arr;
}

nlohmann::json report_json(const rootsolve::RootFindReport& r) {
  return {{"roots", points_json(r.roots)},
          {"residuals", r.residuals},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::string scatter_svg(const PointCloud& points, const Axis& axis) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "scatter needs at least one point");
  double lo_x = points[0].real(), hi_x = lo_x, lo_y = points[0].imag(), hi_y = lo_y;
  for (const auto& z : points) {
    lo_x = std::min(lo_x, z.real());
    hi_x = std::max(hi_x, z.real());
    lo_y = std::min(lo_y, z.imag());
    hi_y = std::max(hi_y, z.imag());
  }
  const double mx = std::max(hi_x - lo_x, 1e-12) * 0.05;
  const double my = std::max(hi_y - lo_y, 1e-12) * 0.05;
  const double x0 = axis.xmin.value_or(lo_x - mx);
  const double x1 = axis.xmax.value_or(hi_x + mx);
  const double y0 = axis.ymin.value_or(lo_y - my);
  const double y1 = axis.ymax.value_or(hi_y + my);
  if (!(x1 > x0) || !(y1 > y0)) fail(ErrorCode::InvalidArgument, "empty axis range");

  constexpr double kSize = 600.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
        "viewBox=\"0 0 600 600\">\n";
  os << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  for (const auto& z : points) {
    const double px = (z.real() - x0) / (x1 - x0) * kSize;
    const double py = (y1 - z.imag()) / (y1 - y0) * kSize;
    char buf[96];
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2\" fill=\"black\"/>\n", px, py);
    os << buf;
  }
  os << "</svg>\n";
  return os.str();
}

void emit_scatter_svg(const PointCloud& points, const std::string& path, const Axis& axis) {
  write_text(path, scatter_svg(points, axis));
}

}  // namespace spectra::io
