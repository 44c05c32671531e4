#ifndef SPECTRA_IO_HPP
#define SPECTRA_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectra/pointcloud.hpp"
#include "spectra/rootsolve.hpp"

namespace spectra::io {

// printf %.17g; round-trips every double. NaN prints as "nan".
std::string format_double(double x);

std::string csv_line(const std::vector<std::string>& cells);

// Rows "re,im" in canonical order, with a header line.
std::string points_csv(const PointCloud& pts);

nlohmann::json points_json(const PointCloud& pts);
nlohmann::json report_json(const rootsolve::RootFindReport& r);

void write_text(const std::string& path, const std::string& text);

// Missing bounds are filled from the data with a 5% margin.
struct Axis {
  std::optional<double> xmin, xmax, ymin, ymax;
};

std::string scatter_svg(const PointCloud& points, const Axis& axis = {});
void emit_scatter_svg(const PointCloud& points, const std::string& path, const Axis& axis = {});

}  // namespace spectra::io

#endif
