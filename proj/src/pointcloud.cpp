#include "spectra/pointcloud.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace spectra {

bool canonical_less(const cplx& a, const cplx& b) noexcept {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void canonical_sort(std::vector<cplx>& pts) {
  std::sort(pts.begin(), pts.end(), canonical_less);
}

PointCloud::PointCloud(std::vector<cplx> pts) : pts_(std::move(pts)) {
  canonical_sort(pts_);
}

PointCloud::PointCloud(std::initializer_list<cplx> pts) : pts_(pts) {
  canonical_sort(pts_);
}

std::vector<double> PointCloud::real_parts() const {
  std::vector<double> out;
  out.reserve(pts_.size());
  for (const auto& z : pts_) out.push_back(z.real());
  return out;
}

std::vector<double> PointCloud::moduli() const {
  std::vector<double> out;
  out.reserve(pts_.size());
  for (const auto& z : pts_) out.push_back(std::abs(z));
  return out;
}

bool multiset_close(std::span<const cplx> a, std::span<const cplx> b, double tol) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  std::vector<int> match_b(n, -1);
  std::function<bool(std::size_t, std::vector<char>&)> augment =
      [&](std::size_t i, std::vector<char>& seen) {
        for (std::size_t j = 0; j < n; ++j) {
          if (seen[j] || std::abs(a[i] - b[j]) > tol) continue;
          seen[j] = 1;
          if (match_b[j] < 0 || augment(static_cast<std::size_t>(match_b[j]), seen)) {
            match_b[j] = static_cast<int>(i);
            return true;
          }
        }
        return false;
      };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> seen(n, 0);
    if (!augment(i, seen)) return false;
  }
  return true;
}

}  // namespace spectra
