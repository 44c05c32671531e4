#ifndef SPECTRA_POINTCLOUD_HPP
#define SPECTRA_POINTCLOUD_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace spectra {

using cplx = std::complex<double>;

// Lexicographic order on (real, imag). Used for every serialized point set.
bool canonical_less(const cplx& a, const cplx& b) noexcept;

void canonical_sort(std::vector<cplx>& pts);

// Finite multiset of complex points held in canonical order.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::vector<cplx> pts);
  PointCloud(std::initializer_list<cplx> pts);

  std::size_t size() const noexcept { return pts_.size(); }
  bool empty() const noexcept { return pts_.empty(); }
  std::span<const cplx> points() const noexcept { return pts_; }
  const cplx& operator[](std::size_t i) const noexcept { return pts_[i]; }
  auto begin() const noexcept { return pts_.begin(); }
  auto end() const noexcept { return pts_.end(); }

  std::vector<double> real_parts() const;
  std::vector<double> moduli() const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::vector<cplx> pts_;
};

// Greedy-free multiset comparison: true when the two sets can be paired with
// every pair within tol. Sizes must agree. Intended for small test sets
// (uses an augmenting-path bipartite matching, O(n^3)).
bool multiset_close(std::span<const cplx> a, std::span<const cplx> b, double tol);

}  // namespace spectra

#endif
