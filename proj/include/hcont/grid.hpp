#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

#include "error.hpp"

namespace hcont {

/// Interval samples at the interior nodes of an n-D box, row major (last axis fastest).
/// Along an axis with n nodes the spacing is (hi - lo) / (n + 1).
class GridIntervalFunction {
 public:
  GridIntervalFunction(std::vector<double> lo, std::vector<double> hi, std::vector<std::size_t> shape)
      : lo_(std::move(lo)), hi_(std::move(hi)), shape_(std::move(shape)) {
    if (lo_.size() != shape_.size() || hi_.size() != shape_.size() || shape_.empty())
      fail(ErrorCode::MalformedSegment, "grid box and shape disagree in dimension");
    std::size_t total = 1;
    for (std::size_t k = 0; k < shape_.size(); ++k) {
      if (shape_[k] == 0 || !(lo_[k] < hi_[k])) fail(ErrorCode::InvalidInterval, "empty grid axis");
      total *= shape_[k];
    }
    lower_.assign(total, 0.0);
    upper_.assign(total, 0.0);
  }

  std::size_t dimension() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return lower_.size(); }
  double spacing(std::size_t axis) const { return (hi_[axis] - lo_[axis]) / static_cast<double>(shape_[axis] + 1); }
  double coordinate(std::size_t axis, std::size_t i) const {
    return lo_[axis] + static_cast<double>(i + 1) * spacing(axis);
  }
  const std::vector<double>& box_lo() const { return lo_; }
  const std::vector<double>& box_hi() const { return hi_; }

  std::vector<double>& lower() { return lower_; }
  std::vector<double>& upper() { return upper_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

  /// Checks lower <= upper at every node.
  bool is_valid() const {
    for (std::size_t i = 0; i < lower_.size(); ++i)
      if (!(lower_[i] <= upper_[i])) return false;
    return true;
  }

  /// Multi-index of a flat node position.
  std::vector<std::size_t> index_of(std::size_t flat) const {
    std::vector<std::size_t> idx(shape_.size());
    for (std::size_t k = shape_.size(); k-- > 0;) {
      idx[k] = flat % shape_[k];
      flat /= shape_[k];
    }
    return idx;
  }

  friend bool operator==(const GridIntervalFunction&, const GridIntervalFunction&) = default;

 private:
  std::vector<double> lo_, hi_;
  std::vector<std::size_t> shape_;
  std::vector<double> lower_, upper_;
};

namespace detail {

/// Sliding min (or max) of radius r along one axis, applied line by line. Lines are
/// independent, so splitting them over threads gives the same bits as a serial pass.
inline void filter_axis(std::vector<double>& data, const std::vector<std::size_t>& shape, std::size_t axis,
                        std::size_t radius, bool take_min, unsigned threads) {
  std::size_t n = shape[axis];
  std::size_t stride = 1;
  for (std::size_t k = axis + 1; k < shape.size(); ++k) stride *= shape[k];
  std::size_t lines = data.size() / n;
  const std::vector<double> src = data;

  auto run = [&](std::size_t first, std::size_t last) {
    for (std::size_t line = first; line < last; ++line) {
      std::size_t outer = line / stride, inner = line % stride;
      std::size_t base = outer * n * stride + inner;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i >= radius ? i - radius : 0;
        std::size_t hi = std::min(n - 1, i + radius);
        double v = src[base + lo * stride];
        for (std::size_t j = lo + 1; j <= hi; ++j) {
          double w = src[base + j * stride];
          v = take_min ? std::min(v, w) : std::max(v, w);
        }
        data[base + i * stride] = v;
      }
    }
  };

  if (threads <= 1 || lines < 2) {
    run(0, lines);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (lines + threads - 1) / threads;
  for (std::size_t start = 0; start < lines; start += chunk) pool.emplace_back(run, start, std::min(lines, start + chunk));
  for (auto& t : pool) t.join();
}

inline std::vector<double> box_filter(std::vector<double> data, const std::vector<std::size_t>& shape, std::size_t radius,
                                      bool take_min, unsigned threads) {
  for (std::size_t axis = 0; axis < shape.size(); ++axis) filter_axis(data, shape, axis, radius, take_min, threads);
  return data;
}

inline void require_radius(std::size_t radius) {
  if (radius < 1) fail(ErrorCode::OutOfDomain, "grid radius must be at least 1");
}

}  // namespace detail

/// Erosion of the lower samples over the closed L-infinity ball of `radius` nodes.
inline GridIntervalFunction lower_baire_grid(const GridIntervalFunction& f, std::size_t radius, unsigned threads = 1) {
  detail::require_radius(radius);
  GridIntervalFunction g = f;
  g.lower() = detail::box_filter(f.lower(), f.shape(), radius, true, threads);
  g.upper() = g.lower();
  return g;
}

/// Dilation of the upper samples.
inline GridIntervalFunction upper_baire_grid(const GridIntervalFunction& f, std::size_t radius, unsigned threads = 1) {
  detail::require_radius(radius);
  GridIntervalFunction g = f;
  g.upper() = detail::box_filter(f.upper(), f.shape(), radius, false, threads);
  g.lower() = g.upper();
  return g;
}

inline GridIntervalFunction graph_completion_grid(const GridIntervalFunction& f, std::size_t radius, unsigned threads = 1) {
  detail::require_radius(radius);
  GridIntervalFunction g = f;
  g.lower() = detail::box_filter(f.lower(), f.shape(), radius, true, threads);
  g.upper() = detail::box_filter(f.upper(), f.shape(), radius, false, threads);
  return g;
}

}  // namespace hcont
