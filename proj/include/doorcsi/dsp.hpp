// SPDX-License-Identifier: Apache-2.0
//
// Preprocessing: trailing moving average, antenna-ratio phase cleanup and
// AGC-threshold activity segmentation.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "doorcsi/core.hpp"

namespace doorcsi {

inline constexpr std::size_t kDefaultMovingAverageWindow = 50;
inline constexpr double kDefaultDenominatorEpsilon = 1e-9;

/// Causal moving average: out[i] = mean(in[max(0, i - window + 1) .. i]).
std::vector<Complex> moving_average(std::span<const Complex> series, std::size_t window);
std::vector<double> moving_average(std::span<const double> series, std::size_t window);

/// Returns a copy of the trace with every antenna stream filtered.
CsiTrace moving_average(const CsiTrace& trace, std::size_t window);

using AntennaPair = std::pair<std::size_t, std::size_t>;  // zero-based

struct RatioSeries {
  double sample_rate_hz = 0.0;
  AntennaPair antenna_pair{0, 1};
  std::vector<Complex> values;
};

/// values[i] = samples_a[i] / samples_b[i]. Throws DegenerateDenominator when
/// |samples_b[i]| < epsilon.
RatioSeries csi_ratio(const CsiTrace& trace, AntennaPair pair,
                      double epsilon = kDefaultDenominatorEpsilon);

/// Inclusive frame range.
struct Segment {
  std::size_t start_idx = 0;
  std::size_t end_idx = 0;

  std::size_t length() const { return end_idx - start_idx + 1; }
  bool contains(std::size_t i) const { return i >= start_idx && i <= end_idx; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SegmentParams {
  std::size_t baseline_frames = 500;
  double k_sigma = 4.0;
  double floor = 0.5;
  std::size_t min_segment_frames = 300;
  std::size_t merge_gap_frames = 200;
};

/// Threshold segmentation of a gain-indicator stream against a quiet
/// baseline at its head. Returned segments are ordered, disjoint and at least
/// min_segment_frames long. Throws InsufficientBaseline if the series is not
/// longer than the baseline.
std::vector<Segment> segment_activity(std::span<const double> agc_series,
                                      double sample_rate_hz, const SegmentParams& params = {});

/// Widens each segment by pad frames on both sides (clipped to [0, n)) and
/// merges any that then overlap or touch.
std::vector<Segment> pad_segments(std::span<const Segment> segments, std::size_t pad,
                                  std::size_t n);

}  // namespace doorcsi
