// SPDX-License-Identifier: Apache-2.0

#include "doorcsi/dsp.hpp"

#include <cmath>
#include <string>

namespace doorcsi {

namespace {

// Direct windowed sum, O(n * window). A running sum would drift over long
// traces.
template <typename T>
std::vector<T> trailing_mean(std::span<const T> series, std::size_t window) {
  if (window == 0) throw InvalidArgument("moving average window must be >= 1");
  if (series.empty()) throw InvalidArgument("moving average input is empty");
  std::vector<T> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::size_t lo = i + 1 >= window ? i + 1 - window : 0;
    T acc{};
    for (std::size_t j = lo; j <= i; ++j) acc += series[j];
    out[i] = acc / static_cast<double>(i - lo + 1);
  }
  return out;
}

}  // namespace

std::vector<Complex> moving_average(std::span<const Complex> series, std::size_t window) {
  return trailing_mean(series, window);
}

std::vector<double> moving_average(std::span<const double> series, std::size_t window) {
  return trailing_mean(series, window);
}

CsiTrace moving_average(const CsiTrace& trace, std::size_t window) {
  CsiTrace out = trace;
  for (std::size_t a = 0; a < trace.geometry.num_antennas(); ++a) {
    const auto filtered = moving_average(std::span<const Complex>(trace.antenna_series(a)), window);
    for (std::size_t i = 0; i < filtered.size(); ++i) out.frames[i].samples[a] = filtered[i];
  }
  return out;
}

RatioSeries csi_ratio(const CsiTrace& trace, AntennaPair pair, double epsilon) {
  const std::size_t n_ant = trace.geometry.num_antennas();
  if (pair.first >= n_ant || pair.second >= n_ant) {
    throw InvalidArgument("antenna pair (" + std::to_string(pair.first) + ", " +
                          std::to_string(pair.second) + ") out of range for " +
                          std::to_string(n_ant) + " antennas");
  }
  RatioSeries out;
  out.sample_rate_hz = trace.sample_rate_hz;
  out.antenna_pair = pair;
  out.values.reserve(trace.frames.size());
  for (std::size_t i = 0; i < trace.frames.size(); ++i) {
    const Complex num = trace.frames[i].samples[pair.first];
    const Complex den = trace.frames[i].samples[pair.second];
    if (std::abs(den) < epsilon) {
      throw DegenerateDenominator(i, "CSI ratio denominator vanishes at frame " + std::to_string(i));
    }
    out.values.push_back(num / den);
  }
  return out;
}

std::vector<Segment> segment_activity(std::span<const double> agc_series, double sample_rate_hz,
                                      const SegmentParams& params) {
  if (!(sample_rate_hz > 0.0)) throw InvalidArgument("sample rate must be positive");
  if (params.baseline_frames == 0) throw InvalidArgument("baseline_frames must be >= 1");
  if (agc_series.size() <= params.baseline_frames) {
    throw InsufficientBaseline("AGC series has " + std::to_string(agc_series.size()) +
                               " frames, baseline needs more than " +
                               std::to_string(params.baseline_frames));
  }

  // Two-pass mean/deviation over the baseline; subtracting the mean first
  // keeps the statistics exactly shift-invariant up to rounding.
  const std::size_t nb = params.baseline_frames;
  double mean = 0.0;
  for (std::size_t i = 0; i < nb; ++i) mean += agc_series[i];
  mean /= static_cast<double>(nb);
  double var = 0.0;
  for (std::size_t i = 0; i < nb; ++i) var += (agc_series[i] - mean) * (agc_series[i] - mean);
  const double sigma = std::sqrt(var / static_cast<double>(nb));
  const double threshold = params.k_sigma * sigma + params.floor;

  std::vector<Segment> runs;
  bool in_run = false;
  for (std::size_t i = 0; i < agc_series.size(); ++i) {
    const bool active = std::abs(agc_series[i] - mean) > threshold;
    if (active && !in_run) {
      runs.push_back({i, i});
      in_run = true;
    } else if (active) {
      runs.back().end_idx = i;
    } else {
      in_run = false;
    }
  }

  std::vector<Segment> merged;
  for (const auto& r : runs) {
    if (!merged.empty() && r.start_idx - merged.back().end_idx - 1 <= params.merge_gap_frames) {
      merged.back().end_idx = r.end_idx;
    } else {
      merged.push_back(r);
    }
  }

  std::vector<Segment> out;
  for (const auto& s : merged) {
    if (s.length() >= params.min_segment_frames && s.end_idx > s.start_idx) out.push_back(s);
  }
  return out;
}

std::vector<Segment> pad_segments(std::span<const Segment> segments, std::size_t pad,
                                  std::size_t n) {
  std::vector<Segment> out;
  if (n == 0) return out;
  for (const auto& s : segments) {
    Segment p{s.start_idx >= pad ? s.start_idx - pad : 0, std::min(n - 1, s.end_idx + pad)};
    if (!out.empty() && p.start_idx <= out.back().end_idx + 1) {
      out.back().end_idx = std::max(out.back().end_idx, p.end_idx);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace doorcsi
