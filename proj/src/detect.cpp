// SPDX-License-Identifier: Apache-2.0

#include "doorcsi/detect.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace doorcsi {

namespace {

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

// Peaks of `s` with their topographic prominence. Plateaus count once, at
// their first index. With endpoints_eligible, index 0 and n-1 may be peaks
// and are measured against their single side.
std::vector<Extremum> prominent_peaks(std::span<const double> s, bool endpoints_eligible,
                                      double threshold) {
  const std::size_t n = s.size();
  std::vector<Extremum> out;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && s[j + 1] == s[i]) ++j;  // plateau [i, j]
    const bool at_start = i == 0;
    const bool at_end = j == n - 1;
    const bool left_lower = !at_start && s[i - 1] < s[i];
    const bool right_lower = !at_end && s[j + 1] < s[i];
    bool is_peak = false;
    if (!at_start && !at_end) {
      is_peak = left_lower && right_lower;
    } else if (endpoints_eligible && !(at_start && at_end)) {
      is_peak = at_start ? right_lower : left_lower;
    }
    if (is_peak) {
      const double v = s[i];
      double left_min = v;
      bool has_left = false;
      for (std::size_t k = i; k-- > 0;) {
        if (s[k] > v) break;
        left_min = std::min(left_min, s[k]);
        has_left = true;
      }
      double right_min = v;
      bool has_right = false;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (s[k] > v) break;
        right_min = std::min(right_min, s[k]);
        has_right = true;
      }
      double base;
      if (has_left && has_right) {
        base = std::max(left_min, right_min);
      } else {
        base = has_left ? left_min : right_min;
      }
      const double prominence = v - base;
      if (prominence >= threshold) out.push_back({i, v, prominence});
    }
    i = j + 1;
  }
  return out;
}

}  // namespace

PhaseTrack phase_track(std::span<const Complex> ratio_segment, double gate_rel) {
  if (ratio_segment.size() < 3) {
    throw InsufficientData("phase tracking needs at least 3 samples, got " +
                           std::to_string(ratio_segment.size()));
  }
  if (!(gate_rel >= 0.0)) throw InvalidArgument("gate_rel must be non-negative");

  const std::size_t nd = ratio_segment.size() - 1;
  std::vector<Complex> diff(nd);
  std::vector<double> mag(nd);
  for (std::size_t i = 0; i < nd; ++i) {
    diff[i] = ratio_segment[i + 1] - ratio_segment[i];
    mag[i] = std::abs(diff[i]);
  }
  const double cutoff = gate_rel * median(mag);

  PhaseTrack out;
  std::vector<double> phase;
  phase.reserve(nd);
  out.source_index.reserve(nd);
  for (std::size_t i = 0; i < nd; ++i) {
    if (mag[i] == 0.0 || mag[i] < cutoff) continue;
    phase.push_back(std::arg(diff[i]));
    out.source_index.push_back(i);
  }
  if (phase.size() < 3) {
    throw InsufficientData("only " + std::to_string(phase.size()) +
                           " phase samples survive the magnitude gate");
  }
  out.gated_fraction = 1.0 - static_cast<double>(phase.size()) / static_cast<double>(nd);

  out.phase_sum.resize(phase.size());
  out.phase_sum[0] = 0.0;
  for (std::size_t j = 1; j < phase.size(); ++j) {
    out.phase_sum[j] = out.phase_sum[j - 1] + wrap_phase(phase[j] - phase[j - 1]);
  }
  return out;
}

Extrema find_extrema(std::span<const double> phase_sum, double prominence_rel) {
  if (phase_sum.size() < 3) {
    throw InsufficientData("extrema search needs at least 3 samples");
  }
  if (!(prominence_rel >= 0.0)) throw InvalidArgument("prominence_rel must be non-negative");
  Extrema out;
  const auto [lo, hi] = std::minmax_element(phase_sum.begin(), phase_sum.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  out.threshold = prominence_rel * range;

  out.maxima = prominent_peaks(phase_sum, false, out.threshold);
  std::vector<double> negated(phase_sum.begin(), phase_sum.end());
  for (auto& v : negated) v = -v;
  out.minima = prominent_peaks(negated, true, out.threshold);
  for (auto& m : out.minima) m.value = -m.value;

  // Keep maxima and minima alternating: of two neighbours of the same kind
  // only the more extreme one survives (ties keep the earlier index).
  struct Tagged {
    Extremum e;
    bool is_max;
  };
  std::vector<Tagged> all;
  for (const auto& m : out.maxima) all.push_back({m, true});
  for (const auto& m : out.minima) all.push_back({m, false});
  std::sort(all.begin(), all.end(),
            [](const Tagged& a, const Tagged& b) { return a.e.index < b.e.index; });
  std::vector<Tagged> kept;
  for (const auto& t : all) {
    if (!kept.empty() && kept.back().is_max == t.is_max) {
      const bool better = t.is_max ? t.e.value > kept.back().e.value : t.e.value < kept.back().e.value;
      if (better) kept.back() = t;
      continue;
    }
    kept.push_back(t);
  }
  out.maxima.clear();
  out.minima.clear();
  for (const auto& t : kept) (t.is_max ? out.maxima : out.minima).push_back(t.e);
  return out;
}

std::string_view to_string(Behavior b) {
  switch (b) {
    case Behavior::Crossing: return "Crossing";
    case Behavior::TurnBack: return "TurnBack";
    case Behavior::WalkBy: return "WalkBy";
    case Behavior::NoEvent: return "NoEvent";
  }
  return "NoEvent";
}

Behavior behavior_from_string(std::string_view s) {
  if (s == "Crossing") return Behavior::Crossing;
  if (s == "TurnBack") return Behavior::TurnBack;
  if (s == "WalkBy") return Behavior::WalkBy;
  if (s == "NoEvent") return Behavior::NoEvent;
  throw InvalidArgument("unknown behavior label '" + std::string(s) + "'");
}

Behavior classify(const PhasePattern& pattern) {
  const auto& ps = pattern.phase_sum;
  if (ps.size() < 3) return Behavior::NoEvent;
  const auto [lo, hi] = std::minmax_element(ps.begin(), ps.end());
  if (!(*hi > *lo)) return Behavior::NoEvent;

  if (pattern.maxima.size() >= 2) return Behavior::TurnBack;
  if (pattern.maxima.size() == 1) {
    const double ceiling = pattern.maxima.front().value - pattern.prominence_threshold;
    if (ps.front() < ceiling && ps.back() < ceiling) return Behavior::Crossing;
  }
  return Behavior::WalkBy;
}

void DetectParams::validate() const {
  if (ma_window == 0) throw InvalidArgument("ma_window must be >= 1");
  if (pair.first == pair.second) throw InvalidArgument("antenna pair must name two antennas");
  if (!(gate_rel >= 0.0)) throw InvalidArgument("gate_rel must be non-negative");
  if (!(prominence_rel >= 0.0)) throw InvalidArgument("prominence_rel must be non-negative");
  if (!(epsilon_den > 0.0)) throw InvalidArgument("epsilon_den must be positive");
}

PhasePattern extract_pattern(std::span<const Complex> ratio_segment, double gate_rel,
                             double prominence_rel) {
  PhaseTrack track = phase_track(ratio_segment, gate_rel);
  Extrema ext = find_extrema(track.phase_sum, prominence_rel);
  PhasePattern p;
  p.phase_sum = std::move(track.phase_sum);
  p.source_index = std::move(track.source_index);
  p.gated_fraction = track.gated_fraction;
  p.maxima = std::move(ext.maxima);
  p.minima = std::move(ext.minima);
  p.prominence_threshold = ext.threshold;
  return p;
}

namespace {

std::string trace_context(const CsiTrace& trace) {
  const auto it = trace.meta.find("label");
  std::string ctx = "trace";
  if (it != trace.meta.end()) ctx += " '" + it->second + "'";
  const auto seed = trace.meta.find("seed");
  if (seed != trace.meta.end()) ctx += " (seed " + seed->second + ")";
  return ctx;
}

Behavior classify_segment(std::span<const Complex> ratio, const DetectParams& params,
                          PhasePattern* pattern_out) {
  try {
    PhasePattern p = extract_pattern(ratio, params.gate_rel, params.prominence_rel);
    const Behavior b = classify(p);
    if (pattern_out) *pattern_out = std::move(p);
    return b;
  } catch (const InsufficientData&) {
    return Behavior::NoEvent;
  }
}

}  // namespace

std::vector<Detection> detect(const CsiTrace& trace, const DetectParams& params) {
  params.validate();
  trace.validate();

  const CsiTrace filtered = moving_average(trace, params.ma_window);
  RatioSeries ratio;
  std::vector<Segment> segments;
  try {
    ratio = csi_ratio(filtered, params.pair, params.epsilon_den);
    std::vector<double> agc = trace.agc_series();
    if (params.smooth_agc) agc = moving_average(std::span<const double>(agc), params.ma_window);
    segments = segment_activity(agc, trace.sample_rate_hz, params.segment);
  } catch (const DegenerateDenominator& e) {
    throw DegenerateDenominator(e.frame(), trace_context(trace) + ": " + e.what());
  } catch (const InsufficientBaseline& e) {
    throw InsufficientBaseline(trace_context(trace) + ": " + e.what());
  }
  segments = pad_segments(segments, params.segment_pad_frames, trace.size());

  std::optional<RatioSeries> check;
  if (params.check_pair && params.check_pair->first < trace.geometry.num_antennas() &&
      params.check_pair->second < trace.geometry.num_antennas() && params.check_pair != params.pair) {
    try {
      check = csi_ratio(filtered, *params.check_pair, params.epsilon_den);
    } catch (const DegenerateDenominator&) {
      check.reset();
    }
  }

  std::vector<Detection> out;
  out.reserve(segments.size());
  for (const auto& seg : segments) {
    const auto first = static_cast<std::ptrdiff_t>(seg.start_idx);
    const auto count = seg.length();
    Detection d;
    d.segment = seg;
    d.label = classify_segment(std::span<const Complex>(ratio.values).subspan(first, count),
                               params, &d.pattern);
    d.binary = d.label == Behavior::Crossing;
    if (check) {
      d.check_label = classify_segment(
          std::span<const Complex>(check->values).subspan(first, count), params, nullptr);
    }
    out.push_back(std::move(d));
  }
  return out;
}

bool any_crossing(std::span<const Detection> detections) {
  return std::any_of(detections.begin(), detections.end(),
                     [](const Detection& d) { return d.binary; });
}

}  // namespace doorcsi
