// SPDX-License-Identifier: Apache-2.0
//
// Cumulative-phase pattern extraction and the crossing decision.
//
// For each active segment the detector takes the first difference of the CSI
// ratio, tracks the angle of that difference, accumulates its wrapped
// increments and counts the prominent local maxima of the running sum. A
// single prominent maximum with both segment ends well below it is a
// crossing; the sum climbs while the walker approaches the LoS and falls
// once they leave it.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "doorcsi/core.hpp"
#include "doorcsi/dsp.hpp"

namespace doorcsi {

struct PhaseTrack {
  std::vector<double> phase_sum;          // phase_sum[0] == 0
  std::vector<std::size_t> source_index;  // difference index each entry came from
  double gated_fraction = 0.0;
};

/// Steps on ratio_segment (length >= 3):
///   d[i] = ratio[i+1] - ratio[i], dropping |d[i]| == 0 and |d[i]| < gate_rel * median|d|;
///   phase[j] = arg(d[j]); dphase[j] = wrap(phase[j+1] - phase[j]) in (-pi, pi];
///   phase_sum = [0, cumsum(dphase)].
/// Throws InsufficientData if fewer than three differences survive.
PhaseTrack phase_track(std::span<const Complex> ratio_segment, double gate_rel);

struct Extremum {
  std::size_t index = 0;
  double value = 0.0;
  double prominence = 0.0;
};

struct Extrema {
  std::vector<Extremum> maxima;
  std::vector<Extremum> minima;
  double threshold = 0.0;  // absolute prominence cutoff that was applied
};

/// Interior local maxima whose topographic prominence is at least
/// prominence_rel * (max - min). Minima are found the same way on the negated
/// series, and there the two endpoints are eligible too. A flat series yields
/// no extrema.
Extrema find_extrema(std::span<const double> phase_sum, double prominence_rel);

struct PhasePattern {
  std::vector<double> phase_sum;
  std::vector<std::size_t> source_index;
  std::vector<Extremum> maxima;
  std::vector<Extremum> minima;
  double gated_fraction = 0.0;
  double prominence_threshold = 0.0;
};

enum class Behavior { Crossing, TurnBack, WalkBy, NoEvent };

std::string_view to_string(Behavior b);
Behavior behavior_from_string(std::string_view s);

/// Crossing iff exactly one maximum and both ends of the series lie more than
/// the prominence threshold below it. Two or more maxima is TurnBack; an empty
/// or flat pattern is NoEvent; anything else is WalkBy.
Behavior classify(const PhasePattern& pattern);

struct Detection {
  Behavior label = Behavior::NoEvent;
  bool binary = false;  // label == Crossing
  Segment segment;      // analysed frame range
  PhasePattern pattern;
  std::optional<Behavior> check_label;  // same segment through the check pair

  bool check_disagrees() const { return check_label && (*check_label == Behavior::Crossing) != binary; }
};

struct DetectParams {
  std::size_t ma_window = kDefaultMovingAverageWindow;
  AntennaPair pair{0, 1};
  std::optional<AntennaPair> check_pair = AntennaPair{0, 2};
  SegmentParams segment;
  bool smooth_agc = true;                 // run the AGC stream through the same moving average
  std::size_t segment_pad_frames = 1000;  // context added around each AGC segment
  double gate_rel = 0.1;
  double prominence_rel = 0.15;
  double epsilon_den = kDefaultDenominatorEpsilon;

  void validate() const;
};

/// phase_track followed by find_extrema. Throws InsufficientData like
/// phase_track.
PhasePattern extract_pattern(std::span<const Complex> ratio_segment, double gate_rel,
                             double prominence_rel);

/// moving_average -> csi_ratio -> segment_activity (+ padding) -> per-segment
/// phase_track -> find_extrema -> classify. One Detection per segment.
std::vector<Detection> detect(const CsiTrace& trace, const DetectParams& params = {});

/// Trace-level decision: any segment classified as a crossing.
bool any_crossing(std::span<const Detection> detections);

}  // namespace doorcsi
