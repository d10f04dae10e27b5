// SPDX-License-Identifier: Apache-2.0
//
// Plain-text numeric tables for external plotting. Every table starts with
// one "# col col ..." comment line naming its whitespace-separated columns.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "doorcsi/detect.hpp"
#include "doorcsi/eval.hpp"

namespace doorcsi {

enum class PlotSeries { PhaseSum, Agc, Extrema, AccuracyByCondition };

/// "phase_sum", "agc", "extrema", "accuracy_by_condition". Throws
/// InvalidArgument for anything else.
PlotSeries plot_series_from_string(std::string_view name);

/// phase_sum:  # index source_index phase_sum         (one row per entry)
/// extrema:    # index value prominence type          (type: max | min)
void export_plot_data(const PhasePattern& pattern, PlotSeries what, std::ostream& os);

/// agc:        # t agc
/// phase_sum and extrema run detect() and use the given segment.
/// Throws InvalidArgument if that segment does not exist.
void export_plot_data(const CsiTrace& trace, PlotSeries what, std::ostream& os,
                      const DetectParams& params = {}, std::size_t segment = 0);

/// accuracy_by_condition:
///             # value trials accuracy false_alarm_rate recall
/// for one table of the report (los_distance_m by default).
void export_plot_data(const EvalReport& report, PlotSeries what, std::ostream& os,
                      const std::string& condition = "los_distance_m");

}  // namespace doorcsi
