// SPDX-License-Identifier: Apache-2.0

#include "doorcsi/plot_export.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

#include "doorcsi/trace_io.hpp"

namespace doorcsi {

PlotSeries plot_series_from_string(std::string_view name) {
  if (name == "phase_sum") return PlotSeries::PhaseSum;
  if (name == "agc") return PlotSeries::Agc;
  if (name == "extrema") return PlotSeries::Extrema;
  if (name == "accuracy_by_condition") return PlotSeries::AccuracyByCondition;
  throw InvalidArgument("unknown plot series '" + std::string(name) + "'");
}

void export_plot_data(const PhasePattern& pattern, PlotSeries what, std::ostream& os) {
  switch (what) {
    case PlotSeries::PhaseSum:
      os << "# index source_index phase_sum\n";
      for (std::size_t i = 0; i < pattern.phase_sum.size(); ++i) {
        os << i << ' ' << pattern.source_index[i] << ' ' << format_double(pattern.phase_sum[i]) << '\n';
      }
      return;
    case PlotSeries::Extrema: {
      struct Row {
        const Extremum* e;
        const char* type;
      };
      std::vector<Row> rows;
      for (const auto& m : pattern.maxima) rows.push_back({&m, "max"});
      for (const auto& m : pattern.minima) rows.push_back({&m, "min"});
      std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.e->index < b.e->index; });
      os << "# index value prominence type\n";
      for (const auto& r : rows) {
        os << r.e->index << ' ' << format_double(r.e->value) << ' ' << format_double(r.e->prominence)
           << ' ' << r.type << '\n';
      }
      return;
    }
    case PlotSeries::Agc:
    case PlotSeries::AccuracyByCondition:
      break;
  }
  throw InvalidArgument("series not available from a phase pattern");
}

void export_plot_data(const CsiTrace& trace, PlotSeries what, std::ostream& os,
                      const DetectParams& params, std::size_t segment) {
  if (what == PlotSeries::Agc) {
    os << "# t agc\n";
    for (const auto& f : trace.frames) os << format_double(f.t) << ' ' << format_double(f.agc) << '\n';
    return;
  }
  if (what == PlotSeries::AccuracyByCondition) {
    throw InvalidArgument("accuracy_by_condition needs an evaluation report, not a trace");
  }
  const auto detections = detect(trace, params);
  if (segment >= detections.size()) {
    throw InvalidArgument("trace has " + std::to_string(detections.size()) +
                          " active segments, segment " + std::to_string(segment) + " requested");
  }
  export_plot_data(detections[segment].pattern, what, os);
}

void export_plot_data(const EvalReport& report, PlotSeries what, std::ostream& os,
                      const std::string& condition) {
  if (what != PlotSeries::AccuracyByCondition) {
    throw InvalidArgument("an evaluation report only provides accuracy_by_condition");
  }
  const ConditionTable& t = report.table(condition);
  os << "# value trials accuracy false_alarm_rate recall\n";
  for (const auto& row : t.rows) {
    os << row.value << ' ' << row.confusion.total() << ' ' << format_double(row.confusion.accuracy())
       << ' ' << format_double(row.confusion.false_alarm_rate()) << ' '
       << format_double(row.confusion.recall()) << '\n';
  }
}

}  // namespace doorcsi
