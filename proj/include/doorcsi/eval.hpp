// SPDX-License-Identifier: Apache-2.0
//
// Synthetic evaluation suite: builds a grid of crossing, turn-back and
// walk-by trials, runs the detector on each and aggregates a confusion
// matrix with per-condition breakdowns.
//
// Trial k of a class takes its conditions from a mixed-radix reading of k,
// fastest digit first: LoS distance, SNR level, position offset, angle,
// body length. Walk-bys have no angle digit and use the offset digit as an
// along-LoS shift. Continuous nuisance parameters (turn-back nearest
// approach, walk-by standoff, starting side, turn style) are drawn from the
// trial's own seed.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "doorcsi/detect.hpp"
#include "doorcsi/synth.hpp"

namespace doorcsi {

enum class TrialClass { Crossing, TurnBack, WalkBy };

std::string_view to_string(TrialClass c);

struct SuiteConfig {
  std::size_t n_crossings = 409;
  std::size_t n_turnbacks = 209;
  std::size_t n_walkbys = 198;

  std::vector<double> los_distances_m{1.0, 1.5, 2.0, 2.5};
  std::vector<double> offsets_rel{-0.2, -0.1, 0.0, 0.1, 0.2};  // fraction of the LoS distance
  std::vector<double> angles_deg{-45.0, -30.0, -15.0, 0.0, 15.0, 30.0, 45.0};
  std::vector<double> body_lens_m{0.4};
  std::vector<std::optional<double>> snr_levels_db{20.0};  // nullopt = noiseless

  double turnback_nearest_min_m = 0.15;
  double turnback_nearest_max_m = 0.6;
  double walkby_standoff_min_m = 1.0;
  double walkby_standoff_max_m = 2.0;

  double phase_drift_rad = 0.2;
  double e0 = 2.0;
  std::size_t num_antennas = 3;
  double carrier_hz = 5.24e9;
  MotionParams motion;
  DetectParams detect;

  std::uint64_t master_seed = 1;
  std::size_t threads = 0;  // 0 = hardware concurrency

  std::size_t total_trials() const { return n_crossings + n_turnbacks + n_walkbys; }
  /// Throws InvalidArgument for an empty grid or out-of-range conditions.
  void validate() const;
};

struct TrialSpec {
  std::size_t index = 0;  // position in the whole suite
  TrialClass cls = TrialClass::Crossing;
  std::uint64_t seed = 0;
  double los_distance_m = 0.0;
  std::optional<double> snr_db;
  double offset_rel = 0.0;
  std::optional<double> angle_deg;  // walk-bys have none
  double body_len_m = 0.4;
  std::optional<double> nearest_m;   // turn-backs
  std::optional<double> standoff_m;  // walk-bys
  std::optional<TurnStyle> style;    // turn-backs
  bool from_positive_side = false;
};

std::vector<TrialSpec> plan_trials(const SuiteConfig& cfg);

/// Trajectory for a planned trial in its own doorway geometry.
CsiTrace synthesize_trial(const SuiteConfig& cfg, const TrialSpec& spec);

struct SegmentRecord {
  Segment segment;
  Behavior label = Behavior::NoEvent;
  std::size_t maxima = 0;
  std::size_t minima = 0;
  std::optional<Behavior> check_label;
};

struct TrialRecord {
  TrialSpec spec;
  bool predicted_crossing = false;
  std::vector<SegmentRecord> segments;
  std::string error;  // pipeline error message, empty on success

  bool actual_crossing() const { return spec.cls == TrialClass::Crossing; }
  bool correct() const { return predicted_crossing == actual_crossing(); }
};

struct Confusion {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fn + fp + tn; }
  double accuracy() const;          // (tp + tn) / total
  double false_alarm_rate() const;  // fp / (fp + tn)
  double recall() const;            // tp / (tp + fn)
  void add(bool actual, bool predicted);
};

struct ConditionRow {
  std::string value;
  double numeric = 0.0;  // sort key; NaN for a noiseless SNR row
  Confusion confusion;
};

struct ConditionTable {
  std::string condition;  // los_distance_m, offset_rel, angle_deg, body_len_m, snr_db
  std::vector<ConditionRow> rows;
};

struct SweepCell {
  double prominence_rel = 0.0;
  std::optional<double> snr_db;
  Confusion confusion;
};

struct EvalReport {
  std::uint64_t master_seed = 0;
  Confusion confusion;
  Confusion crossing_class;   // crossings only: tp / fn
  Confusion turnback_class;   // turn-backs only: fp / tn
  Confusion walkby_class;     // walk-bys only: fp / tn
  std::size_t pipeline_errors = 0;
  std::vector<ConditionTable> by_condition;
  std::vector<SweepCell> sweep;

  double accuracy() const { return confusion.accuracy(); }
  double false_alarm_rate() const { return confusion.false_alarm_rate(); }
  const ConditionTable& table(const std::string& condition) const;
};

struct EvalRun {
  EvalReport report;
  std::vector<TrialRecord> trials;  // ordered by TrialSpec::index
};

/// Synthesizes and detects every planned trial. Trials run concurrently;
/// results are reduced by trial index, so output does not depend on
/// scheduling.
EvalRun run_eval(const SuiteConfig& cfg);

/// Aggregates trial records into a report (no sweep).
EvalReport aggregate(std::uint64_t master_seed, const std::vector<TrialRecord>& trials);

/// Accuracy frontier over detector prominence and SNR. Each SNR level
/// resynthesizes the suite once; every prominence reuses those traces.
std::vector<SweepCell> run_sweep(const SuiteConfig& cfg, const std::vector<double>& prominences,
                                 const std::vector<std::optional<double>>& snr_levels_db);

// Structured text. Reports and configs are JSON; the trial log is one JSON
// object per line.
std::string report_to_json(const EvalReport& report);
/// Reads back the counts and tables written by report_to_json.
EvalReport report_from_json(const std::string& text);
std::string trial_log_jsonl(const std::vector<TrialRecord>& trials);
std::string detection_log_jsonl(const std::string& trace_id, const std::vector<Detection>& detections);
std::string suite_config_to_json(const SuiteConfig& cfg);
/// Missing fields keep their defaults. Throws InvalidArgument on a field of
/// the wrong type and ParseError on malformed text.
SuiteConfig suite_config_from_json(const std::string& text);

}  // namespace doorcsi
