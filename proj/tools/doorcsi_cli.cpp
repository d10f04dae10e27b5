// SPDX-License-Identifier: Apache-2.0
//
// doorcsi: synthesize traces, detect doorway crossings, run the evaluation
// suite and export plot tables.
//
// Exit codes: 0 success, 2 parse error, 3 invalid arguments, 4 pipeline error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "doorcsi/detect.hpp"
#include "doorcsi/eval.hpp"
#include "doorcsi/plot_export.hpp"
#include "doorcsi/synth.hpp"
#include "doorcsi/trace_io.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitPipeline = 4;

using namespace doorcsi;

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot open '" + path + "' for writing");
  os << text;
}

struct SynthOpts {
  std::string kind = "crossing";
  double los = 2.0;
  double offset = 0.0;
  double angle_deg = 0.0;
  double nearest = 0.3;
  double standoff = 1.5;
  std::string style = "reverse";
  bool positive_side = false;
  double body_len = 0.4;
  double speed = 1.0;
  double approach = 2.0;
  double rate = 1000.0;
  double lead_in = 1.0;
  double tail = 1.0;
  std::optional<double> snr_db;
  double drift = 0.2;
  double e0 = 2.0;
  std::uint64_t seed = 0;
  std::size_t antennas = 3;
  double carrier = 5.24e9;
  std::string out;
};

void run_synth(const SynthOpts& o) {
  const Geometry g = Geometry::doorway(o.los, o.carrier, o.antennas);
  MotionParams m;
  m.speed_mps = o.speed;
  m.approach_dist_m = o.approach;
  m.sample_rate_hz = o.rate;
  m.lead_in_s = o.lead_in;
  m.tail_s = o.tail;
  m.body_len_m = o.body_len;
  const double angle = o.angle_deg * kPi / 180.0;

  Trajectory traj;
  if (o.kind == "crossing") {
    traj = make_crossing(g, o.offset, angle, m, o.positive_side);
  } else if (o.kind == "turnback") {
    const TurnStyle style = o.style == "mirror" ? TurnStyle::Mirror : TurnStyle::Reverse;
    traj = make_turnback(g, o.nearest, o.offset, angle, m, style, o.positive_side);
  } else {
    traj = make_walkby(g, o.standoff, m, o.offset, o.positive_side);
  }
  SynthConfig sc;
  sc.e0 = o.e0;
  sc.noise_snr_db = o.snr_db;
  sc.phase_drift_per_frame_rad = o.drift;
  sc.rng_seed = o.seed;
  write_trace(o.out, synthesize_trace(g, traj, sc, o.kind));
}

struct DetectOpts {
  std::string input;
  std::string out = "-";
  std::string trace_id;
  DetectParams params;
  std::vector<std::size_t> pair{0, 1};
  bool no_smooth_agc = false;
};

DetectParams resolved(DetectOpts o) {
  o.params.pair = {o.pair.at(0), o.pair.at(1)};
  o.params.smooth_agc = !o.no_smooth_agc;
  return o.params;
}

void run_detect(const DetectOpts& o) {
  const CsiTrace trace = read_trace(std::filesystem::path(o.input));
  const auto dets = detect(trace, resolved(o));
  const std::string id = o.trace_id.empty() ? o.input : o.trace_id;
  for (const auto& d : dets) {
    if (d.check_disagrees()) {
      std::cerr << "warning: " << id << " frames " << d.segment.start_idx << ".." << d.segment.end_idx
                << ": check pair says " << to_string(*d.check_label) << ", primary pair says "
                << to_string(d.label) << "\n";
    }
  }
  spill(o.out, detection_log_jsonl(id, dets));
}

struct EvalOpts {
  std::string config;
  std::string report = "-";
  std::string trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::vector<double> sweep_prominence;
  std::vector<std::string> sweep_snr;  // numbers or "none"
};

void run_eval_cmd(const EvalOpts& o) {
  SuiteConfig cfg = o.config.empty() ? SuiteConfig{} : suite_config_from_json(slurp(o.config));
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.threads) cfg.threads = *o.threads;
  EvalRun run = run_eval(cfg);
  if (!o.sweep_prominence.empty() || !o.sweep_snr.empty()) {
    std::vector<double> proms = o.sweep_prominence;
    if (proms.empty()) proms.push_back(cfg.detect.prominence_rel);
    std::vector<std::optional<double>> snrs;
    for (const auto& s : o.sweep_snr) {
      if (s == "none") {
        snrs.emplace_back();
      } else {
        try {
          snrs.emplace_back(std::stod(s));
        } catch (const std::exception&) {
          throw InvalidArgument("bad --sweep-snr value '" + s + "'");
        }
      }
    }
    if (snrs.empty()) snrs = cfg.snr_levels_db;
    run.report.sweep = run_sweep(cfg, proms, snrs);
  }
  spill(o.report, report_to_json(run.report));
  if (!o.trials.empty()) spill(o.trials, trial_log_jsonl(run.trials));
}

struct ExportOpts {
  std::string series;
  std::string trace;
  std::string report;
  std::string condition = "los_distance_m";
  std::size_t segment = 0;
  std::string out = "-";
  DetectOpts detect;
};

void run_export(const ExportOpts& o) {
  const PlotSeries what = plot_series_from_string(o.series);
  if (o.trace.empty() == o.report.empty()) {
    throw InvalidArgument("export needs exactly one of --trace or --report");
  }
  std::ostringstream ss;
  if (!o.trace.empty()) {
    export_plot_data(read_trace(std::filesystem::path(o.trace)), what, ss, resolved(o.detect), o.segment);
  } else {
    export_plot_data(report_from_json(slurp(o.report)), what, ss, o.condition);
  }
  spill(o.out, ss.str());
}

void add_detect_options(CLI::App* sub, DetectOpts& o) {
  sub->add_option("--window", o.params.ma_window, "Moving-average window (frames)");
  sub->add_option("--pair", o.pair, "Antenna pair for the ratio, zero-based")->expected(2);
  sub->add_option("--gate", o.params.gate_rel, "Difference gate, fraction of the median magnitude");
  sub->add_option("--prominence", o.params.prominence_rel, "Extremum prominence, fraction of range");
  sub->add_option("--pad", o.params.segment_pad_frames, "Frames of context around each AGC segment");
  sub->add_flag("--no-smooth-agc", o.no_smooth_agc, "Segment on the raw AGC stream");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Doorway crossing detection from WiFi CSI"};
  app.require_subcommand(1);

  SynthOpts so;
  auto* synth = app.add_subcommand("synth", "Synthesize a trace for a scripted trajectory");
  synth->add_option("--kind", so.kind, "crossing | turnback | walkby")
      ->check(CLI::IsMember({"crossing", "turnback", "walkby"}));
  synth->add_option("--los", so.los, "LoS distance (m)");
  synth->add_option("--offset", so.offset, "Crossing point offset along the LoS (m); walk-by shift");
  synth->add_option("--angle", so.angle_deg, "Deviation from the LoS normal (deg)");
  synth->add_option("--nearest", so.nearest, "Turn-back nearest approach (m)");
  synth->add_option("--standoff", so.standoff, "Walk-by distance from the LoS (m)");
  synth->add_option("--style", so.style, "Turn-back style: reverse | mirror")
      ->check(CLI::IsMember({"reverse", "mirror"}));
  synth->add_flag("--positive-side", so.positive_side, "Start on the +normal side");
  synth->add_option("--body-len", so.body_len, "Body segment length (m)");
  synth->add_option("--speed", so.speed, "Walking speed (m/s)");
  synth->add_option("--approach", so.approach, "Leg length (m)");
  synth->add_option("--rate", so.rate, "Sample rate (Hz)");
  synth->add_option("--lead-in", so.lead_in, "Parked time before walking (s)");
  synth->add_option("--tail", so.tail, "Parked time after walking (s)");
  synth->add_option("--snr", so.snr_db, "SNR in dB relative to the LoS term (default noiseless)");
  synth->add_option("--drift", so.drift, "Common-phase random-walk step (rad/frame)");
  synth->add_option("--e0", so.e0, "Scatterer field amplitude");
  synth->add_option("--seed", so.seed, "RNG seed");
  synth->add_option("--antennas", so.antennas, "Receive antennas");
  synth->add_option("--carrier", so.carrier, "Carrier frequency (Hz)");
  synth->add_option("-o,--out", so.out, "Output trace file")->required();

  DetectOpts dopt;
  auto* det = app.add_subcommand("detect", "Classify the active segments of a trace");
  det->add_option("trace", dopt.input, "Trace file")->required();
  det->add_option("-o,--out", dopt.out, "Detection log (JSON lines), '-' for stdout");
  det->add_option("--id", dopt.trace_id, "Trace id written to the log (default: the path)");
  add_detect_options(det, dopt);

  EvalOpts eo;
  auto* ev = app.add_subcommand("eval", "Run the synthetic evaluation suite");
  ev->add_option("--config", eo.config, "Suite config (JSON); defaults when omitted");
  ev->add_option("--report", eo.report, "Report output, '-' for stdout");
  ev->add_option("--trials", eo.trials, "Per-trial log output (JSON lines)");
  ev->add_option("--seed", eo.seed, "Override the master seed");
  ev->add_option("--threads", eo.threads, "Worker threads (0 = all cores)");
  ev->add_option("--sweep-prominence", eo.sweep_prominence, "Prominence values for the frontier sweep");
  ev->add_option("--sweep-snr", eo.sweep_snr, "SNR levels (dB, or 'none') for the frontier sweep");

  ExportOpts xo;
  auto* ex = app.add_subcommand("export", "Write a plot table");
  ex->add_option("--series", xo.series, "phase_sum | agc | extrema | accuracy_by_condition")->required();
  ex->add_option("--trace", xo.trace, "Trace file (phase_sum, agc, extrema)");
  ex->add_option("--report", xo.report, "Report file (accuracy_by_condition)");
  ex->add_option("--condition", xo.condition, "Report table for accuracy_by_condition");
  ex->add_option("--segment", xo.segment, "Segment index for phase_sum / extrema");
  ex->add_option("-o,--out", xo.out, "Output table, '-' for stdout");
  add_detect_options(ex, xo.detect);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*synth) run_synth(so);
    if (*det) run_detect(dopt);
    if (*ev) run_eval_cmd(eo);
    if (*ex) run_export(xo);
  } catch (const doorcsi::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const PipelineError& e) {
    std::cerr << "pipeline error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return 0;
}
