// SPDX-License-Identifier: Apache-2.0

#include "doorcsi/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "doorcsi/rng.hpp"
#include "doorcsi/trace_io.hpp"

namespace doorcsi {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(TrialClass c) {
  switch (c) {
    case TrialClass::Crossing: return "crossing";
    case TrialClass::TurnBack: return "turnback";
    case TrialClass::WalkBy: return "walkby";
  }
  return "crossing";
}

void SuiteConfig::validate() const {
  if (total_trials() == 0) throw InvalidArgument("suite has zero trials");
  if (los_distances_m.empty() || offsets_rel.empty() || angles_deg.empty() || body_lens_m.empty() ||
      snr_levels_db.empty()) {
    throw InvalidArgument("every condition list needs at least one value");
  }
  for (double d : los_distances_m) {
    if (!(d > 0.0)) throw InvalidArgument("LoS distances must be positive");
  }
  for (double o : offsets_rel) {
    if (!(std::abs(o) < 0.5)) throw InvalidArgument("offsets_rel must lie in (-0.5, 0.5)");
  }
  for (double a : angles_deg) {
    if (!(std::abs(a) < 90.0)) throw InvalidArgument("angles_deg must lie in (-90, 90)");
  }
  for (double b : body_lens_m) {
    if (!(b > 0.0)) throw InvalidArgument("body lengths must be positive");
  }
  if (!(turnback_nearest_min_m > 0.0) || turnback_nearest_max_m < turnback_nearest_min_m) {
    throw InvalidArgument("turn-back nearest-approach range is empty or non-positive");
  }
  if (!(walkby_standoff_min_m > 0.0) || walkby_standoff_max_m < walkby_standoff_min_m) {
    throw InvalidArgument("walk-by standoff range is empty or non-positive");
  }
  if (!(phase_drift_rad >= 0.0)) throw InvalidArgument("phase_drift_rad must be non-negative");
  if (num_antennas < 2) throw InvalidArgument("num_antennas must be >= 2");
  motion.validate();
  detect.validate();
}

std::vector<TrialSpec> plan_trials(const SuiteConfig& cfg) {
  cfg.validate();
  const std::size_t nd = cfg.los_distances_m.size();
  const std::size_t ns = cfg.snr_levels_db.size();
  const std::size_t no = cfg.offsets_rel.size();
  const std::size_t na = cfg.angles_deg.size();
  const std::size_t nb = cfg.body_lens_m.size();

  std::vector<TrialSpec> out;
  out.reserve(cfg.total_trials());
  const std::pair<TrialClass, std::size_t> classes[] = {{TrialClass::Crossing, cfg.n_crossings},
                                                         {TrialClass::TurnBack, cfg.n_turnbacks},
                                                         {TrialClass::WalkBy, cfg.n_walkbys}};
  for (std::size_t c = 0; c < 3; ++c) {
    const auto [cls, count] = classes[c];
    const std::uint64_t class_seed = derive_seed(cfg.master_seed, c + 1);
    for (std::size_t k = 0; k < count; ++k) {
      TrialSpec s;
      s.index = out.size();
      s.cls = cls;
      s.seed = derive_seed(class_seed, k);
      std::size_t r = k;
      s.los_distance_m = cfg.los_distances_m[r % nd];
      r /= nd;
      s.snr_db = cfg.snr_levels_db[r % ns];
      r /= ns;
      s.offset_rel = cfg.offsets_rel[r % no];
      r /= no;
      if (cls != TrialClass::WalkBy) {
        s.angle_deg = cfg.angles_deg[r % na];
        r /= na;
      }
      s.body_len_m = cfg.body_lens_m[r % nb];

      Rng nuisance(derive_seed(s.seed, 7));
      s.from_positive_side = nuisance.uniform() < 0.5;
      if (cls == TrialClass::TurnBack) {
        s.nearest_m = nuisance.uniform(cfg.turnback_nearest_min_m, cfg.turnback_nearest_max_m);
        s.style = nuisance.uniform() < 0.5 ? TurnStyle::Reverse : TurnStyle::Mirror;
      } else if (cls == TrialClass::WalkBy) {
        s.standoff_m = nuisance.uniform(cfg.walkby_standoff_min_m, cfg.walkby_standoff_max_m);
      }
      out.push_back(s);
    }
  }
  return out;
}

CsiTrace synthesize_trial(const SuiteConfig& cfg, const TrialSpec& spec) {
  const Geometry g = Geometry::doorway(spec.los_distance_m, cfg.carrier_hz, cfg.num_antennas);
  MotionParams motion = cfg.motion;
  motion.body_len_m = spec.body_len_m;
  const double offset_m = spec.offset_rel * spec.los_distance_m;
  const double angle_rad = spec.angle_deg.value_or(0.0) * kPi / 180.0;

  Trajectory traj;
  switch (spec.cls) {
    case TrialClass::Crossing:
      traj = make_crossing(g, offset_m, angle_rad, motion, spec.from_positive_side);
      break;
    case TrialClass::TurnBack:
      traj = make_turnback(g, spec.nearest_m.value(), offset_m, angle_rad, motion,
                           spec.style.value_or(TurnStyle::Reverse), spec.from_positive_side);
      break;
    case TrialClass::WalkBy:
      traj = make_walkby(g, spec.standoff_m.value(), motion, offset_m, spec.from_positive_side);
      break;
  }

  SynthConfig sc;
  sc.e0 = cfg.e0;
  sc.noise_snr_db = spec.snr_db;
  sc.phase_drift_per_frame_rad = cfg.phase_drift_rad;
  sc.rng_seed = spec.seed;
  return synthesize_trace(g, traj, sc,
                          std::string(to_string(spec.cls)) + "-" + std::to_string(spec.index));
}

namespace {

TrialRecord record_from(const TrialSpec& spec, const std::vector<Detection>& dets) {
  TrialRecord rec;
  rec.spec = spec;
  rec.predicted_crossing = any_crossing(dets);
  for (const auto& d : dets) {
    rec.segments.push_back({d.segment, d.label, d.pattern.maxima.size(), d.pattern.minima.size(),
                            d.check_label});
  }
  return rec;
}

// records[v][i] = trial i under detector variant v.
std::vector<std::vector<TrialRecord>> run_trials(const SuiteConfig& cfg,
                                                 const std::vector<TrialSpec>& specs,
                                                 const std::vector<DetectParams>& variants) {
  std::vector<std::vector<TrialRecord>> records(variants.size(),
                                                std::vector<TrialRecord>(specs.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      try {
        const CsiTrace trace = synthesize_trial(cfg, specs[i]);
        for (std::size_t v = 0; v < variants.size(); ++v) {
          try {
            records[v][i] = record_from(specs[i], detect(trace, variants[v]));
          } catch (const PipelineError& e) {
            records[v][i].spec = specs[i];
            records[v][i].error = e.what();
          }
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(specs.size());
        return;
      }
    }
  };

  std::size_t n_threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  n_threads = std::clamp<std::size_t>(n_threads, 1, std::max<std::size_t>(1, specs.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::string condition_label(double v) { return json(v).dump(); }

struct TableBuilder {
  std::string name;
  std::map<std::string, ConditionRow> rows;

  void add(const std::string& label, double numeric, bool actual, bool predicted) {
    auto& row = rows[label];
    row.value = label;
    row.numeric = numeric;
    row.confusion.add(actual, predicted);
  }

  ConditionTable finish() const {
    ConditionTable t;
    t.condition = name;
    for (const auto& [_, row] : rows) t.rows.push_back(row);
    // Noiseless (NaN) sorts last, so SNR rows read from worst to best.
    std::stable_sort(t.rows.begin(), t.rows.end(), [](const ConditionRow& a, const ConditionRow& b) {
      if (std::isnan(a.numeric) || std::isnan(b.numeric)) return !std::isnan(a.numeric) && std::isnan(b.numeric);
      return a.numeric < b.numeric;
    });
    return t;
  }
};

}  // namespace

double Confusion::accuracy() const {
  return total() ? static_cast<double>(tp + tn) / static_cast<double>(total()) : 0.0;
}

double Confusion::false_alarm_rate() const {
  return fp + tn ? static_cast<double>(fp) / static_cast<double>(fp + tn) : 0.0;
}

double Confusion::recall() const {
  return tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
}

void Confusion::add(bool actual, bool predicted) {
  if (actual) {
    ++(predicted ? tp : fn);
  } else {
    ++(predicted ? fp : tn);
  }
}

const ConditionTable& EvalReport::table(const std::string& condition) const {
  for (const auto& t : by_condition) {
    if (t.condition == condition) return t;
  }
  throw InvalidArgument("no condition table named '" + condition + "'");
}

EvalReport aggregate(std::uint64_t master_seed, const std::vector<TrialRecord>& trials) {
  EvalReport r;
  r.master_seed = master_seed;
  TableBuilder by_dist{"los_distance_m", {}};
  TableBuilder by_offset{"offset_rel", {}};
  TableBuilder by_angle{"angle_deg", {}};
  TableBuilder by_body{"body_len_m", {}};
  TableBuilder by_snr{"snr_db", {}};

  for (const auto& t : trials) {
    const bool actual = t.actual_crossing();
    const bool pred = t.predicted_crossing;
    r.confusion.add(actual, pred);
    switch (t.spec.cls) {
      case TrialClass::Crossing: r.crossing_class.add(actual, pred); break;
      case TrialClass::TurnBack: r.turnback_class.add(actual, pred); break;
      case TrialClass::WalkBy: r.walkby_class.add(actual, pred); break;
    }
    if (!t.error.empty()) ++r.pipeline_errors;

    by_dist.add(condition_label(t.spec.los_distance_m), t.spec.los_distance_m, actual, pred);
    by_body.add(condition_label(t.spec.body_len_m), t.spec.body_len_m, actual, pred);
    if (t.spec.snr_db) {
      by_snr.add(condition_label(*t.spec.snr_db), *t.spec.snr_db, actual, pred);
    } else {
      by_snr.add("none", std::numeric_limits<double>::quiet_NaN(), actual, pred);
    }
    // Offsets and angles describe the approach line, which walk-bys lack.
    if (t.spec.cls != TrialClass::WalkBy) {
      by_offset.add(condition_label(t.spec.offset_rel), t.spec.offset_rel, actual, pred);
      by_angle.add(condition_label(*t.spec.angle_deg), *t.spec.angle_deg, actual, pred);
    }
  }
  r.by_condition = {by_dist.finish(), by_offset.finish(), by_angle.finish(), by_body.finish(),
                    by_snr.finish()};
  return r;
}

EvalRun run_eval(const SuiteConfig& cfg) {
  const auto specs = plan_trials(cfg);
  EvalRun run;
  run.trials = std::move(run_trials(cfg, specs, {cfg.detect}).front());
  run.report = aggregate(cfg.master_seed, run.trials);
  return run;
}

std::vector<SweepCell> run_sweep(const SuiteConfig& cfg, const std::vector<double>& prominences,
                                 const std::vector<std::optional<double>>& snr_levels_db) {
  if (prominences.empty() || snr_levels_db.empty()) {
    throw InvalidArgument("sweep needs at least one prominence and one SNR level");
  }
  std::vector<DetectParams> variants;
  for (double p : prominences) {
    DetectParams d = cfg.detect;
    d.prominence_rel = p;
    d.validate();
    variants.push_back(d);
  }
  std::vector<SweepCell> out;
  for (const auto& snr : snr_levels_db) {
    SuiteConfig c = cfg;
    c.snr_levels_db = {snr};
    const auto records = run_trials(c, plan_trials(c), variants);
    for (std::size_t v = 0; v < variants.size(); ++v) {
      SweepCell cell;
      cell.prominence_rel = prominences[v];
      cell.snr_db = snr;
      for (const auto& t : records[v]) cell.confusion.add(t.actual_crossing(), t.predicted_crossing);
      out.push_back(cell);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

ordered_json opt_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json confusion_json(const Confusion& c) {
  ordered_json j;
  j["tp"] = c.tp;
  j["fn"] = c.fn;
  j["fp"] = c.fp;
  j["tn"] = c.tn;
  return j;
}

ordered_json rates_json(const Confusion& c) {
  ordered_json j = confusion_json(c);
  j["trials"] = c.total();
  j["accuracy"] = c.accuracy();
  j["false_alarm_rate"] = c.false_alarm_rate();
  j["recall"] = c.recall();
  return j;
}

}  // namespace

std::string report_to_json(const EvalReport& r) {
  ordered_json j;
  j["format"] = "wicross-report/1";
  j["master_seed"] = r.master_seed;
  j["trials"] = r.confusion.total();
  j["confusion"] = confusion_json(r.confusion);
  j["accuracy"] = r.accuracy();
  j["false_alarm_rate"] = r.false_alarm_rate();
  j["crossing_recall"] = r.confusion.recall();
  j["pipeline_errors"] = r.pipeline_errors;
  ordered_json per_class;
  per_class["crossing"] = rates_json(r.crossing_class);
  per_class["turnback"] = rates_json(r.turnback_class);
  per_class["walkby"] = rates_json(r.walkby_class);
  j["per_class"] = per_class;
  // Published real-hardware figures, for a qualitative side-by-side only.
  j["hardware_reference"] = {{"accuracy", 0.957}, {"false_alarm_rate", 0.049}};
  ordered_json tables = ordered_json::object();
  for (const auto& t : r.by_condition) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
      ordered_json rj;
      rj["value"] = row.value;
      rj.update(rates_json(row.confusion));
      rows.push_back(rj);
    }
    tables[t.condition] = rows;
  }
  j["by_condition"] = tables;
  if (!r.sweep.empty()) {
    ordered_json sweep = ordered_json::array();
    for (const auto& c : r.sweep) {
      ordered_json cj;
      cj["prominence_rel"] = c.prominence_rel;
      cj["snr_db"] = opt_number(c.snr_db);
      cj.update(rates_json(c.confusion));
      sweep.push_back(cj);
    }
    j["sweep"] = sweep;
  }
  return j.dump(2) + "\n";
}

namespace {

Confusion confusion_from(const ordered_json& j) {
  Confusion c;
  c.tp = j.at("tp").get<std::size_t>();
  c.fn = j.at("fn").get<std::size_t>();
  c.fp = j.at("fp").get<std::size_t>();
  c.tn = j.at("tn").get<std::size_t>();
  return c;
}

}  // namespace

EvalReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(1, std::string("malformed report: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "wicross-report/1") {
      throw ParseError(1, "not a wicross-report/1 document");
    }
    EvalReport r;
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    r.confusion = confusion_from(j.at("confusion"));
    r.pipeline_errors = j.at("pipeline_errors").get<std::size_t>();
    const ordered_json& pc = j.at("per_class");
    r.crossing_class = confusion_from(pc.at("crossing"));
    r.turnback_class = confusion_from(pc.at("turnback"));
    r.walkby_class = confusion_from(pc.at("walkby"));
    for (const auto& [name, rows] : j.at("by_condition").items()) {
      ConditionTable t;
      t.condition = name;
      for (const auto& row : rows) {
        ConditionRow cr;
        cr.value = row.at("value").get<std::string>();
        cr.numeric = cr.value == "none" ? std::numeric_limits<double>::quiet_NaN() : std::stod(cr.value);
        cr.confusion = confusion_from(row);
        t.rows.push_back(cr);
      }
      r.by_condition.push_back(std::move(t));
    }
    if (const auto it = j.find("sweep"); it != j.end()) {
      for (const auto& c : *it) {
        SweepCell cell;
        cell.prominence_rel = c.at("prominence_rel").get<double>();
        if (!c.at("snr_db").is_null()) cell.snr_db = c.at("snr_db").get<double>();
        cell.confusion = confusion_from(c);
        r.sweep.push_back(cell);
      }
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(1, std::string("report is missing fields: ") + e.what());
  }
}

std::string trial_log_jsonl(const std::vector<TrialRecord>& trials) {
  std::string out;
  for (const auto& t : trials) {
    const auto& s = t.spec;
    ordered_json j;
    j["trial"] = s.index;
    j["class"] = to_string(s.cls);
    j["seed"] = s.seed;
    j["los_distance_m"] = s.los_distance_m;
    j["snr_db"] = opt_number(s.snr_db);
    j["offset_rel"] = s.offset_rel;
    j["angle_deg"] = opt_number(s.angle_deg);
    j["body_len_m"] = s.body_len_m;
    j["nearest_m"] = opt_number(s.nearest_m);
    j["standoff_m"] = opt_number(s.standoff_m);
    j["style"] = s.style ? ordered_json(*s.style == TurnStyle::Reverse ? "reverse" : "mirror")
                         : ordered_json(nullptr);
    j["from_positive_side"] = s.from_positive_side;
    j["actual_crossing"] = t.actual_crossing();
    j["predicted_crossing"] = t.predicted_crossing;
    ordered_json segs = ordered_json::array();
    for (const auto& g : t.segments) {
      ordered_json gj;
      gj["start"] = g.segment.start_idx;
      gj["end"] = g.segment.end_idx;
      gj["label"] = to_string(g.label);
      gj["maxima"] = g.maxima;
      gj["minima"] = g.minima;
      gj["check_label"] = g.check_label ? ordered_json(to_string(*g.check_label)) : ordered_json(nullptr);
      segs.push_back(gj);
    }
    j["segments"] = segs;
    if (!t.error.empty()) j["error"] = t.error;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string detection_log_jsonl(const std::string& trace_id, const std::vector<Detection>& detections) {
  std::string out;
  for (const auto& d : detections) {
    ordered_json j;
    j["trace"] = trace_id;
    j["start"] = d.segment.start_idx;
    j["end"] = d.segment.end_idx;
    j["label"] = to_string(d.label);
    j["crossing"] = d.binary;
    j["maxima"] = d.pattern.maxima.size();
    j["minima"] = d.pattern.minima.size();
    j["check_label"] = d.check_label ? ordered_json(to_string(*d.check_label)) : ordered_json(nullptr);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string suite_config_to_json(const SuiteConfig& c) {
  ordered_json j;
  j["n_crossings"] = c.n_crossings;
  j["n_turnbacks"] = c.n_turnbacks;
  j["n_walkbys"] = c.n_walkbys;
  j["los_distances_m"] = c.los_distances_m;
  j["offsets_rel"] = c.offsets_rel;
  j["angles_deg"] = c.angles_deg;
  j["body_lens_m"] = c.body_lens_m;
  ordered_json snr = ordered_json::array();
  for (const auto& s : c.snr_levels_db) snr.push_back(opt_number(s));
  j["snr_levels_db"] = snr;
  j["turnback_nearest_min_m"] = c.turnback_nearest_min_m;
  j["turnback_nearest_max_m"] = c.turnback_nearest_max_m;
  j["walkby_standoff_min_m"] = c.walkby_standoff_min_m;
  j["walkby_standoff_max_m"] = c.walkby_standoff_max_m;
  j["phase_drift_rad"] = c.phase_drift_rad;
  j["e0"] = c.e0;
  j["num_antennas"] = c.num_antennas;
  j["carrier_hz"] = c.carrier_hz;
  j["speed_mps"] = c.motion.speed_mps;
  j["approach_dist_m"] = c.motion.approach_dist_m;
  j["sample_rate_hz"] = c.motion.sample_rate_hz;
  j["lead_in_s"] = c.motion.lead_in_s;
  j["tail_s"] = c.motion.tail_s;
  j["ma_window"] = c.detect.ma_window;
  j["pair"] = c.detect.pair;
  j["check_pair"] = c.detect.check_pair ? ordered_json(*c.detect.check_pair) : ordered_json(nullptr);
  j["baseline_frames"] = c.detect.segment.baseline_frames;
  j["k_sigma"] = c.detect.segment.k_sigma;
  j["threshold_floor"] = c.detect.segment.floor;
  j["min_segment_frames"] = c.detect.segment.min_segment_frames;
  j["merge_gap_frames"] = c.detect.segment.merge_gap_frames;
  j["gate_rel"] = c.detect.gate_rel;
  j["prominence_rel"] = c.detect.prominence_rel;
  j["segment_pad_frames"] = c.detect.segment_pad_frames;
  j["smooth_agc"] = c.detect.smooth_agc;
  j["master_seed"] = c.master_seed;
  j["threads"] = c.threads;
  return j.dump(2) + "\n";
}

SuiteConfig suite_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte == 0 ? 1 : static_cast<std::size_t>(std::count(
                                           text.begin(), text.begin() + static_cast<std::ptrdiff_t>(
                                                                         std::min(e.byte, text.size())),
                                           '\n')) + 1,
                     std::string("malformed suite config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(1, "suite config must be a JSON object");

  SuiteConfig c;
  auto get = [&](const char* key, auto& field) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    try {
      it->get_to(field);
    } catch (const json::exception&) {
      throw InvalidArgument(std::string("suite config field '") + key + "' has the wrong type");
    }
  };
  get("n_crossings", c.n_crossings);
  get("n_turnbacks", c.n_turnbacks);
  get("n_walkbys", c.n_walkbys);
  get("los_distances_m", c.los_distances_m);
  get("offsets_rel", c.offsets_rel);
  get("angles_deg", c.angles_deg);
  get("body_lens_m", c.body_lens_m);
  if (const auto it = j.find("snr_levels_db"); it != j.end()) {
    if (!it->is_array()) throw InvalidArgument("snr_levels_db must be an array");
    c.snr_levels_db.clear();
    for (const auto& v : *it) {
      if (v.is_null()) {
        c.snr_levels_db.emplace_back();
      } else if (v.is_number()) {
        c.snr_levels_db.emplace_back(v.get<double>());
      } else {
        throw InvalidArgument("snr_levels_db entries must be numbers or null");
      }
    }
  }
  get("turnback_nearest_min_m", c.turnback_nearest_min_m);
  get("turnback_nearest_max_m", c.turnback_nearest_max_m);
  get("walkby_standoff_min_m", c.walkby_standoff_min_m);
  get("walkby_standoff_max_m", c.walkby_standoff_max_m);
  get("phase_drift_rad", c.phase_drift_rad);
  get("e0", c.e0);
  get("num_antennas", c.num_antennas);
  get("carrier_hz", c.carrier_hz);
  get("speed_mps", c.motion.speed_mps);
  get("approach_dist_m", c.motion.approach_dist_m);
  get("sample_rate_hz", c.motion.sample_rate_hz);
  get("lead_in_s", c.motion.lead_in_s);
  get("tail_s", c.motion.tail_s);
  get("ma_window", c.detect.ma_window);
  get("pair", c.detect.pair);
  if (const auto it = j.find("check_pair"); it != j.end()) {
    if (it->is_null()) {
      c.detect.check_pair.reset();
    } else {
      AntennaPair p;
      get("check_pair", p);
      c.detect.check_pair = p;
    }
  }
  get("baseline_frames", c.detect.segment.baseline_frames);
  get("k_sigma", c.detect.segment.k_sigma);
  get("threshold_floor", c.detect.segment.floor);
  get("min_segment_frames", c.detect.segment.min_segment_frames);
  get("merge_gap_frames", c.detect.segment.merge_gap_frames);
  get("gate_rel", c.detect.gate_rel);
  get("prominence_rel", c.detect.prominence_rel);
  get("segment_pad_frames", c.detect.segment_pad_frames);
  get("smooth_agc", c.detect.smooth_agc);
  get("master_seed", c.master_seed);
  get("threads", c.threads);
  c.validate();
  return c;
}

}  // namespace doorcsi
