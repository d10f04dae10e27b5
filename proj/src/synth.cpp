// SPDX-License-Identifier: Apache-2.0

#include "doorcsi/synth.hpp"

#include <cmath>
#include <map>
#include <utility>
#include <vector>
#include <sstream>
#include <string>

#include "doorcsi/rng.hpp"

namespace doorcsi {

namespace {

constexpr double kMinRange = 1e-12;  // m

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Appends lead-in/tail parking and timestamps to a list of moving positions.
Trajectory assemble(const std::vector<std::pair<Vec2, double>>& moving,
                    const MotionParams& motion) {
  Trajectory tr;
  tr.sample_rate_hz = motion.sample_rate_hz;
  const auto lead = static_cast<std::size_t>(std::llround(motion.lead_in_s * motion.sample_rate_hz));
  const auto tail = static_cast<std::size_t>(std::llround(motion.tail_s * motion.sample_rate_hz));
  tr.states.reserve(lead + moving.size() + tail);
  auto push = [&](Vec2 c, double heading) {
    const double t = static_cast<double>(tr.states.size()) / motion.sample_rate_hz;
    tr.states.push_back({t, c, heading, motion.body_len_m});
  };
  for (std::size_t i = 0; i < lead; ++i) push(moving.front().first, moving.front().second);
  for (const auto& [c, h] : moving) push(c, h);
  for (std::size_t i = 0; i < tail; ++i) push(moving.back().first, moving.back().second);
  return tr;
}

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre nodes by Newton iteration on P_n from the Tricomi initial
// guess, weights 2 / ((1 - x^2) P_n'(x)^2).
QuadratureRule gauss_legendre(int n) {
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

QuadratureRule midpoint(int n) {
  QuadratureRule r;
  for (int j = 0; j < n; ++j) {
    r.nodes.push_back(-1.0 + (2.0 * j + 1.0) / n);
    r.weights.push_back(2.0 / n);
  }
  return r;
}

const QuadratureRule& rule_for(Quadrature q, int n) {
  thread_local std::map<std::pair<Quadrature, int>, QuadratureRule> cache;
  const auto key = std::make_pair(q, n);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, q == Quadrature::GaussLegendre ? gauss_legendre(n) : midpoint(n)).first;
  }
  return it->second;
}

double heading_of(Vec2 d) { return std::atan2(d.y, d.x); }

// Positions along a straight leg, sampled every speed/fs meters, including
// both ends when the leg length is a whole number of steps.
std::size_t leg_steps(double length, const MotionParams& m) {
  return static_cast<std::size_t>(std::llround(length / m.speed_mps * m.sample_rate_hz));
}

}  // namespace

void SynthConfig::validate() const {
  if (!(e0 > 0.0)) throw InvalidArgument("e0 must be positive");
  if (n_integration_points < 2) throw InvalidArgument("n_integration_points must be >= 2");
  if (!(std::abs(los_gain) > 0.0)) throw InvalidArgument("los_gain must be nonzero");
  if (!(phase_drift_per_frame_rad >= 0.0)) {
    throw InvalidArgument("phase_drift_per_frame_rad must be non-negative");
  }
  if (noise_snr_db && !std::isfinite(*noise_snr_db)) {
    throw InvalidArgument("noise_snr_db must be finite");
  }
}

Complex diffraction_response(const Geometry& geometry, std::size_t rx_antenna,
                             const TargetState& state, const SynthConfig& cfg) {
  const Vec2 tx = geometry.tx_pos;
  const Vec2 rx = geometry.antenna_pos(rx_antenna);
  const double lambda = geometry.wavelength_m;
  const double k = 2.0 * kPi / lambda;
  const QuadratureRule& rule = rule_for(cfg.quadrature, cfg.n_integration_points);
  const double half = 0.5 * state.body_len_m;
  const Vec2 along{-std::sin(state.heading), std::cos(state.heading)};

  Complex sum{0.0, 0.0};
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const Vec2 p = state.center + (half * rule.nodes[j]) * along;
    const double r_t = norm(p - tx);
    const double r_r = norm(p - rx);
    if (r_t < kMinRange || r_r < kMinRange) {
      throw SingularGeometry("scatterer point coincides with a transceiver at t=" +
                             std::to_string(state.t));
    }
    sum += std::polar(rule.weights[j] / (r_t * r_r), -k * (r_t + r_r));
  }
  const Complex prefactor = Complex{0.0, -1.0} / (2.0 * lambda) * cfg.e0 *
                            std::polar(1.0, cfg.phi0) / std::sqrt(4.0 * kPi);
  return prefactor * sum * half;
}

double agc_model(std::span<const Complex> frame_samples) {
  if (frame_samples.empty()) throw InvalidArgument("agc_model needs at least one sample");
  double power = 0.0;
  for (const auto& s : frame_samples) power += std::norm(s);
  power /= static_cast<double>(frame_samples.size());
  if (power <= 0.0) return kAgcCeiling;
  return -10.0 * std::log10(power);
}

CsiTrace synthesize_trace(const Geometry& geometry, const Trajectory& trajectory,
                          const SynthConfig& cfg, const std::string& label) {
  geometry.validate();
  trajectory.validate();
  cfg.validate();

  // Separate streams so the noise realization does not depend on drift.
  Rng drift_rng(derive_seed(cfg.rng_seed, 1));
  Rng noise_rng(derive_seed(cfg.rng_seed, 2));
  const bool noisy = cfg.noise_snr_db.has_value();
  const double noise_sigma =
      noisy ? std::abs(cfg.los_gain) * std::pow(10.0, -*cfg.noise_snr_db / 20.0) / std::sqrt(2.0)
            : 0.0;

  const std::size_t n_ant = geometry.num_antennas();
  CsiTrace trace;
  trace.geometry = geometry;
  trace.sample_rate_hz = trajectory.sample_rate_hz;
  trace.frames.reserve(trajectory.states.size());

  double common_phase = 0.0;
  for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
    const TargetState& st = trajectory.states[i];
    if (i > 0 && cfg.phase_drift_per_frame_rad > 0.0) {
      common_phase +=
          drift_rng.uniform(-cfg.phase_drift_per_frame_rad, cfg.phase_drift_per_frame_rad);
    }
    const Complex rotation = std::polar(1.0, common_phase);
    CsiFrame frame;
    frame.t = st.t;
    frame.samples.resize(n_ant);
    for (std::size_t a = 0; a < n_ant; ++a) {
      Complex s = (cfg.los_gain + diffraction_response(geometry, a, st, cfg)) * rotation;
      if (noisy) {
        const double re = noise_rng.normal();
        const double im = noise_rng.normal();
        s += Complex{noise_sigma * re, noise_sigma * im};
      }
      frame.samples[a] = s;
    }
    frame.agc = agc_model(frame.samples);
    trace.frames.push_back(std::move(frame));
  }

  trace.meta["seed"] = std::to_string(cfg.rng_seed);
  if (!label.empty()) trace.meta["label"] = label;
  trace.meta["e0"] = fmt_double(cfg.e0);
  trace.meta["drift_rad"] = fmt_double(cfg.phase_drift_per_frame_rad);
  trace.meta["snr_db"] = noisy ? fmt_double(*cfg.noise_snr_db) : "none";
  return trace;
}

// ---------------------------------------------------------------------------

void MotionParams::validate() const {
  if (!(speed_mps > 0.0)) throw InvalidArgument("speed must be positive");
  if (!(approach_dist_m > 0.0)) throw InvalidArgument("approach distance must be positive");
  if (!(sample_rate_hz > 0.0)) throw InvalidArgument("sample rate must be positive");
  if (!(lead_in_s >= 0.0) || !(tail_s >= 0.0)) {
    throw InvalidArgument("lead-in and tail durations must be non-negative");
  }
  if (!(body_len_m > 0.0)) throw InvalidArgument("body length must be positive");
}

Trajectory make_crossing(const Geometry& geometry, double cross_offset_m, double angle_rad,
                         const MotionParams& motion, bool from_positive_side) {
  motion.validate();
  const double half = 0.5 * geometry.los_distance();
  if (!(std::abs(cross_offset_m) < half)) {
    throw InvalidArgument("cross point must lie strictly between the transceivers");
  }
  if (!(std::abs(angle_rad) < 0.5 * kPi)) {
    throw InvalidArgument("crossing angle must be within (-pi/2, pi/2)");
  }
  const Vec2 u = geometry.los_direction();
  const Vec2 n = geometry.los_normal();
  const double side = from_positive_side ? -1.0 : 1.0;
  // Direction of travel: the normal (pointing away from the start side)
  // rotated by angle_rad.
  const Vec2 d = side * (std::cos(angle_rad) * n + std::sin(angle_rad) * u);
  const Vec2 cross_pt = geometry.los_midpoint() + cross_offset_m * u;
  const Vec2 start = cross_pt - motion.approach_dist_m * d;
  const double h = heading_of(d);
  const std::size_t steps = leg_steps(2.0 * motion.approach_dist_m, motion);
  const double step = 2.0 * motion.approach_dist_m / static_cast<double>(steps);

  std::vector<std::pair<Vec2, double>> moving;
  moving.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    moving.emplace_back(start + (step * static_cast<double>(k)) * d, h);
  }
  return assemble(moving, motion);
}

Trajectory make_turnback(const Geometry& geometry, double nearest_approach_m,
                         double cross_offset_m, double angle_rad, const MotionParams& motion,
                         TurnStyle style, bool from_positive_side) {
  motion.validate();
  if (!(nearest_approach_m > 0.0)) throw InvalidArgument("nearest approach must be positive");
  if (!(std::abs(angle_rad) < 0.5 * kPi)) {
    throw InvalidArgument("approach angle must be within (-pi/2, pi/2)");
  }
  const Vec2 u = geometry.los_direction();
  const Vec2 n = geometry.los_normal();
  const double side = from_positive_side ? -1.0 : 1.0;
  const Vec2 d_in = side * (std::cos(angle_rad) * n + std::sin(angle_rad) * u);
  // Leaving direction: straight back, or mirrored about the LoS normal so the
  // walker keeps drifting sideways.
  const Vec2 d_out = style == TurnStyle::Reverse
                         ? -1.0 * d_in
                         : side * (-std::cos(angle_rad) * n + std::sin(angle_rad) * u);
  const Vec2 turn_pt =
      geometry.los_midpoint() + cross_offset_m * u - (side * nearest_approach_m) * n;
  const Vec2 start = turn_pt - motion.approach_dist_m * d_in;
  const std::size_t steps = leg_steps(motion.approach_dist_m, motion);
  const double step = motion.approach_dist_m / static_cast<double>(steps);

  std::vector<std::pair<Vec2, double>> moving;
  moving.reserve(2 * steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    moving.emplace_back(start + (step * static_cast<double>(k)) * d_in, heading_of(d_in));
  }
  for (std::size_t k = 1; k <= steps; ++k) {
    moving.emplace_back(turn_pt + (step * static_cast<double>(k)) * d_out, heading_of(d_out));
  }
  return assemble(moving, motion);
}

Trajectory make_walkby(const Geometry& geometry, double standoff_m, const MotionParams& motion,
                       double along_offset_m, bool from_positive_side) {
  motion.validate();
  if (!(standoff_m > 0.0)) throw InvalidArgument("standoff must be positive");
  const Vec2 u = geometry.los_direction();
  const Vec2 n = geometry.los_normal();
  const double side = from_positive_side ? 1.0 : -1.0;
  const Vec2 center = geometry.los_midpoint() + along_offset_m * u + (side * standoff_m) * n;
  const Vec2 start = center - motion.approach_dist_m * u;
  const std::size_t steps = leg_steps(2.0 * motion.approach_dist_m, motion);
  const double step = 2.0 * motion.approach_dist_m / static_cast<double>(steps);

  std::vector<std::pair<Vec2, double>> moving;
  moving.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    moving.emplace_back(start + (step * static_cast<double>(k)) * u, heading_of(u));
  }
  return assemble(moving, motion);
}

}  // namespace doorcsi
