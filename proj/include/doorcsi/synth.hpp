// SPDX-License-Identifier: Apache-2.0
//
// CSI synthesis from the finite-scatterer diffraction model
//
//   H = H_los + (-i / 2 lambda) * E0 e^{i phi0} / sqrt(4 pi)
//             * integral over the body segment of e^{-i 2 pi (r_T + r_R) / lambda} / (r_T r_R) dL'
//
// plus receiver impairments: a per-frame common phase (unsynchronized
// clocks) and circularly symmetric white Gaussian noise.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "doorcsi/core.hpp"

namespace doorcsi {

enum class Quadrature { GaussLegendre, Midpoint };

struct SynthConfig {
  double e0 = 2.0;
  double phi0 = 0.0;
  Complex los_gain{1.0, 0.0};
  int n_integration_points = 64;
  Quadrature quadrature = Quadrature::GaussLegendre;
  std::optional<double> noise_snr_db;  // empty = noiseless
  double phase_drift_per_frame_rad = 0.2;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// H_target for one receive antenna: n-point quadrature (Gauss-Legendre by
/// default, or the midpoint rule) over a segment of length state.body_len_m
/// centered on state.center, perpendicular to the heading. Throws SingularGeometry if an integration point sits on a
/// transceiver.
Complex diffraction_response(const Geometry& geometry, std::size_t rx_antenna,
                             const TargetState& state, const SynthConfig& cfg);

/// Gain indicator for one frame: -10 log10(mean |s|^2). Returns kAgcCeiling
/// for an all-zero frame.
inline constexpr double kAgcCeiling = 120.0;
double agc_model(std::span<const Complex> frame_samples);

/// One frame per trajectory state. Deterministic in cfg.rng_seed.
CsiTrace synthesize_trace(const Geometry& geometry, const Trajectory& trajectory,
                          const SynthConfig& cfg, const std::string& label = {});

// ---------------------------------------------------------------------------
// Scripted trajectories. All of them hold the target parked at the first
// position for lead_in_s and at the last one for tail_s, which gives the
// AGC segmenter its quiet baseline.

struct MotionParams {
  double speed_mps = 1.0;
  double approach_dist_m = 2.0;
  double sample_rate_hz = 1000.0;
  double lead_in_s = 1.0;
  double tail_s = 1.0;
  double body_len_m = 0.4;

  void validate() const;
};

/// Straight line through a point on the LoS segment. cross_offset_m is
/// measured along the LoS from its midpoint; angle_rad is the deviation of
/// the walking direction from the LoS normal. The walk starts on the
/// negative-normal side unless from_positive_side is set.
Trajectory make_crossing(const Geometry& geometry, double cross_offset_m, double angle_rad,
                         const MotionParams& motion, bool from_positive_side = false);

enum class TurnStyle { Reverse, Mirror };

/// Walks toward the LoS line, stops its approach at nearest_approach_m from
/// it and walks away again, either retracing the incoming line (Reverse) or
/// leaving along its mirror image about the LoS normal (Mirror). Each leg is
/// approach_dist_m long.
Trajectory make_turnback(const Geometry& geometry, double nearest_approach_m,
                         double cross_offset_m, double angle_rad, const MotionParams& motion,
                         TurnStyle style = TurnStyle::Reverse, bool from_positive_side = false);

/// Walks parallel to the LoS at a fixed standoff, centered on the LoS
/// midpoint shifted by along_offset_m; total length 2 * approach_dist_m.
Trajectory make_walkby(const Geometry& geometry, double standoff_m, const MotionParams& motion,
                       double along_offset_m = 0.0, bool from_positive_side = false);

}  // namespace doorcsi
