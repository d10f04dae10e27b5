// SPDX-License-Identifier: Apache-2.0
//
// Shared domain types for the doorway CSI toolkit: planar geometry,
// target trajectories and multi-antenna CSI traces.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace doorcsi {

using Complex = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Errors. Every failure the library reports derives from one of these so the
// CLI can map them to exit codes.

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the processing pipeline (synthesis and detection).
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularGeometry : public PipelineError {
 public:
  using PipelineError::PipelineError;
};

class DegenerateDenominator : public PipelineError {
 public:
  DegenerateDenominator(std::size_t frame, const std::string& what)
      : PipelineError(what), frame_(frame) {}
  std::size_t frame() const noexcept { return frame_; }

 private:
  std::size_t frame_;
};

class InsufficientBaseline : public PipelineError {
 public:
  using PipelineError::PipelineError;
};

class InsufficientData : public PipelineError {
 public:
  using PipelineError::PipelineError;
};

// ---------------------------------------------------------------------------

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Wavelength in meters for a carrier in Hz.
double wavelength(double carrier_hz);

/// Transceiver layout. The receiver position is antenna 0; every antenna
/// position is rx_pos + rx_antenna_offsets[i] (offset 0 is the zero vector).
struct Geometry {
  Vec2 tx_pos;
  Vec2 rx_pos;
  std::vector<Vec2> rx_antenna_offsets;
  double carrier_hz = 5.24e9;
  double wavelength_m = wavelength(5.24e9);

  /// Tx at the origin, Rx at (los_distance, 0), antennas 1.. stacked at
  /// multiples of half a wavelength perpendicular to the LoS.
  static Geometry doorway(double los_distance_m, double carrier_hz = 5.24e9,
                          std::size_t num_antennas = 3);

  std::size_t num_antennas() const { return rx_antenna_offsets.size(); }
  Vec2 antenna_pos(std::size_t index) const;
  double los_distance() const { return norm(rx_pos - tx_pos); }
  Vec2 los_direction() const;  // unit vector tx -> rx
  Vec2 los_normal() const;     // los_direction rotated +90 degrees
  Vec2 los_midpoint() const { return 0.5 * (tx_pos + rx_pos); }

  /// Throws InvalidArgument when any invariant is broken.
  void validate() const;
};

/// r_T + r_R for a scatterer at p, relative to antenna 0.
double path_sum(const Geometry& geometry, Vec2 p);

/// Same, relative to an arbitrary receive antenna.
double path_sum(const Geometry& geometry, std::size_t rx_antenna, Vec2 p);

/// Signed distance of p from the infinite LoS line; positive on the side the
/// los_normal() points to.
double signed_distance_to_los(const Geometry& geometry, Vec2 p);

struct TargetState {
  double t = 0.0;        // s
  Vec2 center;           // m
  double heading = 0.0;  // rad, direction of motion
  double body_len_m = 0.4;
};

struct Trajectory {
  double sample_rate_hz = 1000.0;
  std::vector<TargetState> states;

  void validate() const;
};

struct CsiFrame {
  double t = 0.0;
  double agc = 0.0;
  std::vector<Complex> samples;  // one per receive antenna

  friend bool operator==(const CsiFrame&, const CsiFrame&) = default;
};

struct CsiTrace {
  Geometry geometry;
  double sample_rate_hz = 1000.0;
  std::vector<CsiFrame> frames;
  std::map<std::string, std::string> meta;

  std::size_t size() const { return frames.size(); }
  std::vector<Complex> antenna_series(std::size_t antenna) const;
  std::vector<double> agc_series() const;

  void validate() const;
};

bool operator==(const Geometry& a, const Geometry& b);
bool operator==(const CsiTrace& a, const CsiTrace& b);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

}  // namespace doorcsi
