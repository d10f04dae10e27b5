// SPDX-License-Identifier: Apache-2.0

#include "doorcsi/core.hpp"

#include <string>

namespace doorcsi {

double wavelength(double carrier_hz) {
  if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz)) {
    throw InvalidArgument("carrier frequency must be positive and finite, got " +
                          std::to_string(carrier_hz));
  }
  return kSpeedOfLight / carrier_hz;
}

Geometry Geometry::doorway(double los_distance_m, double carrier_hz, std::size_t num_antennas) {
  Geometry g;
  g.tx_pos = {0.0, 0.0};
  g.rx_pos = {los_distance_m, 0.0};
  g.carrier_hz = carrier_hz;
  g.wavelength_m = wavelength(carrier_hz);
  g.rx_antenna_offsets.reserve(num_antennas);
  for (std::size_t i = 0; i < num_antennas; ++i) {
    g.rx_antenna_offsets.push_back({0.0, 0.5 * g.wavelength_m * static_cast<double>(i)});
  }
  g.validate();
  return g;
}

Vec2 Geometry::antenna_pos(std::size_t index) const {
  if (index >= rx_antenna_offsets.size()) {
    throw InvalidArgument("antenna index " + std::to_string(index) + " out of range (" +
                          std::to_string(rx_antenna_offsets.size()) + " antennas)");
  }
  return rx_pos + rx_antenna_offsets[index];
}

Vec2 Geometry::los_direction() const {
  const Vec2 d = rx_pos - tx_pos;
  return (1.0 / norm(d)) * d;
}

Vec2 Geometry::los_normal() const {
  const Vec2 u = los_direction();
  return {-u.y, u.x};
}

void Geometry::validate() const {
  if (!(carrier_hz > 0.0)) throw InvalidArgument("carrier_hz must be positive");
  const double expected = kSpeedOfLight / carrier_hz;
  if (!(std::abs(wavelength_m - expected) <= 1e-9 * expected)) {
    throw InvalidArgument("wavelength_m inconsistent with carrier_hz");
  }
  if (!(los_distance() > 0.0)) throw InvalidArgument("tx_pos and rx_pos coincide");
  if (rx_antenna_offsets.size() < 2) {
    throw InvalidArgument("at least two receive antennas are required");
  }
  if (!(rx_antenna_offsets.front() == Vec2{})) {
    throw InvalidArgument("antenna offset 0 must be the zero vector");
  }
}

double path_sum(const Geometry& geometry, Vec2 p) { return path_sum(geometry, 0, p); }

double path_sum(const Geometry& geometry, std::size_t rx_antenna, Vec2 p) {
  return norm(p - geometry.tx_pos) + norm(p - geometry.antenna_pos(rx_antenna));
}

double signed_distance_to_los(const Geometry& geometry, Vec2 p) {
  return dot(p - geometry.tx_pos, geometry.los_normal());
}

void Trajectory::validate() const {
  if (states.empty()) throw InvalidArgument("trajectory is empty");
  if (!(sample_rate_hz > 0.0)) throw InvalidArgument("sample_rate_hz must be positive");
  const double dt = 1.0 / sample_rate_hz;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!(states[i].body_len_m > 0.0)) {
      throw InvalidArgument("body_len_m must be positive (state " + std::to_string(i) + ")");
    }
    if (i > 0 && std::abs(states[i].t - states[i - 1].t - dt) > 1e-9) {
      throw InvalidArgument("trajectory timestamps are not spaced at 1/sample_rate_hz (state " +
                            std::to_string(i) + ")");
    }
  }
}

std::vector<Complex> CsiTrace::antenna_series(std::size_t antenna) const {
  if (antenna >= geometry.num_antennas()) {
    throw InvalidArgument("antenna index " + std::to_string(antenna) + " out of range");
  }
  std::vector<Complex> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(f.samples[antenna]);
  return out;
}

std::vector<double> CsiTrace::agc_series() const {
  std::vector<double> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(f.agc);
  return out;
}

void CsiTrace::validate() const {
  geometry.validate();
  if (!(sample_rate_hz > 0.0)) throw InvalidArgument("sample_rate_hz must be positive");
  const std::size_t n_ant = geometry.num_antennas();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    if (f.samples.size() != n_ant) {
      throw InvalidArgument("frame " + std::to_string(i) + " has " +
                            std::to_string(f.samples.size()) + " samples, expected " +
                            std::to_string(n_ant));
    }
    for (const auto& s : f.samples) {
      if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw InvalidArgument("frame " + std::to_string(i) + " holds a non-finite sample");
      }
    }
    if (i > 0 && !(f.t > frames[i - 1].t)) {
      throw InvalidArgument("frame timestamps must be strictly increasing (frame " +
                            std::to_string(i) + ")");
    }
  }
}

bool operator==(const Geometry& a, const Geometry& b) {
  return a.tx_pos == b.tx_pos && a.rx_pos == b.rx_pos &&
         a.rx_antenna_offsets == b.rx_antenna_offsets && a.carrier_hz == b.carrier_hz &&
         a.wavelength_m == b.wavelength_m;
}

bool operator==(const CsiTrace& a, const CsiTrace& b) {
  return a.geometry == b.geometry && a.sample_rate_hz == b.sample_rate_hz &&
         a.frames == b.frames && a.meta == b.meta;
}

double wrap_phase(double angle) {
  double w = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace doorcsi
