// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "doorcsi/detect.hpp"
#include "doorcsi/synth.hpp"
#include "oracles.hpp"

using namespace doorcsi;

namespace {

SynthConfig clean() {
  SynthConfig c;
  c.phase_drift_per_frame_rad = 0.0;
  return c;
}

std::vector<Complex> random_walk(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  std::vector<Complex> v(n);
  Complex z{1.0, 0.0};
  for (auto& x : v) {
    z += Complex{nd(gen), nd(gen)} * 0.1;
    x = z;
  }
  return v;
}

std::vector<std::size_t> indices(const std::vector<Extremum>& e) {
  std::vector<std::size_t> out;
  for (const auto& x : e) out.push_back(x.index);
  return out;
}

PhasePattern pattern_of(const std::vector<double>& s, double prominence_rel = 0.15) {
  const Extrema e = find_extrema(s, prominence_rel);
  PhasePattern p;
  p.phase_sum = s;
  p.maxima = e.maxima;
  p.minima = e.minima;
  p.prominence_threshold = e.threshold;
  return p;
}

CsiTrace reversed(const CsiTrace& tr) {
  CsiTrace out = tr;
  std::reverse(out.frames.begin(), out.frames.end());
  for (std::size_t i = 0; i < out.frames.size(); ++i) out.frames[i].t = tr.frames[i].t;
  return out;
}

}  // namespace

TEST_CASE("phase_track on a pure tone is linear") {
  const double w = 0.05;
  std::vector<Complex> r(1000);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::polar(1.0, w * static_cast<double>(i));
  const PhaseTrack t = phase_track(r, 0.1);
  REQUIRE(t.phase_sum.size() == 999);
  CHECK(t.gated_fraction == 0.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < t.phase_sum.size(); ++j) {
    worst = std::max(worst, std::abs(t.phase_sum[j] - w * static_cast<double>(j)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("phase_track errors") {
  const std::vector<Complex> constant(100, Complex{0.3, 0.2});
  CHECK_THROWS_AS(phase_track(constant, 0.1), InsufficientData);
  CHECK_THROWS_AS(phase_track(constant, 0.0), InsufficientData);
  const std::vector<Complex> two{{1.0, 0.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(phase_track(two, 0.1), InsufficientData);
  CHECK_THROWS_AS(phase_track(random_walk(10, 1), -0.1), InvalidArgument);
  try {
    phase_track(constant, 0.1);
  } catch (const PipelineError&) {
    CHECK(true);
  }
}

TEST_CASE("phase_track equals brute-force Algorithm 1 with the gate off") {
  std::mt19937_64 gen(31);
  std::uniform_int_distribution<int> len(3, 3000);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = random_walk(static_cast<std::size_t>(len(gen)), 100 + trial);
    const PhaseTrack t = phase_track(r, 0.0);
    const auto ref = oracle::algorithm1(r);
    REQUIRE(t.phase_sum.size() == ref.size());
    for (std::size_t j = 0; j < ref.size(); ++j) CHECK(std::abs(t.phase_sum[j] - ref[j]) <= 1e-12);
    CHECK(t.phase_sum[0] == 0.0);
  }
}

TEST_CASE("phase_track gate drops small differences") {
  std::vector<Complex> r;
  Complex z{0.0, 0.0};
  for (int i = 0; i < 200; ++i) {
    z += (i % 10 == 5) ? Complex{1e-6, 0.0} : std::polar(1.0, 0.01 * i);
    r.push_back(z);
  }
  const PhaseTrack t = phase_track(r, 0.1);
  CHECK(t.phase_sum.size() == 199 - 20);
  CHECK(t.gated_fraction == doctest::Approx(20.0 / 199.0));
  for (std::size_t idx : t.source_index) CHECK(idx % 10 != 4);
  CHECK(std::is_sorted(t.source_index.begin(), t.source_index.end()));
}

TEST_CASE("phase_track is invariant under a constant rotation") {
  const auto r = random_walk(2000, 7);
  std::vector<Complex> rot = r;
  for (auto& v : rot) v *= std::polar(1.0, 2.1);
  const PhaseTrack a = phase_track(r, 0.1);
  const PhaseTrack b = phase_track(rot, 0.1);
  REQUIRE(a.phase_sum.size() == b.phase_sum.size());
  for (std::size_t j = 0; j < a.phase_sum.size(); ++j) CHECK(std::abs(a.phase_sum[j] - b.phase_sum[j]) < 1e-9);
}

TEST_CASE("find_extrema examples") {
  std::vector<double> tri;
  for (int i = 0; i <= 100; ++i) tri.push_back(i <= 50 ? i : 100 - i);
  Extrema e = find_extrema(tri, 0.15);
  REQUIRE(e.maxima.size() == 1);
  CHECK(e.maxima[0].index == 50);
  CHECK(indices(e.minima) == std::vector<std::size_t>{0, 100});

  std::vector<double> w;
  for (int i = 0; i <= 200; ++i) w.push_back(std::abs(std::sin(kPi * i / 100.0)));
  e = find_extrema(w, 0.15);
  CHECK(e.maxima.size() == 2);
  CHECK(indices(e.minima) == std::vector<std::size_t>{0, 100, 200});

  std::vector<double> rippled;
  for (int i = 0; i <= 1000; ++i) {
    rippled.push_back(std::sin(kPi * i / 1000.0) + 0.05 * std::sin(0.3 * i));
  }
  e = find_extrema(rippled, 0.15);
  CHECK(e.maxima.size() == 1);
  CHECK(oracle::raw_local_maxima(rippled).size() > 10);

  const std::vector<double> flat(50, 1.0);
  e = find_extrema(flat, 0.15);
  CHECK(e.maxima.empty());
  CHECK(e.minima.empty());

  CHECK_THROWS_AS(find_extrema(std::vector<double>{1.0, 2.0}, 0.15), InsufficientData);
}

TEST_CASE("find_extrema: endpoints are minima only") {
  std::vector<double> ramp;
  for (int i = 0; i < 100; ++i) ramp.push_back(i);
  const Extrema e = find_extrema(ramp, 0.15);
  CHECK(e.maxima.empty());
  CHECK(indices(e.minima) == std::vector<std::size_t>{0});
}

TEST_CASE("find_extrema invariants on random walks") {
  std::mt19937_64 gen(41);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s{0.0};
    for (int i = 0; i < 500; ++i) s.push_back(s.back() + nd(gen));
    for (double rel : {0.0, 0.05, 0.15, 0.4}) {
      const Extrema e = find_extrema(s, rel);
      for (const auto& m : e.maxima) {
        CHECK(m.prominence >= e.threshold);
        CHECK(m.index > 0);
        CHECK(m.index + 1 < s.size());
        CHECK(m.value == s[m.index]);
      }
      std::vector<std::pair<std::size_t, bool>> all;
      for (const auto& m : e.maxima) all.push_back({m.index, true});
      for (const auto& m : e.minima) all.push_back({m.index, false});
      std::sort(all.begin(), all.end());
      for (std::size_t k = 1; k < all.size(); ++k) {
        CHECK(all[k].first > all[k - 1].first);
        CHECK(all[k].second != all[k - 1].second);
      }
    }
  }
}

TEST_CASE("classify examples") {
  std::vector<double> tri;
  for (int i = 0; i <= 100; ++i) tri.push_back(i <= 50 ? i : 100 - i);
  CHECK(classify(pattern_of(tri)) == Behavior::Crossing);

  std::vector<double> w;
  for (int i = 0; i <= 200; ++i) w.push_back(std::abs(std::sin(kPi * i / 100.0)));
  CHECK(classify(pattern_of(w)) == Behavior::TurnBack);

  std::vector<double> ramp;
  for (int i = 0; i < 100; ++i) ramp.push_back(i);
  CHECK(classify(pattern_of(ramp)) != Behavior::Crossing);

  // One prominent maximum, but the tail climbs back above max - threshold.
  std::vector<double> shoulder;
  for (int i = 0; i <= 100; ++i) {
    shoulder.push_back(i <= 50 ? i : i <= 70 ? 50.0 - (i - 50) : 30.0 + 0.5 * (i - 70));
  }
  const PhasePattern sp = pattern_of(shoulder);
  CHECK(sp.maxima.size() == 1);
  CHECK(classify(sp) == Behavior::WalkBy);

  CHECK(classify(pattern_of(std::vector<double>(20, 0.0))) == Behavior::NoEvent);
  CHECK(classify(PhasePattern{}) == Behavior::NoEvent);
}

TEST_CASE("behavior names round-trip") {
  for (Behavior b : {Behavior::Crossing, Behavior::TurnBack, Behavior::WalkBy, Behavior::NoEvent}) {
    CHECK(behavior_from_string(to_string(b)) == b);
  }
  CHECK_THROWS_AS(behavior_from_string("Sprint"), InvalidArgument);
}

TEST_CASE("detect: parked target yields nothing") {
  const Geometry g = Geometry::doorway(2.0);
  Trajectory t;
  for (int i = 0; i < 3000; ++i) t.states.push_back({i / 1000.0, {1.0, 1.5}, 0.0, 0.4});
  CHECK(detect(synthesize_trace(g, t, clean())).empty());
  SynthConfig noisy;
  noisy.noise_snr_db = 20.0;
  CHECK(detect(synthesize_trace(g, t, noisy)).empty());
}

TEST_CASE("detect: noiseless crossing is one Crossing detection") {
  const Geometry g = Geometry::doorway(2.0);
  const auto dets = detect(synthesize_trace(g, make_crossing(g, 0.0, 0.0, MotionParams{}), clean()));
  REQUIRE(dets.size() == 1);
  CHECK(dets[0].label == Behavior::Crossing);
  CHECK(dets[0].binary);
  CHECK(dets[0].check_label == Behavior::Crossing);
  CHECK(!dets[0].check_disagrees());
  CHECK(dets[0].pattern.phase_sum.front() == 0.0);
}

TEST_CASE("detect: binary flag mirrors the label") {
  const Geometry g = Geometry::doorway(1.5);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    SynthConfig cfg;
    cfg.noise_snr_db = 15.0;
    cfg.rng_seed = seed;
    for (const auto& t : {make_crossing(g, 0.1, 0.3, MotionParams{}), make_walkby(g, 0.8, MotionParams{}),
                          make_turnback(g, 0.2, 0.0, 0.0, MotionParams{})}) {
      for (const auto& d : detect(synthesize_trace(g, t, cfg))) CHECK(d.binary == (d.label == Behavior::Crossing));
    }
  }
}

TEST_CASE("detect is invariant to a global complex gain") {
  const Geometry g = Geometry::doorway(2.0);
  SynthConfig cfg;
  cfg.noise_snr_db = 25.0;
  cfg.rng_seed = 8;
  const CsiTrace tr = synthesize_trace(g, make_crossing(g, 0.2, -0.5, MotionParams{}), cfg);
  CsiTrace scaled = tr;
  const Complex k = std::polar(3.7, -1.1);
  for (auto& f : scaled.frames) {
    for (auto& s : f.samples) s *= k;
    f.agc = agc_model(f.samples);
  }
  const auto a = detect(tr);
  const auto b = detect(scaled);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    CHECK(a[i].segment == b[i].segment);
    CHECK(indices(a[i].pattern.maxima) == indices(b[i].pattern.maxima));
    CHECK(indices(a[i].pattern.minima) == indices(b[i].pattern.minima));
  }
}

// Labels and segments only: the moving average runs before the ratio, so it
// averages samples whose common phase differs and the extremum positions can
// move (see test_known_defects.cpp).
TEST_CASE("detect labels are invariant to the common-phase impairment at zero noise") {
  const Geometry g = Geometry::doorway(2.0);
  for (double ang : {0.0, 0.6}) {
    const Trajectory t = make_crossing(g, -0.2, ang, MotionParams{});
    SynthConfig drift;
    drift.rng_seed = 12;
    const auto a = detect(synthesize_trace(g, t, drift));
    const auto b = detect(synthesize_trace(g, t, clean()));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].label == b[i].label);
      CHECK(a[i].segment == b[i].segment);
    }
  }
}

TEST_CASE("detect: a reversed crossing is still a crossing") {
  const Geometry g = Geometry::doorway(2.0);
  for (double ang : {-0.6, 0.0, 0.4}) {
    const CsiTrace tr = synthesize_trace(g, make_crossing(g, 0.1, ang, MotionParams{}), clean());
    CHECK(any_crossing(detect(tr)));
    CHECK(any_crossing(detect(reversed(tr))));
  }
}

TEST_CASE("detect: errors carry trace context") {
  const Geometry g = Geometry::doorway(2.0);
  CsiTrace tr = synthesize_trace(g, make_crossing(g, 0.0, 0.0, MotionParams{}), clean(), "door-7");
  CsiTrace zeroed = tr;
  zeroed.frames[1234].samples[1] = 0.0;
  zeroed.frames[1234].agc = agc_model(zeroed.frames[1234].samples);
  // The moving average spreads one zero sample; zero the whole window.
  for (std::size_t i = 1200; i < 1300; ++i) zeroed.frames[i].samples[1] = 0.0;
  try {
    detect(zeroed);
    FAIL("expected DegenerateDenominator");
  } catch (const DegenerateDenominator& e) {
    CHECK(std::string(e.what()).find("door-7") != std::string::npos);
    CHECK(e.frame() >= 1200);
  }

  CsiTrace short_trace = tr;
  short_trace.frames.resize(400);
  CHECK_THROWS_AS(detect(short_trace), InsufficientBaseline);

  DetectParams bad;
  bad.ma_window = 0;
  CHECK_THROWS_AS(detect(tr, bad), InvalidArgument);
  bad = {};
  bad.pair = {1, 1};
  CHECK_THROWS_AS(detect(tr, bad), InvalidArgument);
  bad = {};
  bad.pair = {0, 5};
  CHECK_THROWS_AS(detect(tr, bad), InvalidArgument);
}

TEST_CASE("detect is deterministic") {
  const Geometry g = Geometry::doorway(2.5);
  SynthConfig cfg;
  cfg.noise_snr_db = 20.0;
  cfg.rng_seed = 77;
  const CsiTrace tr = synthesize_trace(g, make_crossing(g, 0.25, 0.2, MotionParams{}), cfg);
  const auto a = detect(tr);
  const auto b = detect(tr);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].pattern.phase_sum == b[i].pattern.phase_sum);
    CHECK(a[i].label == b[i].label);
  }
}
