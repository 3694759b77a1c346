#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sbi_forge/mg/deform.hpp"
#include "sbi_forge/mg/hull.hpp"
#include "sbi_forge/mg/mask.hpp"
#include "sbi_forge/mg/smooth.hpp"
#include "sbi_forge/stg/augment.hpp"
#include "synthetic.hpp"

using namespace sbi_forge;

namespace {

Landmarks random_points(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Landmarks lm;
  for (std::size_t i = 0; i < n; ++i) lm.points.push_back({u(rng), u(rng)});
  return lm;
}

BlendMask disk(int size, double radius) {
  BlendMask m(size, size, 0.0f);
  const double c = (size - 1) / 2.0;
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      if (std::hypot(x - c, y - c) <= radius) m.at(y, x) = 1.0f;
  return m;
}

bool support_subset(const BlendMask& a, const BlendMask& b) {
  for (std::size_t i = 0; i < a.data().size(); ++i)
    if (a.data()[i] > 0.0f && !(b.data()[i] > 0.0f)) return false;
  return true;
}

}  // namespace

TEST_CASE("convex_hull_mask: rectangle corners give a filled rectangle", "[mg][hull]") {
  Landmarks lm{{{2, 1}, {6, 1}, {6, 4}, {2, 4}}};
  const auto m = convex_hull_mask(lm, 8, 9);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 9; ++x) REQUIRE(m.at(y, x) == ((x >= 2 && x <= 6 && y >= 1 && y <= 4) ? 1.0f : 0.0f));
  CHECK(m.is_binary());
}

TEST_CASE("convex_hull_mask: triangle sets exactly x + y <= 4", "[mg][hull]") {
  Landmarks lm{{{0, 0}, {4, 0}, {0, 4}}};
  const auto m = convex_hull_mask(lm, 6, 6);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 6; ++x) REQUIRE(m.at(y, x) == (x + y <= 4 ? 1.0f : 0.0f));
}

TEST_CASE("convex_hull_mask: 81 random points on 64x64 match the half-plane oracle", "[mg][hull]") {
  std::mt19937_64 rng(21);
  const auto lm = random_points(rng, 81, -5.0, 70.0);
  const auto m = convex_hull_mask(lm, 64, 64);
  const auto ref = oracle::hull_raster(lm.points, 64, 64);
  for (std::size_t i = 0; i < ref.size(); ++i) REQUIRE(static_cast<int>(m.data()[i]) == ref[i]);
}

TEST_CASE("convex_hull_mask: oracle equality on random rasters and point sets", "[mg][hull][property]") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> dim(4, 64);
  std::uniform_int_distribution<std::size_t> count(3, 81);
  std::uniform_int_distribution<int> grid(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int h = dim(rng), w = dim(rng);
    auto lm = random_points(rng, count(rng), -4.0, std::max(h, w) + 4.0);
    // Half the cases snap to integer coordinates so pixel centers land on edges.
    if (grid(rng)) for (auto& p : lm.points) p = {std::round(p.x), std::round(p.y)};
    BlendMask m;
    try {
      m = convex_hull_mask(lm, h, w);
    } catch (const DegenerateHullError&) {
      continue;
    }
    const auto ref = oracle::hull_raster(lm.points, h, w);
    for (std::size_t i = 0; i < ref.size(); ++i) REQUIRE(static_cast<int>(m.data()[i]) == ref[i]);
  }
}

TEST_CASE("convex_hull_mask: degenerate inputs", "[mg][hull]") {
  CHECK_THROWS_AS(convex_hull_mask(Landmarks{{{0, 0}, {3, 3}}}, 8, 8), Error);
  CHECK_THROWS_AS(convex_hull_mask(Landmarks{{{0, 0}, {1, 1}, {2, 2}, {5, 5}}}, 8, 8), DegenerateHullError);
  CHECK_THROWS_AS(convex_hull(std::vector<Point2>{{1, 1}, {1, 1}, {1, 1}}), DegenerateHullError);
  // A hull entirely off the raster is a valid, empty mask.
  const auto off = convex_hull_mask(Landmarks{{{100, 100}, {110, 100}, {100, 110}}}, 8, 8);
  CHECK(off.support_area() == 0);
}

TEST_CASE("landmark_deform", "[mg][deform]") {
  std::mt19937_64 rng(23);
  const auto lm = random_points(rng, 81, 10.0, 50.0);
  RngStream s0(1, 1);
  CHECK(landmark_deform(lm, s0, 0.0).points.size() == 81);
  RngStream s1(1, 1);
  const auto id = landmark_deform(lm, s1, 0.0);
  for (std::size_t i = 0; i < 81; ++i) {
    REQUIRE(id.points[i].x == lm.points[i].x);
    REQUIRE(id.points[i].y == lm.points[i].y);
  }
  const double bound = 0.03 * bounding_box(lm.points).diagonal();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RngStream a(seed, 2), b(seed, 2);
    const auto out = landmark_deform(lm, a, 0.03);
    const auto again = landmark_deform(lm, b, 0.03);
    for (std::size_t i = 0; i < 81; ++i) {
      REQUIRE(std::fabs(out.points[i].x - lm.points[i].x) <= bound);
      REQUIRE(std::fabs(out.points[i].y - lm.points[i].y) <= bound);
      REQUIRE(out.points[i].x == again.points[i].x);
    }
  }
  RngStream bad(0, 0);
  CHECK_THROWS_AS(landmark_deform(lm, bad, -0.1), ParameterError);
}

TEST_CASE("elastic_deform: alpha = 0 is the identity", "[mg][deform]") {
  std::mt19937_64 rng(24);
  const auto m = synth::random_mask(16, 16, rng);
  RngStream s(3, 3);
  CHECK(elastic_deform(m, s, 0.0, 4.0).plane() == m.plane());
}

TEST_CASE("elastic_warp: constant (+1, 0) field shifts one column", "[mg][deform]") {
  const auto m = disk(12, 4.0);
  const std::size_t n = 144;
  DisplacementField f{12, 12, std::vector<double>(n, 1.0), std::vector<double>(n, 0.0)};
  const auto out = elastic_warp(m, f);
  for (int y = 0; y < 12; ++y) {
    for (int x = 0; x < 11; ++x) REQUIRE(out.at(y, x) == m.at(y, x + 1));
    REQUIRE(out.at(y, 11) == 0.0f);
  }
}

TEST_CASE("elastic_warp: random field matches the gather-loop oracle", "[mg][deform]") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = synth::random_mask(32, 32, rng);
    RngStream s(trial, 4);
    const auto f = sample_displacement_field(s, 32, 32, 6.0, 4.0);
    const auto out = elastic_warp(m, f);
    const auto ref = oracle::gather_warp(m.plane(), f.dx, f.dy);
    for (std::size_t i = 0; i < ref.size(); ++i) REQUIRE(std::fabs(out.data()[i] - ref[i]) <= 1e-5);
    for (float v : out.data()) {
      REQUIRE(v >= 0.0f);
      REQUIRE(v <= 1.0f);
    }
  }
  RngStream s(0, 0);
  CHECK_THROWS_AS(sample_displacement_field(s, 4, 4, 1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(sample_displacement_field(s, 4, 4, -1.0, 1.0), ParameterError);
}

TEST_CASE("dual_gaussian_smooth: unit kernels are the identity", "[mg][smooth]") {
  const auto m = disk(20, 6.0);
  CHECK(dual_gaussian_smooth(m, 1, 1).plane() == m.plane());
}

TEST_CASE("dual_gaussian_smooth: erosion when k1 > k2, dilation when k2 > k1", "[mg][smooth]") {
  const auto m = disk(64, 20.0);
  const auto eroded = dual_gaussian_smooth(m, 15, 1);
  CHECK(support_subset(eroded, m));
  CHECK(eroded.support_area() < m.support_area());
  const auto dilated = dual_gaussian_smooth(m, 1, 15);
  CHECK(support_subset(m, dilated));
  CHECK(dilated.support_area() > m.support_area());
}

TEST_CASE("dual_gaussian_smooth: support is monotone in k1 and k2", "[mg][smooth]") {
  const auto m = disk(64, 20.0);
  for (int fixed : {1, 3, 7, 11, 15}) {
    std::size_t prev_k1 = SIZE_MAX, prev_k2 = 0;
    for (int k : {1, 3, 5, 7, 9, 11, 13, 15}) {
      const auto a = dual_gaussian_smooth(m, k, fixed).support_area();
      const auto b = dual_gaussian_smooth(m, fixed, k).support_area();
      REQUIRE(a <= prev_k1);
      REQUIRE(b >= prev_k2);
      prev_k1 = a;
      prev_k2 = b;
    }
  }
}

TEST_CASE("dual_gaussian_smooth: errors", "[mg][smooth]") {
  BlendMask soft(8, 8, 0.5f);
  CHECK_THROWS_AS(dual_gaussian_smooth(soft, 3, 3), PreconditionError);
  CHECK_THROWS_AS(dual_gaussian_smooth(disk(8, 2.0), 4, 3), ParameterError);
  CHECK_THROWS_AS(dual_gaussian_smooth(disk(8, 2.0), 3, 0), ParameterError);
}

TEST_CASE("apply_blend_ratio", "[mg][ratio]") {
  const auto m = disk(16, 5.0);
  RngStream s(1, 1);
  CHECK(apply_blend_ratio(m, s, {1.0}).plane() == m.plane());
  const auto half = apply_blend_ratio(m, s, {0.5});
  CHECK(half.max_value() == 0.5f);
  CHECK(half.ratio() == 0.5);
  CHECK_THROWS_AS(apply_blend_ratio(m, s, {}), ParameterError);
  CHECK_THROWS_AS(apply_blend_ratio(m, s, {1.5}), ParameterError);

  RngStream r(42, 0);
  int ones = 0;
  for (int i = 0; i < 60000; ++i) ones += draw_choice(r, default_ratio_choices()) == 1.0;
  CHECK(ones / 60000.0 == Catch::Approx(0.5).margin(0.02));
}

TEST_CASE("generate_mask: identity stages reproduce the raw hull", "[mg][mask]") {
  std::mt19937_64 rng(26);
  const auto f = synth::face(64, rng);
  RngStream s(5, 5);
  const auto rt = make_resize_translate(1, 1, 0, 0, 64, 64);
  const auto res = generate_mask(f.landmarks, 64, 64, MaskConfig::identity(), rt, s);
  CHECK(res.mask.plane() == convex_hull_mask(f.landmarks, 64, 64).plane());
  CHECK(res.params.k1 == 1);
  CHECK(res.params.ratio == 1.0);
}

TEST_CASE("generate_mask: range [0, r], max r, and replay", "[mg][mask][property]") {
  std::mt19937_64 rng(27);
  const StgConfig stg;
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = synth::face(48, rng);
    RngStream s(trial, make_stream_id(static_cast<std::uint64_t>(trial), 0));
    auto rs = s.child(StreamTag::resize_translate);
    const auto rt = sample_resize_translate(rs, stg, 48, 48);
    const auto res = generate_mask(f.landmarks, 48, 48, MaskConfig{}, rt, s);
    const float r = static_cast<float>(res.params.ratio);
    for (float v : res.mask.data()) {
      REQUIRE(v >= 0.0f);
      REQUIRE(v <= r);
    }
    REQUIRE(res.mask.max_value() == r);
    const auto again = render_mask(f.landmarks, 48, 48, res.params, rt);
    REQUIRE(again.plane() == res.mask.plane());
  }
}

TEST_CASE("mask geometry tracks the resized source", "[mg][mask][property]") {
  std::mt19937_64 rng(28);
  const StgConfig stg;
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = synth::face(40, rng);
    const auto hull = convex_hull_mask(f.landmarks, 40, 40);
    ImageTensor marker(40, 40, 0.0f);
    for (int y = 0; y < 40; ++y)
      for (int x = 0; x < 40; ++x) marker.at(y, x, 1) = hull.at(y, x);
    RngStream s(trial, 0);
    const auto p = sample_resize_translate(s, stg, 40, 40);
    const auto moved_marker = resize_translate(marker, p);
    const auto moved_mask = resize_translate(hull.plane(), p);
    for (int y = 0; y < 40; ++y)
      for (int x = 0; x < 40; ++x) {
        REQUIRE(moved_marker.at(y, x, 1) == moved_mask.at(y, x));
        if (moved_marker.at(y, x, 1) >= 0.5f) REQUIRE(moved_mask.at(y, x) >= 0.5f);
      }
  }
}

TEST_CASE("mask config validation and nearest_odd", "[mg]") {
  MaskConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.ratio_choices = {0.0};
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  CHECK(nearest_odd(0.0) == 1);
  CHECK(nearest_odd(4.2) == 5);
  CHECK(nearest_odd(6.9) == 7);
  CHECK(nearest_odd(8.0) == 9);
}
