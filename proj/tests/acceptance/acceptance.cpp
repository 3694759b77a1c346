// Acceptance suite: one PASS/FAIL line per primary criterion. Exits non-zero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sbi_forge/sbi_forge.hpp"
#include "synthetic.hpp"

using namespace sbi_forge;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message; later checks still run.
struct Checker {
  bool ok = true;
  std::string first;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) first = what;
    ok = ok && cond;
  }
};

Outcome invariant_suite() {
  const auto t0 = Clock::now();
  Checker c;
  constexpr int cases = 200;
  std::mt19937_64 rng(20240601);

  std::uniform_int_distribution<int> dim(1, 24);
  for (int i = 0; i < cases; ++i) {
    const int h = dim(rng), w = dim(rng);
    const auto s = synth::random_image(h, w, rng);
    const auto t = synth::random_image(h, w, rng);
    const auto m = synth::random_mask(h, w, rng);
    const auto out = blend(s, t, m);
    for (std::size_t k = 0; k < out.data().size(); ++k) {
      const float v = out.data()[k];
      c.expect(v >= std::min(s.data()[k], t.data()[k]) && v <= std::max(s.data()[k], t.data()[k]), "blend bounds");
    }
    c.expect(blend(s, s, m) == s, "blend idempotence");
  }

  const PipelineConfig defaults;
  for (int i = 0; i < cases; ++i) {
    const auto f = synth::face(48 + i % 17, rng);
    const int size = f.image.height();
    const RngStream stream(7, make_stream_id(static_cast<std::uint64_t>(i), 0));
    const auto s = generate_sbi(f.image, f.landmarks, defaults, stream);
    const float r = static_cast<float>(s.recipe.mask.ratio);
    for (float v : s.mask.data()) c.expect(v >= 0.0f && v <= r, "mask range [0, r]");
    c.expect(s.mask.max_value() == r, "mask max equals r");
    const auto issues = check_sample_invariants(s, f.image);
    c.expect(issues.empty(), issues.empty() ? "" : "sample invariant: " + issues.front());

    const auto parsed = parse_recipe(serialize_recipe(s.recipe));
    c.expect(parsed == s.recipe, "recipe round trip");
    c.expect(replay(parsed, f.image, f.landmarks) == s, "recipe replay bit-exactness");

    const auto id = generate_sbi(f.image, f.landmarks, PipelineConfig::identity(), stream);
    c.expect(id.fake_image == f.image && id.real_image == f.image, "identity-config whole-pipeline identity");
    c.expect(id.mask.plane() == convex_hull_mask(f.landmarks, size, size).plane(), "identity-config mask is the hull");
  }

  const double secs = seconds_since(t0);
  c.expect(secs < 120.0, "runtime over 2 min");
  std::ostringstream d;
  d << cases << " cases each for blend bounds, mask range, identity config, replay; " << secs << " s";
  if (!c.ok) d << "; first failure: " << c.first;
  return {c.ok, d.str()};
}

Outcome oracle_equivalence() {
  Checker c;
  std::mt19937_64 rng(77);
  int hull_cases = 0;
  std::uniform_int_distribution<int> dim(4, 64);
  std::uniform_int_distribution<std::size_t> count(3, 81);
  while (hull_cases < 100) {
    const int h = dim(rng), w = dim(rng);
    std::uniform_real_distribution<double> u(-4.0, std::max(h, w) + 4.0);
    Landmarks lm;
    const auto n = count(rng);
    for (std::size_t i = 0; i < n; ++i) lm.points.push_back({u(rng), u(rng)});
    if (hull_cases % 2) for (auto& p : lm.points) p = {std::round(p.x), std::round(p.y)};
    BlendMask m;
    try {
      m = convex_hull_mask(lm, h, w);
    } catch (const DegenerateHullError&) {
      continue;
    }
    const auto ref = oracle::hull_raster(lm.points, h, w);
    for (std::size_t i = 0; i < ref.size(); ++i) c.expect(static_cast<int>(m.data()[i]) == ref[i], "hull raster");
    ++hull_cases;
  }

  double gauss_err = 0.0;
  for (int k : {3, 5, 9, 15}) {
    Plane p(32, 32);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    for (float& v : p.data()) v = u(rng);
    const auto fast = gaussian_blur(p, k);
    const auto ref = oracle::gaussian_conv2d(p, k);
    for (std::size_t i = 0; i < ref.size(); ++i) gauss_err = std::max(gauss_err, std::fabs(fast.data()[i] - ref[i]));
  }
  c.expect(gauss_err <= 1e-5, "gaussian blur error");

  double warp_err = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto m = synth::random_mask(32, 32, rng);
    RngStream s(t, 3);
    const auto f = sample_displacement_field(s, 32, 32, 6.0, 4.0);
    const auto out = elastic_warp(m, f);
    const auto ref = oracle::gather_warp(m.plane(), f.dx, f.dy);
    for (std::size_t i = 0; i < ref.size(); ++i) warp_err = std::max(warp_err, std::fabs(out.data()[i] - ref[i]));
  }
  c.expect(warp_err <= 1e-5, "elastic warp error");

  double blend_err = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto s = synth::random_image(8, 8, rng);
    const auto g = synth::random_image(8, 8, rng);
    const auto m = synth::random_mask(8, 8, rng);
    const auto out = blend(s, g, m);
    const std::vector<double> sd(s.data().begin(), s.data().end()), gd(g.data().begin(), g.data().end()),
        md(m.data().begin(), m.data().end());
    const auto ref = oracle::blend(sd, gd, md);
    for (std::size_t i = 0; i < ref.size(); ++i) blend_err = std::max(blend_err, std::fabs(out.data()[i] - ref[i]));
  }
  c.expect(blend_err <= 1e-7, "blend error");

  std::ostringstream d;
  d << "hull " << hull_cases << " cases exact; max |d| gaussian " << gauss_err << ", warp " << warp_err << ", blend "
    << blend_err;
  if (!c.ok) d << "; first failure: " << c.first;
  return {c.ok, d.str()};
}

Outcome determinism(const fs::path& work) {
  const auto t0 = Clock::now();
  Checker c;
  const auto ds = synth::write_dataset(work / "det_data", 100, 96, 4242, 25);
  std::ostringstream log;
  std::string digests[2];
  std::uint64_t replayed = 0;
  const unsigned workers[2] = {1, 8};
  for (int i = 0; i < 2; ++i) {
    cli::GenerateOptions o;
    o.manifest = ds.manifest;
    o.out_dir = work / ("det_w" + std::to_string(workers[i]));
    o.seed = 42;
    o.workers = workers[i];
    const auto sum = cli::run_generate(o, log);
    c.expect(sum.exit_code == 0 && sum.ok == 100, "generate with --workers " + std::to_string(workers[i]));
    digests[i] = sum.index_digest;
    const auto rep = cli::run_verify(o.out_dir, log);
    c.expect(rep.exit_code == 0, "verify " + o.out_dir.filename().string() +
                                     (rep.failures.empty() ? "" : ": " + rep.failures.front()));
    replayed += rep.samples_replayed;
  }
  c.expect(!digests[0].empty() && digests[0] == digests[1], "index digests differ between worker counts");
  c.expect(replayed == 200, "not every recipe replayed");
  const double secs = seconds_since(t0);
  c.expect(secs < 60.0, "runtime over 1 min");
  std::ostringstream d;
  d << "100 samples, workers 1 vs 8 index digest " << digests[0].substr(0, 12) << "/" << digests[1].substr(0, 12)
    << ", " << replayed << " recipes replayed bit-identically; " << secs << " s";
  if (!c.ok) d << "; first failure: " << c.first;
  return {c.ok, d.str()};
}

Outcome sampling_distributions() {
  std::ostringstream out, log;
  const auto rep = cli::run_audit({std::nullopt, 42, 60000, std::nullopt}, out, log);
  if (!rep) return {false, "audit failed: " + log.str()};
  const double p1 = rep->find("r", "1")->frequency();
  const double pq = rep->find("r", "0.25")->frequency();
  const double pb = rep->find("source_augmented", "true")->frequency();
  const bool ok = std::fabs(p1 - 0.5) <= 0.02 && std::fabs(pq - 1.0 / 6.0) <= 0.02 && std::fabs(pb - 0.5) <= 0.02;
  std::ostringstream d;
  d << "60000 draws: P(r=1) " << p1 << ", P(r=0.25) " << pq << ", P(source augmented) " << pb;
  return {ok, d.str()};
}

Outcome erosion_dilation() {
  BlendMask disk(64, 64, 0.0f);
  const double c0 = 31.5;
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      if (std::hypot(x - c0, y - c0) <= 20.0) disk.at(y, x) = 1.0f;
  std::vector<std::size_t> erode, dilate;
  for (int k : {3, 7, 11, 15}) {
    erode.push_back(dual_gaussian_smooth(disk, k, 3).support_area());
    dilate.push_back(dual_gaussian_smooth(disk, 3, k).support_area());
  }
  bool ok = true;
  for (std::size_t i = 1; i < erode.size(); ++i) {
    ok = ok && erode[i] < erode[i - 1] && dilate[i] > dilate[i - 1];
  }
  std::ostringstream d;
  d << "disk area " << disk.support_area() << "; k1 sweep (k2=3):";
  for (auto a : erode) d << ' ' << a;
  d << "; k2 sweep (k1=3):";
  for (auto a : dilate) d << ' ' << a;
  return {ok, d.str()};
}

// Mean per-sample wall time of a full generate run (manifest parse, image
// load, crop, generation, PNG encode, file and index writes), single worker.
double per_sample_seconds(const synth::Dataset& ds, const fs::path& out) {
  fs::remove_all(out);
  cli::GenerateOptions o;
  o.manifest = ds.manifest;
  o.out_dir = out;
  o.workers = 1;
  std::ostringstream log;
  const auto t0 = Clock::now();
  const auto sum = cli::run_generate(o, log);
  const double secs = seconds_since(t0);
  if (sum.ok == 0) throw std::runtime_error("generate produced no samples: " + log.str());
  return secs / static_cast<double>(ds.entries.size());
}

Outcome constant_cost(const fs::path& work) {
  // Both manifests cycle over the same 10 base images, so the comparison
  // isolates manifest size from image content.
  const auto small = synth::write_dataset(work / "cost_small", 10, 64, 99, 10);
  const auto large = synth::write_dataset(work / "cost_large", 10000, 64, 99, 10);
  per_sample_seconds(small, work / "cost_warm");  // warm caches
  std::vector<double> small_runs;
  for (int i = 0; i < 20; ++i) small_runs.push_back(per_sample_seconds(small, work / "cost_small_out"));
  const double small_mean = std::accumulate(small_runs.begin(), small_runs.end(), 0.0) / static_cast<double>(small_runs.size());
  const double large_mean = per_sample_seconds(large, work / "cost_large_out");
  fs::remove_all(work / "cost_large_out");
  const double ratio = large_mean / small_mean;
  std::ostringstream d;
  d << "mean per-sample " << large_mean * 1e3 << " ms (10000 entries) vs " << small_mean * 1e3
    << " ms (10 entries, 20 runs); ratio " << ratio;
  return {ratio <= 1.5, d.str()};
}

Outcome scoring_rules() {
  Checker c;
  c.expect(aggregate_video_score(std::vector<FrameScores>{{0.2}, {0.8}}) == 0.5, "mean of frames");
  c.expect(aggregate_video_score(std::vector<FrameScores>{{0.3, 0.9}}) == 0.9, "max over faces");
  c.expect(aggregate_video_score(std::vector<FrameScores>{{}, {}, {}}) == 0.5, "no face gives 0.5");
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<int> len(2, 20), bit(0, 1), level(0, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto n = static_cast<std::size_t>(len(rng));
    std::vector<int> labels(n);
    std::vector<double> scores(n);
    for (auto& l : labels) l = bit(rng);
    labels[0] = 1;
    labels[n - 1] = 0;
    for (auto& s : scores) s = t % 2 ? u(rng) : level(rng) / 5.0;
    worst = std::max(worst, std::fabs(compute_auc(labels, scores) - oracle::auc_pairs(labels, scores)));
  }
  c.expect(worst <= 1e-12, "auc vs pair oracle");
  std::ostringstream d;
  d << "three aggregation rules exact; AUC vs pair oracle on 1000 cases, max |d| " << worst;
  if (!c.ok) d << "; first failure: " << c.first;
  return {c.ok, d.str()};
}

}  // namespace

int main() {
  const auto work = synth::temp_dir("acceptance");
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"invariant suite", invariant_suite},
      {"oracle equivalence", oracle_equivalence},
      {"determinism", [&] { return determinism(work); }},
      {"sampling distributions", sampling_distributions},
      {"erosion/dilation law", erosion_dilation},
      {"constant per-sample cost", [&] { return constant_cost(work); }},
      {"scoring", scoring_rules},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  fs::remove_all(work);
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
