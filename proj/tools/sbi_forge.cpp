#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "sbi_forge/cli/commands.hpp"

namespace fs = std::filesystem;
using namespace sbi_forge;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SBI_FORGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric SBI_FORGE_SEED\n";
    }
  }
  return 42;
}

std::optional<fs::path> opt_path(const std::string& s) {
  return s.empty() ? std::nullopt : std::optional<fs::path>(s);
}

bool parse_grid(const std::string& s, int& rows, int& cols) {
  const auto x = s.find_first_of("xX");
  if (x == std::string::npos) return false;
  try {
    rows = std::stoi(s.substr(0, x));
    cols = std::stoi(s.substr(x + 1));
  } catch (const std::exception&) {
    return false;
  }
  return rows > 0 && cols > 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sbi-forge: self-blended image generation for face-forgery detectors"};
  app.require_subcommand(1);

  std::string manifest, config, out, summary, mode = "train", grid = "2x4", recipe, scores, labels;
  std::uint64_t seed = default_seed();
  std::uint64_t samples_per_image = 1;
  std::uint64_t draws = 60000;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  int tile = 128;
  bool strict = false;

  auto add_config = [&](CLI::App* c) { c->add_option("--config", config, "Pipeline config (YAML)")->check(CLI::ExistingFile); };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", seed, "Base seed (default 42, or $SBI_FORGE_SEED)"); };
  auto add_mode = [&](CLI::App* c) {
    c->add_option("--mode", mode, "Crop margin behavior")->check(CLI::IsMember({"train", "inference"}));
  };

  auto* gen = app.add_subcommand("generate", "Generate SBI samples for every manifest entry");
  gen->add_option("--manifest", manifest, "Manifest (JSON lines)")->required();
  add_config(gen);
  gen->add_option("--out", out, "Output directory")->required();
  add_seed(gen);
  gen->add_option("--samples-per-image", samples_per_image, "Samples per manifest entry")->check(CLI::PositiveNumber);
  gen->add_option("--workers", workers, "Worker threads (default: logical cores)")->check(CLI::PositiveNumber);
  gen->add_flag("--strict", strict, "Treat skipped samples as a failure");
  gen->add_option("--summary", summary, "Write a JSON run summary here");
  add_mode(gen);

  auto* rep = app.add_subcommand("replay", "Regenerate one sample from its recipe");
  rep->add_option("--recipe", recipe, "Recipe file")->required()->check(CLI::ExistingFile);
  rep->add_option("--manifest", manifest, "Manifest holding the recipe's key")->required();
  add_config(rep);
  rep->add_option("--out", out, "Output directory")->required();

  auto* ver = app.add_subcommand("verify", "Re-check digests and replay every recipe of a generate run");
  ver->add_option("--out", out, "Directory written by generate")->required();

  auto* pre = app.add_subcommand("preview", "Render pristine/SBI pairs into one grid image");
  pre->add_option("--manifest", manifest, "Manifest (JSON lines)")->required();
  add_config(pre);
  add_seed(pre);
  pre->add_option("--grid", grid, "RxC tiles; R even (pristine row above SBI row)");
  pre->add_option("--tile", tile, "Tile edge in pixels")->check(CLI::PositiveNumber);
  pre->add_option("--out", out, "Output PNG path")->required();
  add_mode(pre);

  auto* aud = app.add_subcommand("audit", "Sample the parameter space and report its distributions");
  add_config(aud);
  add_seed(aud);
  aud->add_option("--draws", draws, "Number of parameter draws (>= 1000)");
  aud->add_option("--summary", summary, "Also write the report here");

  auto* sco = app.add_subcommand("score", "Aggregate per-face confidences into per-video scores");
  sco->add_option("--scores", scores, "CSV video_id,frame_index,confidence")->required()->check(CLI::ExistingFile);
  sco->add_option("--labels", labels, "CSV video_id,label; prints the AUC")->check(CLI::ExistingFile);
  sco->add_option("--out", out, "Write per-video CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::exit_ok : cli::exit_fatal;
  }

  const auto crop_mode = crop_mode_from_string(mode);
  if (*gen) {
    cli::GenerateOptions o{manifest, opt_path(config), out, seed, samples_per_image, workers, strict, opt_path(summary), crop_mode};
    return cli::run_generate(o, std::cerr).exit_code;
  }
  if (*rep) return cli::run_replay({recipe, manifest, opt_path(config), out}, std::cerr);
  if (*ver) return cli::run_verify(out, std::cerr).exit_code;
  if (*pre) {
    cli::PreviewOptions o{manifest, opt_path(config), seed, 0, 0, tile, out, crop_mode};
    if (!parse_grid(grid, o.rows, o.cols)) {
      std::cerr << "fatal: --grid must look like 2x4\n";
      return cli::exit_fatal;
    }
    return cli::run_preview(o, std::cerr);
  }
  if (*aud) {
    int code = cli::exit_ok;
    cli::run_audit({opt_path(config), seed, draws, opt_path(summary)}, std::cout, std::cerr, &code);
    return code;
  }
  return cli::run_score({scores, opt_path(labels), opt_path(out)}, std::cout, std::cerr);
}
