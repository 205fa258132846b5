#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "shapeflow/error.hpp"
#include "shapeflow/experiments.hpp"

namespace {

int fail(const std::string& kind, const std::string& message, int code) {
  std::cerr << shapeflow::error_json(kind, message).dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shapeflow: shape spaces of curves and diffeomorphism groups"};
  app.set_version_flag("--version", std::string(SHAPEFLOW_VERSION));
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List available experiments");
  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  std::string config_path;
  shapeflow::RunOverrides overrides;
  std::string output_dir;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  auto* out_opt = run->add_option("--output-dir", output_dir, "Override output_dir");
  auto* thr_opt = run->add_option("--threads", threads, "Override threads")->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "Override seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what(), 2);
  }

  if (*list) {
    for (const auto& info : shapeflow::experiment_catalog()) {
      std::printf("%-16s %s%s\n", info.name.c_str(), info.summary.c_str(),
                  info.uses_seed ? " (needs seed)" : "");
    }
    return 0;
  }

  if (*out_opt) overrides.output_dir = output_dir;
  if (*thr_opt) overrides.threads = threads;
  if (*seed_opt) overrides.seed = seed;
  try {
    const auto summary = shapeflow::run_experiment(shapeflow::read_config_file(config_path), overrides);
    nlohmann::json out = {{"experiment", summary.experiment},
                          {"output_dir", summary.output_dir.string()},
                          {"partial", summary.partial},
                          {"files", summary.files},
                          {"metrics", summary.metrics}};
    std::cout << out.dump(2) << '\n';
    return 0;
  } catch (const shapeflow::Error& e) {
    const int code = e.kind() == shapeflow::ErrorKind::Config ? 2 : 3;
    return fail(std::string(shapeflow::to_string(e.kind())), e.what(), code);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 4);
  }
}
