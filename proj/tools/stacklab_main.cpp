#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stacklab/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw stacklab::parameter_error("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stacklab: cutting-and-stacking constructions, eigenvalue "
               "candidate screens, and seeded Monte Carlo experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int trials = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;

  for (const char* name :
       {"build", "sample", "screen", "diagnose", "montecarlo", "chacon-scan"}) {
    CLI::App* sub = app.add_subcommand(name, "run the " + std::string(name) +
                                                 " experiment");
    sub->add_option("--config", config_path, "path to the JSON config")
        ->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--trials", trials, "trial count (overrides config)");
    sub->add_option("--seed", seed, "master seed (overrides config)")
        ->each([&](const std::string&) { seed_set = true; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    stacklab::ExperimentConfig config =
        stacklab::parse_config(read_file(config_path));
    config.experiment =
        stacklab::experiment_from_name(app.get_subcommands().front()->get_name());
    if (!out_dir.empty()) config.output_path = out_dir;
    if (trials >= 0) config.trials = trials;
    if (seed_set) config.master_seed = seed;
    if (config.trials < 1)
      throw stacklab::parameter_error("config: trials must be >= 1");

    auto files = stacklab::run_experiment(config);
    for (const auto& f : files) std::cout << f.string() << "\n";
    return 0;
  } catch (const stacklab::parameter_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const stacklab::construction_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const stacklab::invariant_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
