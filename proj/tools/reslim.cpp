// Command-line driver: one scenario file, one command, files in --out.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "reslim/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Resource-limited theories: costs, domains, proofs, lattices, observers, reflection"};
  std::string scenario, command, out = ".";
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_steps, max_len;
  app.add_option("--scenario", scenario, "Scenario file (YAML)")->required();
  app.add_option("--command", command, "cost | domain | prove | lattice | observe | reflect | check")
      ->required()
      ->check(CLI::IsMember(reslim::command_names()));
  app.add_option("--out", out, "Output directory");
  app.add_option("--seed", seed, "Seed for randomized checks");
  app.add_option("--max-steps", max_steps, "Override the proof step limit");
  app.add_option("--max-len", max_len, "Override the proof step length limit");
  CLI11_PARSE(app, argc, argv);

  try {
    reslim::CommandOptions opt;
    opt.out = out;
    opt.seed = seed;
    opt.max_steps = max_steps;
    opt.max_len = max_len;
    const auto result = reslim::run_command(command, reslim::load_scenario(scenario), opt);
    std::cout << command << ": " << result.summary << "\n";
    for (const auto& f : result.files) std::cout << "  wrote " << (opt.out / f).string() << "\n";
    return result.exit_code;
  } catch (const reslim::ScenarioError& e) {
    for (const auto& [code, msg] : e.problems()) std::cerr << "error: " << code << ": " << msg << "\n";
    return 2;
  } catch (const reslim::Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return 2;
  }
}
