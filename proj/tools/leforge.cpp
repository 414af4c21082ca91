#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "leforge/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Singularity invariants and deformation-formula checks"};
  app.set_version_flag("--version", leforge::kVersion);
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a job file and print its report");
  std::string path, format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> kmax, max_degree;
  run->add_option("job", path, "Job file (JSON), or - for stdin")->required();
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  run->add_option("--seed", seed, "Random seed (overrides LEFORGE_SEED and the job)");
  run->add_option("--kmax", kmax, "Truncation cap for local colengths");
  run->add_option("--max-degree", max_degree, "Degree cap for Groebner computations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : leforge::kParse;
  }

  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      std::cerr << "leforge: cannot read " << path << "\n";
      return leforge::kParse;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  leforge::RunResult res = leforge::run_job_text(text, {seed, kmax, max_degree});
  std::cout << (format == "text" ? leforge::render_text(res.report) : leforge::render_json(res.report));
  if (res.report.contains("error"))
    std::cerr << "leforge: " << res.report["error"]["kind"].get<std::string>() << " error: "
              << res.report["error"]["message"].get<std::string>() << "\n";
  return res.exit_code;
}
