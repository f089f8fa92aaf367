// fracjensen: batch runner for fractional integrals and Jensen/Mercer checks.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fracjensen/errors.hpp"
#include "fracjensen/job.hpp"
#include "fracjensen/runner.hpp"

namespace cli = fracjensen::cli;

int main(int argc, char** argv) {
  CLI::App app{"fracjensen <command> --job <path>"};
  app.require_subcommand(1, 1);

  std::string job_path;
  std::string output;
  std::string format;
  std::uint64_t seed = 0;
  double tolerance = 0.0;

  for (const char* name : {"integrate", "derive", "check", "sweep", "falsify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--job", job_path, "job file")->required();
    sub->add_option("--output", output, "write data here instead of stdout");
    sub->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--tolerance", tolerance, "quadrature tolerance");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  const auto* sub = app.get_subcommands().front();

  std::ifstream in(job_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read job file " << job_path << "\n";
    return cli::kExitConfig;
  }
  std::stringstream text;
  text << in.rdbuf();

  cli::JobSpec job;
  try {
    // The command on the command line wins over one in the file.
    job = cli::parse_job(text.str() + "\ncommand = " + command + "\n");
  } catch (const fracjensen::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitConfig;
  }
  if (sub->count("--output")) job.output_path = output;
  if (sub->count("--format")) job.format = format == "csv" ? cli::OutputFormat::Csv : cli::OutputFormat::Text;
  if (sub->count("--seed")) job.seed = seed;
  if (sub->count("--tolerance")) job.tolerance = tolerance;

  return cli::execute(job, std::cout, std::cerr);
}
