#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracjensen::cli {

/// Linear grid, inclusive of both ends: {start, stop, steps}.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  std::vector<double> values() const;
};

enum class OutputFormat { Text, Csv };

struct JobSpec {
  std::string command;  // integrate | derive | check | sweep | falsify

  std::string kernel = "rl";  // rl | hadamard | gweighted | custom
  std::string g;              // gweighted / custom
  std::string g_prime;
  std::string G;              // custom; variables x and alpha

  std::string phi;
  std::string f;
  std::optional<double> phi_at_a;  // endpoint values for mercer_continuous
  std::optional<double> phi_at_b;
  std::string phi_family;          // falsify: convex | concave

  std::optional<double> a, b, c, d, t;
  std::string side = "right";
  std::optional<double> step;  // derivative step

  Grid alpha{0.5, 0.5, 1};
  bool alpha_given = false;
  Grid m{1.0, 1.0, 1};
  bool m_given = false;

  std::string measure = "uniform";  // uniform | discrete | density | fractional
  std::vector<double> points;
  std::vector<double> weights;  // empty means uniform weights
  std::string density;

  std::string inequality_id;
  std::string relaxation = "none";
  double tolerance = 1e-9;
  std::uint64_t seed = 42;
  std::size_t budget = 10000;

  std::string output_path;  // empty: standard output
  OutputFormat format = OutputFormat::Text;
};

/// Parses a job file: `key = value` lines, optional `[section]` headers,
/// `#` comments. Applies defaults and validates command-specific fields.
/// Throws ConfigError naming the offending key.
JobSpec parse_job(std::string_view text);

/// Re-runs the command-specific validation (after CLI overrides).
void validate(const JobSpec& job);

}  // namespace fracjensen::cli
