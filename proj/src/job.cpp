#include "fracjensen/job.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "fracjensen/errors.hpp"
#include "fracjensen/expr.hpp"
#include "fracjensen/falsify.hpp"
#include "fracjensen/jensen.hpp"

namespace fracjensen::cli {
namespace {

constexpr std::array<std::string_view, 8> kSections{
    "job", "kernel", "functions", "interval", "params", "measure", "output", "falsify"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    s = s.substr(1, s.size() - 2);
  return std::string(s);
}

bool mentions_variable(const expr::Node& n) {
  if (n.kind == expr::NodeKind::Var || n.kind == expr::NodeKind::Param) return true;
  return std::any_of(n.args.begin(), n.args.end(),
                     [](const auto& arg) { return mentions_variable(*arg); });
}

/// A plain number, or a constant expression such as `e^2` or `pi/4`.
double number(const std::string& key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && end == text.data() + text.size()) return v;
  try {
    const auto fn = expr::parse(text);
    if (mentions_variable(fn.tree())) throw ConfigError(key, "expected a constant");
    v = fn(0.0);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(key, "not a number: '" + std::string(text) + "' (" + e.what() + ")");
  }
  if (!std::isfinite(v)) throw ConfigError(key, "value must be finite");
  return v;
}

std::vector<double> number_list(const std::string& key, std::string_view text) {
  text = trim(text);
  if (!text.empty() && (text.front() == '{' || text.front() == '[' || text.front() == '(')) {
    const char close = text.front() == '{' ? '}' : text.front() == '[' ? ']' : ')';
    if (text.back() != close) throw ConfigError(key, "unbalanced brackets");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<double> out;
  while (!trim(text).empty()) {
    const auto comma = text.find(',');
    out.push_back(number(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (trim(text).empty()) throw ConfigError(key, "trailing comma");
  }
  if (out.empty()) throw ConfigError(key, "empty list");
  return out;
}

Grid grid(const std::string& key, std::string_view text) {
  text = trim(text);
  if (text.empty() || text.front() != '{') {
    const double v = number(key, text);
    return {v, v, 1};
  }
  const auto parts = number_list(key, text);
  if (parts.size() != 3) throw ConfigError(key, "grid needs {start, stop, steps}");
  if (parts[2] < 1 || parts[2] != std::floor(parts[2]))
    throw ConfigError(key, "grid steps must be an integer >= 1");
  return {parts[0], parts[1], static_cast<int>(parts[2])};
}

std::uint64_t unsigned_integer(const std::string& key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size())
    throw ConfigError(key, "expected a nonnegative integer, got '" + std::string(text) + "'");
  return v;
}

void require_expression(const std::string& key, const std::string& text,
                        std::vector<std::string> params = {}) {
  if (text.empty()) throw ConfigError(key, "missing required field");
  try {
    expr::parse(text, std::move(params));
  } catch (const ParseError& e) {
    throw ConfigError(key, e.what());
  }
}

void require(const std::optional<double>& v, const std::string& key) {
  if (!v) throw ConfigError(key, "missing required field");
}

bool is_discrete_inequality(std::string_view id) {
  return id == "mjensen_discrete" || id == "mercer_discrete" || id == "lemma_transform" ||
         id == "mercer_m_discrete" || id == "mercer_m_endpoints";
}

void validate_measure(const JobSpec& job) {
  if (job.measure == "uniform" || job.measure == "density" || job.measure == "fractional") {
    require(job.c, "c");
    require(job.d, "d");
    if (!(*job.c < *job.d)) throw ConfigError("d", "measure support needs c < d");
    if (job.measure == "density") require_expression("density", job.density);
  } else if (job.measure == "discrete") {
    if (job.points.empty()) throw ConfigError("points", "missing required field");
  } else {
    throw ConfigError("measure", "expected uniform, discrete, density or fractional");
  }
  if (!job.weights.empty() && job.weights.size() != job.points.size())
    throw ConfigError("weights", "needs one weight per point");
}

void validate_kernel(const JobSpec& job) {
  if (job.kernel == "rl" || job.kernel == "hadamard") return;
  if (job.kernel != "gweighted" && job.kernel != "custom")
    throw ConfigError("kernel", "expected rl, hadamard, gweighted or custom");
  require_expression("g", job.g);
  require_expression("gprime", job.g_prime);
  if (job.kernel == "custom") require_expression("G", job.G, {"alpha"});
}

void validate_inequality(const JobSpec& job, bool falsifying) {
  if (job.inequality_id.empty()) throw ConfigError("inequality_id", "missing required field");
  const auto ids = jensen::inequality_ids();
  if (std::find(ids.begin(), ids.end(), job.inequality_id) == ids.end())
    throw ConfigError("inequality_id", "unknown inequality '" + job.inequality_id + "'");
  for (double v : job.m.values())
    if (!(v > 0.0 && v <= 1.0)) throw ConfigError("m", "m must lie in (0, 1]");
  if (falsifying) {
    try {
      falsify::parse_relaxation(job.relaxation);
    } catch (const ValidationError& e) {
      throw ConfigError("relaxation", e.what());
    }
    if (job.budget < 1) throw ConfigError("budget", "must be at least 1");
    if (!job.phi.empty()) require_expression("phi", job.phi);
    if (!job.phi_family.empty() && job.phi_family != "convex" && job.phi_family != "concave")
      throw ConfigError("phi_family", "expected convex or concave");
    if (job.a.has_value() != job.b.has_value())
      throw ConfigError(job.a ? "b" : "a", "interval needs both a and b");
    return;
  }

  const std::string& id = job.inequality_id;
  require_expression("phi", job.phi);
  if (is_discrete_inequality(id)) {
    if (job.points.empty()) throw ConfigError("points", "missing required field");
    if (!job.weights.empty() && job.weights.size() != job.points.size())
      throw ConfigError("weights", "needs one weight per point");
    if (id == "mercer_m_endpoints") {
      require(job.a, "a");
      require(job.b, "b");
    } else if (job.a.has_value() != job.b.has_value()) {
      throw ConfigError(job.a ? "b" : "a", "interval needs both a and b");
    }
    return;
  }
  require_expression("f", job.f);
  if (id == "fractional_mercer") {
    validate_kernel(job);
    require(job.c, "c");
    require(job.d, "d");
  } else {
    validate_measure(job);
  }
  if (id != "jensen_classical" && id != "mjensen_continuous") {
    require(job.a, "a");
    require(job.b, "b");
  } else if (job.a.has_value() != job.b.has_value()) {
    throw ConfigError(job.a ? "b" : "a", "interval needs both a and b");
  }
  if (job.a && job.b && !(*job.a <= *job.b)) throw ConfigError("b", "interval needs a <= b");
}

using Setter = std::function<void(JobSpec&, const std::string&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"command", [](JobSpec& j, auto&, auto v) { j.command = unquote(v); }},
      {"kernel", [](JobSpec& j, auto&, auto v) { j.kernel = unquote(v); }},
      {"g", [](JobSpec& j, auto&, auto v) { j.g = unquote(v); }},
      {"gprime", [](JobSpec& j, auto&, auto v) { j.g_prime = unquote(v); }},
      {"G", [](JobSpec& j, auto&, auto v) { j.G = unquote(v); }},
      {"phi", [](JobSpec& j, auto&, auto v) { j.phi = unquote(v); }},
      {"f", [](JobSpec& j, auto&, auto v) { j.f = unquote(v); }},
      {"phi_a", [](JobSpec& j, auto& k, auto v) { j.phi_at_a = number(k, v); }},
      {"phi_b", [](JobSpec& j, auto& k, auto v) { j.phi_at_b = number(k, v); }},
      {"phi_family", [](JobSpec& j, auto&, auto v) { j.phi_family = unquote(v); }},
      {"a", [](JobSpec& j, auto& k, auto v) { j.a = number(k, v); }},
      {"b", [](JobSpec& j, auto& k, auto v) { j.b = number(k, v); }},
      {"c", [](JobSpec& j, auto& k, auto v) { j.c = number(k, v); }},
      {"d", [](JobSpec& j, auto& k, auto v) { j.d = number(k, v); }},
      {"t", [](JobSpec& j, auto& k, auto v) { j.t = number(k, v); }},
      {"side", [](JobSpec& j, auto&, auto v) { j.side = unquote(v); }},
      {"step", [](JobSpec& j, auto& k, auto v) { j.step = number(k, v); }},
      {"alpha",
       [](JobSpec& j, auto& k, auto v) {
         j.alpha = grid(k, v);
         j.alpha_given = true;
       }},
      {"m",
       [](JobSpec& j, auto& k, auto v) {
         j.m = grid(k, v);
         j.m_given = true;
       }},
      {"measure", [](JobSpec& j, auto&, auto v) { j.measure = unquote(v); }},
      {"points", [](JobSpec& j, auto& k, auto v) { j.points = number_list(k, v); }},
      {"weights", [](JobSpec& j, auto& k, auto v) { j.weights = number_list(k, v); }},
      {"density", [](JobSpec& j, auto&, auto v) { j.density = unquote(v); }},
      {"inequality_id", [](JobSpec& j, auto&, auto v) { j.inequality_id = unquote(v); }},
      {"relaxation", [](JobSpec& j, auto&, auto v) { j.relaxation = unquote(v); }},
      {"tolerance", [](JobSpec& j, auto& k, auto v) { j.tolerance = number(k, v); }},
      {"seed", [](JobSpec& j, auto& k, auto v) { j.seed = unsigned_integer(k, v); }},
      {"budget",
       [](JobSpec& j, auto& k, auto v) { j.budget = static_cast<std::size_t>(unsigned_integer(k, v)); }},
      {"path", [](JobSpec& j, auto&, auto v) { j.output_path = unquote(v); }},
      {"format",
       [](JobSpec& j, auto& k, auto v) {
         const auto text = unquote(v);
         if (text == "text")
           j.format = OutputFormat::Text;
         else if (text == "csv")
           j.format = OutputFormat::Csv;
         else
           throw ConfigError(k, "expected text or csv");
       }},
  };
  return table;
}

}  // namespace

std::vector<double> Grid::values() const {
  if (steps < 1) throw ConfigError("grid", "steps must be >= 1");
  if (steps == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    out[static_cast<std::size_t>(i)] =
        i == steps - 1 ? stop : start + (stop - start) * i / (steps - 1);
  return out;
}

void validate(const JobSpec& job) {
  if (!(job.tolerance > 0.0)) throw ConfigError("tolerance", "must be positive");
  const auto& cmd = job.command;
  if (cmd.empty()) throw ConfigError("command", "missing required field");

  if (cmd == "integrate" || cmd == "derive") {
    validate_kernel(job);
    require_expression("f", job.f);
    require(job.a, "a");
    require(job.b, "b");
    require(job.t, "t");
    if (!job.alpha_given) throw ConfigError("alpha", "missing required field");
    if (!(*job.a <= *job.b)) throw ConfigError("b", "interval needs a <= b");
    if (job.side != "right" && job.side != "left")
      throw ConfigError("side", "expected right or left");
    for (double v : job.alpha.values())
      if (!(v > 0.0) || (cmd == "derive" && !(v < 1.0)))
        throw ConfigError("alpha", cmd == "derive" ? "alpha must lie in (0, 1)"
                                                   : "alpha must be positive");
    if (job.step && !(*job.step > 0.0)) throw ConfigError("step", "must be positive");
  } else if (cmd == "check" || cmd == "sweep") {
    validate_inequality(job, false);
    for (double v : job.alpha.values())
      if (!(v > 0.0)) throw ConfigError("alpha", "alpha must be positive");
  } else if (cmd == "falsify") {
    validate_inequality(job, true);
  } else {
    throw ConfigError("command", "expected integrate, derive, check, sweep or falsify");
  }
}

JobSpec parse_job(std::string_view text) {
  JobSpec job;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(line_no), "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (std::find(kSections.begin(), kSections.end(), section) == kSections.end())
        throw ConfigError(section, "unknown section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected key = value");
    std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (key == "type" && (section == "kernel" || section == "measure")) key = section;

    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(key, "unknown key");
    it->second(job, key, value);
  }
  validate(job);
  return job;
}

}  // namespace fracjensen::cli
