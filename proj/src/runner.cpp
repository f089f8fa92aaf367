#include "fracjensen/runner.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "fracjensen/errors.hpp"
#include "fracjensen/expr.hpp"
#include "fracjensen/falsify.hpp"
#include "fracjensen/kernels.hpp"
#include "fracjensen/operators.hpp"
#include "fracjensen/parallel.hpp"

namespace fracjensen::cli {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RealFunction function_of(const std::string& text) { return expr::parse(text); }

std::shared_ptr<const kernels::KernelSpec> build_kernel(const JobSpec& job, Interval working) {
  if (job.kernel == "rl")
    return std::make_shared<const kernels::KernelSpec>(kernels::make_riemann_liouville());
  if (job.kernel == "hadamard")
    return std::make_shared<const kernels::KernelSpec>(kernels::make_hadamard());
  const RealFunction g = function_of(job.g);
  const RealFunction g_prime = function_of(job.g_prime);
  if (job.kernel == "gweighted")
    return std::make_shared<const kernels::KernelSpec>(
        kernels::make_g_weighted(g, g_prime, working));
  const auto G_expr = expr::parse(job.G, {"alpha"});
  kernels::TwoArgFunction G = [G_expr](double x, double alpha) {
    const double params[1] = {alpha};
    return G_expr.eval(x, params);
  };
  return std::make_shared<const kernels::KernelSpec>(
      kernels::make_custom(g, g_prime, G, working, "custom"));
}

std::vector<double> weights_for(const JobSpec& job) {
  if (!job.weights.empty()) return job.weights;
  const std::size_t n = job.points.size();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) partial += w[i];
  if (n > 0) w[n - 1] = 1.0 - partial;
  return w;
}

std::optional<Interval> interval_of(const JobSpec& job) {
  if (job.a && job.b) return Interval{*job.a, *job.b};
  return std::nullopt;
}

jensen::ProbabilityMeasure measure_of(const JobSpec& job, double alpha) {
  if (job.measure == "discrete") return jensen::ProbabilityMeasure::discrete(job.points, weights_for(job));
  if (job.measure == "density")
    return jensen::ProbabilityMeasure::density(function_of(job.density), *job.c, *job.d,
                                               job.tolerance);
  if (job.measure == "fractional")
    return jensen::ProbabilityMeasure::fractional(build_kernel(job, {*job.c, *job.d}), *job.c,
                                                  *job.d, kernels::Alpha(alpha), job.tolerance);
  return jensen::ProbabilityMeasure::uniform(*job.c, *job.d);
}

jensen::InequalityReport check_once(const JobSpec& job, double alpha, double m,
                                    const jensen::Options& opts) {
  const std::string& id = job.inequality_id;
  const RealFunction phi = function_of(job.phi);
  const auto weights = weights_for(job);

  if (id == "mjensen_discrete")
    return jensen::mjensen_discrete(phi, jensen::ProbabilityMeasure::discrete(job.points, weights),
                                    interval_of(job), m, opts);
  if (id == "mercer_discrete") return jensen::mercer_discrete(phi, job.points, weights, opts);
  if (id == "lemma_transform")
    return jensen::lemma_transform(phi, job.points, interval_of(job), m, opts).worst;
  if (id == "mercer_m_discrete")
    return jensen::mercer_m_discrete(phi, job.points, weights, interval_of(job), m, opts);
  if (id == "mercer_m_endpoints")
    return jensen::mercer_m_endpoints(phi, *job.a, *job.b, job.points, weights, m, opts);

  const RealFunction f = function_of(job.f);
  if (id == "fractional_mercer")
    return jensen::fractional_mercer(build_kernel(job, {*job.c, *job.d}), phi, f, *job.c, *job.d,
                                     kernels::Alpha(alpha), *job.a, *job.b, m, opts);
  const auto mu = measure_of(job, alpha);
  if (id == "jensen_classical") return jensen::jensen_classical(phi, f, mu, opts);
  if (id == "mjensen_continuous")
    return jensen::mjensen_continuous(phi, f, mu, interval_of(job), m, opts);
  if (id == "mercer_m_continuous")
    return jensen::mercer_m_continuous(phi, f, mu, *job.a, *job.b, m, opts);
  if (id == "mercer_continuous")
    return jensen::mercer_continuous(jensen::EndpointFunction{phi, job.phi_at_a, job.phi_at_b}, f,
                                     mu, *job.a, *job.b, opts);
  if (id == "jensen_sandwich")
    return jensen::jensen_sandwich(phi, f, mu, *job.a, *job.b, opts).summary();
  throw ConfigError("inequality_id", "unknown inequality '" + id + "'");
}

int exit_for(jensen::Verdict v) {
  switch (v) {
    case jensen::Verdict::Holds: return kExitOk;
    case jensen::Verdict::Violated: return kExitViolated;
    case jensen::Verdict::HypothesisFailed: return kExitHypothesisFailed;
  }
  return kExitOk;
}

CsvRow row_of(const jensen::InequalityReport& r, double alpha, double m) {
  return {alpha, m, r.lhs, r.rhs, r.slack, r.quadrature_error, r.verdict};
}

void write_report(const jensen::InequalityReport& r, std::ostream& out) {
  out << "inequality: " << r.inequality_id << "\n";
  out << "lhs = " << num(r.lhs) << "\n";
  out << "rhs = " << num(r.rhs) << "\n";
  out << "slack = " << num(r.slack) << "\n";
  out << "quadrature_error = " << num(r.quadrature_error) << "\n";
  if (r.argument_in_domain)
    out << "lhs_argument = " << num(r.lhs_argument) << (*r.argument_in_domain ? " (in I)" : " (NOT in I)")
        << "\n";
  for (const auto& [name, value] : r.terms) out << "  " << name << " = " << num(value) << "\n";
  for (const auto& c : r.hypothesis_checks)
    out << "check " << c.name << ": " << (c.passed ? "pass" : "FAIL")
        << (c.detail.empty() ? "" : " -- " + c.detail) << "\n";
  out << "verdict: " << jensen::to_string(r.verdict) << "\n";
}

jensen::Options options_for(const JobSpec& job) {
  jensen::Options opts;
  opts.tol = job.tolerance;
  opts.grid.seed = job.seed;
  return opts;
}

int run_operator(const JobSpec& job, std::ostream& out) {
  const auto alphas = job.alpha.values();
  const auto kernel = build_kernel(job, {*job.a, *job.b});
  const auto f = function_of(job.f);
  struct Row {
    double value, error;
    std::size_t subdivisions;
  };
  std::vector<Row> rows(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    ops::OperatorRequest req{kernel.get(),
                             f,
                             {*job.a, *job.b},
                             job.side == "left" ? ops::Side::Left : ops::Side::Right,
                             kernels::Alpha(alphas[i]),
                             *job.t,
                             job.tolerance};
    if (job.command == "integrate") {
      const auto r = ops::frac_integral(req);
      rows[i] = {r.value, r.error_estimate, r.subdivisions};
    } else {
      const double h = job.step.value_or(ops::default_derivative_step(job.tolerance));
      rows[i] = {ops::frac_derivative(req, h), 0.0, 0};
    }
  });

  if (job.format == OutputFormat::Csv) {
    out << "alpha,t,value,error_estimate,subdivisions\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      out << num(alphas[i]) << ',' << num(*job.t) << ',' << num(rows[i].value) << ','
          << num(rows[i].error) << ',' << rows[i].subdivisions << '\n';
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << job.command << " kernel=" << job.kernel << " side=" << job.side
          << " alpha=" << num(alphas[i]) << " t=" << num(*job.t) << "\n";
      out << "value = " << num(rows[i].value) << "\n";
      if (job.command == "integrate")
        out << "error_estimate = " << num(rows[i].error) << "\n"
            << "subdivisions = " << rows[i].subdivisions << "\n";
    }
  }
  return kExitOk;
}

int run_check(const JobSpec& job, std::ostream& out) {
  const double alpha = job.alpha.start;
  const double m = job.m.start;
  const auto report = check_once(job, alpha, m, options_for(job));
  if (job.format == OutputFormat::Csv)
    emit_csv({row_of(report, alpha, m)}, out);
  else
    write_report(report, out);
  return exit_for(report.verdict);
}

int run_sweep(const JobSpec& job, std::ostream& out, std::ostream& log) {
  const auto alphas = job.alpha.values();
  const auto ms = job.m.values();
  std::vector<CsvRow> rows(alphas.size() * ms.size());
  const auto opts = options_for(job);
  log << "sweep: " << rows.size() << " grid points on up to " << worker_count() << " workers\n";
  parallel_for(rows.size(), [&](std::size_t i) {
    const double alpha = alphas[i / ms.size()];
    const double m = ms[i % ms.size()];
    rows[i] = row_of(check_once(job, alpha, m, opts), alpha, m);
  });

  if (job.format == OutputFormat::Csv) {
    emit_csv(rows, out);
  } else {
    out << "sweep " << job.inequality_id << "\n";
    for (const auto& r : rows)
      out << "alpha=" << num(r.alpha) << " m=" << num(r.m) << " slack=" << num(r.slack)
          << " verdict=" << jensen::to_string(r.verdict) << "\n";
  }
  int code = kExitOk;
  for (const auto& r : rows) {
    if (r.verdict == jensen::Verdict::Violated) return kExitViolated;
    if (r.verdict == jensen::Verdict::HypothesisFailed) code = kExitHypothesisFailed;
  }
  return code;
}

int run_falsify(const JobSpec& job, std::ostream& out, std::ostream& log) {
  falsify::GeneratorConfig config;
  if (!job.phi.empty()) {
    config.family = falsify::PhiFamily::Fixed;
    config.phi = job.phi;
  } else if (job.phi_family == "concave") {
    config.family = falsify::PhiFamily::Concave;
  } else if (job.phi_family == "convex") {
    config.family = falsify::PhiFamily::ConvexCatalog;
  }
  if (job.m_given) config.m = job.m.start;
  config.interval = interval_of(job);

  auto opts = options_for(job);
  // Lighter hypothesis lattice per instance; the budget multiplies it.
  opts.grid.n = 12;
  opts.grid.random_triples = 500;

  const auto relaxation = falsify::parse_relaxation(job.relaxation);
  log << "falsify: " << job.inequality_id << " relaxation=" << job.relaxation
      << " budget=" << job.budget << " seed=" << job.seed << "\n";
  const auto result =
      falsify::falsify(job.inequality_id, config, relaxation, job.budget, job.seed, opts);

  if (!result.counterexample) {
    if (job.format == OutputFormat::Csv)
      emit_csv({}, out);
    else
      out << "no counterexample in " << result.instances_examined << " instances\n";
    return kExitOk;
  }
  const auto& cx = *result.counterexample;
  if (job.format == OutputFormat::Csv) {
    emit_csv({row_of(cx.report, cx.instance.alpha, cx.instance.m)}, out);
  } else {
    out << "counterexample (instance " << cx.instance_index << ", " << cx.shrink_steps
        << " shrink steps)\n";
    out << "---\n" << cx.instance.describe() << "---\n";
    write_report(cx.report, out);
  }
  return kExitViolated;
}

int dispatch(const JobSpec& job, std::ostream& out, std::ostream& log) {
  if (job.command == "integrate" || job.command == "derive") return run_operator(job, out);
  if (job.command == "check") return run_check(job, out);
  if (job.command == "sweep") return run_sweep(job, out, log);
  if (job.command == "falsify") return run_falsify(job, out, log);
  throw ConfigError("command", "unknown command '" + job.command + "'");
}

}  // namespace

void emit_csv(const std::vector<CsvRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
    out << num(r.alpha) << ',' << num(r.m) << ',' << num(r.lhs) << ',' << num(r.rhs) << ','
        << num(r.slack) << ',' << num(r.quadrature_error) << ',' << jensen::to_string(r.verdict)
        << '\n';
}

int execute(const JobSpec& job, std::ostream& out, std::ostream& log) {
  std::ostringstream buffer;
  int code = kExitOk;
  try {
    validate(job);
    code = dispatch(job, buffer, log);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const HypothesisError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RangeError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    log << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }

  if (job.output_path.empty()) {
    out << buffer.str();
    return code;
  }
  std::ofstream file(job.output_path, std::ios::binary);
  file << buffer.str();
  if (!file) {
    log << "error: cannot write " << job.output_path << "\n";
    return kExitConfig;
  }
  return code;
}

}  // namespace fracjensen::cli
