#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "flexline/cli.hpp"
#include "flexline/error.hpp"

using namespace flexline;

int main(int argc, char** argv) {
  CLI::App app{"Inflection lines of plane quartics over finite fields"};
  app.require_subcommand(1);

  std::string curve;
  std::uint32_t p = 0;
  std::vector<std::int64_t> u;
  std::uint32_t p_max = 50;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string field;
  bool timing = false;
  unsigned threads = 0;

  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed-override", seed, "Mixed into the seeds of the random coordinate changes");
  app.add_option("--field", field, "Analyze over this field, e.g. 13 or 13^2/2,12,1");
  app.add_flag("--timing", timing, "Add wall-clock timings to the report");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* analyze = app.add_subcommand("analyze", "Full analysis of one curve");
  analyze->add_option("--curve", curve, "F, K, K1, K2, K3, Cplus, Cminus, V, Vu, Ec313a, Ec313b")->required();
  analyze->add_option("--char", p, "Characteristic")->required();
  analyze->add_option("--u", u, "Parameter of the Vu family")->expected(0, 1);

  auto* theorem = app.add_subcommand("theorem", "Compare all catalog configurations in one characteristic");
  theorem->add_option("--char", p, "Characteristic")->required();
  theorem->add_option("--u", u, "Restrict the Vu sample to these parameters");

  auto* scan = app.add_subcommand("scan", "Run the theorem comparison for every prime up to a bound");
  scan->add_option("--max", p_max, "Largest characteristic")->check(CLI::Range(0U, 1000U));
  scan->add_option("--u", u, "Restrict the Vu sample to these parameters");

  auto* jcheck = app.add_subcommand("jcheck", "j-invariant of the elliptic curve attached to K");
  jcheck->add_option("--char", p, "Characteristic")->required();

  for (auto* sub : {analyze, theorem, scan, jcheck}) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed-override", seed, "Mixed into the seeds of the random coordinate changes");
    sub->add_option("--field", field, "Analyze over this field");
    sub->add_flag("--timing", timing, "Add wall-clock timings to the report");
    sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
  }

  CLI11_PARSE(app, argc, argv);

  RunOptions opts;
  opts.elimination.seed_override = seed;
  opts.timing = timing;
  opts.threads = threads;
  opts.u_values = u;

  std::string command = app.get_subcommands().front()->get_name();
  Report report;
  try {
    if (!field.empty()) opts.field = Field::parse(field);
    if (command == "analyze") {
      CurveSpec spec{parse_curve_id(curve), p, std::nullopt};
      if (!u.empty()) spec.u = u.front();
      if (spec.id == CurveId::Vu && !spec.u) throw Error(Errc::InvalidArgument, "--u is required for Vu");
      report = cmd_analyze(spec, opts);
    } else if (command == "theorem") {
      report = cmd_theorem(p, opts);
    } else if (command == "scan") {
      report = cmd_scan(p_max, opts);
    } else {
      report = cmd_jcheck(p, opts);
    }
  } catch (const std::exception& e) {
    report = error_report(command, e);
  }
  if (format == "text") {
    std::cout << render_text(report.json);
  } else {
    std::cout << report.json.dump(2) << "\n";
  }
  return report.exit_code;
}
