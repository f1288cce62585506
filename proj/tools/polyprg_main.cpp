#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "polyprg/error.hpp"
#include "polyprg/experiment.hpp"

using nlohmann::json;
using polyprg::ExperimentConfig;

namespace {

int write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << json{{"error", {{"kind", "IoError"}, {"message", "cannot write " + path}}}}.dump() << "\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyprg: finite-field polynomial algebra and PRG experiments"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string field, hsg = "grid", c0, delta, poly, point, out_path, csv_in;
  std::optional<unsigned> degree;

  app.add_option("--field", field, "Field descriptor p or p^k");
  app.add_option("--n", cfg.n, "Number of x variables");
  app.add_option("--d,--degree", degree, "Degree (HSG degree D or random corpus degree)");
  app.add_option("--sigma", cfg.sigma, "Precision sigma");
  app.add_option("--hsg", hsg, "grid or kronecker")->check(CLI::IsMember({"grid", "kronecker"}));
  app.add_option("--c0", c0, "Constant C0 in delta = C0(2d-1)/q");
  app.add_option("--delta", delta, "HSG density delta as a fraction");
  app.add_option("--poly", poly, "File holding one polynomial");
  app.add_option("--point", point, "Comma-separated point a1,..,an");
  app.add_option("--corpus", cfg.corpus, "builtin, random, or a JSON corpus file");
  app.add_option("--filter", cfg.filter, "Substring filter on corpus entry names");
  app.add_option("--random-count", cfg.random_count, "Entries in a random corpus");
  app.add_option("--rng-seed", cfg.rng_seed, "Seed for all random streams");
  app.add_option("--mode", cfg.mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  app.add_option("--samples", cfg.samples, "Monte-Carlo samples");
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write the report to FILE");
  app.add_flag("--timings", cfg.timings, "Include wall-clock timings in the report");

  const char* commands[] = {"hyph", "factor2", "lecerf", "bertini-scan", "hsg-density", "prg-distance", "plane-scan"};
  for (const char* name : commands) app.add_subcommand(name)->fallthrough();
  auto* suite = app.add_subcommand("suite", "Run a named acceptance suite")->fallthrough();
  suite->add_option("name", cfg.suite, "Suite name")->required()->check(CLI::IsMember(polyprg::suite_names()));
  auto* csv = app.add_subcommand("csv", "Convert a JSON report to CSV")->fallthrough();
  csv->add_option("--in", csv_in, "JSON report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "csv") {
      std::ifstream in(csv_in);
      if (!in) throw polyprg::PreconditionError("cannot open " + csv_in);
      return write_out(out_path, polyprg::report_to_csv(json::parse(in)));
    }
    cfg.command = cmd;
    cfg.hsg = polyprg::parse_hsg_kind(hsg);
    if (!field.empty()) cfg.field = field;
    cfg.degree = degree;
    if (!c0.empty()) cfg.c0 = polyprg::parse_fraction(c0);
    if (!delta.empty()) cfg.delta = polyprg::parse_fraction(delta);
    if (!poly.empty()) cfg.poly_file = poly;
    if (!point.empty()) cfg.point = point;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "UsageError"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }

  const polyprg::RunResult r = polyprg::run(cfg);
  const int io = write_out(out_path, r.report.dump(2) + "\n");
  if (io) return io;
  return r.ok ? 0 : 1;
}
