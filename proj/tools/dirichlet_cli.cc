// Copyright 2026 The Dirichlet Level Sets Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dirichlet: command-line front end for the level set and dimension tools.
//
//   dirichlet expand --theta golden --depth 30
//   dirichlet oracle --theta golden --tau 1 --k 2..6 --budget 2000
//   dirichlet examples --which 3 --depth 25

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dirichlet/error.h"
#include "dirichlet/report.h"

namespace {

using dirichlet::Error;
using dirichlet::ErrorKind;
using dirichlet::JobConfig;

struct Flags {
  std::string config, theta, tau, out, format, k, series, exponent, grid;
  int depth = 0, precision = 0, which = 0;
  int64_t budget = 0;
  bool no_header = false, arcs = false;
};

struct Options {
  CLI::Option *config, *theta, *tau, *out, *format, *k, *series, *exponent, *grid;
  CLI::Option *depth, *precision, *which, *budget, *no_header, *arcs;
};

Options AddCommon(CLI::App* sub, Flags* f) {
  Options o;
  o.config = sub->add_option("--config", f->config, "JSON config file; flags override it");
  o.theta = sub->add_option("--theta", f->theta, "quotient source, e.g. golden, rule:a_k=k");
  o.tau = sub->add_option("--tau", f->tau, "exponent tau as u/v");
  o.depth = sub->add_option("--depth", f->depth, "number of partial quotients");
  o.precision = sub->add_option("--precision", f->precision, "working precision in bits");
  o.budget = sub->add_option("--budget", f->budget, "largest q_{k+1} for the brute-force oracle");
  o.out = sub->add_option("--out", f->out, "output file (default stdout)");
  o.format = sub->add_option("--format", f->format, "json or csv");
  o.no_header = sub->add_flag("--no-header", f->no_header, "omit the version/timestamp header");
  o.k = sub->add_option("--k", f->k, "level range a..b");
  o.which = sub->add_option("--which", f->which, "example number 1-4 (0: all)");
  o.series = sub->add_option("--series", f->series, "auto, selection, exponent, tau-one, cover");
  o.exponent = sub->add_option("--exponent", f->exponent, "irrationality exponent w");
  o.grid = sub->add_option("--grid", f->grid, "sweep grid lo:hi:step[,lo:hi:step...]");
  o.arcs = sub->add_flag("--arcs", f->arcs, "include arc lists in sets output");
  return o;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "--config: cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

JobConfig BuildConfig(const std::string& command, const Flags& f, const Options& o) {
  JobConfig c;
  c.command = command;
  c.precision = dirichlet::DefaultPrecision();
  if (*o.config) dirichlet::ApplyConfigJson(ReadFile(f.config), &c);
  if (*o.theta) c.theta = f.theta;
  if (*o.tau) c.tau = f.tau;
  if (*o.depth) c.depth = f.depth;
  if (*o.precision) c.precision = f.precision;
  if (*o.budget) c.budget = f.budget;
  if (*o.out) c.out = f.out;
  if (*o.format) {
    if (f.format == "json") {
      c.format = dirichlet::OutputFormat::kJson;
    } else if (f.format == "csv") {
      c.format = dirichlet::OutputFormat::kCsv;
    } else {
      throw Error(ErrorKind::kInvalidArgument, "--format: must be json or csv, got " + f.format);
    }
  }
  if (*o.no_header) c.header = false;
  if (*o.k) c.k = f.k;
  if (*o.which) c.which = f.which;
  if (*o.series) c.series = f.series;
  if (*o.exponent) c.exponent = f.exponent;
  if (*o.grid) c.grid = f.grid;
  if (*o.arcs) c.arcs = true;
  return c;
}

int Fail(const Error& e) {
  std::cout << dirichlet::ErrorJson(e).dump(2) << "\n";
  std::cerr << "dirichlet: " << e.what() << "\n";
  return dirichlet::ExitCode(e.kind());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level sets and dimension estimates for uniform Diophantine approximation"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::pair<CLI::App*, Options>> subs;
  const std::pair<const char*, const char*> kCommands[] = {
      {"expand", "convergent table and identity checks"},
      {"sets", "certified level set constructions"},
      {"oracle", "compare constructions with the brute-force level sets"},
      {"dim", "dimension series"},
      {"sweep", "dimension estimates over a tau grid"},
      {"examples", "regression run of the four worked examples"},
  };
  for (const auto& [name, help] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    subs.emplace_back(sub, AddCommon(sub, &flags));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return Fail(Error(ErrorKind::kInvalidArgument, e.what()));
  }

  try {
    for (const auto& [sub, opts] : subs) {
      if (!sub->parsed()) continue;
      JobConfig config = BuildConfig(sub->get_name(), flags, opts);
      dirichlet::Report report = dirichlet::Run(config);
      std::string text = dirichlet::Render(report, config);
      if (config.out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(config.out);
        if (!out) throw Error(ErrorKind::kInvalidArgument, "--out: cannot write " + config.out);
        out << text;
      }
      return report.exit_code;
    }
  } catch (const Error& e) {
    return Fail(e);
  }
  return 1;
}
