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

// Report generation behind the command-line tool. Each subcommand returns a
// Report: a JSON body plus a flat table that also renders as CSV. Rationals
// are written as "num/den" strings, big integers as decimal strings, and
// decimal approximations always carry their digit count.

#ifndef DIRICHLET_REPORT_H_
#define DIRICHLET_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dirichlet/enclosure.h"
#include "dirichlet/error.h"
#include "json.hpp"

namespace dirichlet {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
// Significant digits of the "approx" fields.
inline constexpr int kApproxDigits = 10;

enum class OutputFormat { kJson, kCsv };

struct JobConfig {
  std::string command;  // expand, sets, oracle, dim, sweep, examples
  std::string theta = "golden";
  std::string tau = "1";
  std::optional<int> depth;  // per-command default when unset
  int precision = kDefaultPrecisionBits;
  int64_t budget = 2000;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::kJson;
  bool header = true;
  std::string k;  // "a..b" or "a"; empty for the command default
  int which = 0;  // examples: 1-4, 0 for all
  std::string series = "auto";  // dim: auto, selection, exponent, tau-one, cover
  std::string exponent;  // w for super normalizations and sweep moduli
  std::string grid = "0.6:0.9:0.05,1.15:1.85:0.05";  // sweep: lo:hi:step,...
  bool arcs = false;  // sets: include arc lists
};

// Default precision from DIRICHLET_PRECISION when set and valid.
int DefaultPrecision();

// Applies a JSON object on top of `config`. Parse errors, unknown keys and
// wrong types throw kInvalidArgument with the line of the offending text.
void ApplyConfigJson(const std::string& text, JobConfig* config);

// Throws kInvalidArgument on the first invalid field.
void Validate(const JobConfig& config);

struct Report {
  std::string command;
  Json body = Json::object();
  std::vector<std::string> columns;
  std::vector<Json> rows;  // objects keyed by column
  int exit_code = 0;
};

// 0 success, 1 configuration error, 2 invariant violation, 3 precision
// exhausted.
int ExitCode(ErrorKind kind);
const char* ErrorSlug(ErrorKind kind);

Report RunExpand(const JobConfig& config);
Report RunSets(const JobConfig& config);
Report RunOracle(const JobConfig& config);
Report RunDim(const JobConfig& config);
Report RunSweep(const JobConfig& config);
Report RunExamples(const JobConfig& config);
// Validates and dispatches on config.command.
Report Run(const JobConfig& config);

// Machine-readable error document.
Json ErrorJson(const Error& error);

// Output bytes. The header (tool, version, timestamp) is the only part that
// varies between identical runs and is dropped when config.header is false.
std::string Render(const Report& report, const JobConfig& config);

// Helpers shared with tests.
std::string Approx(const Rational& q, int digits = kApproxDigits);
Json EnclosureJson(const Enclosure& e);
// "a..b" or "a"; nullopt for empty text.
std::optional<std::pair<int, int>> ParseRange(const std::string& text);
// "lo:hi:step" segments separated by commas, endpoints inclusive.
std::vector<Rational> ParseGrid(const std::string& text);

}  // namespace dirichlet

#endif  // DIRICHLET_REPORT_H_
