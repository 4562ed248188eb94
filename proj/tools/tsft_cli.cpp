// Copyright 2026 The tsft Authors
//
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

// tsft: command-line front end over the C API.
//
// Exit status: 0 the property holds (or the command succeeded), 1 it fails,
// 2 input or usage error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tsft/tsft.h"

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;

struct Config {
  std::string format = "text";
  unsigned arity = 0;
  bool timing = false;
  std::string output;
};

int Error(const std::string& what) {
  std::cerr << "tsft: " << what << "\n";
  return kUsage;
}

int StatusError(tsft_status st, const std::string& context) {
  std::string msg = tsft_last_error();
  if (msg.empty()) msg = tsft_status_name(st);
  return Error(context.empty() ? msg : context + ": " + msg);
}

// Writes a library string to the output target and frees it.
bool Write(const Config& cfg, char* text) {
  const std::string s = text ? text : "";
  tsft_string_free(text);
  if (cfg.output.empty() || cfg.output == "-") {
    std::cout << s;
    std::cout.flush();
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(cfg.output, std::ios::binary);
  out << s;
  return static_cast<bool>(out);
}

tsft_format FormatOf(const std::string& name) {
  static const std::map<std::string, tsft_format> kFormats{
      {"text", TSFT_FORMAT_TEXT}, {"json", TSFT_FORMAT_JSON}, {"dot", TSFT_FORMAT_DOT}};
  return kFormats.at(name);
}

tsft_options Options(const Config& cfg) {
  tsft_options o;
  tsft_options_init(&o);
  o.format = FormatOf(cfg.format);
  o.timing = cfg.timing ? 1 : 0;
  return o;
}

struct ShiftHandle {
  tsft_shift* ptr = nullptr;
  ~ShiftHandle() { tsft_free(ptr); }
};

// Loads `path` into `h`; on failure prints the diagnostic and returns false.
bool Load(const std::string& path, const Config& cfg, ShiftHandle& h) {
  const tsft_status st = tsft_load(path.c_str(), cfg.arity, &h.ptr);
  if (st != TSFT_OK) {
    StatusError(st, path);
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide irreducibility and mixing of tree-shifts of finite type, "
               "build chaos certificates and estimate entropy."};
  app.set_version_flag("--version", std::string(tsft_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--arity", cfg.arity, "Arity d when the file omits it")
      ->check(CLI::Range(1u, 10u));
  app.add_flag("--timing", cfg.timing, "Include wall-clock time in reports");
  app.add_option("-o,--output", cfg.output, "Write to this file instead of stdout");

  std::string input;

  auto* check = app.add_subcommand("check", "Decide a property and print its evidence");
  bool irreducible = false, mixing = false, chaos = false;
  std::size_t verify_depth = 6;
  check->add_option("file", input, "Matrix or forbidden-set file")->required();
  auto* f_irr = check->add_flag("--irreducible", irreducible, "Decide irreducibility");
  auto* f_mix = check->add_flag("--mixing", mixing, "Decide mixing");
  auto* f_chaos = check->add_flag("--chaos", chaos, "Report chaos with certificates");
  f_irr->excludes(f_mix)->excludes(f_chaos);
  f_mix->excludes(f_chaos);
  check->add_option("--depth", verify_depth, "Verification depth for the periodic certificate")
      ->check(CLI::Range(std::size_t{1}, std::size_t{40}));

  auto* entropy = app.add_subcommand("entropy", "Tabulate |B_m| and h_m");
  std::size_t m_max = 8;
  entropy->add_option("file", input, "Matrix or forbidden-set file")->required();
  entropy->add_option("--m", m_max, "Largest height m")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));

  auto* periodic = app.add_subcommand("periodic", "Build and verify a periodic tree");
  std::string block;
  std::size_t periodic_depth = 0;
  periodic->add_option("file", input, "Matrix or forbidden-set file")->required();
  periodic->add_option("--block", block, "Block text; default is the first live symbol");
  periodic->add_option("--depth", periodic_depth,
                       "Verification depth; default 2(|P| + height)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{40}));

  auto* export_dot = app.add_subcommand("export-dot", "Write the labeled graph as DOT");
  export_dot->add_option("file", input, "Matrix or forbidden-set file")->required();

  auto* convert = app.add_subcommand(
      "convert", "Write the vertex presentation as a matrix file (or json/dot)");
  convert->add_option("file", input, "Matrix or forbidden-set file")->required();

  auto* verify = app.add_subcommand("verify-report", "Re-check a JSON report");
  verify->add_option("file", input, "Report written with --format json")->required();

  auto* oracle = app.add_subcommand(
      "oracle", "Cross-check the decider against a bounded tree search");
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t oracle_depth = 8;
  oracle->add_option("file", input, "Instance file; omit for a random batch");
  oracle->add_option("--seed", seed, "Seed of the random batch");
  oracle->add_option("--count", count, "Size of the random batch")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  oracle->add_option("--depth", oracle_depth, "Search depth")
      ->check(CLI::Range(std::size_t{1}, std::size_t{24}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  tsft_options opts = Options(cfg);
  auto emit = [&](char* text) { return Write(cfg, text) ? 0 : Error("cannot write output"); };

  if (check->parsed()) {
    if (!irreducible && !mixing && !chaos) {
      return Error("check needs one of --irreducible, --mixing, --chaos");
    }
    if (opts.format == TSFT_FORMAT_DOT) return Error("check writes text or json");
    ShiftHandle h;
    if (!Load(input, cfg, h)) return kUsage;
    opts.verify_depth = verify_depth;
    const tsft_property p = irreducible ? TSFT_IRREDUCIBLE
                            : mixing    ? TSFT_MIXING
                                        : TSFT_CHAOS;
    int holds = 0;
    char* report = nullptr;
    const tsft_status st = tsft_check(h.ptr, p, &opts, &holds, &report);
    if (report != nullptr && emit(report) != 0) return kUsage;
    if (st != TSFT_OK) return StatusError(st, input);
    return holds ? kHolds : kFails;
  }

  if (entropy->parsed()) {
    if (opts.format == TSFT_FORMAT_DOT) return Error("entropy writes text or json");
    ShiftHandle h;
    if (!Load(input, cfg, h)) return kUsage;
    char* report = nullptr;
    const tsft_status st = tsft_entropy(h.ptr, m_max, &opts, &report);
    if (st != TSFT_OK) return StatusError(st, input);
    return emit(report) == 0 ? kHolds : kUsage;
  }

  if (periodic->parsed()) {
    if (opts.format == TSFT_FORMAT_DOT) return Error("periodic writes text or json");
    ShiftHandle h;
    if (!Load(input, cfg, h)) return kUsage;
    opts.verify_depth = periodic_depth;
    int ok = 0;
    char* report = nullptr;
    const tsft_status st = tsft_periodic(
        h.ptr, block.empty() ? nullptr : block.c_str(), &opts, &ok, &report);
    if (st != TSFT_OK) return StatusError(st, input);
    if (emit(report) != 0) return kUsage;
    return ok ? kHolds : kFails;
  }

  if (export_dot->parsed() || convert->parsed()) {
    ShiftHandle h;
    if (!Load(input, cfg, h)) return kUsage;
    tsft_format f = opts.format;
    if (export_dot->parsed()) {
      if (app.get_option("--format")->count() > 0 && f != TSFT_FORMAT_DOT) {
        return Error("export-dot writes dot");
      }
      f = TSFT_FORMAT_DOT;
    }
    char* out = nullptr;
    const tsft_status st = tsft_export(h.ptr, f, &out);
    if (st != TSFT_OK) return StatusError(st, input);
    return emit(out) == 0 ? kHolds : kUsage;
  }

  if (verify->parsed()) {
    if (opts.format == TSFT_FORMAT_DOT) return Error("verify-report writes text or json");
    std::ifstream in(input, std::ios::binary);
    if (!in) return Error("cannot read '" + input + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    int ok = 0;
    char* summary = nullptr;
    const tsft_status st =
        tsft_verify_report(buffer.str().c_str(), opts.format, &ok, &summary);
    if (st != TSFT_OK) return StatusError(st, input);
    if (emit(summary) != 0) return kUsage;
    return ok ? kHolds : kFails;
  }

  if (oracle->parsed()) {
    if (opts.format == TSFT_FORMAT_DOT) return Error("oracle writes text or json");
    ShiftHandle h;
    if (!input.empty() && !Load(input, cfg, h)) return kUsage;
    int agree = 0;
    char* report = nullptr;
    const tsft_status st =
        tsft_oracle(h.ptr, seed, count, oracle_depth, opts.format, &agree, &report);
    if (st != TSFT_OK) return StatusError(st, input);
    if (emit(report) != 0) return kUsage;
    return agree ? kHolds : kFails;
  }
  return Error("no command");
}
