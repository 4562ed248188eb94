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

#include "tsft/tsft.h"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "tsft/error.hpp"
#include "tsft/io.hpp"
#include "tsft/report.hpp"

struct tsft_shift {
  tsft::LoadedShift loaded;
};

namespace {

thread_local std::string g_last_error;

tsft_status Fail(tsft_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

tsft_status FromCode(tsft::ErrorCode code) {
  switch (code) {
    case tsft::ErrorCode::kParse:
      return TSFT_ERR_PARSE;
    case tsft::ErrorCode::kInvalidArgument:
    case tsft::ErrorCode::kHeightMismatch:
      return TSFT_ERR_ARGUMENT;
    case tsft::ErrorCode::kEmptyShift:
      return TSFT_ERR_EMPTY_SHIFT;
    case tsft::ErrorCode::kRefused:
      return TSFT_ERR_REFUSED;
    case tsft::ErrorCode::kLimitExceeded:
      return TSFT_ERR_LIMIT;
  }
  return TSFT_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
tsft_status Guard(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const tsft::Error& e) {
    return Fail(FromCode(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(TSFT_ERR_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return Fail(TSFT_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(TSFT_ERR_INTERNAL, "unknown failure");
  }
}

char* Copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tsft_options Resolve(const tsft_options* options) {
  tsft_options o;
  tsft_options_init(&o);
  if (options != nullptr) o = *options;
  return o;
}

std::string InputNotes(const tsft::LoadedShift& in) {
  std::string out;
  for (const auto& line : in.log) out += "# " + line + "\n";
  return out;
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string TimingLine(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "time: %.3f ms\n", ms);
  return buf;
}

// Serializes a document body in the requested format. `text` is the human
// form of the same content.
std::string Emit(const tsft_options& o, std::string_view command,
                 const tsft::LoadedShift& in, tsft::Json body,
                 const std::string& text, double ms) {
  if (o.format == TSFT_FORMAT_JSON) {
    return tsft::MakeDocument(command, in, std::move(body),
                              o.timing ? std::optional<double>(ms) : std::nullopt)
               .dump(2) +
           "\n";
  }
  return InputNotes(in) + text + (o.timing ? TimingLine(ms) : "");
}

tsft_status RequireTextOrJson(tsft_format f) {
  if (f == TSFT_FORMAT_TEXT || f == TSFT_FORMAT_JSON) return TSFT_OK;
  return Fail(TSFT_ERR_ARGUMENT, "this command writes text or json only");
}

}  // namespace

extern "C" {

void tsft_options_init(tsft_options* options) {
  if (options == nullptr) return;
  options->format = TSFT_FORMAT_TEXT;
  options->timing = 0;
  options->verify_depth = 6;
  options->max_states = tsft::DecideOptions{}.max_states;
  options->digit_threshold = tsft::kDefaultDigitThreshold;
}

const char* tsft_version(void) { return "1.0.0"; }

const char* tsft_status_name(tsft_status status) {
  switch (status) {
    case TSFT_OK:
      return "ok";
    case TSFT_ERR_PARSE:
      return "parse error";
    case TSFT_ERR_ARGUMENT:
      return "invalid argument";
    case TSFT_ERR_EMPTY_SHIFT:
      return "empty shift";
    case TSFT_ERR_REFUSED:
      return "refused";
    case TSFT_ERR_LIMIT:
      return "limit exceeded";
    case TSFT_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* tsft_last_error(void) { return g_last_error.c_str(); }

tsft_status tsft_load(const char* path, unsigned arity, tsft_shift** out) {
  return Guard([&] {
    if (path == nullptr || out == nullptr) {
      return Fail(TSFT_ERR_ARGUMENT, "null argument");
    }
    *out = nullptr;
    auto* s = new tsft_shift{tsft::LoadShift(path, arity)};
    *out = s;
    return TSFT_OK;
  });
}

tsft_status tsft_parse(const char* text, unsigned arity, tsft_shift** out) {
  return Guard([&] {
    if (text == nullptr || out == nullptr) {
      return Fail(TSFT_ERR_ARGUMENT, "null argument");
    }
    *out = nullptr;
    *out = new tsft_shift{tsft::ParseShift(text, arity)};
    return TSFT_OK;
  });
}

void tsft_free(tsft_shift* shift) { delete shift; }

size_t tsft_alphabet_size(const tsft_shift* shift) {
  return shift == nullptr ? 0 : shift->loaded.tsft.size();
}

unsigned tsft_arity(const tsft_shift* shift) {
  return shift == nullptr ? 0 : shift->loaded.tsft.arity();
}

tsft_status tsft_input_log(const tsft_shift* shift, char** out) {
  return Guard([&] {
    if (shift == nullptr || out == nullptr) {
      return Fail(TSFT_ERR_ARGUMENT, "null argument");
    }
    std::string text;
    for (const auto& line : shift->loaded.log) text += line + "\n";
    *out = Copy(text);
    return TSFT_OK;
  });
}

tsft_status tsft_check(const tsft_shift* shift, tsft_property property,
                       const tsft_options* options, int* holds,
                       char** report) {
  return Guard([&] {
    if (shift == nullptr || holds == nullptr || report == nullptr) {
      return Fail(TSFT_ERR_ARGUMENT, "null argument");
    }
    const tsft_options o = Resolve(options);
    if (auto st = RequireTextOrJson(o.format); st != TSFT_OK) return st;
    const auto& in = shift->loaded;
    tsft::DecideOptions decide;
    decide.max_states = o.max_states;
    Stopwatch clock;

    tsft::Json body;
    std::string text;
    bool ok = false;
    bool empty = false;
    switch (property) {
      case TSFT_IRREDUCIBLE: {
        const auto r = tsft::DecideIrreducible(in.tsft, decide);
        body["property"] = "irreducible";
        body["irreducibility"] = tsft::ToJson(r);
        text = tsft::FormatText(r);
        ok = r.verdict == tsft::Verdict::kYes;
        empty = r.verdict == tsft::Verdict::kEmptyShift;
        break;
      }
      case TSFT_MIXING: {
        const auto r = tsft::DecideMixing(in.tsft, decide);
        body["property"] = "mixing";
        body["mixing"] = tsft::ToJson(r);
        text = tsft::FormatText(r);
        ok = r.verdict == tsft::Verdict::kYes;
        empty = r.verdict == tsft::Verdict::kEmptyShift;
        break;
      }
      case TSFT_CHAOS: {
        tsft::ChaosOptions co;
        co.decide = decide;
        co.verify_depth = o.verify_depth == 0 ? 6 : o.verify_depth;
        const auto r = tsft::AnalyzeChaos(in.tsft, co);
        body["property"] = "chaos";
        body["irreducibility"] = tsft::ToJson(r.irreducibility);
        body["mixing"] = tsft::ToJson(r.mixing);
        body["chaos"] = tsft::ToJson(r, co.verify_depth);
        text = tsft::FormatText(r, co.verify_depth);
        ok = r.chaotic;
        empty = r.irreducibility.verdict == tsft::Verdict::kEmptyShift;
        break;
      }
      default:
        return Fail(TSFT_ERR_ARGUMENT, "unknown property");
    }
    body["holds"] = ok;
    *holds = ok ? 1 : 0;
    *report = Copy(Emit(o, "check", in, std::move(body), text, clock.ms()));
    if (empty) return Fail(TSFT_ERR_EMPTY_SHIFT, "the shift is empty");
    return TSFT_OK;
  });
}

tsft_status tsft_entropy(const tsft_shift* shift, size_t m_max,
                         const tsft_options* options, char** report) {
  return Guard([&] {
    if (shift == nullptr || report == nullptr) {
      return Fail(TSFT_ERR_ARGUMENT, "null argument");
    }
    const tsft_options o = Resolve(options);
    if (auto st = RequireTextOrJson(o.format); st != TSFT_OK) return st;
    Stopwatch clock;
    const auto e = tsft::EstimateEntropy(shift->loaded.tsft, m_max, o.digit_threshold);
    tsft::Json body;
    body["entropy"] = tsft::ToJson(e);
    *report = Copy(Emit(o, "entropy", shift->loaded, std::move(body),
                        tsft::FormatText(e), clock.ms()));
    return TSFT_OK;
  });
}

tsft_status tsft_periodic(const tsft_shift* shift, const char* block,
                          const tsft_options* options, int* ok,
                          char** report) {
  return Guard([&] {
    if (shift == nullptr || ok == nullptr || report == nullptr) {
      return Fail(TSFT_ERR_ARGUMENT, "null argument");
    }
    const tsft_options o = Resolve(options);
    if (auto st = RequireTextOrJson(o.format); st != TSFT_OK) return st;
    const auto& t = shift->loaded.tsft;
    Stopwatch clock;
    tsft::Block u;
    if (block != nullptr) {
      u = tsft::Block::Parse(block, t.arity());
    } else {
      const auto core = tsft::LiveCore(t);
      if (core.kept.empty()) return Fail(TSFT_ERR_EMPTY_SHIFT, "the shift is empty");
      u = tsft::Block(t.arity(), 1, {core.kept.front()});
    }
    const auto cert = tsft::BuildPeriodicTree(t, u);
    const std::size_t depth =
        o.verify_depth == 0 ? cert.DefaultVerifyDepth() : o.verify_depth;
    const auto check = tsft::VerifyPeriodic(cert, t, depth);
    tsft::Json body;
    body["property"] = "periodic";
    body["periodic"] = tsft::ToJson(cert, check, depth);
    body["holds"] = check.ok;
    *ok = check.ok ? 1 : 0;
    *report = Copy(Emit(o, "periodic", shift->loaded, std::move(body),
                        tsft::FormatText(cert, check, depth), clock.ms()));
    return TSFT_OK;
  });
}

tsft_status tsft_export(const tsft_shift* shift, tsft_format format, char** out) {
  return Guard([&] {
    if (shift == nullptr || out == nullptr) {
      return Fail(TSFT_ERR_ARGUMENT, "null argument");
    }
    const auto& in = shift->loaded;
    switch (format) {
      case TSFT_FORMAT_TEXT:
        *out = Copy(InputNotes(in) + tsft::FormatMatrices(in.tsft));
        return TSFT_OK;
      case TSFT_FORMAT_JSON: {
        tsft::Json j = tsft::ShiftToJson(in.tsft);
        if (!in.log.empty()) j["input_log"] = in.log;
        *out = Copy(j.dump(2) + "\n");
        return TSFT_OK;
      }
      case TSFT_FORMAT_DOT: {
        std::vector<std::string> names;
        for (const auto& b : in.alphabet) names.push_back(b.ToString());
        *out = Copy(tsft::ToDot(in.tsft, names));
        return TSFT_OK;
      }
    }
    return Fail(TSFT_ERR_ARGUMENT, "unknown format");
  });
}

tsft_status tsft_verify_report(const char* report, tsft_format format, int* ok,
                               char** summary) {
  return Guard([&] {
    if (report == nullptr || ok == nullptr || summary == nullptr) {
      return Fail(TSFT_ERR_ARGUMENT, "null argument");
    }
    if (auto st = RequireTextOrJson(format); st != TSFT_OK) return st;
    const auto v = tsft::VerifyReportText(report);
    *ok = v.ok ? 1 : 0;
    if (format == TSFT_FORMAT_JSON) {
      tsft::Json j;
      j["ok"] = v.ok;
      j["passed"] = v.passed;
      j["failed_check"] = v.ok ? tsft::Json(nullptr) : tsft::Json(v.failed_check);
      j["failure"] = v.ok ? tsft::Json(nullptr) : tsft::Json(v.failure);
      *summary = Copy(j.dump(2) + "\n");
    } else {
      *summary = Copy(tsft::FormatText(v));
    }
    return TSFT_OK;
  });
}

tsft_status tsft_oracle(const tsft_shift* shift, uint64_t seed, size_t count,
                        size_t depth, tsft_format format, int* agree,
                        char** report) {
  return Guard([&] {
    if (agree == nullptr || report == nullptr) {
      return Fail(TSFT_ERR_ARGUMENT, "null argument");
    }
    if (auto st = RequireTextOrJson(format); st != TSFT_OK) return st;
    if (depth == 0 || depth > tsft::kMaxOracleDepth) {
      return Fail(TSFT_ERR_ARGUMENT,
                  "oracle depth must be between 1 and " +
                      std::to_string(tsft::kMaxOracleDepth));
    }
    const auto instances = shift != nullptr
                               ? std::vector<tsft::VertexTsft>{shift->loaded.tsft}
                               : tsft::RandomInstances(seed, count);
    const auto outcome = tsft::CrossValidate(instances, depth);
    *agree = outcome.ok() ? 1 : 0;
    if (format == TSFT_FORMAT_JSON) {
      tsft::Json j = tsft::ToJson(outcome);
      j["source"] = shift != nullptr ? tsft::Json("input")
                                     : tsft::Json({{"seed", seed}, {"count", count}});
      *report = Copy(j.dump(2) + "\n");
    } else {
      *report = Copy(tsft::FormatText(outcome));
    }
    return TSFT_OK;
  });
}

void tsft_string_free(char* s) { std::free(s); }

}  // extern "C"
