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

// Exercises the shared library through its C header only.

#include <memory>
#include <string>
#include <thread>

#include "doctest.h"
#include "tsft/tsft.h"

namespace {

std::string Data(const char* name) { return std::string(TSFT_DATA_DIR) + "/" + name; }

struct ShiftDeleter {
  void operator()(tsft_shift* s) const { tsft_free(s); }
};
using Shift = std::unique_ptr<tsft_shift, ShiftDeleter>;

Shift Load(const char* name) {
  tsft_shift* s = nullptr;
  REQUIRE(tsft_load(Data(name).c_str(), 0, &s) == TSFT_OK);
  return Shift(s);
}

// Takes ownership of a library string.
std::string Take(char* s) {
  std::string out = s ? s : "";
  tsft_string_free(s);
  return out;
}

tsft_options Json() {
  tsft_options o;
  tsft_options_init(&o);
  o.format = TSFT_FORMAT_JSON;
  return o;
}

}  // namespace

TEST_CASE("version, options and status names") {
  CHECK(std::string(tsft_version()) == "1.0.0");
  tsft_options o;
  tsft_options_init(&o);
  CHECK(o.format == TSFT_FORMAT_TEXT);
  CHECK(o.timing == 0);
  CHECK(o.verify_depth == 6);
  CHECK(std::string(tsft_status_name(TSFT_ERR_EMPTY_SHIFT)) == "empty shift");
}

TEST_CASE("loading reports parse errors with positions") {
  tsft_shift* s = nullptr;
  CHECK(tsft_parse("tsft n=2 d=2\n1 1\n1 7\n\n1 1\n1 1\n", 0, &s) == TSFT_ERR_PARSE);
  CHECK(s == nullptr);
  CHECK(std::string(tsft_last_error()).find("line 3, column 3") != std::string::npos);
  CHECK(tsft_load("/nonexistent/file", 0, &s) == TSFT_ERR_ARGUMENT);
  CHECK(tsft_parse(nullptr, 0, &s) == TSFT_ERR_ARGUMENT);
  REQUIRE(tsft_parse("tsft\n1 1\n1 0\n\n0 1\n1 1\n", 0, &s) == TSFT_OK);
  CHECK(std::string(tsft_last_error()).empty());
  CHECK(tsft_alphabet_size(s) == 2);
  CHECK(tsft_arity(s) == 2);
  tsft_free(s);
  tsft_free(nullptr);
}

TEST_CASE("check answers the three properties") {
  const auto ex43 = Load("ex43.tsft");
  const auto ex49 = Load("ex49.tsft");
  const auto id = Load("identity.tsft");
  int holds = -1;
  char* report = nullptr;

  REQUIRE(tsft_check(ex43.get(), TSFT_MIXING, nullptr, &holds, &report) == TSFT_OK);
  CHECK(holds == 1);
  CHECK(Take(report).find("{0,10,11}") != std::string::npos);

  REQUIRE(tsft_check(ex49.get(), TSFT_IRREDUCIBLE, nullptr, &holds, &report) == TSFT_OK);
  CHECK(holds == 1);
  Take(report);

  REQUIRE(tsft_check(id.get(), TSFT_IRREDUCIBLE, nullptr, &holds, &report) == TSFT_OK);
  CHECK(holds == 0);
  CHECK(Take(report).find("zero-cycle") != std::string::npos);

  const auto o = Json();
  REQUIRE(tsft_check(ex49.get(), TSFT_CHAOS, &o, &holds, &report) == TSFT_OK);
  CHECK(holds == 1);
  const std::string doc = Take(report);
  CHECK(doc.find("\"basis\": \"irreducible\"") != std::string::npos);
  CHECK(doc.find("timing_ms") == std::string::npos);

  int ok = -1;
  char* summary = nullptr;
  REQUIRE(tsft_verify_report(doc.c_str(), TSFT_FORMAT_TEXT, &ok, &summary) == TSFT_OK);
  CHECK(ok == 1);
  CHECK(Take(summary).find("report verified") == 0);

  auto timed = Json();
  timed.timing = 1;
  REQUIRE(tsft_check(ex49.get(), TSFT_MIXING, &timed, &holds, &report) == TSFT_OK);
  CHECK(Take(report).find("timing_ms") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  const auto ex413 = Load("ex413.tsft");
  const auto o = Json();
  int holds = 0;
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(tsft_check(ex413.get(), TSFT_CHAOS, &o, &holds, &a) == TSFT_OK);
  REQUIRE(tsft_check(ex413.get(), TSFT_CHAOS, &o, &holds, &b) == TSFT_OK);
  CHECK(Take(a) == Take(b));
}

TEST_CASE("empty shifts and refusals surface as status codes") {
  tsft_shift* s = nullptr;
  REQUIRE(tsft_parse("tsft n=2 d=2\n0 0\n0 0\n\n1 1\n1 1\n", 0, &s) == TSFT_OK);
  const Shift empty(s);
  int holds = -1;
  char* report = nullptr;
  CHECK(tsft_check(empty.get(), TSFT_IRREDUCIBLE, nullptr, &holds, &report) ==
        TSFT_ERR_EMPTY_SHIFT);
  CHECK(holds == 0);
  Take(report);
  report = nullptr;
  CHECK(tsft_entropy(empty.get(), 4, nullptr, &report) == TSFT_ERR_EMPTY_SHIFT);
  CHECK(report == nullptr);

  const auto id = Load("identity.tsft");
  int ok = -1;
  CHECK(tsft_periodic(id.get(), nullptr, nullptr, &ok, &report) == TSFT_ERR_REFUSED);
  CHECK(std::string(tsft_last_error()).find("irreducible") != std::string::npos);
  const auto ex49 = Load("ex49.tsft");
  CHECK(tsft_periodic(ex49.get(), "0(1", nullptr, &ok, &report) == TSFT_ERR_PARSE);
  tsft_options dot;
  tsft_options_init(&dot);
  dot.format = TSFT_FORMAT_DOT;
  CHECK(tsft_entropy(ex49.get(), 3, &dot, &report) == TSFT_ERR_ARGUMENT);
}

TEST_CASE("entropy, periodic and export") {
  const auto ex413 = Load("ex413.tsft");
  char* report = nullptr;
  REQUIRE(tsft_entropy(ex413.get(), 4, nullptr, &report) == TSFT_OK);
  CHECK(Take(report).find("65536") != std::string::npos);

  int ok = 0;
  REQUIRE(tsft_periodic(ex413.get(), "2(0,3)", nullptr, &ok, &report) == TSFT_OK);
  CHECK(ok == 1);
  CHECK(Take(report).find("ok") != std::string::npos);

  const auto ex49 = Load("ex49.tsft");
  char* out = nullptr;
  REQUIRE(tsft_export(ex49.get(), TSFT_FORMAT_DOT, &out) == TSFT_OK);
  CHECK(Take(out).find("\"1\" -> \"1\" [label=\"1\"]") != std::string::npos);
  REQUIRE(tsft_export(ex49.get(), TSFT_FORMAT_TEXT, &out) == TSFT_OK);
  const std::string text = Take(out);
  tsft_shift* back = nullptr;
  REQUIRE(tsft_parse(text.c_str(), 0, &back) == TSFT_OK);
  char* again = nullptr;
  REQUIRE(tsft_export(back, TSFT_FORMAT_TEXT, &again) == TSFT_OK);
  CHECK(Take(again) == text);
  tsft_free(back);

  const auto forbid = Load("even_sum.forbid");
  CHECK(tsft_alphabet_size(forbid.get()) == 4);
  REQUIRE(tsft_input_log(forbid.get(), &out) == TSFT_OK);
  CHECK(Take(out).find("0 = 0(0,0)") != std::string::npos);
}

TEST_CASE("tampered report fails verification") {
  const auto ex43 = Load("ex43.tsft");
  const auto o = Json();
  int holds = 0;
  char* report = nullptr;
  REQUIRE(tsft_check(ex43.get(), TSFT_MIXING, &o, &holds, &report) == TSFT_OK);
  std::string doc = Take(report);
  const auto at = doc.find("\"10\"");
  REQUIRE(at != std::string::npos);
  doc.replace(at, 4, "\"01\"");  // P = {0,01,11} is not complete
  int ok = -1;
  char* summary = nullptr;
  REQUIRE(tsft_verify_report(doc.c_str(), TSFT_FORMAT_TEXT, &ok, &summary) == TSFT_OK);
  CHECK(ok == 0);
  CHECK(Take(summary).find("mixing: witness CPS") != std::string::npos);
  CHECK(tsft_verify_report("not json", TSFT_FORMAT_TEXT, &ok, &summary) ==
        TSFT_ERR_PARSE);
}

TEST_CASE("oracle runs on input and on seeded batches") {
  int agree = 0;
  char* report = nullptr;
  REQUIRE(tsft_oracle(nullptr, 3, 25, 8, TSFT_FORMAT_TEXT, &agree, &report) == TSFT_OK);
  CHECK(agree == 1);
  CHECK(Take(report).find("agreement: yes") != std::string::npos);
  const auto ex49 = Load("ex49.tsft");
  REQUIRE(tsft_oracle(ex49.get(), 0, 0, 8, TSFT_FORMAT_JSON, &agree, &report) == TSFT_OK);
  CHECK(agree == 1);
  Take(report);
  CHECK(tsft_oracle(nullptr, 1, 1, 99, TSFT_FORMAT_TEXT, &agree, &report) ==
        TSFT_ERR_ARGUMENT);
}

TEST_CASE("last error is per thread") {
  tsft_shift* s = nullptr;
  CHECK(tsft_parse("bad", 0, &s) == TSFT_ERR_PARSE);
  std::string other;
  std::thread([&] { other = tsft_last_error(); }).join();
  CHECK(other.empty());
  CHECK_FALSE(std::string(tsft_last_error()).empty());
}
