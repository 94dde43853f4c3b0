/*
 Copyright 2026 The valg Authors
 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "valg/valg.h"

namespace {

valg_report* run(valg_session* s, std::initializer_list<const char*> args) {
  std::vector<const char*> argv(args);
  valg_report* r = nullptr;
  REQUIRE(valg_run(s, static_cast<int>(argv.size()), argv.data(), &r) == VALG_OK);
  REQUIRE(r != nullptr);
  return r;
}

}  // namespace

TEST_CASE("session lifecycle and reports") {
  CHECK(std::string(valg_version()) == "0.1.0");
  valg_session* s = nullptr;
  REQUIRE(valg_session_create(&s) == VALG_OK);

  valg_report* r = run(s, {"quantize", "--N", "3"});
  CHECK(valg_report_exit_code(r) == 0);
  CHECK(std::string(valg_report_status(r)) == "unique");
  CHECK(std::string(valg_report_get(r, "charge")) == "4");
  CHECK(std::string(valg_report_get(r, "command")) == "quantize --N 3");
  CHECK(valg_report_get(r, "nothing") == nullptr);
  CHECK(valg_report_format(r) == VALG_FORMAT_TEXT);
  std::string text = valg_report_serialize(r, VALG_FORMAT_TEXT);
  CHECK(text.rfind("command: quantize --N 3\nstatus: unique\n", 0) == 0);
  std::string machine = valg_report_serialize(r, VALG_FORMAT_MACHINE);
  CHECK(machine.find("\"charge\": \"4\"") != std::string::npos);
  valg_report_destroy(r);

  REQUIRE(valg_session_set(s, "N", "5") == VALG_OK);
  r = run(s, {"quantize"});
  CHECK(std::string(valg_report_get(r, "charge")) == "6");
  valg_report_destroy(r);

  REQUIRE(valg_session_set(s, "format", "machine") == VALG_OK);
  r = run(s, {"witness", "--n", "3", "--N", "2"});
  CHECK(valg_report_format(r) == VALG_FORMAT_MACHINE);
  CHECK(std::string(valg_report_serialize(r, VALG_FORMAT_REQUESTED)).front() == '{');
  valg_report_destroy(r);

  valg_session_destroy(s);
}

TEST_CASE("errors come back as status codes") {
  valg_session* s = nullptr;
  REQUIRE(valg_session_create(&s) == VALG_OK);
  CHECK(valg_session_set(s, "colour", "red") == VALG_ERR_USAGE);
  CHECK(std::string(valg_session_last_error(s)).find("colour") != std::string::npos);
  CHECK(valg_session_load_config(s, "/nonexistent/valg.conf") == VALG_ERR_USAGE);
  CHECK(valg_session_set(nullptr, "N", "2") == VALG_ERR_NULL);
  CHECK(valg_session_create(nullptr) == VALG_ERR_NULL);
  valg_report* r = nullptr;
  CHECK(valg_run(s, 0, nullptr, nullptr) == VALG_ERR_NULL);

  r = run(s, {"quantize", "--weight", "2"});
  CHECK(valg_report_exit_code(r) == 2);
  CHECK(std::string(valg_report_status(r)) == "usage-error");
  valg_report_destroy(r);

  r = run(s, {"extend", "y2*d1", "--omega", "w[1,2]"});
  CHECK(valg_report_exit_code(r) == 1);
  valg_report_destroy(r);

  valg_session_destroy(nullptr);
  valg_report_destroy(nullptr);
  CHECK(std::string(valg_report_status(nullptr)).empty());
  valg_session_destroy(s);
}
