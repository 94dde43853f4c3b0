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

#include "valg/valg.h"

#include <new>
#include <string>
#include <vector>

#include "valg/cli.hpp"
#include "valg/error.hpp"
#include "valg/report.hpp"

struct valg_session {
  valg::Config config;
  std::string last_error;
};

struct valg_report {
  valg::Report report;
  std::string buffer;
};

namespace {

template <class F>
valg_status guarded(valg_session* s, F&& body) {
  try {
    body();
    if (s) s->last_error.clear();
    return VALG_OK;
  } catch (const valg::Error& e) {
    if (s) s->last_error = e.what();
    return e.kind() == valg::ErrorKind::Usage ? VALG_ERR_USAGE : VALG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    if (s) s->last_error = e.what();
    return VALG_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* valg_version(void) { return "0.1.0"; }

valg_status valg_session_create(valg_session** out) {
  if (!out) return VALG_ERR_NULL;
  *out = new (std::nothrow) valg_session();
  return *out ? VALG_OK : VALG_ERR_INTERNAL;
}

void valg_session_destroy(valg_session* session) { delete session; }

valg_status valg_session_set(valg_session* session, const char* key, const char* value) {
  if (!session || !key || !value) return VALG_ERR_NULL;
  return guarded(session, [&] { session->config.set(key, value); });
}

valg_status valg_session_load_config(valg_session* session, const char* path) {
  if (!session || !path) return VALG_ERR_NULL;
  return guarded(session, [&] { session->config.load_file(path); });
}

const char* valg_session_last_error(const valg_session* session) {
  return session ? session->last_error.c_str() : "";
}

valg_status valg_run(valg_session* session, int argc, const char* const* argv, valg_report** out) {
  if (!session || !out || (argc > 0 && !argv)) return VALG_ERR_NULL;
  *out = nullptr;
  return guarded(session, [&] {
    std::vector<std::string> args;
    for (int i = 0; i < argc; ++i) {
      if (!argv[i]) throw std::invalid_argument("argv entry is NULL");
      args.emplace_back(argv[i]);
    }
    auto* r = new valg_report();
    r->report = valg::run_command(args, session->config);
    *out = r;
  });
}

int valg_report_exit_code(const valg_report* report) { return report ? report->report.exit_code : 2; }

const char* valg_report_status(const valg_report* report) {
  return report ? report->report.status.c_str() : "";
}

const char* valg_report_get(const valg_report* report, const char* key) {
  if (!report || !key) return nullptr;
  const std::string* v = report->report.get(key);
  return v ? v->c_str() : nullptr;
}

valg_format valg_report_format(const valg_report* report) {
  return report && report->report.format == "machine" ? VALG_FORMAT_MACHINE : VALG_FORMAT_TEXT;
}

const char* valg_report_serialize(valg_report* report, valg_format format) {
  if (!report) return "";
  if (format == VALG_FORMAT_REQUESTED) format = valg_report_format(report);
  report->buffer = format == VALG_FORMAT_MACHINE ? report->report.to_machine() : report->report.to_text();
  return report->buffer.c_str();
}

void valg_report_destroy(valg_report* report) { delete report; }

}  // extern "C"
