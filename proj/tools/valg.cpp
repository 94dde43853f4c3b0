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

// valg command-line front end over the C API.

#include <cstdio>
#include <string_view>

#include "valg/valg.h"

int main(int argc, char** argv) {
  valg_session* session = nullptr;
  if (valg_session_create(&session) != VALG_OK) {
    std::fputs("valg: cannot create session\n", stderr);
    return 2;
  }
  valg_report* report = nullptr;
  if (valg_run(session, argc - 1, argv + 1, &report) != VALG_OK) {
    std::fprintf(stderr, "valg: %s\n", valg_session_last_error(session));
    valg_session_destroy(session);
    return 2;
  }
  const char* usage = valg_report_get(report, "usage");
  if (usage && std::string_view(valg_report_status(report)) == "help") {
    std::fputs(usage, stdout);
  } else {
    std::fputs(valg_report_serialize(report, VALG_FORMAT_REQUESTED), stdout);
  }
  int code = valg_report_exit_code(report);
  if (code == 2 && valg_report_format(report) == VALG_FORMAT_TEXT)
    std::fprintf(stderr, "valg: %s\n(run 'valg --help' for usage)\n", valg_report_get(report, "error"));
  valg_report_destroy(report);
  valg_session_destroy(session);
  return code;
}
