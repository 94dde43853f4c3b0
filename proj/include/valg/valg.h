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

/* C interface to the valg verifiers. Sessions hold configuration defaults;
 * every command produces a report owned by the caller. */

#ifndef VALG_VALG_H_
#define VALG_VALG_H_

#if defined(_WIN32)
#define VALG_API __declspec(dllexport)
#else
#define VALG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct valg_session valg_session;
typedef struct valg_report valg_report;

typedef enum valg_status {
  VALG_OK = 0,
  VALG_ERR_NULL = 1,     /* a required pointer argument was NULL */
  VALG_ERR_USAGE = 2,    /* unknown key, bad value, unreadable config */
  VALG_ERR_INTERNAL = 3, /* unexpected exception or allocation failure */
} valg_status;

typedef enum valg_format {
  VALG_FORMAT_REQUESTED = -1, /* whatever --format / the config asked for */
  VALG_FORMAT_TEXT = 0,
  VALG_FORMAT_MACHINE = 1,
} valg_format;

VALG_API const char* valg_version(void);

VALG_API valg_status valg_session_create(valg_session** out);
VALG_API void valg_session_destroy(valg_session* session);
VALG_API valg_status valg_session_set(valg_session* session, const char* key, const char* value);
VALG_API valg_status valg_session_load_config(valg_session* session, const char* path);
/* Message for the last failing call on this session; "" if none. */
VALG_API const char* valg_session_last_error(const valg_session* session);

/* argv[0] is the subcommand. A report is produced even for usage errors;
 * its exit code is 0 pass, 1 fail, 2 usage. */
VALG_API valg_status valg_run(valg_session* session, int argc, const char* const* argv, valg_report** out);

VALG_API int valg_report_exit_code(const valg_report* report);
VALG_API const char* valg_report_status(const valg_report* report);
/* Payload value, "command" or "status"; NULL when absent. */
VALG_API const char* valg_report_get(const valg_report* report, const char* key);
VALG_API valg_format valg_report_format(const valg_report* report);
/* Valid until the next serialize call or destroy. */
VALG_API const char* valg_report_serialize(valg_report* report, valg_format format);
VALG_API void valg_report_destroy(valg_report* report);

#ifdef __cplusplus
}
#endif

#endif /* VALG_VALG_H_ */
