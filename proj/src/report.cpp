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

#include "valg/report.hpp"

#include <cstdio>
#include <json.hpp>

#include "valg/error.hpp"

namespace valg {

namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    char c = s[++i];
    out += c == 'n' ? '\n' : c;
  }
  return out;
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

}  // namespace

void Report::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : payload)
    if (k == key) {
      v = value;
      return;
    }
  payload.emplace_back(key, value);
}

const std::string* Report::get(std::string_view key) const {
  if (key == "command") return &command;
  if (key == "status") return &status;
  for (const auto& [k, v] : payload)
    if (k == key) return &v;
  return nullptr;
}

std::string Report::to_text() const {
  std::string out = "command: " + escape(command) + "\nstatus: " + escape(status) +
                    "\nexit_code: " + std::to_string(exit_code) + "\n";
  for (const auto& [k, v] : payload) out += escape(k) + ": " + escape(v) + "\n";
  if (seconds) out += "seconds: " + format_seconds(*seconds) + "\n";
  return out;
}

Report Report::from_text(std::string_view text) {
  Report r;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    auto colon = line.find(": ");
    if (colon == std::string_view::npos) fail(ErrorKind::Parse, "report line " + std::to_string(line_no) + " has no key");
    std::string key = unescape(line.substr(0, colon));
    std::string value = unescape(line.substr(colon + 2));
    if (key == "command" && line_no == 1) {
      r.command = value;
    } else if (key == "status" && line_no == 2) {
      r.status = value;
    } else if (key == "exit_code" && line_no == 3) {
      r.exit_code = std::stoi(value);
    } else if (key == "seconds" && text.empty()) {
      r.seconds = std::stod(value);
    } else {
      r.payload.emplace_back(key, value);
    }
  }
  return r;
}

std::string Report::to_machine() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["status"] = status;
  doc["exit_code"] = exit_code;
  auto& body = doc["payload"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : payload) body[k] = v;
  if (seconds) doc["seconds"] = *seconds;
  return doc.dump(2) + "\n";
}

}  // namespace valg
