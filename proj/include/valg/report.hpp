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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace valg {

/// Outcome of one command. Text form is "key: value" per line in a fixed
/// order; values escape backslash and newline.
class Report {
 public:
  std::string command;
  std::string status;
  int exit_code = 0;
  std::vector<std::pair<std::string, std::string>> payload;
  std::optional<double> seconds;
  /// "text" or "machine"; chosen by --format, not serialized.
  std::string format = "text";

  void set(const std::string& key, const std::string& value);
  const std::string* get(std::string_view key) const;

  std::string to_text() const;
  static Report from_text(std::string_view text);
  /// One JSON document.
  std::string to_machine() const;
};

}  // namespace valg
