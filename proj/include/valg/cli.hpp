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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valg/report.hpp"

namespace valg {

/// Plain "key = value" defaults; '#' starts a comment. Keys are the long
/// flag names without dashes (N, n, weight, trials, seed, degree-bound,
/// classify-bound, chart, format, param).
class Config {
 public:
  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;
  void merge_text(std::string_view text);
  void load_file(const std::string& path);

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// args[0] is the subcommand. Never throws; usage problems come back as a
/// report with exit code 2.
Report run_command(const std::vector<std::string>& args, const Config& config = {});

std::string usage_text();

}  // namespace valg
