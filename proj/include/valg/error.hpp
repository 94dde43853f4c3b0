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

#include <stdexcept>
#include <string>

namespace valg {

enum class ErrorKind {
  NonScalarDivisor,
  NonlinearCondition,
  VariableMismatch,
  WeightBoundExceeded,
  ChartMismatch,
  RuleOracleDivergence,
  InvariantViolation,
  DegreeBoundExceeded,
  InhomogeneousInput,
  UnknownIdentifier,
  UnknownParameter,
  ParameterSetFrozen,
  Parse,
  Precondition,
  TheoremContradiction,
  Usage,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the engine carries a kind so that the C layer can
/// map it onto an error code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace valg
