// Copyright 2026 The CQCS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace cqcs {

/// Bad user input: unknown architecture, malformed file, invalid config key.
/// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Non-fatal diagnostics (disconnected custom topologies, allocation
/// shortfalls). Defaults to stderr; tests install their own sink.
using WarningSink = std::function<void(const std::string &)>;
void set_warning_sink(WarningSink sink);
void warn(const std::string &message);

}  // namespace cqcs
