// Copyright 2026 The dynkit Authors
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

// Model documents. See docs/model_format.md for the schema.

#ifndef DYNKIT_MODEL_IO_HPP_
#define DYNKIT_MODEL_IO_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "dynkit/model.hpp"

namespace dynkit {

inline constexpr int kModelFormatVersion = 1;

/// Parse or validation failure. line() is 1-based, 0 when unknown.
class ModelError : public std::runtime_error {
 public:
  ModelError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

KinematicTree load_model(std::string_view text);
KinematicTree load_model_file(const std::string& path);

/// Canonical text: save_model(load_model(save_model(t))) == save_model(t),
/// and numbers are printed in shortest round-trip form.
std::string save_model(const KinematicTree& tree);
void save_model_file(const KinematicTree& tree, const std::string& path);

}  // namespace dynkit

#endif  // DYNKIT_MODEL_IO_HPP_
