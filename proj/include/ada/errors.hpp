/*
 * Copyright 2026 The ADA Simulator Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ada {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The document is not well-formed (YAML/JSON level).
class SyntaxError : public Error {
 public:
  using Error::Error;
};

// The document parsed but violates a schema rule or invariant. The field
// path uses document key names, e.g. "spec.rotationInterval".
class ValidationError : public Error {
 public:
  ValidationError(std::string field_path, const std::string& message)
      : Error(field_path.empty() ? message : field_path + ": " + message),
        field_path_(std::move(field_path)),
        message_(message) {}

  const std::string& field_path() const { return field_path_; }
  const std::string& message() const { return message_; }

 private:
  std::string field_path_;
  std::string message_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class UnknownWorkload : public Error {
 public:
  explicit UnknownWorkload(const std::string& name) : Error("unknown workload '" + name + "'") {}
};

class UnknownPod : public Error {
 public:
  using Error::Error;
};

class IpPoolExhausted : public Error {
 public:
  using Error::Error;
};

class ContainerMismatch : public Error {
 public:
  using Error::Error;
};

class MalformedLog : public Error {
 public:
  using Error::Error;
};

class IncompatibleReports : public Error {
 public:
  using Error::Error;
};

}  // namespace ada
