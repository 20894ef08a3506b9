// Copyright 2026 The StructMIA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STRUCTMIA_ERROR_H_
#define STRUCTMIA_ERROR_H_

#include <stdexcept>
#include <string>

namespace structmia {

// Base class for every error raised by the toolkit. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument or configuration value was violated.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A mathematical operation was asked for outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A file exists but its contents cannot be decoded.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// A required artifact (dataset manifest, model file) is missing.
class MissingArtifactError : public Error {
 public:
  using Error::Error;
};

// A computation produced a non-finite value.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class TrainingError : public NumericError {
 public:
  TrainingError(const std::string& what, int epoch)
      : NumericError(what), epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

}  // namespace structmia

#endif  // STRUCTMIA_ERROR_H_
