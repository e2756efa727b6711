// Copyright 2026 The sampthresh Authors
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

#ifndef SAMPTHRESH_ERRORS_H_
#define SAMPTHRESH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sampthresh {

// Base class for every error raised by the library. Callers that only care
// about "something was wrong with the request" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A privacy parameter combination for which no valid guarantee exists.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid input (bad bucket id, non-neighboring datasets, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// File system failures, always carrying the offending path.
class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace sampthresh

#endif  // SAMPTHRESH_ERRORS_H_
