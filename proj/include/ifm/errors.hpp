// Copyright 2026 The ifm Authors
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

#include <stdexcept>
#include <string>

namespace ifm {

/// Base of every error the library raises. Callers that only need to tell
/// "bad input" from "bug" can catch this one type.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define IFM_DEFINE_ERROR(name)             \
    class name : public Error {            \
      public:                              \
        using Error::Error;                \
    }

IFM_DEFINE_ERROR(ZeroVector);
IFM_DEFINE_ERROR(NonFinite);
IFM_DEFINE_ERROR(InvalidBasis);
IFM_DEFINE_ERROR(InvalidDensity);
IFM_DEFINE_ERROR(InvalidEnsemble);
IFM_DEFINE_ERROR(InvalidRule);
IFM_DEFINE_ERROR(ConfigError);
IFM_DEFINE_ERROR(NoSurvivors);
IFM_DEFINE_ERROR(DimensionMismatch);
IFM_DEFINE_ERROR(DegenerateData);

#undef IFM_DEFINE_ERROR

/// I - K^dagger K has a negative eigenvalue.
class ContractionViolation : public InvalidRule {
  public:
    ContractionViolation(const std::string &what, double min_eigenvalue)
        : InvalidRule(what), min_eigenvalue_(min_eigenvalue) {}
    double min_eigenvalue() const { return min_eigenvalue_; }

  private:
    double min_eigenvalue_;
};

/// Text input that does not match any accepted form. `position` is the
/// zero-based character offset where parsing gave up.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t position)
        : Error(what), position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

}  // namespace ifm
