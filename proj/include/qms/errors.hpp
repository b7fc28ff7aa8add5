// Copyright 2026 The qmsergo Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qms {

/// Base class for all library failures. Each subclass maps to one CLI exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

/// Bad input: wrong shapes, out-of-range parameters, malformed configuration.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what, std::string field = {})
        : Error(what), field_(std::move(field)) {}
    int exit_code() const noexcept override { return 2; }
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A computed structure failed its own certification checks.
class CertificationError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

/// Iterative kernels failed or a numerical consistency gate was violated.
class NumericalError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

}  // namespace qms
