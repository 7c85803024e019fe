// Copyright 2026 The qfisher Authors
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

/**
 * @file
 * Exception types thrown by qfisher. The CLI maps each family to an exit code.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfisher {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument value (out-of-range count, parity, unnormalized coefficients).
class ParameterError : public Error {
  public:
    using Error::Error;
};

class IndexError : public ParameterError {
  public:
    using ParameterError::ParameterError;
};

/// A requested Hilbert-space dimension exceeds the configured cap.
class DimensionCapError : public Error {
  public:
    DimensionCapError(long long requested, long long cap)
        : Error("dimension " + std::to_string(requested) +
                " exceeds dimension cap " + std::to_string(cap)),
          requested_(requested), cap_(cap) {}

    [[nodiscard]] long long requested() const noexcept { return requested_; }
    [[nodiscard]] long long cap() const noexcept { return cap_; }

  private:
    long long requested_;
    long long cap_;
};

class HermiticityError : public Error {
  public:
    explicit HermiticityError(double max_asymmetry)
        : Error("matrix is not Hermitian: max |A - A^dagger| = " +
                std::to_string(max_asymmetry)),
          max_asymmetry_(max_asymmetry) {}

    [[nodiscard]] double max_asymmetry() const noexcept {
        return max_asymmetry_;
    }

  private:
    double max_asymmetry_;
};

/// A density matrix failed one or more validity checks.
class ValidationError : public Error {
  public:
    explicit ValidationError(std::vector<std::string> failed)
        : Error(join(failed)), failed_(std::move(failed)) {}

    [[nodiscard]] const std::vector<std::string> &failed_checks() const {
        return failed_;
    }

  private:
    static std::string join(const std::vector<std::string> &items) {
        std::string out = "density matrix validation failed:";
        for (const auto &item : items) {
            out += " [" + item + "]";
        }
        return out;
    }

    std::vector<std::string> failed_;
};

/// Point outside the region a geometric construction supports.
class GeometryError : public Error {
  public:
    using Error::Error;
};

class NumericalError : public Error {
  public:
    using Error::Error;
};

/// Malformed spec, config or report document.
class ParseError : public Error {
  public:
    using Error::Error;
};

} // namespace qfisher
