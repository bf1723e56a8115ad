// Copyright 2026 The qcool Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcool {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A matrix or state would exceed the supported Hilbert-space size.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A site index lies outside [1, L].
class IndexError : public Error {
public:
    using Error::Error;
};

/// Malformed argument (empty keep set, wrong operator shape, i == j, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// An input violates a numerical invariant (Hermiticity, unit trace, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Post-selection onto the desired outcome has (numerically) zero probability.
class ZeroBranchError : public Error {
public:
    ZeroBranchError(std::size_t round, double probability);

    /// 1-based round at which the branch vanished; 0 when not inside a protocol.
    std::size_t round() const noexcept { return round_; }
    double probability() const noexcept { return probability_; }

private:
    std::size_t round_;
    double probability_;
};

} // namespace qcool
