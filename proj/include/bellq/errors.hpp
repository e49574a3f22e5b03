// Copyright 2026 The bellq Authors
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

namespace bellq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed external input (JSON documents, flag values).
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Dimension or length mismatch between arguments.
class ShapeError : public Error {
  public:
    using Error::Error;
};

class ZeroStateError : public Error {
  public:
    using Error::Error;
};

class BipartitionError : public Error {
  public:
    using Error::Error;
};

class NotPositiveError : public Error {
  public:
    using Error::Error;
};

class NotUnitaryError : public Error {
  public:
    using Error::Error;
};

/// A computation would exceed the dense-representation size guards.
class SizeLimitError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public Error {
  public:
    using Error::Error;
};

class NotApplicableError : public Error {
  public:
    using Error::Error;
};

class DegenerateFitError : public Error {
  public:
    using Error::Error;
};

}  // namespace bellq
