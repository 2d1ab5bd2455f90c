// Copyright 2026 The krklab Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace krk {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (dataset lines, squares, labels).
class FormatError : public Error {
 public:
  using Error::Error;
};

enum class Illegality {
  kOverlap,              // two pieces share a square
  kKingsAdjacent,        // kings on touching squares
  kSideNotToMoveInCheck  // black in check with white to move
};

const char* to_string(Illegality reason) noexcept;

class IllegalPositionError : public Error {
 public:
  IllegalPositionError(Illegality reason, const std::string& what)
      : Error(what), reason_(reason) {}
  Illegality reason() const noexcept { return reason_; }

 private:
  Illegality reason_;
};

/// A dataset record names a position the move rules reject.
class UnknownPosition : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class NonFiniteLoss : public Error {
 public:
  using Error::Error;
};

class DegenerateSplit : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyMatrix : public Error {
 public:
  using Error::Error;
};

class SchemaVersionError : public Error {
 public:
  using Error::Error;
};

class CorruptPayload : public Error {
 public:
  using Error::Error;
};

class MissingReferenceRow : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace krk
