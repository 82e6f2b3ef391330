/*
 * Copyright 2026 The laneletml Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LANELETML_ERRORS_H_
#define LANELETML_ERRORS_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace laneletml {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The map violates a structural invariant needed by the requested operation
// (dangling reference, zero-length boundary, discontinuous chain).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Geometry input that no meaningful output exists for, e.g. resampling a
// zero-length polyline.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperationError : public Error {
 public:
  using Error::Error;
};

// Input text could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A label trace references an element that does not resolve in the map.
class TraceabilityError : public Error {
 public:
  TraceabilityError(std::int64_t element_id, const std::string& message)
      : Error("trace element " + std::to_string(element_id) + ": " + message),
        element_id_(element_id) {}

  std::int64_t elementId() const { return element_id_; }

 private:
  std::int64_t element_id_;
};

// Path enumeration exceeded the configured count or length limits.
class PathExplosionError : public Error {
 public:
  using Error::Error;
};

}  // namespace laneletml

#endif  // LANELETML_ERRORS_H_
