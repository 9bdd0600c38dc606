/**
 * Copyright 2026 The prioritycut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the license.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace prioritycut {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose spatial or channel dimensions disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A scalar argument outside its documented domain (k, tau, lambda, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed, truncated, or unsupported file content.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failures: missing files, unreadable or unwritable paths.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace prioritycut
