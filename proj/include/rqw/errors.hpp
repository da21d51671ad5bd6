// Copyright 2026 The rqaoa-wireless Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace rqw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// An index is outside the active set of an instance.
class InvalidIndexError : public Error {
 public:
    using Error::Error;
};

/// A spin assignment does not cover the active set it is evaluated against.
class AssignmentIncompleteError : public Error {
 public:
    using Error::Error;
};

/// A pair merge was requested on identical or inactive indices.
class InvalidMergeError : public Error {
 public:
    using Error::Error;
};

/// Back-substitution met a relation whose kept spin has no value yet.
class InconsistentRecordError : public Error {
 public:
    using Error::Error;
};

/// Invalid combination of configuration values.
class ConfigError : public Error {
 public:
    using Error::Error;
};

/// Invalid numeric parameter (negative exponent, empty area, ...).
class ParameterError : public Error {
 public:
    using Error::Error;
};

/// No feasible channel assignment exists.
class InfeasibleError : public Error {
 public:
    using Error::Error;
};

/// A bitstring does not match the variable layout.
class DecodeError : public Error {
 public:
    using Error::Error;
};

/// The request exceeds a simulation or enumeration cap.
class TooLargeError : public Error {
 public:
    using Error::Error;
};

}  // namespace rqw
