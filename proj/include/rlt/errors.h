// Copyright 2026 The RLT Authors
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

#ifndef RLT_ERRORS_H
#define RLT_ERRORS_H

#include <stdexcept>
#include <string>

namespace rlt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
   public:
    using Error::Error;
};

class NotDiagonalizableError : public Error {
   public:
    using Error::Error;
};

/// An eigenvalue lies on the closed negative real axis, where the principal
/// logarithm is undefined.
class BranchCutError : public Error {
   public:
    using Error::Error;
};

class SingularMatrixError : public Error {
   public:
    using Error::Error;
};

class AperiodicError : public Error {
   public:
    using Error::Error;
};

class NotPhysicalError : public Error {
   public:
    using Error::Error;
};

class SolverError : public Error {
   public:
    using Error::Error;
};

class ConfigError : public Error {
   public:
    using Error::Error;
};

/// Missing or inconsistent data files.
class DataError : public Error {
   public:
    using Error::Error;
};

/// The method cannot be applied to the requested gates or units.
class ApplicabilityError : public Error {
   public:
    using Error::Error;
};

}  // namespace rlt

#endif  // RLT_ERRORS_H
