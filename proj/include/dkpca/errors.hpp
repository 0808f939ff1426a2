// Copyright 2026 The dkpca authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dkpca {

// Base of every library error. Subtypes map onto distinct CLI exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (bad TSV line, bad config key). Messages carry the
// offending location.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A dataset that cannot support the pipeline: missing file, fewer than two
// senses, empty vocabulary after filtering.
class DatasetError : public Error {
 public:
  using Error::Error;
};

// An argument outside its documented domain (sigma <= 0, k > train size, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A guard against runaway allocations (matrix dimension cap).
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Numerical failure, e.g. the eigensolver not converging within its sweep cap.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A centered kernel with no positive eigenvalues cannot carry a projection.
class DegenerateKernelError : public Error {
 public:
  using Error::Error;
};

// An impossible value crossing a module boundary (unknown label in
// predictions). Indicates a caller bug, not bad user input.
class ContractError : public Error {
 public:
  using Error::Error;
};

// File read/write failure outside dataset loading (cache files, reports).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dkpca
