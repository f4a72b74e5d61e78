// Copyright 2026 The ppmplan Authors
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

#ifndef PPMPLAN_ERROR_HPP_
#define PPMPLAN_ERROR_HPP_

#include <stdexcept>

namespace ppmplan {

// Malformed or inconsistent input data (files, instances, parameters).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The rejection target could not be reached before the demand cap.
class SaturationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The enumeration space of the brute-force oracle exceeds its cap.
class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ppmplan

#endif  // PPMPLAN_ERROR_HPP_
