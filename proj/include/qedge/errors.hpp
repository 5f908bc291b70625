// Copyright 2026 The qedge Authors
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

#ifndef QEDGE_ERRORS_HPP
#define QEDGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qedge {

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Problem size exceeds a configured guard (oracle size cap, SDP capacity).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix expected to be positive semidefinite has a significantly negative eigenvalue.
struct NotPsdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iterative numerical method failed (eigensolver non-convergence, line-search collapse).
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No exact coefficient table for the requested local dimension.
struct NotTabulatedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Singular Padé matching system; the caller is expected to retry at lower order.
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed data asset (bad row, checksum mismatch).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qedge

#endif
