// Copyright 2026 The lgi-qutrit Authors
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

namespace lgi::tol {

// Structural invariants: hermiticity, unitarity, trace, PSD.
inline constexpr double kStructural = 1e-12;

// Identities between composed operations (semigroup, reconstruction).
inline constexpr double kComposed = 1e-10;

// Largest imaginary residue accepted on a correlator before it is an error.
inline constexpr double kImaginaryResidue = 1e-8;

}  // namespace lgi::tol
