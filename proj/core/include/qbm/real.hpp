// Copyright 2026 The qbm Authors
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

/// @file
/// Extended-precision scalar for the moment algebra.
///
/// The theorem quantities at the violation time differ from their
/// constituent terms by dozens of orders of magnitude, so they are formed
/// in 300-digit binary floating point. Inputs and outputs stay double.

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace qbm {

using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<300>,
    boost::multiprecision::et_off>;

inline double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace qbm
