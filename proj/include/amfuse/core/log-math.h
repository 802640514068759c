// core/log-math.h

// Copyright 2026  amfuse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef AMFUSE_CORE_LOG_MATH_H_
#define AMFUSE_CORE_LOG_MATH_H_

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

// All log quantities in amfuse are natural logarithms.

namespace amfuse {

using TokenId = int32_t;
using PhoneId = int32_t;

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// Raised for malformed inputs and violated preconditions. The CLI maps it to
// the data-error exit code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// log(exp(a) + exp(b)), exact when either side is kLogZero.
double LogAdd(double a, double b);

double LogSumExp(std::span<const double> values);
double LogSumExp(std::span<const float> values);

}  // namespace amfuse

#endif  // AMFUSE_CORE_LOG_MATH_H_
