// core/log-math.cc

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

#include "amfuse/core/log-math.h"

#include <algorithm>
#include <cmath>

namespace amfuse {

double LogAdd(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kLogZero) return a;
  return a + std::log1p(std::exp(b - a));
}

namespace {

template <typename T>
double LogSumExpImpl(std::span<const T> values) {
  double max = kLogZero;
  for (T v : values) max = std::max(max, static_cast<double>(v));
  if (max == kLogZero) return kLogZero;
  if (std::isinf(max)) return max;
  double sum = 0.0;
  for (T v : values) sum += std::exp(static_cast<double>(v) - max);
  return max + std::log(sum);
}

}  // namespace

double LogSumExp(std::span<const double> values) {
  return LogSumExpImpl(values);
}

double LogSumExp(std::span<const float> values) {
  return LogSumExpImpl(values);
}

}  // namespace amfuse
