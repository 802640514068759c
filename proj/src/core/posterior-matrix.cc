// core/posterior-matrix.cc

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

#include "amfuse/core/posterior-matrix.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace amfuse {
namespace {

constexpr char kMagic[4] = {'F', 'P', 'M', '1'};

static_assert(std::numeric_limits<float>::is_iec559, "IEEE 754 required");

void PutU32(uint32_t v, std::vector<char> *out) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t GetU32(const char *p) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return v;
}

}  // namespace

PosteriorMatrix::PosteriorMatrix(int32_t num_frames, int32_t num_symbols,
                                 std::vector<float> values)
    : num_frames_(num_frames), num_symbols_(num_symbols),
      values_(std::move(values)) {
  if (num_frames_ < 1) throw Error("posterior matrix needs at least one frame");
  if (num_symbols_ < 1) throw Error("posterior matrix needs at least one symbol");
  if (values_.size() != static_cast<size_t>(num_frames_) * num_symbols_) {
    throw Error("posterior matrix size mismatch");
  }
  for (float v : values_) {
    if (!std::isfinite(v)) throw Error("non-finite value in posteriors");
  }
  for (int32_t t = 0; t < num_frames_; ++t) {
    double norm = LogSumExp(Row(t));
    if (std::abs(norm) > kRowNormTolerance) {
      throw Error("unnormalized posteriors at frame " + std::to_string(t) +
                  " (logsumexp " + std::to_string(norm) + ")");
    }
  }
}

PosteriorMatrix PosteriorMatrix::FromProbabilities(
    const std::vector<std::vector<double>> &rows) {
  if (rows.empty()) throw Error("posterior matrix needs at least one frame");
  const size_t dim = rows[0].size();
  std::vector<float> values;
  values.reserve(rows.size() * dim);
  for (const auto &row : rows) {
    if (row.size() != dim) throw Error("ragged probability rows");
    for (double p : row) values.push_back(static_cast<float>(std::log(p)));
  }
  return PosteriorMatrix(static_cast<int32_t>(rows.size()),
                         static_cast<int32_t>(dim), std::move(values));
}

std::vector<char> PosteriorMatrix::Serialize() const {
  std::vector<char> out(std::begin(kMagic), std::end(kMagic));
  out.reserve(12 + values_.size() * 4);
  PutU32(static_cast<uint32_t>(num_frames_), &out);
  PutU32(static_cast<uint32_t>(num_symbols_), &out);
  for (float v : values_) PutU32(std::bit_cast<uint32_t>(v), &out);
  return out;
}

PosteriorMatrix PosteriorMatrix::Parse(std::span<const char> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error("bad magic: not an FPM1 posterior file");
  }
  if (bytes.size() < 12) throw Error("truncated payload: missing FPM1 header");
  const uint64_t frames = GetU32(bytes.data() + 4);
  const uint64_t symbols = GetU32(bytes.data() + 8);
  const uint64_t count = frames * symbols;
  if (bytes.size() - 12 < count * 4) {
    throw Error("truncated payload: expected " + std::to_string(count) +
                " values");
  }
  if (bytes.size() - 12 > count * 4) {
    throw Error("trailing bytes after FPM1 payload");
  }
  if (frames > static_cast<uint64_t>(std::numeric_limits<int32_t>::max()) ||
      symbols > static_cast<uint64_t>(std::numeric_limits<int32_t>::max())) {
    throw Error("FPM1 dimensions too large");
  }
  std::vector<float> values(count);
  const char *p = bytes.data() + 12;
  for (uint64_t i = 0; i < count; ++i, p += 4) {
    values[i] = std::bit_cast<float>(GetU32(p));
  }
  return PosteriorMatrix(static_cast<int32_t>(frames),
                         static_cast<int32_t>(symbols), std::move(values));
}

PosteriorMatrix PosteriorMatrix::Read(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open posterior file: " + path);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  try {
    return Parse(bytes);
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

void PosteriorMatrix::Write(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write posterior file: " + path);
  const auto bytes = Serialize();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path);
}

}  // namespace amfuse
