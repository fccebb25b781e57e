//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>

namespace pairtherm::rng {

/// One block of the Philox 4x32-10 counter-based generator.
///
/// Output depends only on (counter, key), so independent substreams are
/// cheap: pick a stream id, fix it in the high counter words, and walk the
/// low words. No state is shared between streams.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// A single substream of uniforms: (seed, stream_id) selects the stream,
/// the block counter advances within it. Deterministic and O(1)-seekable;
/// 2^64 blocks of 2 x 64-bit draws per stream.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_id)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_id_(stream_id),
        block_(0),
        available_(0) {}

  std::uint64_t next_u64() {
    if (available_ == 0) refill();
    return buffer_[--available_];
  }

  /// Uniform double in [0, 1): 53 random bits, never returns 1.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_id_;
  std::uint64_t block_;
  std::array<std::uint64_t, 2> buffer_;
  int available_;
};

}  // namespace pairtherm::rng
