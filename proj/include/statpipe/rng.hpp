// Counter-based random number generation (Philox4x32-10).
//
// Every draw is a pure function of (seed, row, position), so sample streams
// are stable under any batching or thread schedule.
#pragma once

#include <array>
#include <cstdint>

namespace statpipe {

// One 10-round Philox4x32 block.  key = (seed lo32, seed hi32),
// counter = (ctr_lo lo32, ctr_lo hi32, ctr_hi lo32, ctr_hi hi32).
std::array<std::uint32_t, 4> philox4x32_block(std::uint64_t seed, std::uint64_t ctr_lo,
                                              std::uint64_t ctr_hi);

// Maps a 64-bit word to the open interval (0, 1) on the 52-bit lattice
// ((x >> 12) + 0.5) * 2^-52; never returns 0 or 1 (every lattice value is
// exactly representable).
double u64_to_unit_double(std::uint64_t x);

// Fills out[0..n) with standard normals for (seed, row) via the inverse-cdf
// transform of Philox uniforms.  Position i consumes word i of the row's
// stream; rows never overlap.
void fill_row_std_normals(std::uint64_t seed, std::uint64_t row, double *out,
                          std::size_t n);

}  // namespace statpipe
