#include "statpipe/rng.hpp"

#include "statpipe/normal.hpp"

namespace statpipe {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4> &c, std::uint32_t k0,
                         std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_block(std::uint64_t seed, std::uint64_t ctr_lo,
                                              std::uint64_t ctr_hi) {
  std::array<std::uint32_t, 4> c = {
      static_cast<std::uint32_t>(ctr_lo), static_cast<std::uint32_t>(ctr_lo >> 32),
      static_cast<std::uint32_t>(ctr_hi), static_cast<std::uint32_t>(ctr_hi >> 32)};
  std::uint32_t k0 = static_cast<std::uint32_t>(seed);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
  philox_round(c, k0, k1);
  for (int round = 1; round < 10; ++round) {
    k0 += kWeyl0;
    k1 += kWeyl1;
    philox_round(c, k0, k1);
  }
  return c;
}

double u64_to_unit_double(std::uint64_t x) {
  // 52-bit lattice: (k + 0.5) * 2^-52 is exact for every k, so the endpoints
  // stay strictly inside (0, 1).  One more mantissa bit would round the top
  // cell's midpoint up to exactly 1.0.
  return (static_cast<double>(x >> 12) + 0.5) * 0x1.0p-52;
}

void fill_row_std_normals(std::uint64_t seed, std::uint64_t row, double *out,
                          std::size_t n) {
  for (std::size_t base = 0; base < n; base += 2) {
    const std::array<std::uint32_t, 4> w = philox4x32_block(seed, row, base / 2);
    const std::uint64_t u0 =
        static_cast<std::uint64_t>(w[0]) | (static_cast<std::uint64_t>(w[1]) << 32);
    const std::uint64_t u1 =
        static_cast<std::uint64_t>(w[2]) | (static_cast<std::uint64_t>(w[3]) << 32);
    out[base] = std_normal_quantile(u64_to_unit_double(u0));
    if (base + 1 < n) out[base + 1] = std_normal_quantile(u64_to_unit_double(u1));
  }
}

}  // namespace statpipe
