#include "soar/rng.hpp"

#include <cmath>

namespace soar {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

inline std::uint64_t rotl(std::uint64_t v, int k) {
  return (v << k) | (v >> (64 - k));
}

// Ziggurat tables for the standard normal, 128 layers, 55-bit magnitudes.
// kR is the x-coordinate of the base strip, kV the common strip area.
constexpr double kR = 3.442619855899;
constexpr double kV = 9.91256303526217e-3;
constexpr double kM = 36028797018963968.0;  // 2^55
constexpr std::uint64_t kMagMask = (1ULL << 55) - 1;

struct ZigguratTables {
  std::uint64_t kn[128];
  double wn[128];
  double fn[128];
  ZigguratTables() {
    double dn = kR, tn = kR;
    const double q = kV / std::exp(-0.5 * dn * dn);
    kn[0] = static_cast<std::uint64_t>((dn / q) * kM);
    kn[1] = 0;
    wn[0] = q / kM;
    wn[127] = dn / kM;
    fn[0] = 1.0;
    fn[127] = std::exp(-0.5 * dn * dn);
    for (int i = 126; i >= 1; --i) {
      dn = std::sqrt(-2.0 * std::log(kV / dn + std::exp(-0.5 * dn * dn)));
      kn[i + 1] = static_cast<std::uint64_t>((dn / tn) * kM);
      tn = dn;
      fn[i] = std::exp(-0.5 * dn * dn);
      wn[i] = dn / kM;
    }
  }
};

const ZigguratTables zt;

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
  // Hash seed and stream id through independent SplitMix64 chains and
  // combine, so nearby (seed, stream) pairs land in unrelated states.
  std::uint64_t a = seed;
  std::uint64_t b = stream_id ^ 0x6a09e667f3bcc909ULL;
  const std::uint64_t h1 = splitmix64(a);
  const std::uint64_t h2 = splitmix64(b);
  std::uint64_t x = h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  for (auto& s : s_) s = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t threshold = (~n + 1) % n;  // (2^64 - n) mod n
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v < threshold);
  return v % n;
}

double RngStream::next_normal() {
  // One 64-bit word supplies layer index (7 bits), sign (1 bit) and
  // magnitude (55 bits); ~98.8% of draws exit on the first comparison.
  const std::uint64_t u = next_u64();
  const int i = static_cast<int>(u & 127u);
  const std::uint64_t mag = (u >> 9) & kMagMask;
  const double x = static_cast<double>(mag) * zt.wn[i];
  if (mag < zt.kn[i]) return (u & 128u) ? -x : x;
  return normal_slow_path(u);
}

double RngStream::normal_slow_path(std::uint64_t u) {
  for (;;) {
    const int i = static_cast<int>(u & 127u);
    const bool neg = (u & 128u) != 0;
    const std::uint64_t mag = (u >> 9) & kMagMask;
    const double x = static_cast<double>(mag) * zt.wn[i];
    if (mag < zt.kn[i]) return neg ? -x : x;
    if (i == 0) {
      // Exact tail beyond kR: exponential-rejection scheme.
      double xx, yy;
      do {
        xx = -std::log1p(-next_double()) / kR;
        yy = -std::log1p(-next_double());
      } while (yy + yy < xx * xx);
      return neg ? -(kR + xx) : (kR + xx);
    }
    // Wedge test against the true density.
    if (zt.fn[i] + next_double() * (zt.fn[i - 1] - zt.fn[i]) <
        std::exp(-0.5 * x * x)) {
      return neg ? -x : x;
    }
    u = next_u64();
  }
}

}  // namespace soar
