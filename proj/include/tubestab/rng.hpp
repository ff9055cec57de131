#ifndef TUBESTAB_RNG_HPP
#define TUBESTAB_RNG_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace tubestab {

// SplitMix64-based generator.  Cheap to construct, so every sample index can
// own an independent stream (split(i)): batch loops stay deterministic no
// matter how they are scheduled across threads.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) { next_u64(); }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // independent stream for item i of a batch
  Rng split(std::uint64_t i) const {
    std::uint64_t mix = state_ + (i + 1) * 0xd1b54a32d192ed03ull;
    return Rng(mix ^ (mix >> 29) ^ 0x8cb92ba72f3d8dd7ull);
  }

  double uniform() {  // [0,1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    // Box-Muller; one value per call keeps replay simple
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  std::complex<double> cnormal() { return {normal(), normal()}; }

  std::complex<double> unit_disc() {  // uniform on the open unit disc
    double r = std::sqrt(uniform());
    double t = uniform(0.0, 6.283185307179586);
    return {r * std::cos(t), r * std::sin(t)};
  }

  std::vector<std::complex<double>> cnormal_vec(std::size_t n) {
    std::vector<std::complex<double>> v(n);
    for (auto& x : v) x = cnormal();
    return v;
  }

private:
  std::uint64_t state_;
};

}  // namespace tubestab

#endif
