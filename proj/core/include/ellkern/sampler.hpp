#ifndef ELLKERN_SAMPLER_HPP
#define ELLKERN_SAMPLER_HPP

#include <cstdint>

#include "ellkern/elliptic.hpp"

namespace ellkern {

// Deterministic, implementation-independent RNG: raw mt19937_64 bits mapped
// to doubles, so a (case, seed) pair reproduces draws on any platform.
class Rng {
  public:
    explicit Rng(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {
        for (int i = 0; i < 8; ++i) next_bits();
    }

    double uniform() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    cx on_torus() {
        double a = 6.283185307179586 * uniform();
        return cx(std::cos(a), std::sin(a));
    }
    cx annulus(double lo, double hi) { return uniform(lo, hi) * on_torus(); }

  private:
    uint64_t next_bits() {
        // splitmix64; stable across standard libraries
        uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t s_;
};

// default sampling annuli (overridable through the config file)
struct SamplerAnnuli {
    double p_min = 0.05, p_max = 0.12;
    double q_min = 0.05, q_max = 0.12;
    double t_min = 0.40, t_max = 0.60;
    double u_min = 0.30, u_max = 0.70;
};

EllipticParams draw_params(Rng& rng, const SamplerAnnuli& a);

} // namespace ellkern

#endif
