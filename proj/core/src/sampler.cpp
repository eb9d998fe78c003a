#include "ellkern/sampler.hpp"

namespace ellkern {

EllipticParams draw_params(Rng& rng, const SamplerAnnuli& a) {
    cx p = rng.annulus(a.p_min, a.p_max);
    cx q = rng.annulus(a.q_min, a.q_max);
    cx t = rng.annulus(a.t_min, a.t_max);
    return EllipticParams(p, q, t);
}

} // namespace ellkern
