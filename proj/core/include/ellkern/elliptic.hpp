#ifndef ELLKERN_ELLIPTIC_HPP
#define ELLKERN_ELLIPTIC_HPP

#include <initializer_list>
#include <limits>

#include "ellkern/base.hpp"

namespace ellkern {

// Base parameter triple (p,q,t).  Every special function below is taken at
// some (p,q) pair; t rides along for the Selberg-type densities and kernels.
struct EllipticParams {
    cx p;
    cx q;
    cx t;

    EllipticParams(cx p_, cx q_, cx t_ = cx(0.5, 0.0)) : p(p_), q(q_), t(t_) {
        if (p == cx(0.0) || q == cx(0.0) || t == cx(0.0))
            throw std::invalid_argument("EllipticParams: p, q, t must be nonzero");
        if (std::abs(p) >= 1.0 || std::abs(q) >= 1.0)
            throw std::invalid_argument("EllipticParams: need |p| < 1 and |q| < 1");
    }

    EllipticParams with_t(cx t_) const { return EllipticParams(p, q, t_); }
    // (p,q) -> (p,q^2) and friends on the quadratic-transformation side
    EllipticParams base(cx p_, cx q_) const { return EllipticParams(p_, q_, t); }
};

// theta_p(z) = prod_{i>=0} (1 - p^i z)(1 - p^{i+1}/z), truncated once the tail
// is below cfg.tail_tolerance
cx theta(cx z, cx p, const PrecisionConfig& cfg = default_precision());

// multiplicative convenience: theta(z, p)*theta(w, p)*...
cx theta(std::initializer_list<cx> zs, cx p,
         const PrecisionConfig& cfg = default_precision());

// theta_p(a z^{+1}) theta_p(a z^{-1})
inline cx theta_pm(cx a, cx z, cx p, const PrecisionConfig& cfg = default_precision()) {
    return theta(a * z, p, cfg) * theta(a / z, p, cfg);
}

// (x;q)_k, with k = qpoch_inf for the infinite product
inline constexpr int qpoch_inf = std::numeric_limits<int>::max();
cx qpochhammer(cx x, cx q, int k = qpoch_inf,
               const PrecisionConfig& cfg = default_precision());

// elliptic Gamma function Gamma_{p,q}(z)
cx elliptic_gamma(cx z, cx p, cx q, const PrecisionConfig& cfg = default_precision());

inline cx elliptic_gamma(cx z, const EllipticParams& par,
                         const PrecisionConfig& cfg = default_precision()) {
    return elliptic_gamma(z, par.p, par.q, cfg);
}

// multi-argument form: product over the arguments
cx elliptic_gamma(std::initializer_list<cx> zs, cx p, cx q,
                  const PrecisionConfig& cfg = default_precision());

// Gamma_{p,q}(a z^{+1} w^{+1}) ... over all four sign choices
cx gamma_pmpm(cx a, cx z, cx w, cx p, cx q,
              const PrecisionConfig& cfg = default_precision());

// Gamma_{p,q}(a z^{+1}) Gamma_{p,q}(a z^{-1})
inline cx gamma_pm(cx a, cx z, cx p, cx q,
                   const PrecisionConfig& cfg = default_precision()) {
    return elliptic_gamma(a * z, p, q, cfg) * elliptic_gamma(a / z, p, q, cfg);
}

// triple Gamma Gamma^+_{p,q,t}(z)
cx triple_gamma(cx z, const EllipticParams& par,
                const PrecisionConfig& cfg = default_precision());

// theta-Pochhammer theta(x; p,q)_{l,m} = prod_{j<l} theta_q(p^j x) prod_{j<m} theta_p(q^j x)
cx theta_pochhammer(cx x, long l, long m, cx p, cx q,
                    const PrecisionConfig& cfg = default_precision());

} // namespace ellkern

#endif
