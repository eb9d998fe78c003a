#ifndef ELLKERN_DENSITIES_HPP
#define ELLKERN_DENSITIES_HPP

#include "ellkern/elliptic.hpp"
#include "ellkern/quadrature.hpp"

namespace ellkern {

// Dixon / Selberg densities on the m-torus.  The dz/(2 pi i z) measure factor
// lives in the quadrature weights, not here.  The Selberg t-coupling parameter
// is params.t; extra univariate parameters u_r each contribute
// prod_i Gamma(u_r z_i^{+-1}).
struct DensitySpec {
    enum class Kind { dixon, selberg } kind;
    int n;
    cvec uparams;
    EllipticParams params;

    DensitySpec(Kind k, int n_, cvec u, EllipticParams par)
        : kind(k), n(n_), uparams(std::move(u)), params(par) {}

    static DensitySpec dixon(int n, cvec u, EllipticParams par) {
        return DensitySpec(Kind::dixon, n, std::move(u), par);
    }
    static DensitySpec selberg(int n, cvec u, EllipticParams par) {
        return DensitySpec(Kind::selberg, n, std::move(u), par);
    }

    // validity certificate: with z on the torus, every Gamma argument that can
    // pinch the contour has modulus strictly inside (|pq|, 1)
    bool contour_valid(double margin = 1.0) const;
    void require_valid() const;
};

cx density_eval(const DensitySpec& spec, const cvec& z,
                const PrecisionConfig& cfg = default_precision());

// integrand as a closure for torus_integrate
TorusIntegrand density_integrand(DensitySpec spec,
                                 const PrecisionConfig& cfg = default_precision());

struct EvalReport {
    cx value;
    cx expected;
    double rel_err;
};

// Type I: n-dim Dixon with 2n+4 parameters, balancing prod u_r = pq;
// closed form prod_{r<s} Gamma(u_r u_s)
EvalReport type1_check(int n, const cvec& u, const EllipticParams& par,
                       const TorusQuadrature& quad,
                       const PrecisionConfig& cfg = default_precision());

// Type II: n-dim Selberg with 6 parameters, balancing t^{2n-2} prod u_r = pq;
// closed form prod_{i<n} Gamma(t^{i+1}) prod_{r<s} Gamma(t^i u_r u_s)
EvalReport type2_check(int n, const cvec& u, const EllipticParams& par,
                       const TorusQuadrature& quad,
                       const PrecisionConfig& cfg = default_precision());

} // namespace ellkern

#endif
