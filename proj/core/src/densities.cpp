#include "ellkern/densities.hpp"

#include <cmath>

namespace ellkern {

bool DensitySpec::contour_valid(double margin) const {
    const double apq = std::abs(params.p * params.q);
    for (cx u : uparams) {
        double m = std::abs(u);
        if (m >= 1.0 * margin || m <= apq / margin) return false;
    }
    if (kind == Kind::selberg) {
        double mt = std::abs(params.t);
        if (mt >= 1.0 * margin || mt <= apq / margin) return false;
    }
    return true;
}

void DensitySpec::require_valid() const {
    if (!contour_valid())
        throw certificate_error("DensitySpec: unit torus is not a valid contour");
}

cx density_eval(const DensitySpec& spec, const cvec& z, const PrecisionConfig& cfg) {
    const auto& par = spec.params;
    const int n = spec.n;
    if (static_cast<int>(z.size()) != n)
        throw std::invalid_argument("density_eval: wrong dimension");

    cx c0 = qpochhammer(par.p, par.p, qpoch_inf, cfg) * qpochhammer(par.q, par.q, qpoch_inf, cfg);
    cx r = 1.0;
    double fact = 1.0;
    for (int i = 1; i <= n; ++i) fact *= i;
    for (int i = 0; i < n; ++i) r *= c0 / 2.0;
    r /= fact;

    // reciprocal Dixon factors via reflection 1/Gamma(w) = Gamma(pq/w), which
    // stays finite (a zero) when a node pair degenerates
    const cx pq = par.p * par.q;
    for (int i = 0; i < n; ++i)
        r *= elliptic_gamma(pq * z[i] * z[i], par, cfg) *
             elliptic_gamma(pq / (z[i] * z[i]), par, cfg);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            r *= gamma_pmpm(pq, z[i], z[j], par.p, par.q, cfg);

    if (spec.kind == DensitySpec::Kind::selberg) {
        r *= std::pow(elliptic_gamma(par.t, par, cfg), n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                r *= gamma_pmpm(par.t, z[i], z[j], par.p, par.q, cfg);
    }
    for (cx u : spec.uparams)
        for (int i = 0; i < n; ++i) r *= gamma_pm(u, z[i], par.p, par.q, cfg);
    return r;
}

TorusIntegrand density_integrand(DensitySpec spec, const PrecisionConfig& cfg) {
    return [spec = std::move(spec), cfg](const cvec& z) { return density_eval(spec, z, cfg); };
}

EvalReport type1_check(int n, const cvec& u, const EllipticParams& par,
                       const TorusQuadrature& quad, const PrecisionConfig& cfg) {
    if (static_cast<int>(u.size()) != 2 * n + 4)
        throw std::invalid_argument("type1_check: need 2n+4 parameters");
    auto spec = DensitySpec::dixon(n, u, par);
    spec.require_valid();
    cx value = torus_integrate(density_integrand(spec, cfg), quad, cfg);
    cx expected = 1.0;
    for (size_t r = 0; r < u.size(); ++r)
        for (size_t s = r + 1; s < u.size(); ++s)
            expected *= elliptic_gamma(u[r] * u[s], par, cfg);
    return {value, expected, rel_err(value, expected)};
}

EvalReport type2_check(int n, const cvec& u, const EllipticParams& par,
                       const TorusQuadrature& quad, const PrecisionConfig& cfg) {
    if (u.size() != 6) throw std::invalid_argument("type2_check: need 6 parameters");
    auto spec = DensitySpec::selberg(n, u, par);
    spec.require_valid();
    cx value = torus_integrate(density_integrand(spec, cfg), quad, cfg);
    cx expected = 1.0, ti = 1.0;
    for (int i = 0; i < n; ++i) {
        expected *= elliptic_gamma(ti * par.t, par, cfg);
        for (size_t r = 0; r < 6; ++r)
            for (size_t s = r + 1; s < 6; ++s)
                expected *= elliptic_gamma(ti * u[r] * u[s], par, cfg);
        ti *= par.t;
    }
    return {value, expected, rel_err(value, expected)};
}

} // namespace ellkern
