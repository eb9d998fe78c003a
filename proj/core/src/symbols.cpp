#include "ellkern/symbols.hpp"

namespace ellkern {

namespace {

cx theta_pair(cx x, long l, long m, const EllipticParams& par, const PrecisionConfig& cfg) {
    return theta_pochhammer(x, l, m, par.p, par.q, cfg);
}

cx pow_int(cx base, long e) {
    if (e == 0) return 1.0;
    if (e < 0) return 1.0 / pow_int(base, -e);
    cx r = 1.0;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

} // namespace

cx c_symbol(CKind kind, const PartitionPair& lam, cx x, const EllipticParams& par,
            const PrecisionConfig& cfg) {
    const cx t = par.t;
    const long L = static_cast<long>(lam.length());
    cx r = 1.0;
    switch (kind) {
    case CKind::zero:
        for (long i = 1; i <= L; ++i)
            r *= theta_pair(pow_int(t, 1 - i) * x, lam.first[i - 1], lam.second[i - 1], par, cfg);
        return r;
    case CKind::minus:
        // all factors with j > L are empty ratios
        for (long i = 1; i <= L; ++i)
            for (long j = i; j <= L; ++j) {
                cx arg = pow_int(t, j - i) * x;
                r *= theta_pair(arg, lam.first[i - 1] - lam.first[j], // j-th means index j+1
                                lam.second[i - 1] - lam.second[j], par, cfg);
                cx den = theta_pair(arg, lam.first[i - 1] - lam.first[j - 1],
                                    lam.second[i - 1] - lam.second[j - 1], par, cfg);
                if (std::abs(den) < cfg.near_pole_eps) throw pole_error("c_symbol: C^- denominator");
                r /= den;
            }
        return r;
    case CKind::plus:
        for (long i = 1; i <= L; ++i)
            for (long j = i; j <= L + 1; ++j) {
                cx arg = pow_int(t, 2 - i - j) * x;
                r *= theta_pair(arg, lam.first[i - 1] + lam.first[j - 1],
                                lam.second[i - 1] + lam.second[j - 1], par, cfg);
                cx den = theta_pair(arg, lam.first[i - 1] + lam.first[j],
                                    lam.second[i - 1] + lam.second[j], par, cfg);
                if (std::abs(den) < cfg.near_pole_eps) throw pole_error("c_symbol: C^+ denominator");
                r /= den;
            }
        return r;
    }
    return r;
}

cx delta0(const PartitionPair& lam, const DeltaArgs& args, const PrecisionConfig& cfg) {
    const cx pq = args.params.p * args.params.q;
    cx r = 1.0;
    for (cx b : args.b_list) {
        r *= c_symbol(CKind::zero, lam, b, args.params, cfg);
        cx den = c_symbol(CKind::zero, lam, pq * args.a / b, args.params, cfg);
        if (std::abs(den) < cfg.near_pole_eps) throw pole_error("delta0: denominator");
        r /= den;
    }
    return r;
}

cx delta_symbol(const PartitionPair& lam, const DeltaArgs& args, const PrecisionConfig& cfg) {
    const auto& par = args.params;
    const cx pq = par.p * par.q;
    cx r = delta0(lam, args, cfg);
    r *= c_symbol(CKind::zero, lam.doubled_rows().doubled_parts(), pq * args.a, par, cfg);
    cx den = c_symbol(CKind::minus, lam, pq, par, cfg) * c_symbol(CKind::minus, lam, par.t, par, cfg) *
             c_symbol(CKind::plus, lam, args.a, par, cfg) *
             c_symbol(CKind::plus, lam, pq * args.a / par.t, par, cfg);
    if (std::abs(den) < cfg.near_pole_eps) throw pole_error("delta_symbol: denominator");
    return r / den;
}

cx delta0_elliptic(const Partition& mu, cx a, const cvec& b_list, cx q, cx t, cx p,
                   const PrecisionConfig& cfg) {
    return delta0(PartitionPair::q_only(mu), DeltaArgs(a, b_list, EllipticParams(p, q, t)), cfg);
}

cx delta_elliptic(const Partition& mu, cx a, const cvec& b_list, cx q, cx t, cx p,
                  const PrecisionConfig& cfg) {
    return delta_symbol(PartitionPair::q_only(mu), DeltaArgs(a, b_list, EllipticParams(p, q, t)),
                        cfg);
}

} // namespace ellkern
