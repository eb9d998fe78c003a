#include "ellkern/elliptic.hpp"

#include <cmath>

namespace ellkern {

namespace {

void check_modulus(cx p, const char* who) {
    if (std::abs(p) >= 1.0)
        throw std::invalid_argument(std::string(who) + ": modulus must satisfy |.| < 1");
}

// number of product terms so that r^N < tol
int truncation_index(double r, const PrecisionConfig& cfg, const char* who) {
    if (r <= 0.0) return 1;
    if (r >= 1.0) throw budget_error(std::string(who) + ": non-contracting modulus");
    int n = static_cast<int>(std::log(cfg.tail_tolerance) / std::log(r)) + 2;
    if (n > cfg.max_product_terms)
        throw budget_error(std::string(who) + ": truncation budget exceeded");
    return n;
}

} // namespace

cx theta(cx z, cx p, const PrecisionConfig& cfg) {
    if (z == cx(0.0)) throw pole_error("theta: z = 0");
    check_modulus(p, "theta");
    int n = truncation_index(std::abs(p), cfg, "theta");
    cx r = 1.0, pi = 1.0;
    for (int i = 0; i < n; ++i) {
        r *= (1.0 - pi * z) * (1.0 - pi * p / z);
        pi *= p;
    }
    return r;
}

cx theta(std::initializer_list<cx> zs, cx p, const PrecisionConfig& cfg) {
    cx r = 1.0;
    for (cx z : zs) r *= theta(z, p, cfg);
    return r;
}

cx qpochhammer(cx x, cx q, int k, const PrecisionConfig& cfg) {
    if (k == qpoch_inf) {
        if (std::abs(q) >= 1.0)
            throw std::invalid_argument("qpochhammer: divergent, |q| >= 1 with k = inf");
        if (x == cx(0.0)) return 1.0;
        k = truncation_index(std::abs(q), cfg, "qpochhammer");
    }
    if (k < 0) throw std::invalid_argument("qpochhammer: negative k");
    cx r = 1.0, qi = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= (1.0 - x * qi);
        qi *= q;
    }
    return r;
}

// Gamma_{p,q}(z) for |pq| < |z| < 1 as exp(sum_k (z^k - (pq/z)^k)/(k (1-p^k)(1-q^k))).
// Outside the band, reduce with Gamma(z) = Gamma(qz)/theta_p(z) (downward) or
// Gamma(z) = theta_p(z/q) Gamma(z/q) (upward), and the reflection
// Gamma(z) Gamma(pq/z) = 1 for |z| > 1.
cx elliptic_gamma(cx z, cx p, cx q, const PrecisionConfig& cfg) {
    if (z == cx(0.0)) throw pole_error("elliptic_gamma: z = 0");
    check_modulus(p, "elliptic_gamma");
    check_modulus(q, "elliptic_gamma");
    cx pq = p * q;
    if (std::abs(pq) > 0.45)
        throw std::invalid_argument("elliptic_gamma: |pq| too large for reduction bands");

    if (std::abs(z) > 1.0) return 1.0 / elliptic_gamma(pq / z, p, q, cfg);

    // reduce by the larger of the two bases so each step is as gentle as possible
    cx s = (std::abs(p) >= std::abs(q)) ? p : q;
    cx other = (std::abs(p) >= std::abs(q)) ? q : p;

    cx acc_num = 1.0, acc_den = 1.0;
    int guard = 0;
    while (std::abs(z) > 0.65) {
        cx th = theta(z, other, cfg);
        if (std::abs(th) < cfg.near_pole_eps)
            throw pole_error("elliptic_gamma: pole near z = (" + std::to_string(z.real()) + "," +
                             std::to_string(z.imag()) + ")");
        acc_den *= th;
        z *= s;
        if (++guard > cfg.max_product_terms) throw budget_error("elliptic_gamma: reduction stuck");
    }
    while (std::abs(z) < std::abs(pq) / 0.65) {
        z /= s;
        cx th = theta(z, other, cfg);
        acc_num *= th; // zeros of Gamma are reported by the tiny result itself
        if (++guard > cfg.max_product_terms) throw budget_error("elliptic_gamma: reduction stuck");
    }

    double r = std::max(std::abs(z), std::abs(pq / z));
    int n = truncation_index(r, cfg, "elliptic_gamma");
    cx sum = 0.0, zk = 1.0, wk = 1.0, pk = 1.0, qk = 1.0, w = pq / z;
    for (int k = 1; k <= n; ++k) {
        zk *= z; wk *= w; pk *= p; qk *= q;
        sum += (zk - wk) / (static_cast<double>(k) * (1.0 - pk) * (1.0 - qk));
    }
    return acc_num * std::exp(sum) / acc_den;
}

cx elliptic_gamma(std::initializer_list<cx> zs, cx p, cx q, const PrecisionConfig& cfg) {
    cx r = 1.0;
    for (cx z : zs) r *= elliptic_gamma(z, p, q, cfg);
    return r;
}

cx gamma_pmpm(cx a, cx z, cx w, cx p, cx q, const PrecisionConfig& cfg) {
    return elliptic_gamma(a * z * w, p, q, cfg) * elliptic_gamma(a * z / w, p, q, cfg) *
           elliptic_gamma(a * w / z, p, q, cfg) * elliptic_gamma(a / (z * w), p, q, cfg);
}

// Gamma^+_{p,q,t}(z) = exp(-sum_k [z^k + (pqt/z)^k]/(k(1-p^k)(1-q^k)(1-t^k)))
// on |pqt| < |z| < 1, with Gamma^+(tz) = Gamma(z) Gamma^+(z) for reduction.
cx triple_gamma(cx z, const EllipticParams& par, const PrecisionConfig& cfg) {
    if (z == cx(0.0)) throw pole_error("triple_gamma: z = 0");
    cx p = par.p, q = par.q, t = par.t;
    if (std::abs(t) >= 1.0)
        throw std::invalid_argument("triple_gamma: need |t| < 1");
    cx pqt = p * q * t;
    // reflection Gamma^+(pqt/z) = Gamma^+(z) maps |z| > sqrt(|pqt|) inward
    if (std::abs(z) > 1.0) return triple_gamma(pqt / z, par, cfg);

    cx acc = 1.0;
    int guard = 0;
    while (std::abs(z) > 0.65) {
        z *= t;
        acc *= elliptic_gamma(z, p, q, cfg);
        if (++guard > cfg.max_product_terms) throw budget_error("triple_gamma: reduction stuck");
    }
    while (std::abs(z) < std::abs(pqt) / 0.65) {
        acc /= elliptic_gamma(z, p, q, cfg);
        z /= t;
        if (++guard > cfg.max_product_terms) throw budget_error("triple_gamma: reduction stuck");
    }

    double r = std::max(std::abs(z), std::abs(pqt / z));
    int n = truncation_index(r, cfg, "triple_gamma");
    cx sum = 0.0, zk = 1.0, wk = 1.0, pk = 1.0, qk = 1.0, tk = 1.0, w = pqt / z;
    for (int k = 1; k <= n; ++k) {
        zk *= z; wk *= w; pk *= p; qk *= q; tk *= t;
        sum -= (zk + wk) / (static_cast<double>(k) * (1.0 - pk) * (1.0 - qk) * (1.0 - tk));
    }
    return acc * std::exp(sum);
}

cx theta_pochhammer(cx x, long l, long m, cx p, cx q, const PrecisionConfig& cfg) {
    if (l < 0 || m < 0) throw std::invalid_argument("theta_pochhammer: negative index");
    cx r = 1.0, a = x;
    for (long j = 0; j < l; ++j) {
        r *= theta(a, q, cfg);
        a *= p;
    }
    a = x;
    for (long j = 0; j < m; ++j) {
        r *= theta(a, p, cfg);
        a *= q;
    }
    return r;
}

} // namespace ellkern
