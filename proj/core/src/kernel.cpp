#include "ellkern/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "ellkern/matrix.hpp"

namespace ellkern {

namespace {

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

bool close(cx a, cx b, double tol = 1e-11) {
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// y_i = t^{n-i} a ?  returns base a via the last entry
bool is_geometric(const cvec& y, cx t, cx& a) {
    if (y.empty()) return false;
    for (size_t i = 0; i + 1 < y.size(); ++i)
        if (!close(y[i], t * y[i + 1])) return false;
    a = y.back();
    return true;
}

cx kernel_n1(cx c, cx x, cx y, const EllipticParams& par, const PrecisionConfig& cfg) {
    return gamma_pmpm(c, x, y, par.p, par.q, cfg) /
           (elliptic_gamma(c * c, par, cfg) * elliptic_gamma(par.t, par, cfg));
}

struct PoleInfo {
    cx w;
    int direction; // +1: add residue, -1: subtract residue
};

void enumerate_sequence(cx first, cx ratio1, cx ratio2, bool outward, std::vector<PoleInfo>& out,
                        double tol) {
    // members first * ratio1^i * ratio2^j, i,j >= 0; keep those on the wrong
    // side of the unit circle
    for (int i = 0; i < 64; ++i) {
        cx wi = first * pow_int(ratio1, i);
        if (outward ? std::abs(wi) > 4.0 : std::abs(wi) < 0.25) break;
        for (int j = 0; j < 64; ++j) {
            cx w = wi * pow_int(ratio2, j);
            double m = std::abs(w);
            if (outward && m > 4.0) break;
            if (!outward && m < 0.25) break;
            if (std::abs(m - 1.0) < tol)
                throw certificate_error("contour pinch: pole on the unit circle");
            if (outward && m < 1.0) out.push_back({w, -1});
            if (!outward && m > 1.0) out.push_back({w, +1});
        }
    }
}

} // namespace

std::vector<cx> misplaced_poles(const std::vector<GammaFactor>& factors, const EllipticParams& par,
                                double tol) {
    std::vector<PoleInfo> infos;
    const cx p = par.p, q = par.q;
    for (const auto& f : factors) {
        if (f.sign > 0) {
            if (f.e > 0) // Gamma(A w): poles w = p^{-i} q^{-j}/A, outward
                enumerate_sequence(1.0 / f.A, 1.0 / p, 1.0 / q, true, infos, tol);
            else // Gamma(A/w): poles w = A p^i q^j, inward
                enumerate_sequence(f.A, p, q, false, infos, tol);
        } else {
            if (f.e > 0) // 1/Gamma(A w): poles w = p^{i+1} q^{j+1}/A, inward
                enumerate_sequence(p * q / f.A, p, q, false, infos, tol);
            else // 1/Gamma(A/w): poles w = A/(p^{i+1} q^{j+1}), outward
                enumerate_sequence(f.A / (p * q), 1.0 / p, 1.0 / q, true, infos, tol);
        }
    }
    std::vector<cx> pts;
    pts.reserve(infos.size());
    for (const auto& pi : infos) pts.push_back(pi.w);
    return pts;
}

namespace {

// all pole points of prod Gamma(A w^e)^{sign} in the modulus window around m0
void factor_pole_points(const std::vector<GammaFactor>& factors, const EllipticParams& par,
                        double lo, double hi, std::vector<cx>& out) {
    const cx p = par.p, q = par.q;
    auto emit = [&](cx first, cx r1, cx r2, bool outward) {
        for (int i = 0; i < 64; ++i) {
            cx wi = first * pow_int(r1, i);
            if (outward ? std::abs(wi) > hi : std::abs(wi) < lo) break;
            for (int j = 0; j < 64; ++j) {
                cx w = wi * pow_int(r2, j);
                double m = std::abs(w);
                if (outward && m > hi) break;
                if (!outward && m < lo) break;
                out.push_back(w);
            }
        }
    };
    for (const auto& fac : factors) {
        if (fac.sign > 0) {
            if (fac.e > 0)
                emit(1.0 / fac.A, 1.0 / p, 1.0 / q, true);
            else
                emit(fac.A, p, q, false);
        } else {
            if (fac.e > 0)
                emit(p * q / fac.A, p, q, false);
            else
                emit(fac.A / (p * q), 1.0 / p, 1.0 / q, true);
        }
    }
}

} // namespace

cx corrected_integrate_1d(const std::function<cx(cx)>& f, const std::vector<GammaFactor>& factors,
                          const TorusQuadrature& quad, const EllipticParams& par,
                          const PrecisionConfig& cfg) {
    std::vector<PoleInfo> infos;
    const cx p = par.p, q = par.q;
    for (const auto& fac : factors) {
        if (fac.sign > 0) {
            if (fac.e > 0)
                enumerate_sequence(1.0 / fac.A, 1.0 / p, 1.0 / q, true, infos, 1e-9);
            else
                enumerate_sequence(fac.A, p, q, false, infos, 1e-9);
        } else {
            if (fac.e > 0)
                enumerate_sequence(p * q / fac.A, p, q, false, infos, 1e-9);
            else
                enumerate_sequence(fac.A / (p * q), 1.0 / p, 1.0 / q, true, infos, 1e-9);
        }
    }
    TorusIntegrand g = [&f](const cvec& z) { return f(z[0]); };
    cx total = torus_integrate(g, quad, cfg);
    if (infos.empty()) return total;

    // every pole point of every factor in a window covering all residue
    // points; residue circles must not cross any of them
    double lo = 0.02, hi = 8.0;
    for (const auto& pi : infos) {
        lo = std::min(lo, 0.2 * std::abs(pi.w));
        hi = std::max(hi, 5.0 * std::abs(pi.w));
    }
    std::vector<cx> all_poles;
    factor_pole_points(factors, par, lo, hi, all_poles);

    for (size_t i = 0; i < infos.size(); ++i) {
        cx w = infos[i].w;
        double dmin = 0.05 * std::abs(w);
        for (cx s : all_poles) {
            double d = std::abs(w - s);
            if (d > 1e-12) dmin = std::min(dmin, d);
        }
        dmin = std::min(dmin, 0.5 * std::abs(std::abs(w) - 1.0));
        if (dmin < 1e-7)
            throw certificate_error("corrected_integrate_1d: pinched residue point");
        double rad = 0.3 * dmin;
        cx res = residue_at([&f](cx z) { return f(z) / z; }, w, rad, 96);
        total += static_cast<double>(infos[i].direction) * res;
    }
    return total;
}

cx kernel_geometric(int n, cx c, const cvec& x, cx a, const EllipticParams& par,
                    const PrecisionConfig& cfg) {
    cx r = 1.0;
    cx b = c / (pow_int(par.t, n - 1) * a);
    for (int i = 1; i <= n; ++i) {
        r *= gamma_pm(a * c, x[static_cast<size_t>(i - 1)], par.p, par.q, cfg) *
             gamma_pm(b, x[static_cast<size_t>(i - 1)], par.p, par.q, cfg);
        r /= elliptic_gamma(pow_int(par.t, 1 - i) * c * c, par, cfg) *
             elliptic_gamma(pow_int(par.t, i), par, cfg);
    }
    return r;
}

cx kernel_closed_form(KernelCase kc, const KernelQuery& q, const PrecisionConfig& cfg) {
    const auto& par = q.params;
    const int n = q.n;
    switch (kc) {
    case KernelCase::c_sqrt_pq_over_t: {
        if (!close(q.c * q.c, par.p * par.q / par.t))
            throw std::invalid_argument("kernel_closed_form: c^2 != pq/t");
        cx r = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r *= gamma_pmpm(q.c, q.x[static_cast<size_t>(i)], q.y[static_cast<size_t>(j)],
                                par.p, par.q, cfg);
        return r;
    }
    case KernelCase::c_sqrt_t: {
        if (!close(q.c * q.c, par.t))
            throw std::invalid_argument("kernel_closed_form: c^2 != t");
        cx r = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r *= gamma_pmpm(q.c, q.x[static_cast<size_t>(i)], q.y[static_cast<size_t>(j)],
                                par.p, par.q, cfg);
        r /= pow_int(elliptic_gamma(par.t, par, cfg), 2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                r /= gamma_pmpm(par.t, q.x[static_cast<size_t>(i)], q.x[static_cast<size_t>(j)],
                                par.p, par.q, cfg) *
                     gamma_pmpm(par.t, q.y[static_cast<size_t>(i)], q.y[static_cast<size_t>(j)],
                                par.p, par.q, cfg);
        return r;
    }
    case KernelCase::t_equals_q_det: {
        if (!close(par.t, par.q))
            throw std::invalid_argument("kernel_closed_form: t != q");
        cx r = pow_int(q.c, -static_cast<long>(n) * (n - 1) / 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                cx xi = q.x[static_cast<size_t>(i)], xj = q.x[static_cast<size_t>(j)];
                cx yi = q.y[static_cast<size_t>(i)], yj = q.y[static_cast<size_t>(j)];
                cx den = theta({xi * xj, xi / xj, yi * yj, yi / yj}, par.p, cfg);
                if (std::abs(den) < cfg.near_pole_eps)
                    throw pole_error("kernel t=q determinant: theta denominator");
                r *= xi * yi / den;
            }
        ComplexMatrix m = ComplexMatrix::from(n, [&](int i, int j) {
            return kernel_n1(q.c, q.x[static_cast<size_t>(i)], q.y[static_cast<size_t>(j)], par,
                             cfg);
        });
        return r * determinant(m);
    }
    case KernelCase::c_sqrt_p_over_t_det: {
        if (!close(q.c * q.c, par.p / par.t))
            throw std::invalid_argument("kernel_closed_form: c^2 != p/t");
        cx r = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                cx xi = q.x[static_cast<size_t>(i)], yj = q.y[static_cast<size_t>(j)];
                r *= gamma_pmpm(q.c, xi, yj, par.p, par.q, cfg);
                r *= theta({q.c * xi * yj, q.c * xi / yj, q.c * yj / xi, q.c / (xi * yj)}, par.p,
                           cfg);
            }
        r *= pow_int(theta(par.t, par.p, cfg), n);
        r /= pow_int(sqrt_principal(par.p / par.t), static_cast<long>(n) * (n - 1) / 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                cx xi = q.x[static_cast<size_t>(i)], xj = q.x[static_cast<size_t>(j)];
                cx yi = q.y[static_cast<size_t>(i)], yj = q.y[static_cast<size_t>(j)];
                r /= xi * yi * theta({xi * xj, xi / xj, yi * yj, yi / yj}, par.p, cfg);
            }
        ComplexMatrix m = ComplexMatrix::from(n, [&](int i, int j) {
            cx xi = q.x[static_cast<size_t>(i)], yj = q.y[static_cast<size_t>(j)];
            cx den =
                theta({q.c * xi * yj, q.c * xi / yj, q.c * yj / xi, q.c / (xi * yj)}, par.p, cfg);
            if (std::abs(den) < cfg.near_pole_eps) throw pole_error("kernel det: theta entry");
            return 1.0 / den;
        });
        return r * determinant(m);
    }
    case KernelCase::geometric_y: {
        cx a;
        if (!is_geometric(q.y, par.t, a))
            throw std::invalid_argument("kernel_closed_form: y is not a t-progression");
        return kernel_geometric(n, q.c, q.x, a, par, cfg);
    }
    }
    throw std::logic_error("kernel_closed_form: unreachable");
}

cx kernel(const KernelQuery& q, const PrecisionConfig& cfg) {
    const auto& par = q.params;
    if (static_cast<int>(q.x.size()) != q.n || static_cast<int>(q.y.size()) != q.n)
        throw std::invalid_argument("kernel: variable count mismatch");
    if (q.n == 0) return 1.0;
    if (q.n == 1) return kernel_n1(q.c, q.x[0], q.y[0], par, cfg);

    if (!q.force_recursion) {
        cx a;
        if (close(par.t, par.q)) return kernel_closed_form(KernelCase::t_equals_q_det, q, cfg);
        if (close(q.c * q.c, par.p * par.q / par.t) &&
            close(q.c, sqrt_principal(par.p * par.q / par.t)))
            return kernel_closed_form(KernelCase::c_sqrt_pq_over_t, q, cfg);
        if (close(q.c * q.c, par.t) && close(q.c, sqrt_principal(par.t)))
            return kernel_closed_form(KernelCase::c_sqrt_t, q, cfg);
        if (is_geometric(q.y, par.t, a)) return kernel_geometric(q.n, q.c, q.x, a, par, cfg);
        if (is_geometric(q.x, par.t, a)) return kernel_geometric(q.n, q.c, q.y, a, par, cfg);
    }

    bool all_torus = true;
    for (cx w : q.x)
        if (std::abs(std::abs(w) - 1.0) > 0.05) all_torus = false;
    for (cx w : q.y)
        if (std::abs(std::abs(w) - 1.0) > 0.05) all_torus = false;

    if (q.n == 2 && !q.force_recursion && !q.fixed_orientation && !all_torus) {
        // both orientations are mathematically equal; pick the one whose
        // integrand poles stay farthest from the unit circle
        auto badness = [&](const cvec& xs, const cvec& ys) {
            const cx st = sqrt_principal(par.t);
            std::vector<GammaFactor> fs;
            for (cx xv : xs)
                for (int e : {+1, -1}) {
                    fs.push_back({st * xv, e, +1});
                    fs.push_back({st / xv, e, +1});
                }
            for (int e : {+1, -1}) {
                fs.push_back({st * q.c * ys[1], e, -1});
                fs.push_back({st * q.c / ys[1], e, -1});
                fs.push_back({(q.c / st) * ys[0], e, +1});
                fs.push_back({(q.c / st) / ys[0], e, +1});
            }
            std::vector<cx> pts;
            factor_pole_points(fs, par, 0.25, 4.0, pts);
            double d = 1.0;
            for (cx w : pts) d = std::min(d, std::abs(std::log(std::abs(w))));
            return -d; // smaller distance = worse
        };
        if (badness(q.x, q.y) > badness(q.y, q.x)) {
            KernelQuery swapped(q.n, q.c, q.y, q.x, par, q.quad);
            swapped.force_recursion = true;
            return kernel(swapped, cfg);
        }
        KernelQuery same(q.n, q.c, q.x, q.y, par, q.quad);
        same.force_recursion = true;
        return kernel(same, cfg);
    }

    // inductive integral representation, branching on the last y
    const int n = q.n;
    const int m = n - 1;
    const cx t = par.t, st = sqrt_principal(par.t);
    const cx v = q.y.back();
    const cvec yrest(q.y.begin(), q.y.end() - 1);
    const cx csub = q.c / st;

    cx pref = 1.0;
    for (int i = 0; i < n; ++i) pref *= gamma_pmpm(q.c, v, q.x[static_cast<size_t>(i)], par.p, par.q, cfg);
    pref /= pow_int(elliptic_gamma(t, par, cfg), n) * elliptic_gamma(q.c * q.c, par, cfg);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pref /= gamma_pmpm(t, q.x[static_cast<size_t>(i)], q.x[static_cast<size_t>(j)], par.p,
                               par.q, cfg);

    auto integrand_at = [&](const cvec& z) {
        KernelQuery sub(m, csub, z, yrest, par, TorusQuadrature(std::max(1, m - 1), q.quad.points_per_dim));
        cx val = kernel(sub, cfg);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j)
                val *= gamma_pmpm(st, q.x[static_cast<size_t>(j)], z[static_cast<size_t>(i)],
                                  par.p, par.q, cfg);
            val /= gamma_pmpm(st * q.c, v, z[static_cast<size_t>(i)], par.p, par.q, cfg);
        }
        val *= density_eval(DensitySpec::dixon(m, {}, par), z, cfg);
        return val;
    };

    if (m == 1) {
        // collect the z-factor descriptors so misplaced pole sequences are
        // residue-corrected; only the base-kernel and x-side numerators can
        // stray for admissible queries
        std::vector<GammaFactor> factors;
        for (int j = 0; j < n; ++j) {
            for (int e : {+1, -1}) {
                factors.push_back({st * q.x[static_cast<size_t>(j)], e, +1});
                factors.push_back({st / q.x[static_cast<size_t>(j)], e, +1});
            }
        }
        for (int e : {+1, -1}) {
            factors.push_back({st * q.c * v, e, -1});
            factors.push_back({st * q.c / v, e, -1});
            factors.push_back({csub * yrest[0], e, +1});
            factors.push_back({csub / yrest[0], e, +1});
        }
        auto f1 = [&](cx w) { return integrand_at(cvec{w}); };
        return pref * corrected_integrate_1d(f1, factors, TorusQuadrature(1, q.quad.points_per_dim),
                                             par, cfg);
    }

    // multi-dimensional recursion: require a clean contour at every level
    auto require_band = [&](cx w, const char* what) {
        double mw = std::abs(w), apq = std::abs(par.p * par.q);
        if (mw >= 1.0 || mw <= apq)
            throw certificate_error(std::string("kernel recursion: ") + what +
                                    " leaves the annulus");
    };
    for (int j = 0; j < n; ++j) {
        require_band(st * q.x[static_cast<size_t>(j)], "t^{1/2} x");
        require_band(st / q.x[static_cast<size_t>(j)], "t^{1/2}/x");
    }
    require_band(st * q.c * v, "t^{1/2} c v");
    require_band(st * q.c / v, "t^{1/2} c/v");
    {
        cx cf = csub;
        for (int depth = m; depth >= 1; --depth) {
            cx yb = q.y[static_cast<size_t>(depth - 1)];
            require_band(cf * yb, "inner c y");
            require_band(cf / yb, "inner c/y");
            cf /= st;
        }
    }

    TorusQuadrature quad_m(m, q.quad.points_per_dim);
    return pref * torus_integrate(integrand_at, quad_m, cfg);
}

// ---------------------------------------------------------------------------

cx interp_fn(const InterpSpec& spec, const cvec& z, const EllipticParams& par,
             const TorusQuadrature& quad, const PrecisionConfig& cfg) {
    const int n = spec.n;
    if (static_cast<int>(spec.pair.length()) > n)
        throw std::invalid_argument("interp_fn: partition longer than n");
    const cx a = spec.a, b = spec.b, t = par.t;
    const cx c = sqrt_principal(pow_int(t, n - 1) * a * b);

    cvec y(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        long lam = spec.pair.first[static_cast<size_t>(i - 1)];
        long mu = spec.pair.second[static_cast<size_t>(i - 1)];
        y[static_cast<size_t>(i - 1)] = pow_int(par.p, lam) * pow_int(par.q, mu) *
                                        pow_int(t, n - i) * a / c;
    }
    // branch the recursion on the least-shifted point
    std::sort(y.begin(), y.end(), [](cx u, cx w) { return std::abs(u) < std::abs(w); });

    cx pref = 1.0;
    const cx pq_ab = par.p * par.q / (a * b);
    for (int i = 1; i <= n; ++i) {
        long lam = spec.pair.first[static_cast<size_t>(i - 1)];
        long mu = spec.pair.second[static_cast<size_t>(i - 1)];
        pref *= pow_int(pq_ab, -2 * lam * mu);
        pref *= elliptic_gamma(pow_int(t, n - i) * a * b, par, cfg) *
                elliptic_gamma(pow_int(t, i), par, cfg);
        cx den = gamma_pm(a, z[static_cast<size_t>(i - 1)], par.p, par.q, cfg) *
                 gamma_pm(b, z[static_cast<size_t>(i - 1)], par.p, par.q, cfg);
        if (std::abs(den) < cfg.near_pole_eps) throw pole_error("interp_fn: prefactor");
        pref /= den;
    }
    KernelQuery kq(n, c, z, y, par, quad);
    kq.fixed_orientation = true; // shifted points stay in the y slot
    return pref * kernel(kq, cfg);
}

cvec shifted_grid(const PartitionPair& mu, int n, cx a, const EllipticParams& par) {
    cvec z(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        z[static_cast<size_t>(i - 1)] = pow_int(par.p, mu.first[static_cast<size_t>(i - 1)]) *
                                        pow_int(par.q, mu.second[static_cast<size_t>(i - 1)]) *
                                        pow_int(par.t, n - i) * a;
    return z;
}

cx interp_at_grid(const InterpSpec& spec, const PartitionPair& grid_mu, cx grid_a,
                  const EllipticParams& par, const TorusQuadrature& quad, double eps,
                  const PrecisionConfig& cfg) {
    cvec base = shifted_grid(grid_mu, spec.n, grid_a, par);
    auto at = [&](double e) {
        cvec z(base);
        for (size_t i = 0; i < z.size(); ++i)
            z[i] *= 1.0 + e * (1.0 + static_cast<double>(i) / (z.size() + 1.0));
        return interp_fn(spec, z, par, quad, cfg);
    };
    cx v1 = at(eps), v2 = at(eps / 2.0);
    return 2.0 * v2 - v1; // Richardson: kills the O(eps) term of the 0*inf limit
}

cx binomial(const BinomSpec& spec, const EllipticParams& par, const TorusQuadrature& quad,
            const PrecisionConfig& cfg) {
    const cx t = par.t;
    const int n = static_cast<int>(std::max(spec.lam.length(), spec.mu.length()));
    const int nn = std::max(n, 1);
    const cx ra = (spec.sqrt_a != cx(0.0)) ? spec.sqrt_a : sqrt_principal(spec.a);

    cx dlt = delta_symbol(spec.mu,
                          DeltaArgs(spec.a / spec.b, {pow_int(t, nn), 1.0 / spec.b}, par), cfg);
    // z_i = sqrt(a) (p,q)^{lam_i} t^{1-i} is the lam-grid of the shifted parameters
    InterpSpec is(spec.mu, nn, pow_int(t, 1 - nn) * ra, spec.b / ra);
    return dlt * interp_at_grid(is, spec.lam, pow_int(t, 1 - nn) * ra, par, quad, 1e-4, cfg);
}

cx binomial_normalized(const BinomSpec& spec, const EllipticParams& par,
                       const TorusQuadrature& quad, const PrecisionConfig& cfg) {
    cvec blist{spec.b};
    cvec blist2{1.0 / spec.b};
    for (cx v : spec.v_list) {
        blist.push_back(v);
        blist2.push_back(v);
    }
    cx num = delta0(spec.lam, DeltaArgs(spec.a, blist, par), cfg);
    cx den = delta0(spec.mu, DeltaArgs(spec.a / spec.b, blist2, par), cfg);
    if (std::abs(den) < cfg.near_pole_eps) throw pole_error("binomial_normalized");
    return num / den * binomial(spec, par, quad, cfg);
}

// ---------------------------------------------------------------------------

namespace {

cx selberg_integral(int n, const cvec& u, cx tpar, const EllipticParams& par,
                    const TorusQuadrature& quad, const TorusIntegrand& extra,
                    const PrecisionConfig& cfg) {
    DensitySpec spec = DensitySpec::selberg(n, u, par.with_t(tpar));
    TorusIntegrand f = [&](const cvec& z) { return extra(z) * density_eval(spec, z, cfg); };
    TorusQuadrature q2(n, quad.points_per_dim);
    return torus_integrate(f, q2, cfg);
}

} // namespace

CheckReport check_braid(int n, cx c, cx d, cx u0, cx u1, const cvec& x, const cvec& y,
                        const EllipticParams& par, const TorusQuadrature& quad,
                        const PrecisionConfig& cfg) {
    TorusIntegrand kk = [&](const cvec& z) {
        KernelQuery qc(n, c, z, x, par, quad);
        KernelQuery qd(n, d, z, y, par, quad);
        return kernel(qc, cfg) * kernel(qd, cfg);
    };
    cx lhs = selberg_integral(n, {u0, u1}, par.t, par, quad, kk, cfg);
    cx pref = 1.0;
    for (int i = 0; i < n; ++i) {
        pref *= gamma_pm(c * u0, x[static_cast<size_t>(i)], par.p, par.q, cfg) *
                gamma_pm(c * u1, x[static_cast<size_t>(i)], par.p, par.q, cfg);
        pref *= gamma_pm(d * u0, y[static_cast<size_t>(i)], par.p, par.q, cfg) *
                gamma_pm(d * u1, y[static_cast<size_t>(i)], par.p, par.q, cfg);
    }
    KernelQuery qcd(n, c * d, x, y, par, quad);
    cx rhs = pref * kernel(qcd, cfg);
    return {lhs, rhs, rel_err(lhs, rhs)};
}

CheckReport check_bailey(int n, cx v0, cx v1, cx w0, cx w1, cx c, cx d, cx u, const cvec& x,
                         const cvec& y, const EllipticParams& par, const TorusQuadrature& quad,
                         const PrecisionConfig& cfg) {
    TorusIntegrand lhs_f = [&](const cvec& z) {
        return kernel(KernelQuery(n, c, z, x, par, quad), cfg) *
               kernel(KernelQuery(n, d, z, y, par, quad), cfg);
    };
    cx lhs = selberg_integral(n, {v0, v1, w0, w1}, par.t, par, quad, lhs_f, cfg);
    TorusIntegrand rhs_f = [&](const cvec& z) {
        return kernel(KernelQuery(n, c / u, z, x, par, quad), cfg) *
               kernel(KernelQuery(n, d * u, z, y, par, quad), cfg);
    };
    cx rhs = selberg_integral(n, {v0 / u, v1 / u, w0 * u, w1 * u}, par.t, par, quad, rhs_f, cfg);
    cx pref = 1.0;
    for (int i = 0; i < n; ++i) {
        pref *= gamma_pm(c * v0, x[static_cast<size_t>(i)], par.p, par.q, cfg) *
                gamma_pm(c * v1, x[static_cast<size_t>(i)], par.p, par.q, cfg);
        pref *= gamma_pm(d * w0, y[static_cast<size_t>(i)], par.p, par.q, cfg) *
                gamma_pm(d * w1, y[static_cast<size_t>(i)], par.p, par.q, cfg);
    }
    rhs *= pref;
    return {lhs, rhs, rel_err(lhs, rhs)};
}

CheckReport check_commutation(int n, const cvec& u, cx c, cx d, const cvec& x, const cvec& y,
                              const EllipticParams& par, const TorusQuadrature& quad,
                              const PrecisionConfig& cfg) {
    TorusIntegrand lhs_f = [&](const cvec& z) {
        return kernel(KernelQuery(n, c, z, x, par, quad), cfg) *
               kernel(KernelQuery(n, d, z, y, par, quad), cfg);
    };
    cx lhs = selberg_integral(n, u, par.t, par, quad, lhs_f, cfg);
    cvec dual(u.size());
    const cx pq = par.p * par.q;
    for (size_t r = 0; r < u.size(); ++r) dual[r] = pq / (c * d * u[r]);
    TorusIntegrand rhs_f = [&](const cvec& z) {
        return kernel(KernelQuery(n, d, z, x, par, quad), cfg) *
               kernel(KernelQuery(n, c, z, y, par, quad), cfg);
    };
    cx rhs = selberg_integral(n, dual, par.t, par, quad, rhs_f, cfg);
    cx pref = 1.0;
    for (size_t r = 0; r < u.size(); ++r)
        for (int i = 0; i < n; ++i)
            pref *= gamma_pm(d * u[r], y[static_cast<size_t>(i)], par.p, par.q, cfg) *
                    gamma_pm(c * u[r], x[static_cast<size_t>(i)], par.p, par.q, cfg);
    rhs *= pref;
    return {lhs, rhs, rel_err(lhs, rhs)};
}

CheckReport check_t_reflection(int n, cx c, const cvec& x, const cvec& y,
                               const EllipticParams& par, const TorusQuadrature& quad,
                               const PrecisionConfig& cfg) {
    EllipticParams refl = par.with_t(par.p * par.q / par.t);
    cx lhs = kernel(KernelQuery(n, c, x, y, refl, quad), cfg);
    cx rhs = kernel(KernelQuery(n, c, x, y, par, quad), cfg);
    rhs *= pow_int(elliptic_gamma(par.t, par, cfg), 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            rhs *= gamma_pmpm(par.t, x[static_cast<size_t>(i)], x[static_cast<size_t>(j)], par.p,
                              par.q, cfg) *
                   gamma_pmpm(par.t, y[static_cast<size_t>(i)], y[static_cast<size_t>(j)], par.p,
                              par.q, cfg);
    return {lhs, rhs, rel_err(lhs, rhs)};
}

CheckReport check_F4(int n, cx c, const cvec& u, const EllipticParams& par,
                     const TorusQuadrature& quad, const PrecisionConfig& cfg) {
    if (u.size() != 4) throw std::invalid_argument("check_F4: need 4 parameters");
    const cx s = sqrt_principal(par.p * par.q / c);
    auto eval = [&](const cvec& ur) {
        cvec params;
        for (cx w : ur) {
            params.push_back(w * s);
            params.push_back(s / w);
        }
        TorusIntegrand f = [&](const cvec& z) {
            return kernel(KernelQuery(n, c, z, z, par, quad), cfg);
        };
        return selberg_integral(n, params, par.t, par, quad, f, cfg);
    };
    cx lhs = eval(u);
    cx s0 = sqrt_principal(u[0] * u[1] * u[2] * u[3]);
    cvec mapped(u.size());
    for (size_t r = 0; r < u.size(); ++r) mapped[r] = u[r] / s0;
    cx rhs = eval(mapped);
    return {lhs, rhs, rel_err(lhs, rhs)};
}

CheckReport check_kadell(int n, cx c, const cvec& u, const cvec& x, const EllipticParams& par,
                         const TorusQuadrature& quad, const PrecisionConfig& cfg) {
    TorusIntegrand f = [&](const cvec& z) {
        return kernel(KernelQuery(n, c, z, x, par, quad), cfg);
    };
    cx lhs = selberg_integral(n, u, par.t, par, quad, f, cfg);
    cx rhs = 1.0;
    for (int i = 1; i <= n; ++i) {
        cx ti = pow_int(par.t, n - i);
        for (size_t r = 0; r < u.size(); ++r)
            for (size_t s = r + 1; s < u.size(); ++s)
                rhs *= elliptic_gamma(ti * u[r] * u[s], par, cfg);
        for (size_t r = 0; r < u.size(); ++r)
            rhs *= gamma_pm(c * u[r], x[static_cast<size_t>(i - 1)], par.p, par.q, cfg);
    }
    return {lhs, rhs, rel_err(lhs, rhs)};
}

cx formal_sum_partial(int n, cx c, const cvec& x, const cvec& y, cx t0, cx u0, long max_weight,
                      const EllipticParams& par, const TorusQuadrature& quad,
                      const PrecisionConfig& cfg) {
    const cx t = par.t, p = par.p, q = par.q;
    const cx tn1 = pow_int(t, n - 1);

    cx pref = 1.0;
    for (int i = 1; i <= n; ++i) {
        cx xi = x[static_cast<size_t>(i - 1)], yi = y[static_cast<size_t>(i - 1)];
        pref *= gamma_pm(c * u0, xi, p, q, cfg) * gamma_pm(c / (tn1 * u0), xi, p, q, cfg);
        pref *= gamma_pm(c * t0, yi, p, q, cfg) * gamma_pm(c / (tn1 * t0), yi, p, q, cfg);
        cx den = elliptic_gamma(
            {c * pow_int(t, n - i) * t0 * u0, c * pow_int(t, 1 - i) * u0 / t0,
             c * pow_int(t, i + 1 - 2 * n) / (t0 * u0), c * pow_int(t, i - n) * t0 / u0,
             pow_int(t, i - n) * c * c, pow_int(t, i)},
            p, q, cfg);
        if (std::abs(den) < cfg.near_pole_eps) throw pole_error("formal_sum_partial: prefactor");
        pref /= den;
    }

    cx sum = 0.0;
    const cx delta_a = pow_int(t, 2 * n - 2) * t0 * u0 / c;
    const cvec delta_b{pow_int(t, n), tn1 * p * q / (c * c)};
    for (const Partition& mu : partitions_up_to(max_weight, static_cast<size_t>(n))) {
        cx term = delta_elliptic(mu, delta_a, delta_b, q, t, p, cfg);
        term *= interp_q(mu, n, t0, c / (tn1 * u0), x, par, quad, cfg);
        term *= interp_q(mu, n, u0, c / (tn1 * t0), y, par, quad, cfg);
        sum += term;
    }
    return pref * sum;
}

} // namespace ellkern
