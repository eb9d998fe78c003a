#include "ellkern/diffops.hpp"

#include <cmath>
#include <memory>

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

long weight(const MultiIndex& k) {
    long w = 0;
    for (long v : k) w += v;
    return w;
}

std::vector<MultiIndex> indices_up_to(int n, long M) {
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<size_t>(n), 0);
    std::function<void(int, long)> rec = [&](int pos, long left) {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (long v = 0; v <= left; ++v) {
            cur[static_cast<size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
        cur[static_cast<size_t>(pos)] = 0;
    };
    rec(0, M);
    return out;
}

} // namespace

cx diff_weight(const DiffOpSpec& spec, const std::vector<int>& sigma, const cvec& x,
               const PrecisionConfig& cfg) {
    const cx p = spec.params.p, t = spec.params.t;
    const int n = spec.n;
    auto xs = [&](int i) {
        return sigma[static_cast<size_t>(i)] > 0 ? x[static_cast<size_t>(i)]
                                                 : 1.0 / x[static_cast<size_t>(i)];
    };
    cx w = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) w *= theta(t * xs(i) * xs(j), p, cfg);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            cx den = theta(xs(i) * xs(j), p, cfg);
            if (std::abs(den) < cfg.near_pole_eps) throw pole_error("diff_weight: theta");
            w /= den;
        }
    for (cx u : spec.u_list)
        for (int i = 0; i < n; ++i) w *= theta(u * xs(i), p, cfg);
    return w;
}

cx apply_D(const DiffOpSpec& spec, const NFunction& f, const cvec& x, const PrecisionConfig& cfg) {
    if (spec.u_list.size() % 2 != 0)
        throw std::invalid_argument("apply_D: u_list must have even length");
    const int n = spec.n;
    const cx sq = sqrt_principal(spec.params.q);
    cx total = 0.0;
    std::vector<int> sigma(static_cast<size_t>(n), -1);
    for (long mask = 0; mask < (1L << n); ++mask) {
        for (int i = 0; i < n; ++i) sigma[static_cast<size_t>(i)] = (mask >> i) & 1 ? 1 : -1;
        cvec xs(x);
        for (int i = 0; i < n; ++i)
            xs[static_cast<size_t>(i)] =
                sigma[static_cast<size_t>(i)] > 0 ? x[static_cast<size_t>(i)] * sq
                                                  : x[static_cast<size_t>(i)] / sq;
        total += diff_weight(spec, sigma, x, cfg) * f(xs);
    }
    return total;
}

cx FormalDiffOp::coeff(const MultiIndex& k, const cvec& x) const {
    auto it = coeffs.find(k);
    if (it == coeffs.end()) {
        if (exact || weight(k) > order) return 0.0;
        throw std::out_of_range("FormalDiffOp: coefficient beyond stored order");
    }
    return it->second(x);
}

FormalDiffOp FormalDiffOp::one(int n) {
    FormalDiffOp op;
    op.n = n;
    op.grade = 1.0;
    op.order = 0;
    op.exact = true;
    op.coeffs[MultiIndex(static_cast<size_t>(n), 0)] = [](const cvec&) { return cx(1.0); };
    return op;
}

FormalDiffOp FormalDiffOp::multiplication(int n, NFunction f) {
    FormalDiffOp op;
    op.n = n;
    op.grade = 1.0;
    op.order = 0;
    op.exact = true;
    op.coeffs[MultiIndex(static_cast<size_t>(n), 0)] = std::move(f);
    return op;
}

cx formal_leading_coeff(int n, cx c, const cvec& x, const EllipticParams& par,
                        const PrecisionConfig& cfg) {
    cx r = 1.0;
    const cx c2 = c * c;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            cx xx = x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
            r *= elliptic_gamma(1.0 / xx, par, cfg) / elliptic_gamma(1.0 / (c2 * xx), par, cfg);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            cx xx = x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
            r *= elliptic_gamma(par.t / (c2 * xx), par, cfg) /
                 elliptic_gamma(par.t / xx, par, cfg);
        }
    return r;
}

FormalDiffOp formal_coeffs(int n, cx c, long M, const EllipticParams& par,
                           const PrecisionConfig& cfg) {
    FormalDiffOp op;
    op.n = n;
    op.grade = c;
    op.order = M;

    // degenerate branch: c^2 in p^Z makes the operator a pure
    // multiplication-shift
    {
        cx w = c * c;
        for (int k = 0; k <= 40 && std::abs(w) < 1.5; ++k) {
            if (std::abs(w - 1.0) < 1e-12) {
                op.exact = true;
                op.coeffs[MultiIndex(static_cast<size_t>(n), 0)] = [n, c, par, cfg](const cvec& x) {
                    return formal_leading_coeff(n, c, x, par, cfg);
                };
                return op;
            }
            w /= par.p;
        }
        w = c * c * par.p;
        for (int k = 0; k <= 40 && std::abs(w) < 1.5; ++k) {
            if (std::abs(w - 1.0) < 1e-12) {
                op.exact = true;
                op.coeffs[MultiIndex(static_cast<size_t>(n), 0)] = [n, c, par, cfg](const cvec& x) {
                    return formal_leading_coeff(n, c, x, par, cfg);
                };
                return op;
            }
            w *= par.p;
        }
    }

    // W_sigma(x'; u) of D_q(uc, pc/u; t; p) with x' = q^k c x and u = x_n
    auto W = [n, c, par, cfg](const std::vector<int>& sigma, const MultiIndex& k, const cvec& x,
                              const PrecisionConfig& prec) {
        cvec xp(x);
        for (int i = 0; i < n; ++i)
            xp[static_cast<size_t>(i)] =
                pow_int(par.q, k[static_cast<size_t>(i)]) * c * x[static_cast<size_t>(i)];
        DiffOpSpec dspec{n, {x[static_cast<size_t>(n - 1)] * c,
                             par.p * c / x[static_cast<size_t>(n - 1)]},
                         par};
        (void)cfg;
        return diff_weight(dspec, sigma, xp, prec);
    };

    // shared table so the recursive closures survive copies of the operator
    auto table = std::make_shared<std::map<MultiIndex, NFunction>>();
    (*table)[MultiIndex(static_cast<size_t>(n), 0)] = [n, c, par, cfg](const cvec& x) {
        return formal_leading_coeff(n, c, x, par, cfg);
    };

    for (const MultiIndex& m : indices_up_to(n, M)) {
        if (weight(m) == 0) continue;
        // F_m(x) = -[sum over e != 0, e <= min(m,1)] F_{m-e}(x) W_{sigma(e)}(q^{m-e} c x) / W_-
        (*table)[m] = [n, m, table, W, cfg](const cvec& x) -> cx {
            std::vector<int> sigma(static_cast<size_t>(n), -1);
            cx acc = 0.0;
            for (long mask = 1; mask < (1L << n); ++mask) {
                MultiIndex k(m);
                bool ok = true;
                for (int i = 0; i < n; ++i) {
                    if ((mask >> i) & 1) {
                        sigma[static_cast<size_t>(i)] = 1;
                        if (--k[static_cast<size_t>(i)] < 0) ok = false;
                    } else {
                        sigma[static_cast<size_t>(i)] = -1;
                    }
                }
                if (ok) acc += table->at(k)(x) * W(sigma, k, x, cfg);
                for (int i = 0; i < n; ++i) sigma[static_cast<size_t>(i)] = -1;
            }
            cx pivot = W(sigma, m, x, cfg);
            if (std::abs(pivot) < cfg.near_pole_eps)
                throw pole_error("formal_coeffs: vanishing recurrence pivot");
            return -acc / pivot;
        };
    }
    op.coeffs = *table;
    return op;
}

FormalDiffOp as_formal(const DiffOpSpec& spec, const PrecisionConfig& cfg) {
    FormalDiffOp op;
    op.n = spec.n;
    op.grade = 1.0 / sqrt_principal(spec.params.q);
    op.order = 1;
    op.exact = true;
    for (long mask = 0; mask < (1L << spec.n); ++mask) {
        MultiIndex k(static_cast<size_t>(spec.n), 0);
        std::vector<int> sigma(static_cast<size_t>(spec.n), -1);
        for (int i = 0; i < spec.n; ++i)
            if ((mask >> i) & 1) {
                k[static_cast<size_t>(i)] = 1;
                sigma[static_cast<size_t>(i)] = 1;
            }
        op.coeffs[k] = [spec, sigma, cfg](const cvec& x) { return diff_weight(spec, sigma, x, cfg); };
    }
    // D_q shifts every variable by q^{+-1/2}: grade q^{-1/2}, with T_i^{k_i}
    // covering the + shifts; order = n in principle, but each k_i <= 1
    op.order = spec.n;
    return op;
}

FormalDiffOp compose_formal(const FormalDiffOp& A, const FormalDiffOp& B,
                            const EllipticParams& par) {
    if (A.n != B.n) throw std::invalid_argument("compose_formal: dimension mismatch");
    const long availA = A.exact ? -1 : A.order;
    const long availB = B.exact ? -1 : B.order;
    long out_order;
    bool out_exact = false;
    if (availA < 0 && availB < 0) {
        out_order = A.order + B.order;
        out_exact = true;
    } else if (availA < 0) {
        out_order = availB;
    } else if (availB < 0) {
        out_order = availA;
    } else {
        out_order = std::min(availA, availB);
    }
    if (out_order < 0) throw budget_error("compose_formal: order overflow");

    FormalDiffOp C;
    C.n = A.n;
    C.grade = A.grade * B.grade;
    C.order = out_order;
    C.exact = out_exact;
    const cx q = par.q;
    // capture copies of A and B via shared_ptr so the closures stay valid
    auto pa = std::make_shared<FormalDiffOp>(A);
    auto pb = std::make_shared<FormalDiffOp>(B);
    for (const MultiIndex& m : indices_up_to(A.n, out_order)) {
        C.coeffs[m] = [m, pa, pb, q](const cvec& x) -> cx {
            cx acc = 0.0;
            const int n = pa->n;
            // sum over k <= m componentwise: F_k(x) G_{m-k}(q^k grade_A x)
            MultiIndex k(static_cast<size_t>(n), 0);
            std::function<void(int)> rec = [&](int pos) {
                if (pos == n) {
                    cvec xs(x);
                    for (int i = 0; i < n; ++i)
                        xs[static_cast<size_t>(i)] = pow_int(q, k[static_cast<size_t>(i)]) *
                                                     pa->grade * x[static_cast<size_t>(i)];
                    MultiIndex l(m);
                    for (int i = 0; i < n; ++i) l[static_cast<size_t>(i)] -= k[static_cast<size_t>(i)];
                    acc += pa->coeff(k, x) * pb->coeff(l, xs);
                    return;
                }
                for (long v = 0; v <= m[static_cast<size_t>(pos)]; ++v) {
                    k[static_cast<size_t>(pos)] = v;
                    rec(pos + 1);
                }
                k[static_cast<size_t>(pos)] = 0;
            };
            rec(0);
            return acc;
        };
    }
    return C;
}

std::vector<cvec> coefficient_panel(int n, unsigned seed, int count) {
    std::vector<cvec> panel;
    unsigned long long s = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    auto next = [&s]() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(s >> 11) / 9007199254740992.0;
    };
    for (int i = 0; i < count; ++i) {
        cvec x(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            double mod = 0.85 + 0.3 * next();
            double ang = 6.283185307179586 * next();
            x[static_cast<size_t>(j)] = cx(mod * std::cos(ang), mod * std::sin(ang));
        }
        panel.push_back(x);
    }
    return panel;
}

double op_distance(const FormalDiffOp& A, const FormalDiffOp& B, long order,
                   const std::vector<cvec>& panel) {
    if (std::abs(A.grade - B.grade) >
        1e-10 * std::max(1.0, std::max(std::abs(A.grade), std::abs(B.grade))))
        throw std::invalid_argument("op_distance: grade mismatch (words inconsistent)");
    double worst = 0.0;
    for (const MultiIndex& k : indices_up_to(A.n, order)) {
        for (const cvec& x : panel) {
            cx a = A.coeff(k, x), b = B.coeff(k, x);
            double scale = std::max({std::abs(a), std::abs(b), 1e-30});
            worst = std::max(worst, std::abs(a - b) / scale);
        }
    }
    return worst;
}

OpReport invert_check(int n, cx c, long M, const EllipticParams& par, const PrecisionConfig& cfg) {
    FormalDiffOp A = formal_coeffs(n, c, M, par, cfg);
    FormalDiffOp B = formal_coeffs(n, 1.0 / c, M, par, cfg);
    auto panel = coefficient_panel(n);
    double worst = 0.0;
    for (const MultiIndex& m : indices_up_to(n, M)) {
        for (const cvec& x : panel) {
            // C_m(x) = sum_{k <= m} A_k(x) B_{m-k}(q^k c x); deviation from the
            // identity is measured against the cancellation scale of the sum
            cx acc = 0.0;
            double scale = 0.0;
            MultiIndex k(static_cast<size_t>(n), 0);
            std::function<void(int)> rec = [&](int pos) {
                if (pos == n) {
                    cvec xs(x);
                    for (int i = 0; i < n; ++i)
                        xs[static_cast<size_t>(i)] =
                            pow_int(par.q, k[static_cast<size_t>(i)]) * c * x[static_cast<size_t>(i)];
                    MultiIndex l(m);
                    for (int i = 0; i < n; ++i)
                        l[static_cast<size_t>(i)] -= k[static_cast<size_t>(i)];
                    cx term = A.coeff(k, x) * B.coeff(l, xs);
                    acc += term;
                    scale += std::abs(term);
                    return;
                }
                for (long v = 0; v <= m[static_cast<size_t>(pos)]; ++v) {
                    k[static_cast<size_t>(pos)] = v;
                    rec(pos + 1);
                }
                k[static_cast<size_t>(pos)] = 0;
            };
            rec(0);
            if (weight(m) == 0) acc -= 1.0;
            if (scale == 0.0) scale = 1.0;
            worst = std::max(worst, std::abs(acc) / scale);
        }
    }
    return {worst};
}

cx apply_formal(const FormalDiffOp& op, const NFunction& f, const cvec& x, cx q_base) {
    cx total = 0.0;
    for (const auto& [k, coeff] : op.coeffs) {
        cvec xs(x);
        for (size_t i = 0; i < xs.size(); ++i)
            xs[i] = pow_int(q_base, k[i]) * op.grade * x[i];
        total += coeff(x) * f(xs);
    }
    return total;
}

// ---------------------------------------------------------------------------

GroupElement act(Generator g, const GroupElement& pt) {
    GroupElement r(pt);
    switch (g) {
    case Generator::sD:
        r[0] = 1.0 / pt[0];
        r[1] = pt[1] * pt[0];
        break;
    case Generator::sGamma:
        r[0] = pt[0] * pt[1];
        r[1] = 1.0 / pt[1];
        if (pt.size() > 3) r[3] = pt[3] * pt[1];
        break;
    case Generator::s1:
        r[2] = 1.0 / pt[2];
        if (pt.size() > 3) r[3] = pt[3] * pt[2];
        break;
    case Generator::s2:
        r[1] = pt[1] * pt[3];
        r[2] = pt[2] * pt[3];
        r[3] = 1.0 / pt[3];
        if (pt.size() > 4) r[4] = pt[4] * pt[3];
        break;
    case Generator::s3:
        r[3] = pt[3] * pt[4];
        r[4] = 1.0 / pt[4];
        if (pt.size() > 5) r[5] = pt[5] * pt[4];
        break;
    }
    return r;
}

FormalDiffOp generator_op(const CocycleGroup& grp, Generator g, const GroupElement& pt,
                          const PrecisionConfig& cfg) {
    switch (g) {
    case Generator::sD:
        return formal_coeffs(grp.n, pt[0], grp.order, grp.params, cfg);
    case Generator::sGamma: {
        const cx rpq = sqrt_principal(grp.params.p * grp.params.q);
        const cx u = pt[1], v1 = pt[2];
        const auto par = grp.params;
        const int n = grp.n;
        return FormalDiffOp::multiplication(n, [rpq, u, v1, par, cfg, n](const cvec& x) {
            cx r = 1.0;
            for (int i = 0; i < n; ++i) {
                cx g1 = gamma_pm(rpq * u * v1, x[static_cast<size_t>(i)], par.p, par.q, cfg);
                cx g2 = gamma_pm(rpq * u / v1, x[static_cast<size_t>(i)], par.p, par.q, cfg);
                if (std::abs(g1 * g2) < cfg.near_pole_eps)
                    throw pole_error("cocycle sGamma: Gamma pole");
                r /= g1 * g2;
            }
            return r;
        });
    }
    default:
        return FormalDiffOp::one(grp.n);
    }
}

FormalDiffOp word_op(const CocycleGroup& grp, const std::vector<Generator>& word,
                     const GroupElement& pt, const PrecisionConfig& cfg) {
    // D_{w_1 ... w_k}(g) = D_{w_1}(w_2 ... w_k g) * ... * D_{w_k}(g)
    std::vector<GroupElement> pts(word.size() + 1);
    pts[word.size()] = pt;
    for (size_t i = word.size(); i-- > 0;) pts[i] = act(word[i], pts[i + 1]);
    FormalDiffOp acc = FormalDiffOp::one(grp.n);
    bool first = true;
    for (size_t i = 0; i < word.size(); ++i) {
        FormalDiffOp op = generator_op(grp, word[i], pts[i + 1], cfg);
        acc = first ? op : compose_formal(acc, op, grp.params);
        first = false;
    }
    return acc;
}

} // namespace ellkern
