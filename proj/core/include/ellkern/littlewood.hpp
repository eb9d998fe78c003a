#ifndef ELLKERN_LITTLEWOOD_HPP
#define ELLKERN_LITTLEWOOD_HPP

#include "ellkern/kernel.hpp"

namespace ellkern {

// Littlewood (L), dual Littlewood (Lprime) and Kawanaka (Lminus) kernels as
// defining torus integrals of the interpolation kernel, plus their closed
// special cases and the quadratic-transformation checks built from them.

enum class LittlewoodFamily { L, Lprime, Lminus };

struct LittlewoodQuery {
    LittlewoodFamily family;
    int size; // 2n for L, n otherwise
    cx c;
    cvec x;
    cx v; // auxiliary parameter of the defining integral
    EllipticParams params;
    TorusQuadrature quad;
};

cx littlewood_eval(const LittlewoodQuery& q, const PrecisionConfig& cfg = default_precision());

enum class LittlewoodCase {
    litt_n2,          // L^(2)_c closed form
    litt_geometric,   // x = (t^{2n-1} v, ..., v)
    litt_pqt_quarter, // c = (pqt)^{1/4} product
    litt_sqrt_pq_over_t,
    litt_t,          // c = t
    litt_q_quarter_t, // c = q^{-1/4} t
    litt_t_sqrtm1,    // c = t sqrt(-1)
    litt_pt_quarter_pf, // c = (pt)^{1/4} pfaffian
    litt_tq_pfaffian,   // t = q pfaffian of L^(2) blocks
    dual_n1,
    dual_geometric,
    dual_c1,
    dual_prod,     // c = (p/qt)^{1/4}
    dual_q3,       // c = q^{-1/2} t^{1/4}
    dual_sqrt_pq_over_t,
    kaw_geometric,
    kaw_pq_over_t,
    kaw_prod, // c = -(pq/t)^{1/2} at -t
    kaw_q7,   // c = t^{1/2}
};

// literal closed forms; `aux` carries the geometric base where applicable
cx littlewood_closed(LittlewoodCase lc, int size, cx c, const cvec& x, const EllipticParams& par,
                     const TorusQuadrature& quad, cx aux = cx(0.0),
                     const PrecisionConfig& cfg = default_precision());

// branching rule for the Littlewood kernel; lhs_closed selects a closed-form
// route for L^(2n)_c on the left (required for 2n = 4)
CheckReport check_litt_branching(int size2n, cx c, const cvec& x, cx v, bool lhs_closed,
                                 const EllipticParams& par, const TorusQuadrature& quad,
                                 const PrecisionConfig& cfg = default_precision());

// ---------------------------------------------------------------------------
// quadratic-transformation checks; each draws its own balanced parameters via
// the harness sampler and reports the relative residual of the stated display

struct QuadDraw {
    cvec values; // case-specific parameter slots, documented per check
    cvec x;      // spectator variables on the torus
};

CheckReport check_L1(int n, const QuadDraw& d, const EllipticParams& par,
                     const TorusQuadrature& quad, const PrecisionConfig& cfg = default_precision());
CheckReport check_L2(int n, const QuadDraw& d, const EllipticParams& par,
                     const TorusQuadrature& quad, const PrecisionConfig& cfg = default_precision());
CheckReport check_L3(int n, const QuadDraw& d, const EllipticParams& par,
                     const TorusQuadrature& quad, const PrecisionConfig& cfg = default_precision());
CheckReport check_Q1lemma(int size2n, const QuadDraw& d, const EllipticParams& par,
                          const TorusQuadrature& quad,
                          const PrecisionConfig& cfg = default_precision());
CheckReport check_Q2(int n, const QuadDraw& d, const EllipticParams& par,
                     const TorusQuadrature& quad, const PrecisionConfig& cfg = default_precision());
CheckReport check_Q3(int n, const QuadDraw& d, const EllipticParams& par,
                     const TorusQuadrature& quad, const PrecisionConfig& cfg = default_precision());
CheckReport check_Q3eval(int n, const QuadDraw& d, const EllipticParams& par,
                         const TorusQuadrature& quad,
                         const PrecisionConfig& cfg = default_precision());
CheckReport check_Q5lemma(int n, const QuadDraw& d, const EllipticParams& par,
                          const TorusQuadrature& quad,
                          const PrecisionConfig& cfg = default_precision());
CheckReport check_Q6(const QuadDraw& d, const EllipticParams& par, const TorusQuadrature& quad,
                     const PrecisionConfig& cfg = default_precision());
CheckReport check_Q7(int n, const QuadDraw& d, const EllipticParams& par,
                     const TorusQuadrature& quad, const PrecisionConfig& cfg = default_precision());
CheckReport check_quad_litt(int size2n, const QuadDraw& d, const EllipticParams& par,
                            const TorusQuadrature& quad,
                            const PrecisionConfig& cfg = default_precision());
CheckReport check_litt_braid(int size2n, const QuadDraw& d, const EllipticParams& par,
                             const TorusQuadrature& quad,
                             const PrecisionConfig& cfg = default_precision());
CheckReport check_weird_quad(int size2n, const QuadDraw& d, const EllipticParams& par,
                             const TorusQuadrature& quad,
                             const PrecisionConfig& cfg = default_precision());
CheckReport check_spec_int_litt(int size2n, const QuadDraw& d, const EllipticParams& par,
                                const TorusQuadrature& quad,
                                const PrecisionConfig& cfg = default_precision());
CheckReport check_spec_spec_int_litt(int size2n, const QuadDraw& d, const EllipticParams& par,
                                     const TorusQuadrature& quad,
                                     const PrecisionConfig& cfg = default_precision());
CheckReport check_litt_diff(int size2n, const QuadDraw& d, const EllipticParams& par,
                            const PrecisionConfig& cfg = default_precision());
CheckReport check_quad_dual_litt(int n, const QuadDraw& d, const EllipticParams& par,
                                 const TorusQuadrature& quad,
                                 const PrecisionConfig& cfg = default_precision());
CheckReport check_dual_litt_recur(int n, const QuadDraw& d, const EllipticParams& par,
                                  const TorusQuadrature& quad,
                                  const PrecisionConfig& cfg = default_precision());
CheckReport check_dual_litt_formal_in_q(int n, const QuadDraw& d, const EllipticParams& par,
                                        const TorusQuadrature& quad,
                                        const PrecisionConfig& cfg = default_precision());
CheckReport check_dual_litt_pre_van(int n, const QuadDraw& d, const EllipticParams& par,
                                    const TorusQuadrature& quad,
                                    const PrecisionConfig& cfg = default_precision());
CheckReport check_dual_v_swap(int n, const QuadDraw& d, const EllipticParams& par,
                              const TorusQuadrature& quad,
                              const PrecisionConfig& cfg = default_precision());
CheckReport check_spec_diff_dual_litt(int n, const QuadDraw& d, const EllipticParams& par,
                                      const PrecisionConfig& cfg = default_precision());
CheckReport check_quad_kaw(int n, const QuadDraw& d, const EllipticParams& par,
                           const TorusQuadrature& quad,
                           const PrecisionConfig& cfg = default_precision());
CheckReport check_kaw_weird(int n, const QuadDraw& d, const EllipticParams& par,
                            const TorusQuadrature& quad,
                            const PrecisionConfig& cfg = default_precision());
CheckReport check_closing_pq_swap(int n, const QuadDraw& d, const EllipticParams& par,
                                  const TorusQuadrature& quad,
                                  const PrecisionConfig& cfg = default_precision());
CheckReport check_closing_even(int n, const QuadDraw& d, const EllipticParams& par,
                               const TorusQuadrature& quad,
                               const PrecisionConfig& cfg = default_precision());
CheckReport check_closing_odd(const QuadDraw& d, const EllipticParams& par,
                              const TorusQuadrature& quad,
                              const PrecisionConfig& cfg = default_precision());
CheckReport check_closing_sqrtm1(int n, int variant, const QuadDraw& d, const EllipticParams& par,
                                 const TorusQuadrature& quad,
                                 const PrecisionConfig& cfg = default_precision());

// ---------------------------------------------------------------------------
// vanishing integrals (interpolation-function versions)

struct VanishReport {
    cx value;
    double scale;    // integral of |integrand|
    cx expected;     // Delta-ratio times Z for admissible lambda, 0 otherwise
    double residual; // |value-expected| relative to max(|expected|, scale)
};

// Thm van_litt_interp at 2n = 2: t^{2n} t0 u0 = 1
VanishReport check_van_litt_interp(const PartitionPair& lam, cx t0, cx d, cx v,
                                   const EllipticParams& par, const TorusQuadrature& quad,
                                   const PrecisionConfig& cfg = default_precision());

// Thm van_dual_litt_interp at n = 1, 2: t^{n-1} t0 u0 = q (d fixed to t^{1/4}
// so the dual kernel in the integrand is closed)
VanishReport check_van_dual_litt_interp(int n, const PartitionPair& lam, cx t0, cx v,
                                        const EllipticParams& par, const TorusQuadrature& quad,
                                        const PrecisionConfig& cfg = default_precision());

// ---------------------------------------------------------------------------
// theta pfaffian identities

// eq fund_ident_IK: the 2 * 2^{2n}-term reflection sum vanishes
struct SumReport {
    cx value;
    double term_scale;
    double residual;
};
SumReport check_fund_ident(int size2n, cx v, const cvec& x, cx q, cx t, cx p,
                           const PrecisionConfig& cfg = default_precision());

// t = p^{1/3} factorization of the theta pfaffian into a squared determinant
CheckReport check_cube_factorization(int size2n, const cvec& x, cx p,
                                     const PrecisionConfig& cfg = default_precision());

// Okada-type rational identity in exact arithmetic (see docs for the
// normalization); returns true when both sides agree exactly
bool okada_rational_identity(const std::vector<std::pair<long, long>>& y_rat,
                             const std::vector<std::pair<long, long>>& z_rat);

} // namespace ellkern

#endif
