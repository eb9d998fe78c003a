#ifndef ELLKERN_KERNEL_HPP
#define ELLKERN_KERNEL_HPP

#include "ellkern/densities.hpp"
#include "ellkern/partition.hpp"
#include "ellkern/symbols.hpp"

namespace ellkern {

// Interpolation kernel K^(n)_c(x; y; t; p, q), defined inductively by the
// (n-1)-dimensional torus integral; closed forms are routed automatically when
// the query matches one (geometric progressions, t = q, c = sqrt(pq/t),
// c = sqrt(t)) unless force_recursion is set.
struct KernelQuery {
    int n;
    cx c;
    cvec x;
    cvec y;
    EllipticParams params;
    TorusQuadrature quad;
    bool force_recursion = false;
    // keep the given x/y slot assignment (closed-form routes stay active)
    bool fixed_orientation = false;

    KernelQuery(int n_, cx c_, cvec x_, cvec y_, EllipticParams par, TorusQuadrature q_)
        : n(n_), c(c_), x(std::move(x_)), y(std::move(y_)), params(par), quad(q_) {}
};

cx kernel(const KernelQuery& q, const PrecisionConfig& cfg = default_precision());

enum class KernelCase {
    c_sqrt_pq_over_t, // product over Gamma((pq/t)^{1/2} x_i^{+-1} y_j^{+-1})
    c_sqrt_t,         // product/quotient form
    t_equals_q_det,   // theta-determinant
    c_sqrt_p_over_t_det,
    geometric_y, // y_i = t^{n-i} a
};

// literal closed forms; case preconditions are checked against the query
cx kernel_closed_form(KernelCase kc, const KernelQuery& q,
                      const PrecisionConfig& cfg = default_precision());

// geometric evaluation with explicit base: K^(n)_c(x; ..., t^{n-i} a, ...)
cx kernel_geometric(int n, cx c, const cvec& x, cx a, const EllipticParams& par,
                    const PrecisionConfig& cfg = default_precision());

// ---------------------------------------------------------------------------
// interpolation functions through kernel specialization

struct InterpSpec {
    PartitionPair pair; // (lambda, mu): p-shifts and q-shifts
    int n;
    cx a;
    cx b;
    InterpSpec(PartitionPair pr, int n_, cx a_, cx b_)
        : pair(std::move(pr)), n(n_), a(a_), b(b_) {}
};

// R*^(n)_{lambda,mu}(z; a, b; t; p, q)
cx interp_fn(const InterpSpec& spec, const cvec& z, const EllipticParams& par,
             const TorusQuadrature& quad, const PrecisionConfig& cfg = default_precision());

// single q-partition elliptic variant R*^(n)_mu(z; a, b; q, t; p)
inline cx interp_q(const Partition& mu, int n, cx a, cx b, const cvec& z,
                   const EllipticParams& par, const TorusQuadrature& quad,
                   const PrecisionConfig& cfg = default_precision()) {
    return interp_fn(InterpSpec(PartitionPair::q_only(mu), n, a, b), z, par, quad, cfg);
}

// the mu-shifted grid z_i = (p,q)^{mu_i} t^{n-i} a based at a
cvec shifted_grid(const PartitionPair& mu, int n, cx a, const EllipticParams& par);

// interpolation function evaluated at a shifted grid.  The kernel
// specialization degenerates to 0*inf exactly on the grid, so the value is
// obtained by Richardson extrapolation along a multiplicative perturbation.
cx interp_at_grid(const InterpSpec& spec, const PartitionPair& grid_mu, cx grid_a,
                  const EllipticParams& par, const TorusQuadrature& quad,
                  double eps = 1e-4, const PrecisionConfig& cfg = default_precision());

struct BinomSpec {
    PartitionPair lam;
    PartitionPair mu;
    cx a;
    cx b;
    cvec v_list; // extra parameters of the normalized variant
    cx sqrt_a;   // chosen square root (the value is independent of the choice)
};

// elliptic binomial coefficient (lam over mu)_{[a,b];t;p,q}
cx binomial(const BinomSpec& spec, const EllipticParams& par, const TorusQuadrature& quad,
            const PrecisionConfig& cfg = default_precision());
// normalized variant <lam over mu>_{[a,b](v_1..v_k);t;p,q}
cx binomial_normalized(const BinomSpec& spec, const EllipticParams& par,
                       const TorusQuadrature& quad,
                       const PrecisionConfig& cfg = default_precision());

// ---------------------------------------------------------------------------
// identity checks (each returns lhs, rhs, relative residual)

struct CheckReport {
    cx lhs;
    cx rhs;
    double residual;
};

// int K_c(z;x) K_d(z;y) DS(z;u0,u1;t) = Gamma-prefactor * K_{cd}(x;y),
// u0 u1 = pq/(c d)^2
CheckReport check_braid(int n, cx c, cx d, cx u0, cx u1, const cvec& x, const cvec& y,
                        const EllipticParams& par, const TorusQuadrature& quad,
                        const PrecisionConfig& cfg = default_precision());

// Bailey transform, u^2 = v0 v1 c^2/pq = pq/(d^2 w0 w1)
CheckReport check_bailey(int n, cx v0, cx v1, cx w0, cx w1, cx c, cx d, cx u, const cvec& x,
                         const cvec& y, const EllipticParams& par, const TorusQuadrature& quad,
                         const PrecisionConfig& cfg = default_precision());

// commutation, u0 u1 u2 u3 c^2 d^2 = (pq)^2
CheckReport check_commutation(int n, const cvec& u, cx c, cx d, const cvec& x, const cvec& y,
                              const EllipticParams& par, const TorusQuadrature& quad,
                              const PrecisionConfig& cfg = default_precision());

// K(.;pq/t) = Gamma(t)^{2n} prod Gamma(t x^~; t y^~) K(.;t)
CheckReport check_t_reflection(int n, cx c, const cvec& x, const cvec& y,
                               const EllipticParams& par, const TorusQuadrature& quad,
                               const PrecisionConfig& cfg = default_precision());

// W(F4) symmetry of int K_c(z;z) DS(z; u_r^{+-1} sqrt(pq/c))
CheckReport check_F4(int n, cx c, const cvec& u, const EllipticParams& par,
                     const TorusQuadrature& quad,
                     const PrecisionConfig& cfg = default_precision());

// Kadell-type integral, t^{n-1} u0 u1 u2 u3 = pq/c^2
CheckReport check_kadell(int n, cx c, const cvec& u, const cvec& x, const EllipticParams& par,
                         const TorusQuadrature& quad,
                         const PrecisionConfig& cfg = default_precision());

// ---------------------------------------------------------------------------
// truncated formal kernel sum (section-2 definition), for small |p|

cx formal_sum_partial(int n, cx c, const cvec& x, const cvec& y, cx t0, cx u0, long max_weight,
                      const EllipticParams& par, const TorusQuadrature& quad,
                      const PrecisionConfig& cfg = default_precision());

// ---------------------------------------------------------------------------
// residue-corrected 1-d torus integration, shared with the density module's
// degenerate checks: sequences of poles on the wrong side of the unit circle
// are compensated explicitly.

// descriptor of a factor Gamma(A w^e)^{sign} appearing in a 1-d integrand
struct GammaFactor {
    cx A;
    int e;    // +1 or -1
    int sign; // +1 numerator, -1 denominator
};

// enumerate poles of prod Gamma-factors lying on the wrong side of |w| = 1
std::vector<cx> misplaced_poles(const std::vector<GammaFactor>& factors, const EllipticParams& par,
                                double tol = 1e-9);

// integral with residue corrections: subtract residues of outward-class poles
// found inside, add residues of inward-class poles found outside
cx corrected_integrate_1d(const std::function<cx(cx)>& f, const std::vector<GammaFactor>& factors,
                          const TorusQuadrature& quad, const EllipticParams& par,
                          const PrecisionConfig& cfg = default_precision());

} // namespace ellkern

#endif
