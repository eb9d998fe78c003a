#ifndef ELLKERN_SYMFUNC_HPP
#define ELLKERN_SYMFUNC_HPP

#include <gmpxx.h>
#include <map>

#include "ellkern/kernel.hpp"
#include "ellkern/partition.hpp"

namespace ellkern {

using Rational = mpq_class;

Rational rat_pow(const Rational& base, long e);

// Exact symmetric function in the power-sum basis, graded by degree.  The
// (q,t) test values live in the ambient field; all coefficients are exact
// rationals.
class SymFun {
  public:
    SymFun() = default;
    explicit SymFun(Rational c) { coeffs_[Partition()] = std::move(c); }
    static SymFun power_sum(long k);
    static SymFun power_sum(const Partition& lam);

    const std::map<Partition, Rational>& coeffs() const { return coeffs_; }
    Rational coeff(const Partition& lam) const;
    void set_coeff(const Partition& lam, Rational c);
    long degree() const;

    SymFun operator+(const SymFun& o) const;
    SymFun operator-(const SymFun& o) const;
    SymFun operator*(const SymFun& o) const;
    SymFun operator*(const Rational& c) const;
    bool operator==(const SymFun& o) const;
    bool is_zero() const;

    // evaluation with variables bound to exact rationals; p_k(x) = sum x_i^k
    Rational eval(const std::vector<Rational>& xs) const;

  private:
    std::map<Partition, Rational> coeffs_; // trims zero entries
};

// angle specialization <mu>_{q,t,T;a} of p_k
Rational angle_pk(long k, const Partition& mu, const Rational& q, const Rational& t,
                  const Rational& T, const Rational& a);
Rational angle_eval(const SymFun& f, const Partition& mu, const Rational& q, const Rational& t,
                    const Rational& T, const Rational& a);

// tau_{a;t}: p_k -> p_k + (a^k - (t/a)^k)/(1 - t^k)
SymFun tau(const Rational& a, const Rational& t, const SymFun& f);

// modified Macdonald involution; sq, st are square roots of q and t (chosen
// rational by the samplers)
SymFun omega_tilde(const Rational& sq, const Rational& st, const SymFun& f);

// ---------------------------------------------------------------------------
// monomial basis and Macdonald polynomials

// expansion of f in monomial symmetric functions m_lambda (exact)
std::map<Partition, Rational> to_monomial(const SymFun& f);
// m_lambda in the power-sum basis
SymFun monomial_sym(const Partition& lam);

// <p_lam, p_mu> = delta z_lam prod (1-q^{lam_i})/(1-t^{lam_i})
Rational macdonald_inner(const SymFun& f, const SymFun& g, const Rational& q, const Rational& t);

// Macdonald P_lambda by Gram-Schmidt over monomials in dominance order
SymFun macdonald_P(const Partition& lam, const Rational& q, const Rational& t);

// n-variable evaluation through the branching rule (exact / double versions)
Rational macdonald_P_eval(const Partition& lam, const std::vector<Rational>& xs,
                          const Rational& q, const Rational& t);
cx macdonald_P_eval(const Partition& lam, const cvec& xs, cx q, cx t);

// ---------------------------------------------------------------------------
// p = 0 limits of the C-symbols (single partition, exact)

Rational c0_z(const Partition& lam, const Rational& x, const Rational& q, const Rational& t);
Rational cminus_z(const Partition& lam, const Rational& x, const Rational& q, const Rational& t);
Rational cplus_z(const Partition& lam, const Rational& x, const Rational& q, const Rational& t);

// ---------------------------------------------------------------------------
// F_lambda and lifted interpolation functions (numeric; p-truncated series)

// series route: exp(-sum_k [ (t^{k lam'_j}-1) q^{-kj}-style coefficients ] p_k(x)/k(1-p^k))
cx f_lambda_series(const Partition& lam, cx b, const cvec& xhat, const EllipticParams& par,
                   const PrecisionConfig& cfg = default_precision());
// product route on x = z^{+-1}
cx f_lambda_product(const Partition& lam, cx b, const cvec& z, const EllipticParams& par,
                    const PrecisionConfig& cfg = default_precision());

// lifted interpolation function R-hat at a torus specialization x = z^{+-1};
// binomial coefficients supplied numerically by the kernel module
cx lifted_interp_eval(const Partition& lam, cx a, cx b, cx T, const cvec& z,
                      const EllipticParams& par, const TorusQuadrature& quad,
                      const PrecisionConfig& cfg = default_precision());
// the same finite sum at the angle specialization <mu>
cx lifted_interp_at_angle(const Partition& lam, cx a, cx b, cx T, const Partition& mu,
                          const EllipticParams& par, const TorusQuadrature& quad,
                          const PrecisionConfig& cfg = default_precision());

// ---------------------------------------------------------------------------
// Macdonald-limit checks

struct ExactReport {
    bool exact_pass;
    double float_residual;
};

// BWZ-type pfaffian summation at 2n = 2: exact comparison of series
// coefficients in x1 x2 through the weight cap
bool bwz_pfaffian_exact_2n2(const Rational& q, const Rational& t, const Rational& u,
                            long weight_cap);
// float check at 2n = 4 with |x| small; u = t recovers the undeformed case
double bwz_pfaffian_float_2n4(cx q, cx t, cx u, const cvec& x, long weight_cap);

// naive Macdonald limits of the kernel family at small p (closed forms at the
// smallest sizes vs the truncated Macdonald sum)
double cauchy_limit_residual(double p, cx c, cx x, cx y, cx q, cx t, long cap);
double littlewood_limit_residual(double p, cx c, cx x1, cx x2, cx q, cx t, long cap);
double dual_littlewood_limit_residual(double p, cx c, cx x, cx q, cx t, long cap);
double kawanaka_limit_residual(double p, cx c, cx x, cx q, cx t, long cap);

// the mu-coefficient of the Littlewood limit vs exact p = 0 C-symbols
double littlewood_limit_coeff_residual(const Partition& mu, const Rational& q, const Rational& t,
                                       const Rational& c2, int n2);

} // namespace ellkern

#endif
