#ifndef ELLKERN_INTERP_POLY_HPP
#define ELLKERN_INTERP_POLY_HPP

#include "ellkern/symfunc.hpp"

namespace ellkern {

// Okounkov's BC_n interpolation polynomials over exact rationals, built by a
// linear solve against the vanishing grid plus monic normalization.  q and t
// are supplied through their square roots so half-integer shifts stay exact.

struct InterpPoly {
    Partition lam;
    int n;
    Rational sq, st, s; // sqrt(q), sqrt(t), grid base
    // coefficients on hyperoctahedral monomials m^{BC}_mu, |mu| <= |lam|
    std::map<Partition, Rational> coeffs;
};

// hyperoctahedral monomial symmetric polynomial at an exact point
Rational bc_monomial(const Partition& mu, int n, const std::vector<Rational>& z);

// grid point <mu>: z_i = q^{mu_i} t^{n-i} s
std::vector<Rational> interp_grid(const Partition& mu, int n, const Rational& sq,
                                  const Rational& st, const Rational& s);

InterpPoly okounkov_poly(const Partition& lam, int n, const Rational& sq, const Rational& st,
                         const Rational& s);

Rational interp_eval(const InterpPoly& P, const std::vector<Rational>& z);

// extra-vanishing grid check: value at <mu> is zero iff mu does not contain lam
bool okounkov_vanishing_grid(const InterpPoly& P, long max_weight);

enum class AppendixKind { vertical_strip, v_degree, horizontal_strip };

struct AppendixReport {
    bool pass;
    std::string detail;
};

// expansion structure of D_q(v, u/v; t) acting on P-bar*_lam in the basis at
// q^{1/2} s: support inside vertical strips, v-degree <= l(lam), leading
// v-coefficient supported on lam - 1^{l(lam)}.  The horizontal-strip kind runs
// the same engine on conjugate data with q and t swapped.
AppendixReport check_appendix(AppendixKind kind, const Partition& lam, int n, const Rational& sq,
                              const Rational& st, const Rational& s, const Rational& u);

} // namespace ellkern

#endif
