#ifndef ELLKERN_DIFFOPS_HPP
#define ELLKERN_DIFFOPS_HPP

#include <functional>
#include <map>

#include "ellkern/elliptic.hpp"

namespace ellkern {

// Elliptic difference operators D^(n)_q(u_1..u_{2m+2}; t; p) acting on
// hyperoctahedrally symmetric functions, and the formal shift-graded
// operators D^(n)_c built from the kernel by the coefficient recurrence.

struct DiffOpSpec {
    int n;
    cvec u_list; // even length, possibly empty
    EllipticParams params;
};

using NFunction = std::function<cx(const cvec&)>;

// (D f)(x) = sum_{sigma in {+-1}^n} w_sigma(x) f(q^{sigma/2} x)
cx apply_D(const DiffOpSpec& spec, const NFunction& f, const cvec& x,
           const PrecisionConfig& cfg = default_precision());

// the sigma-term weight, exposed for the coefficient recurrence
cx diff_weight(const DiffOpSpec& spec, const std::vector<int>& sigma, const cvec& x,
               const PrecisionConfig& cfg = default_precision());

// ---------------------------------------------------------------------------

using MultiIndex = std::vector<long>; // k in N^n

// Formal difference operator (sum_k F_k(x) prod T_i^{k_i}) T(c): grade c,
// coefficients stored as evaluable closures for |k| <= order.  `exact` means
// every higher coefficient vanishes identically.
struct FormalDiffOp {
    int n = 1;
    cx grade = 1.0;
    long order = 0;
    bool exact = false;
    std::map<MultiIndex, NFunction> coeffs;

    cx coeff(const MultiIndex& k, const cvec& x) const;

    static FormalDiffOp one(int n);
    static FormalDiffOp multiplication(int n, NFunction f);
};

// leading (k = 0) coefficient of D^(n)_c(q,t;p) in closed form
cx formal_leading_coeff(int n, cx c, const cvec& x, const EllipticParams& par,
                        const PrecisionConfig& cfg = default_precision());

// coefficient table of D^(n)_c(q,t;p) through total order M via the
// downward recurrence from the leading coefficient; the degenerate branch
// c^2 in p^Z yields the pure multiplication-shift operator
FormalDiffOp formal_coeffs(int n, cx c, long M, const EllipticParams& par,
                           const PrecisionConfig& cfg = default_precision());

// D^(n)_q(u_1..u_{2m+2};t;p) as an exact element of grade q^{-1/2}
FormalDiffOp as_formal(const DiffOpSpec& spec, const PrecisionConfig& cfg = default_precision());

// graded product; exact up to min of the available orders (hard error if the
// requested order cannot be represented without silent truncation)
FormalDiffOp compose_formal(const FormalDiffOp& A, const FormalDiffOp& B,
                            const EllipticParams& par);

struct OpReport {
    double max_residual;
};

// panel: fixed random x points used for operator equality
std::vector<cvec> coefficient_panel(int n, unsigned seed = 1234, int count = 8);

// max coefficient deviation over the panel, |k| <= order
double op_distance(const FormalDiffOp& A, const FormalDiffOp& B, long order,
                   const std::vector<cvec>& panel);

// D_c o D_{1/c} vs identity
OpReport invert_check(int n, cx c, long M, const EllipticParams& par,
                      const PrecisionConfig& cfg = default_precision());

// apply a finite formal operator as a true difference operator
cx apply_formal(const FormalDiffOp& op, const NFunction& f, const cvec& x, cx q_base);

// ---------------------------------------------------------------------------
// E_{m+1} cocycle over the generators s_D, s_Gamma, s_1..s_{m-1}

struct CocycleGroup {
    int m; // parameters (c, u, v_1..v_{m-1})
    int n; // operator dimension
    long order;
    EllipticParams params;
};

enum class Generator { sD, sGamma, s1, s2, s3 };

using GroupElement = cvec; // (c, u, v_1, ..., v_{m-1})

GroupElement act(Generator g, const GroupElement& pt);
FormalDiffOp generator_op(const CocycleGroup& grp, Generator g, const GroupElement& pt,
                          const PrecisionConfig& cfg = default_precision());
// D_{w_1...w_k}(g) = D_{w_1}(w_2...w_k g) ... D_{w_k}(g)
FormalDiffOp word_op(const CocycleGroup& grp, const std::vector<Generator>& word,
                     const GroupElement& pt, const PrecisionConfig& cfg = default_precision());

} // namespace ellkern

#endif
