#ifndef ELLKERN_QUADRATURE_HPP
#define ELLKERN_QUADRATURE_HPP

#include <functional>

#include "ellkern/base.hpp"

namespace ellkern {

// Product trapezoid rule on the unit m-torus against the normalized measure
// prod_i dz_i/(2 pi i z_i).  Nodes are exp(2 pi i (k + offset_j)/M); the
// default half-step offset keeps the node set closed under z -> 1/z while
// avoiding z = +-1.
struct TorusQuadrature {
    int dim = 1;
    int points_per_dim = 128; // power of two so doubling reuses nodes
    bool doubling_check = false;
    double doubling_tolerance = 1e-6;
    std::vector<double> offsets; // per-dim, default 0.5 each

    TorusQuadrature(int dim_, int M, bool doubling = false)
        : dim(dim_), points_per_dim(M), doubling_check(doubling) {}

    double offset(int j) const {
        return offsets.empty() ? 0.5 : offsets[static_cast<size_t>(j)];
    }
};

using TorusIntegrand = std::function<cx(const cvec&)>;

// Node evaluation is embarrassingly parallel; the reduction is a fixed
// pairwise tree over node index, so the result is bit-stable across thread
// counts.  Throws on non-convergence when doubling_check is set.
cx torus_integrate(const TorusIntegrand& f, const TorusQuadrature& quad,
                   const PrecisionConfig& cfg = default_precision());

// integral of |f|, used as the scale for vanishing-type assertions
double torus_integrate_abs(const TorusIntegrand& f, const TorusQuadrature& quad);

// residue of g at w, computed on a small circle of radius r
cx residue_at(const std::function<cx(cx)>& g, cx w, double r = 0.05, int points = 64);

// fixed pairwise summation; deterministic for a given vector
cx pairwise_sum(const std::vector<cx>& v);

// global thread budget for node evaluation (1 disables threading)
void set_quadrature_threads(int n);
int quadrature_threads();

} // namespace ellkern

#endif
