#ifndef ELLKERN_SYMBOLS_HPP
#define ELLKERN_SYMBOLS_HPP

#include "ellkern/elliptic.hpp"
#include "ellkern/partition.hpp"

namespace ellkern {

// The finite Delta-symbol products of the C^0 / C^- / C^+ family, for
// partition pairs.  theta(x;p,q)_{l,m} indexes the pair (l,m) componentwise;
// the single-partition "elliptic" variants are the (0,lambda) pairs with the
// roles of p and q adjusted by the caller.

enum class CKind { zero, minus, plus };

// C^0_lam(x)  = prod_i theta(t^{1-i} x)_{lam_i}
// C^-_lam(x)  = prod_{1<=i<=j} theta(t^{j-i} x)_{lam_i - lam_{j+1}} / theta(t^{j-i} x)_{lam_i - lam_j}
// C^+_lam(x)  = prod_{1<=i<=j} theta(t^{2-i-j} x)_{lam_i + lam_j} / theta(t^{2-i-j} x)_{lam_i + lam_{j+1}}
cx c_symbol(CKind kind, const PartitionPair& lam, cx x, const EllipticParams& par,
            const PrecisionConfig& cfg = default_precision());

// single-partition elliptic convention: C^{0,+-}_mu(x; q,t; p) = C_{(0,mu)}(x; t; p,q)
inline cx c_symbol_elliptic(CKind kind, const Partition& mu, cx x, cx q, cx t, cx p,
                            const PrecisionConfig& cfg = default_precision()) {
    return c_symbol(kind, PartitionPair::q_only(mu), x, EllipticParams(p, q, t), cfg);
}

struct DeltaArgs {
    cx a;
    cvec b_list;
    EllipticParams params;
    DeltaArgs(cx a_, cvec b, EllipticParams par) : a(a_), b_list(std::move(b)), params(par) {}
};

// Delta^0_lam(a | b_0..b_{n-1}) = prod_r C^0_lam(b_r) / C^0_lam(pq a / b_r)
cx delta0(const PartitionPair& lam, const DeltaArgs& args,
          const PrecisionConfig& cfg = default_precision());

// Delta_lam(a | ...) = Delta^0_lam(a | ...) C^0_{2 lam^2}(pq a) /
//                      (C^-_lam(pq, t) C^+_lam(a, pq a / t))
cx delta_symbol(const PartitionPair& lam, const DeltaArgs& args,
                const PrecisionConfig& cfg = default_precision());

// elliptic single-partition forms Delta^{(0)}_mu(a|...; q,t; p) = Delta^{(0)}_{(0,mu)}(a|...; t; p,q)
cx delta0_elliptic(const Partition& mu, cx a, const cvec& b_list, cx q, cx t, cx p,
                   const PrecisionConfig& cfg = default_precision());
cx delta_elliptic(const Partition& mu, cx a, const cvec& b_list, cx q, cx t, cx p,
                  const PrecisionConfig& cfg = default_precision());

} // namespace ellkern

#endif
