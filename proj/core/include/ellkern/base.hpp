#ifndef ELLKERN_BASE_HPP
#define ELLKERN_BASE_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellkern {

using cx = std::complex<double>;
using cvec = std::vector<cx>;

// A factor came within near_pole_eps of vanishing (or an exact pole was
// requested).  Samplers catch this and redraw; it is never a silent NaN.
struct pole_error : std::runtime_error {
    explicit pole_error(const std::string& what) : std::runtime_error(what) {}
};

// A truncated product/series would need more terms than the configured budget.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// The unit torus is not a valid contour for the requested parameters
// (some Gamma argument left the annulus (|pq|, 1) at integration time).
struct certificate_error : std::runtime_error {
    explicit certificate_error(const std::string& what) : std::runtime_error(what) {}
};

enum class working_precision { double_prec, extended };

struct PrecisionConfig {
    double tail_tolerance = 1e-17;
    int max_product_terms = 4096;
    working_precision precision = working_precision::double_prec;
    // modulus below which a product factor counts as an exact pole hit
    double near_pole_eps = 1e-14;
};

inline const PrecisionConfig& default_precision() {
    static PrecisionConfig cfg;
    return cfg;
}

// principal branch square root; the identities we certify are checked for
// sign-independence separately, so a fixed branch is safe
inline cx sqrt_principal(cx z) { return std::sqrt(z); }
inline cx root4_principal(cx z) { return std::sqrt(std::sqrt(z)); }

inline double rel_err(cx a, cx b) {
    double s = std::max(std::abs(a), std::abs(b));
    if (s == 0.0) return 0.0;
    return std::abs(a - b) / s;
}

} // namespace ellkern

#endif
