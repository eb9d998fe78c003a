#ifndef ELLKERN_MATRIX_HPP
#define ELLKERN_MATRIX_HPP

#include <functional>

#include "ellkern/base.hpp"

namespace ellkern {

// Dense square complex matrix, row-major.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(int d) : d_(d), a_(static_cast<size_t>(d) * d, cx(0.0)) {}

    static ComplexMatrix identity(int d) {
        ComplexMatrix m(d);
        for (int i = 0; i < d; ++i) m(i, i) = 1.0;
        return m;
    }
    static ComplexMatrix from(int d, const std::function<cx(int, int)>& f) {
        ComplexMatrix m(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m(i, j) = f(i, j);
        return m;
    }

    int dim() const { return d_; }
    cx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * d_ + j]; }
    cx operator()(int i, int j) const { return a_[static_cast<size_t>(i) * d_ + j]; }

    // max_{i,j} |a_ij + a_ji| / max|a_ij|
    double antisymmetry_defect() const;

  private:
    int d_;
    std::vector<cx> a_;
};

// LU with partial pivoting
cx determinant(ComplexMatrix m);

// Parlett-Reid skew-symmetric tridiagonalization; rejects inputs whose
// antisymmetry defect exceeds 1e-13 or whose dimension is odd
cx pfaffian(ComplexMatrix m);

} // namespace ellkern

#endif
