#include "ellkern/matrix.hpp"

#include <cmath>
#include <utility>

namespace ellkern {

double ComplexMatrix::antisymmetry_defect() const {
    double scale = 0.0, defect = 0.0;
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
            scale = std::max(scale, std::abs((*this)(i, j)));
            defect = std::max(defect, std::abs((*this)(i, j) + (*this)(j, i)));
        }
    if (scale == 0.0) return 0.0;
    return defect / scale;
}

cx determinant(ComplexMatrix m) {
    int d = m.dim();
    cx det = 1.0;
    for (int k = 0; k < d; ++k) {
        int piv = k;
        for (int i = k + 1; i < d; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (std::abs(m(piv, k)) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < d; ++j) std::swap(m(piv, j), m(k, j));
            det = -det;
        }
        det *= m(k, k);
        for (int i = k + 1; i < d; ++i) {
            cx f = m(i, k) / m(k, k);
            for (int j = k; j < d; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

cx pfaffian(ComplexMatrix m) {
    int d = m.dim();
    if (d % 2 != 0) throw std::invalid_argument("pfaffian: odd dimension");
    if (m.antisymmetry_defect() > 1e-13)
        throw std::invalid_argument("pfaffian: input not antisymmetric");
    // symmetrize away roundoff so the recurrences below stay skew
    for (int i = 0; i < d; ++i) {
        m(i, i) = 0.0;
        for (int j = i + 1; j < d; ++j) {
            cx v = 0.5 * (m(i, j) - m(j, i));
            m(i, j) = v;
            m(j, i) = -v;
        }
    }
    cx pf = 1.0;
    for (int k = 0; k < d - 1; k += 2) {
        int piv = k + 1;
        for (int i = k + 2; i < d; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (piv != k + 1) {
            for (int j = 0; j < d; ++j) std::swap(m(piv, j), m(k + 1, j));
            for (int j = 0; j < d; ++j) std::swap(m(j, piv), m(j, k + 1));
            pf = -pf;
        }
        cx a = m(k + 1, k);
        if (std::abs(a) == 0.0) return 0.0;
        pf *= -a; // pf([[0, b],[-b, 0]]) = b with b = m(k, k+1) = -a
        // zero column k below row k+1; rows/cols k and k+1 then drop out of
        // the remaining pfaffian
        for (int i = k + 2; i < d; ++i) {
            cx f = m(i, k) / a;
            for (int j = 0; j < d; ++j) m(i, j) -= f * m(k + 1, j);
            for (int j = 0; j < d; ++j) m(j, i) -= f * m(j, k + 1);
        }
    }
    return pf;
}

} // namespace ellkern
