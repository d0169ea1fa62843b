#pragma once

#include <Eigen/Dense>

#include "epcat/linalg.hpp"

namespace epcat {

using EMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

inline EMat to_eigen(const CMatrix& H) {
    EMat m(H.n, H.n);
    for (int i = 0; i < H.n; ++i)
        for (int j = 0; j < H.n; ++j) m(i, j) = H.at(i, j);
    return m;
}

inline CMatrix from_eigen(const EMat& m) {
    CMatrix H(static_cast<int>(m.rows()));
    for (int i = 0; i < H.n; ++i)
        for (int j = 0; j < H.n; ++j) H.at(i, j) = m(i, j);
    return H;
}

}  // namespace epcat
