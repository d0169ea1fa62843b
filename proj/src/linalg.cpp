#include "epcat/linalg.hpp"

#include <cmath>

#include "eigen_bridge.hpp"
#include "epcat/errors.hpp"
#include "epcat/tolerances.hpp"

namespace epcat {

CMatrix CMatrix::from_exact(int dim, std::vector<GaussRat> entries) {
    CMatrix H(dim);
    for (std::size_t i = 0; i < entries.size(); ++i) H.a[i] = to_complex(entries[i]);
    H.exact = std::move(entries);
    return H;
}

void CMatrix::check_valid() const {
    if (n < 1 || a.size() != static_cast<std::size_t>(n) * n)
        throw EpcatError("matrix is not square");
    for (const cplx& z : a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw EpcatError("matrix has non-finite entries");
}

CMatrix identity_matrix(int n) {
    CMatrix I(n);
    std::vector<GaussRat> x(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        I.at(i, i) = 1.0;
        x[static_cast<std::size_t>(i) * n + i] = GaussRat(1);
    }
    I.exact = std::move(x);
    return I;
}

CMatrix mat_mul(const CMatrix& A, const CMatrix& B) {
    CMatrix C(A.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) {
            cplx s = 0;
            for (int l = 0; l < A.n; ++l) s += A.at(i, l) * B.at(l, j);
            C.at(i, j) = s;
        }
    if (A.has_exact() && B.has_exact()) {
        std::vector<GaussRat> x(static_cast<std::size_t>(A.n) * A.n);
        for (int i = 0; i < A.n; ++i)
            for (int j = 0; j < A.n; ++j) {
                GaussRat s;
                for (int l = 0; l < A.n; ++l) s += A.xat(i, l) * B.xat(l, j);
                x[static_cast<std::size_t>(i) * A.n + j] = s;
            }
        C.exact = std::move(x);
    }
    return C;
}

CMatrix mat_sub(const CMatrix& A, const CMatrix& B) {
    CMatrix C(A.n);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.a[i] - B.a[i];
    if (A.has_exact() && B.has_exact()) {
        std::vector<GaussRat> x(C.a.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = (*A.exact)[i] - (*B.exact)[i];
        C.exact = std::move(x);
    }
    return C;
}

CMatrix shifted(const CMatrix& H, cplx shift) {
    CMatrix C = H;
    C.exact.reset();
    for (int i = 0; i < C.n; ++i) C.at(i, i) -= shift;
    return C;
}

double norm_fro(const CMatrix& H) {
    double s = 0;
    for (const cplx& z : H.a) s += std::norm(z);
    return std::sqrt(s);
}

double norm_2(const CMatrix& H) {
    if (H.n == 0) return 0;
    Eigen::JacobiSVD<EMat> svd(to_eigen(H));
    return svd.singularValues()(0);
}

UniPoly<GaussRat> char_poly_exact(const CMatrix& H) {
    H.check_valid();
    if (!H.has_exact()) throw EpcatError("matrix has no exact entries");
    UniPoly<GaussRat> p(faddeev_leverrier<GaussRat>(H.n, *H.exact), "F");
    return p;
}

UniPoly<cplx> char_poly(const CMatrix& H) {
    H.check_valid();
    if (H.has_exact()) return to_cplx_poly(char_poly_exact(H));
    using cld = std::complex<long double>;
    std::vector<cld> A(H.a.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        A[i] = cld(H.a[i].real(), H.a[i].imag());
    std::vector<cld> c = faddeev_leverrier<cld>(H.n, A);
    UniPoly<cplx> p;
    p.var = "F";
    p.c.reserve(c.size());
    for (const cld& x : c)
        p.c.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
    p.normalize();
    return p;
}

EigenDecomp eigen(const CMatrix& H, bool want_vectors) {
    H.check_valid();
    Eigen::ComplexEigenSolver<EMat> solver(to_eigen(H), want_vectors);
    EigenDecomp d;
    if (solver.info() == Eigen::Success) {
        d.eigenvalues.resize(H.n);
        for (int i = 0; i < H.n; ++i) d.eigenvalues[i] = solver.eigenvalues()(i);
        if (want_vectors) d.right_vectors = from_eigen(solver.eigenvectors());
        d.converged = true;
        return d;
    }
    if (want_vectors) throw NonConvergence("eigensolver iteration cap hit");
    d.eigenvalues = roots(char_poly(H));
    d.converged = false;
    return d;
}

int numeric_rank(const CMatrix& H, double tol_rank) {
    H.check_valid();
    Eigen::JacobiSVD<EMat> svd(to_eigen(H));
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol_rank * sv(0)) ++r;
    return r;
}

int numeric_rank(const CMatrix& H) { return numeric_rank(H, tols().rank); }

}  // namespace epcat
