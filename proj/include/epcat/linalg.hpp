#pragma once

#include <optional>
#include <vector>

#include "epcat/poly.hpp"
#include "epcat/rational.hpp"

namespace epcat {

/// Dense square complex matrix, row-major. When a model constructs the matrix
/// from exactly representable values, the same entries are carried as Gaussian
/// rationals in `exact` and the exact characteristic-polynomial path applies.
struct CMatrix {
    int n = 0;
    std::vector<cplx> a;
    std::optional<std::vector<GaussRat>> exact;

    CMatrix() = default;
    explicit CMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim) {}

    cplx& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const cplx& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    bool has_exact() const { return exact.has_value(); }
    const GaussRat& xat(int i, int j) const { return (*exact)[static_cast<std::size_t>(i) * n + j]; }

    /// Builds the float view from exact entries and keeps both.
    static CMatrix from_exact(int dim, std::vector<GaussRat> entries);

    void check_valid() const;  // square layout, finite entries
};

struct EigenDecomp {
    std::vector<cplx> eigenvalues;
    std::optional<CMatrix> right_vectors;  // unit columns, same order as eigenvalues
    bool converged = true;
};

CMatrix identity_matrix(int n);
CMatrix mat_mul(const CMatrix& A, const CMatrix& B);
CMatrix mat_sub(const CMatrix& A, const CMatrix& B);
/// H − shift·I on the float view.
CMatrix shifted(const CMatrix& H, cplx shift);

double norm_fro(const CMatrix& H);
/// Largest singular value.
double norm_2(const CMatrix& H);

/// Faddeev–LeVerrier characteristic polynomial det(F·I − A), monic, ascending
/// coefficients; exact over rational scalars.
template <class S>
std::vector<S> faddeev_leverrier(int n, const std::vector<S>& A) {
    std::vector<S> c(static_cast<std::size_t>(n) + 1);
    c[n] = S(1);
    if (n == 0) return c;
    std::vector<S> M = A;
    for (int k = 1; k <= n; ++k) {
        S tr = S(0);
        for (int i = 0; i < n; ++i) tr += M[static_cast<std::size_t>(i) * n + i];
        c[n - k] = (S(0) - tr) / S(k);
        if (k == n) break;
        std::vector<S> next(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                S s = S(0);
                for (int l = 0; l < n; ++l) {
                    S m = M[static_cast<std::size_t>(l) * n + j];
                    if (l == j) m += c[n - k];
                    s += A[static_cast<std::size_t>(i) * n + l] * m;
                }
                next[static_cast<std::size_t>(i) * n + j] = s;
            }
        M = std::move(next);
    }
    return c;
}

/// Monic char poly in the energy variable; runs the exact path when the
/// matrix carries exact entries, float arithmetic otherwise.
UniPoly<cplx> char_poly(const CMatrix& H);

/// Exact variant; throws EpcatError when the matrix has no exact entries.
UniPoly<GaussRat> char_poly_exact(const CMatrix& H);

/// All eigenvalues (with vectors on request) via complex Schur iteration, with
/// a char_poly + root-solver fallback when the value-only path stalls.
EigenDecomp eigen(const CMatrix& H, bool want_vectors = false);

/// Number of singular values above tol_rank·sigma_max; 0 for the zero matrix.
int numeric_rank(const CMatrix& H, double tol_rank);
int numeric_rank(const CMatrix& H);

}  // namespace epcat
