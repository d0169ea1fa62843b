#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "epcat/errors.hpp"
#include "epcat/rational.hpp"
#include "epcat/tolerances.hpp"

namespace epcat {

inline bool is_zero(const cplx& z) { return z.real() == 0.0 && z.imag() == 0.0; }
inline bool is_zero(double x) { return x == 0.0; }

/// Dense univariate polynomial, coefficients ascending by degree.
/// An empty coefficient list is the zero polynomial.
template <class S>
struct UniPoly {
    std::vector<S> c;
    std::string var = "x";

    UniPoly() = default;
    explicit UniPoly(std::vector<S> coeffs, std::string v = "x")
        : c(std::move(coeffs)), var(std::move(v)) {
        normalize();
    }
    explicit UniPoly(long v) {
        if (v != 0) c.push_back(S(v));
    }

    void normalize() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const S& operator[](std::size_t i) const { return c[i]; }
    S coeff(std::size_t i) const { return i < c.size() ? c[i] : S(); }
    const S& lead() const { return c.back(); }
};

template <class S>
bool is_zero(const UniPoly<S>& p) {
    for (const auto& x : p.c)
        if (!is_zero(x)) return false;
    return true;
}

template <class S>
bool operator==(const UniPoly<S>& a, const UniPoly<S>& b) {
    std::size_t n = std::max(a.c.size(), b.c.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!(a.coeff(i) == b.coeff(i))) return false;
    return true;
}

template <class S>
UniPoly<S> operator+(const UniPoly<S>& a, const UniPoly<S>& b) {
    UniPoly<S> r;
    r.var = a.var;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) + b.coeff(i);
    r.normalize();
    return r;
}

template <class S>
UniPoly<S> operator-(const UniPoly<S>& a, const UniPoly<S>& b) {
    UniPoly<S> r;
    r.var = a.var;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) - b.coeff(i);
    r.normalize();
    return r;
}

template <class S>
UniPoly<S> operator-(const UniPoly<S>& a) {
    UniPoly<S> r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

template <class S>
UniPoly<S> operator*(const UniPoly<S>& a, const UniPoly<S>& b) {
    UniPoly<S> r;
    r.var = a.var;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.resize(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (is_zero(a.c[i])) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
}

template <class S>
UniPoly<S> operator*(const S& s, const UniPoly<S>& a) {
    UniPoly<S> r = a;
    for (auto& x : r.c) x = s * x;
    r.normalize();
    return r;
}

/// Multiplies by x^k.
template <class S>
UniPoly<S> shift_up(const UniPoly<S>& a, std::size_t k) {
    if (a.c.empty()) return a;
    UniPoly<S> r;
    r.var = a.var;
    r.c.resize(a.c.size() + k);
    std::copy(a.c.begin(), a.c.end(), r.c.begin() + k);
    return r;
}

inline void mul_int(Rat& x, long k) { x *= k; }
inline void mul_int(GaussRat& x, long k) {
    x.re *= k;
    x.im *= k;
}
inline void mul_int(double& x, long k) { x *= static_cast<double>(k); }
inline void mul_int(cplx& x, long k) { x *= static_cast<double>(k); }
template <class S>
void mul_int(UniPoly<S>& p, long k) {
    for (auto& x : p.c) mul_int(x, k);
    p.normalize();
}

template <class S>
UniPoly<S> derivative(const UniPoly<S>& a) {
    UniPoly<S> r;
    r.var = a.var;
    if (a.c.size() < 2) return r;
    r.c.assign(a.c.begin() + 1, a.c.end());
    for (std::size_t i = 0; i < r.c.size(); ++i) mul_int(r.c[i], static_cast<long>(i + 1));
    r.normalize();
    return r;
}

template <class S, class T>
T eval_horner(const std::vector<S>& c, const T& x, T acc = T()) {
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + T(*it);
    return acc;
}

inline double eval(const UniPoly<Rat>& p, double x) {
    double acc = 0;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}
inline cplx eval(const UniPoly<Rat>& p, cplx x) {
    cplx acc = 0;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + cplx(it->get_d());
    return acc;
}
inline cplx eval(const UniPoly<cplx>& p, cplx x) {
    cplx acc = 0;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + *it;
    return acc;
}
inline Rat eval(const UniPoly<Rat>& p, const Rat& x) {
    Rat acc = 0;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + *it;
    return acc;
}
inline GaussRat eval(const UniPoly<GaussRat>& p, const GaussRat& x) {
    GaussRat acc;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline UniPoly<cplx> to_cplx_poly(const UniPoly<Rat>& p) {
    UniPoly<cplx> r;
    r.var = p.var;
    r.c.reserve(p.c.size());
    for (const auto& x : p.c) r.c.emplace_back(x.get_d());
    r.normalize();
    return r;
}
inline UniPoly<cplx> to_cplx_poly(const UniPoly<GaussRat>& p) {
    UniPoly<cplx> r;
    r.var = p.var;
    r.c.reserve(p.c.size());
    for (const auto& x : p.c) r.c.push_back(to_complex(x));
    r.normalize();
    return r;
}

/// Drops a provably zero imaginary part; throws if any coefficient is not real.
inline UniPoly<Rat> real_part_exact(const UniPoly<GaussRat>& p) {
    UniPoly<Rat> r;
    r.var = p.var;
    r.c.reserve(p.c.size());
    for (const auto& x : p.c) {
        if (!is_zero(x.im)) throw EpcatError("polynomial has nonreal exact coefficients");
        r.c.push_back(x.re);
    }
    r.normalize();
    return r;
}

// Field division; S must be Rat or GaussRat.
template <class S>
std::pair<UniPoly<S>, UniPoly<S>> divmod(const UniPoly<S>& a, const UniPoly<S>& b) {
    if (is_zero(b)) throw std::domain_error("polynomial division by zero");
    UniPoly<S> q, r = a;
    q.var = a.var;
    r.normalize();
    int db = b.degree();
    if (r.degree() >= db) q.c.resize(r.degree() - db + 1);
    while (r.degree() >= db) {
        int k = r.degree() - db;
        S f = r.lead() / b.lead();
        q.c[k] = f;
        for (int i = 0; i <= db; ++i) r.c[k + i] = r.c[k + i] - f * b.c[i];
        r.c.pop_back();
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

inline Rat divexact(const Rat& a, const Rat& b) { return a / b; }
template <class S>
UniPoly<S> divexact(const UniPoly<S>& a, const UniPoly<S>& b) {
    auto [q, r] = divmod(a, b);
    if (!is_zero(r)) throw EpcatError("inexact polynomial division");
    return q;
}

template <class S>
UniPoly<S> make_monic(const UniPoly<S>& a) {
    if (is_zero(a)) return a;
    UniPoly<S> r = a;
    S inv = S(1) / a.lead();
    for (auto& x : r.c) x = inv * x;
    return r;
}

/// Monic gcd over a coefficient field.
template <class S>
UniPoly<S> gcd_monic(UniPoly<S> a, UniPoly<S> b) {
    a.normalize();
    b.normalize();
    while (!is_zero(b)) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = make_monic(r);
    }
    if (is_zero(a)) return a;
    return make_monic(a);
}

/// Yun square-free decomposition of a nonzero polynomial: returns pairs
/// (monic square-free factor, multiplicity) whose weighted product rebuilds
/// p up to a constant.
template <class S>
std::vector<std::pair<UniPoly<S>, int>> square_free(const UniPoly<S>& p_in) {
    UniPoly<S> p = make_monic(p_in);
    std::vector<std::pair<UniPoly<S>, int>> out;
    if (p.degree() < 1) return out;
    UniPoly<S> dp = derivative(p);
    UniPoly<S> g = gcd_monic(p, dp);
    if (g.degree() == 0) {
        out.emplace_back(p, 1);
        return out;
    }
    UniPoly<S> w = divexact(p, g);
    UniPoly<S> y = divexact(dp, g);
    UniPoly<S> z = y - derivative(w);
    int i = 1;
    while (w.degree() > 0) {
        UniPoly<S> ai = gcd_monic(w, z);
        if (ai.degree() > 0) out.emplace_back(ai, i);
        w = divexact(w, ai.degree() > 0 ? ai : UniPoly<S>({S(1)}));
        y = is_zero(z) ? z : (ai.degree() > 0 ? divexact(z, ai) : z);
        z = y - derivative(w);
        ++i;
    }
    return out;
}

/// Sylvester resultant of A and B in their common variable, computed by
/// fraction-free Bareiss elimination; exact over any integral domain that
/// supports divexact.
template <class R>
R resultant(const UniPoly<R>& A, const UniPoly<R>& B) {
    int m = A.degree(), n = B.degree();
    if (m < 0 || n < 0) return R();
    auto rpow = [](R base, int e) {
        R r(1);
        for (int i = 0; i < e; ++i) r = r * base;
        return r;
    };
    if (m == 0) return rpow(A.c[0], n);
    if (n == 0) return rpow(B.c[0], m);

    int k = m + n;
    std::vector<std::vector<R>> M(k, std::vector<R>(k));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) M[r][r + m - i] = A.c[i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) M[n + r][r + n - i] = B.c[i];

    R prev(1);
    int sign = 1;
    for (int col = 0; col < k - 1; ++col) {
        int piv = -1;
        for (int r = col; r < k; ++r)
            if (!is_zero(M[r][col])) {
                piv = r;
                break;
            }
        if (piv < 0) return R();
        if (piv != col) {
            std::swap(M[piv], M[col]);
            sign = -sign;
        }
        for (int r = col + 1; r < k; ++r) {
            for (int cc = col + 1; cc < k; ++cc)
                M[r][cc] = divexact(M[col][col] * M[r][cc] - M[r][col] * M[col][cc], prev);
            M[r][col] = R();
        }
        prev = M[col][col];
    }
    R det = M[k - 1][k - 1];
    if (sign < 0) det = R() - det;
    return det;
}

/// det(F·I − T) for a tridiagonal matrix given its diagonal and the products
/// sub_k·super_k of paired off-diagonal entries; returns a polynomial in F
/// with coefficients in the entry ring.
template <class R>
UniPoly<R> tridiag_char_poly(const std::vector<R>& diag, const std::vector<R>& offprod) {
    std::size_t n = diag.size();
    UniPoly<R> prev2({R(1)});
    if (n == 0) return prev2;
    UniPoly<R> prev1({R() - diag[0], R(1)});
    for (std::size_t j = 1; j < n; ++j) {
        UniPoly<R> t = shift_up(prev1, 1) - UniPoly<R>({diag[j]}) * prev1 -
                       UniPoly<R>({offprod[j - 1]}) * prev2;
        prev2 = std::move(prev1);
        prev1 = std::move(t);
    }
    return prev1;
}

/// Chebyshev polynomial of the second kind, exact integer coefficients.
UniPoly<Rat> chebyshev_U(int k);

struct RootCluster {
    cplx value;
    int multiplicity;
};

/// All complex roots by Aberth–Ehrlich simultaneous iteration.
/// Multiple roots come back as nearby separated points; see cluster_roots.
std::vector<cplx> roots(const UniPoly<cplx>& p);
std::vector<cplx> roots(const UniPoly<Rat>& p);

/// Groups near-coincident roots (radius cluster_tol·max(1,|r|)) and reports
/// each cluster's mean and size.
std::vector<RootCluster> cluster_roots(const std::vector<cplx>& rts);

/// Real roots of a real-coefficient polynomial: square-free structure first,
/// then Aberth per factor and a Newton polish, so multiple roots are exact
/// clusters. Returns (root, multiplicity) sorted ascending.
std::vector<std::pair<double, int>> real_roots_with_multiplicity(const UniPoly<Rat>& p);

/// Bivariate polynomial, c[i][j] multiplying F^i · param^j.
struct BiPoly {
    std::vector<std::vector<Rat>> c;
    std::string var_f = "F";
    std::string var_p = "w";

    int deg_f() const { return static_cast<int>(c.size()) - 1; }
    int deg_p() const;
    void trim();
    Rat coeff(std::size_t i, std::size_t j) const;
    UniPoly<Rat> coeff_of_f(std::size_t i) const;
    UniPoly<Rat> at_param(const Rat& v) const;
    UniPoly<Rat> at_energy(const Rat& F) const;
    double eval(double F, double pv) const;
    bool even_in_f() const;

    static BiPoly from_f_coeffs(const std::vector<UniPoly<Rat>>& rows, std::string var_f,
                                std::string var_p);
};

bool operator==(const BiPoly& a, const BiPoly& b);

/// Resultant of p and ∂p/∂F with respect to F: a polynomial in the parameter
/// whose real roots contain every parameter value with a repeated energy root.
UniPoly<Rat> discriminant_in_F(const BiPoly& p);

/// Substitutes F and rewrites the result as a polynomial in u = param²,
/// requiring the parameter to appear only through param² with degree ≤ 2 in u.
UniPoly<Rat> param_square_poly(const BiPoly& p, const Rat& F_value);

/// Real parameter values w with p(F_value, w) = 0, for families quadratic in
/// the squared parameter. Sorted ascending; empty when radicands are negative.
std::vector<double> invert_for_parameter(const BiPoly& p, double F_value);

}  // namespace epcat
