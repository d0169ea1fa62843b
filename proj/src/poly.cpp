#include "epcat/poly.hpp"

#include <cassert>
#include <cstddef>
#include <numbers>

namespace epcat {

UniPoly<Rat> chebyshev_U(int k) {
    UniPoly<Rat> prev({Rat(1)}, "x");
    if (k <= 0) return prev;
    UniPoly<Rat> cur({Rat(0), Rat(2)}, "x");
    for (int i = 2; i <= k; ++i) {
        UniPoly<Rat> next = shift_up(cur, 1);
        mul_int(next, 2);
        next = next - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

// Aberth–Ehrlich on a monic-normalized coefficient vector, ascending, with
// nonzero constant term (zero roots are stripped by the callers).
std::vector<cplx> aberth(std::vector<cplx> a) {
    const int n = static_cast<int>(a.size()) - 1;
    cplx lead = a.back();
    for (auto& x : a) x /= lead;

    double radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(a[i]));
    radius = 1.0 + radius;

    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * std::numbers::pi * k / n + 0.4;
        z[k] = 0.7 * radius * cplx(std::cos(th), std::sin(th)) + cplx(0.013, 0.071);
    }

    auto peval = [&](cplx x, cplx& dp) {
        cplx p = 0, d = 0;
        for (int i = n; i >= 0; --i) {
            d = d * x + p;
            p = p * x + a[i];
        }
        dp = d;
        return p;
    };
    auto coeff_scale = [&](double ax) {
        double s = 0, t = 1;
        for (int i = 0; i <= n; ++i) {
            s += std::abs(a[i]) * t;
            t *= ax;
        }
        return s;
    };

    const int max_iter = 600;
    for (int it = 0; it < max_iter; ++it) {
        double max_step = 0;
        int moved = 0;
        for (int k = 0; k < n; ++k) {
            cplx d;
            cplx p = peval(z[k], d);
            if (std::abs(p) <= 1e-14 * coeff_scale(std::abs(z[k]))) continue;
            if (std::abs(d) < 1e-290) {
                z[k] += 1e-3 * (1.0 + std::abs(z[k])) * cplx(0.7, 0.31);
                ++moved;
                continue;
            }
            cplx w = p / d;
            cplx sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            cplx denom = 1.0 - w * sum;
            cplx step = std::abs(denom) > 1e-290 ? w / denom : w;
            z[k] -= step;
            ++moved;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (moved == 0 || max_step < 1e-16) break;
    }

    for (int k = 0; k < n; ++k) {
        cplx d;
        cplx p = peval(z[k], d);
        if (std::abs(p) > tols().poly * std::max(1.0, coeff_scale(std::abs(z[k]))))
            throw NonConvergence("polynomial root iteration did not converge");
    }
    return z;
}

std::vector<cplx> roots_stripped(std::vector<cplx> coeffs, std::size_t zero_roots) {
    std::vector<cplx> out(zero_roots, cplx(0.0));
    if (coeffs.size() >= 2) {
        auto rest = aberth(std::move(coeffs));
        out.insert(out.end(), rest.begin(), rest.end());
    }
    return out;
}

}  // namespace

std::vector<cplx> roots(const UniPoly<cplx>& p) {
    if (is_zero(p)) throw DegenerateInput("roots of the zero polynomial");
    std::vector<cplx> coeffs = p.c;
    std::size_t zeros = 0;
    while (zeros < coeffs.size() - 1 && is_zero(coeffs[zeros])) ++zeros;
    coeffs.erase(coeffs.begin(), coeffs.begin() + zeros);
    return roots_stripped(std::move(coeffs), zeros);
}

std::vector<cplx> roots(const UniPoly<Rat>& p) {
    if (is_zero(p)) throw DegenerateInput("roots of the zero polynomial");
    std::size_t zeros = 0;
    while (static_cast<int>(zeros) < p.degree() && is_zero(p.c[zeros])) ++zeros;
    std::vector<cplx> coeffs;
    coeffs.reserve(p.c.size() - zeros);
    for (std::size_t i = zeros; i < p.c.size(); ++i) coeffs.emplace_back(p.c[i].get_d());
    return roots_stripped(std::move(coeffs), zeros);
}

std::vector<RootCluster> cluster_roots(const std::vector<cplx>& rts) {
    const std::size_t n = rts.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double tol = tols().cluster * std::max({1.0, std::abs(rts[i]), std::abs(rts[j])});
            if (std::abs(rts[i] - rts[j]) <= tol) parent[find(i)] = find(j);
        }
    std::vector<RootCluster> out;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(out.size());
            out.push_back({cplx(0.0), 0});
        }
        out[slot[r]].value += rts[i];
        out[slot[r]].multiplicity += 1;
    }
    for (auto& cl : out) cl.value /= static_cast<double>(cl.multiplicity);
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

namespace {

// Newton polish of a real root candidate of a square-free real polynomial.
// Returns false when the candidate fails to settle on the real axis.
bool newton_real(const UniPoly<Rat>& f, double& x) {
    UniPoly<Rat> df = derivative(f);
    double scale = 0;
    for (const auto& cf : f.c) scale = std::max(scale, std::fabs(cf.get_d()));
    scale = std::max(scale, 1.0);
    for (int it = 0; it < 40; ++it) {
        double v = eval(f, x);
        double d = eval(df, x);
        if (d == 0.0) break;
        double step = v / d;
        x -= step;
        if (std::fabs(step) <= 1e-16 * (1.0 + std::fabs(x))) break;
    }
    double pw = 1;
    double local = 0;
    for (const auto& cf : f.c) {
        local += std::fabs(cf.get_d()) * std::fabs(pw);
        pw *= x;
    }
    return std::fabs(eval(f, x)) <= 1e-11 * std::max(1.0, local);
}

}  // namespace

std::vector<std::pair<double, int>> real_roots_with_multiplicity(const UniPoly<Rat>& p) {
    if (is_zero(p)) throw DegenerateInput("real roots of the zero polynomial");
    std::vector<std::pair<double, int>> out;
    for (const auto& [factor, mult] : square_free(p)) {
        for (cplx r : roots(factor)) {
            if (std::fabs(r.imag()) > 1e-7 * (1.0 + std::abs(r))) continue;
            double x = r.real();
            if (!newton_real(factor, x)) continue;
            bool dup = false;
            for (const auto& [y, m] : out) {
                (void)m;
                if (std::fabs(y - x) <= 1e-12 * (1.0 + std::fabs(x))) dup = true;
            }
            if (!dup) out.emplace_back(x, mult);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int BiPoly::deg_p() const {
    int d = -1;
    for (const auto& row : c)
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!is_zero(row[j])) d = std::max(d, static_cast<int>(j));
    return d;
}

void BiPoly::trim() {
    int dp = deg_p();
    for (auto& row : c) row.resize(static_cast<std::size_t>(dp + 1));
    while (!c.empty()) {
        bool allz = true;
        for (const auto& x : c.back())
            if (!is_zero(x)) allz = false;
        if (!allz) break;
        c.pop_back();
    }
}

Rat BiPoly::coeff(std::size_t i, std::size_t j) const {
    if (i >= c.size() || j >= c[i].size()) return Rat(0);
    return c[i][j];
}

UniPoly<Rat> BiPoly::coeff_of_f(std::size_t i) const {
    UniPoly<Rat> r;
    r.var = var_p;
    if (i < c.size()) r.c = c[i];
    r.normalize();
    return r;
}

UniPoly<Rat> BiPoly::at_param(const Rat& v) const {
    UniPoly<Rat> r;
    r.var = var_f;
    r.c.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r.c.push_back(epcat::eval(coeff_of_f(i), v));
    r.normalize();
    return r;
}

UniPoly<Rat> BiPoly::at_energy(const Rat& F) const {
    UniPoly<Rat> r;
    r.var = var_p;
    Rat fp(1);
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c[i].size(); ++j) {
            if (j >= r.c.size()) r.c.resize(j + 1, Rat(0));
            r.c[j] += c[i][j] * fp;
        }
        fp *= F;
    }
    r.normalize();
    return r;
}

double BiPoly::eval(double F, double pv) const {
    double acc = 0;
    for (std::size_t ii = c.size(); ii-- > 0;) {
        double row = 0;
        for (std::size_t jj = c[ii].size(); jj-- > 0;) row = row * pv + c[ii][jj].get_d();
        acc = acc * F + row;
    }
    return acc;
}

bool BiPoly::even_in_f() const {
    for (std::size_t i = 1; i < c.size(); i += 2)
        for (const auto& x : c[i])
            if (!is_zero(x)) return false;
    return true;
}

BiPoly BiPoly::from_f_coeffs(const std::vector<UniPoly<Rat>>& rows, std::string var_f,
                             std::string var_p) {
    BiPoly b;
    b.var_f = std::move(var_f);
    b.var_p = std::move(var_p);
    b.c.reserve(rows.size());
    for (const auto& r : rows) b.c.push_back(r.c);
    b.trim();
    return b;
}

bool operator==(const BiPoly& a, const BiPoly& b) {
    std::size_t nf = std::max(a.c.size(), b.c.size());
    for (std::size_t i = 0; i < nf; ++i) {
        std::size_t np = 0;
        if (i < a.c.size()) np = std::max(np, a.c[i].size());
        if (i < b.c.size()) np = std::max(np, b.c[i].size());
        for (std::size_t j = 0; j < np; ++j)
            if (a.coeff(i, j) != b.coeff(i, j)) return false;
    }
    return true;
}

UniPoly<Rat> discriminant_in_F(const BiPoly& p) {
    if (p.deg_f() < 1) throw DegenerateInput("polynomial is constant in the energy variable");
    UniPoly<UniPoly<Rat>> A;
    A.var = p.var_f;
    A.c.reserve(p.c.size());
    for (std::size_t i = 0; i < p.c.size(); ++i) A.c.push_back(p.coeff_of_f(i));
    A.normalize();
    UniPoly<UniPoly<Rat>> dA = derivative(A);
    UniPoly<Rat> res = resultant(A, dA);
    res.var = p.var_p;
    return res;
}

UniPoly<Rat> param_square_poly(const BiPoly& p, const Rat& F_value) {
    UniPoly<Rat> q = p.at_energy(F_value);
    for (std::size_t j = 1; j < q.c.size(); j += 2)
        if (!is_zero(q.c[j]))
            throw NotQuadraticInParam("odd powers of the parameter present at fixed energy");
    if (q.degree() > 4)
        throw NotQuadraticInParam("degree in the squared parameter exceeds 2");
    UniPoly<Rat> u;
    u.var = "u";
    for (std::size_t j = 0; j < q.c.size(); j += 2) u.c.push_back(q.c[j]);
    u.normalize();
    return u;
}

std::vector<double> invert_for_parameter(const BiPoly& p, double F_value) {
    UniPoly<Rat> u = param_square_poly(p, rat_from_double(F_value));
    std::vector<double> usol;
    if (u.degree() == 1) {
        Rat root = -u.c[0] / u.c[1];
        usol.push_back(root.get_d());
    } else if (u.degree() == 2) {
        Rat disc = u.c[1] * u.c[1] - 4 * u.c[2] * u.c[0];
        if (sgn(disc) >= 0) {
            double sq = std::sqrt(disc.get_d());
            double a2 = 2.0 * u.c[2].get_d();
            usol.push_back((-u.c[1].get_d() + sq) / a2);
            usol.push_back((-u.c[1].get_d() - sq) / a2);
        }
    }
    std::vector<double> out;
    for (double uv : usol) {
        if (uv < -1e-15) continue;
        double w = std::sqrt(std::max(uv, 0.0));
        out.push_back(-w);
        if (w > 0) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace epcat
