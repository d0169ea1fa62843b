#include "epcat/models.hpp"

#include <cmath>

#include "epcat/errors.hpp"
#include "epcat/tolerances.hpp"

namespace epcat {

ParamValue parse_param_value(const std::string& text) {
    ParamValue v;
    try {
        v.exact = rat_from_decimal(text);
    } catch (const std::invalid_argument& e) {
        throw BadParamPoint(e.what());
    }
    v.d = to_double(v.exact);
    return v;
}

const ParamValue& require_param(const ParamPoint& p, const std::string& name) {
    auto it = p.find(name);
    if (it == p.end()) throw BadParamPoint("missing parameter '" + name + "'");
    if (!std::isfinite(it->second.d)) throw BadParamPoint("parameter '" + name + "' not finite");
    return it->second;
}

CMatrix build_lattice_exact(const std::vector<GaussRat>& v_diag) {
    const int n = static_cast<int>(v_diag.size());
    if (n < 2) throw EpcatError("lattice needs at least two sites");
    std::vector<GaussRat> x(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i) * n + i] = v_diag[i];
        if (i + 1 < n) {
            x[static_cast<std::size_t>(i) * n + i + 1] = GaussRat(-1);
            x[static_cast<std::size_t>(i + 1) * n + i] = GaussRat(-1);
        }
    }
    return CMatrix::from_exact(n, std::move(x));
}

CMatrix build_lattice(const std::vector<cplx>& v_diag) {
    std::vector<GaussRat> v;
    v.reserve(v_diag.size());
    for (cplx z : v_diag) v.push_back(gauss_from_complex(z));
    return build_lattice_exact(v);
}

namespace {

void check_latti_dim(int N) {
    if (N % 2 != 0) throw OddDimension("dimension must be even, got " + std::to_string(N));
    if (N < 4) throw EpcatError("dimension must be at least 4");
}

GaussRat times_i(const Rat& r) { return GaussRat(Rat(0), r); }

}  // namespace

CMatrix build_latti(int N, const ParamValue& rho, const ParamValue& w) {
    check_latti_dim(N);
    const int K = N / 2;
    std::vector<GaussRat> d(N);
    d[0] = times_i(-rho.exact);
    d[K - 1] = d[K - 1] + times_i(-w.exact);
    d[K] = d[K] + times_i(w.exact);
    d[N - 1] = d[N - 1] + times_i(rho.exact);
    return build_lattice_exact(d);
}

CMatrix build_latti(int N, double rho, double w) {
    return build_latti(N, ParamValue(rho), ParamValue(w));
}

CMatrix build_mytoy(int J, const ParamValue& w) {
    if (J < 1) throw EpcatError("J must be at least 1");
    return build_latti(2 * J + 2, ParamValue(Rat(0)), w);
}

CMatrix build_mytoy(int J, double w) { return build_mytoy(J, ParamValue(w)); }

CMatrix build_h6(const ParamValue& w) {
    std::vector<GaussRat> d(6);
    for (int i = 0; i < 3; ++i) d[i] = times_i(-w.exact);
    for (int i = 3; i < 6; ++i) d[i] = times_i(w.exact);
    return build_lattice_exact(d);
}

CMatrix build_ha6(double g, double lambda) {
    if (!(lambda >= -1.0))
        throw LambdaOutOfRange("lambda must be >= -1, got " + std::to_string(lambda));
    CMatrix H(6);
    const double diag[6] = {-5 + g, -3, -1, 1, 3, 5 - g};
    const double s[5] = {std::sqrt(5 * (1 + lambda)), 2 * std::sqrt(2 * (1 + lambda)),
                         3 * std::sqrt(1 + lambda), 2 * std::sqrt(2 * (1 + lambda)),
                         std::sqrt(5 * (1 + lambda))};
    for (int i = 0; i < 6; ++i) H.at(i, i) = diag[i];
    for (int i = 0; i < 5; ++i) {
        H.at(i, i + 1) = s[i];
        H.at(i + 1, i) = -s[i];
    }
    return H;
}

CMatrix build_jordan_sum(const std::vector<std::pair<int, cplx>>& blocks) {
    if (blocks.empty()) throw EpcatError("empty Jordan block list");
    int n = 0;
    for (const auto& [size, eta] : blocks) {
        (void)eta;
        if (size < 1) throw EpcatError("Jordan block size must be positive");
        n += size;
    }
    std::vector<GaussRat> x(static_cast<std::size_t>(n) * n);
    int off = 0;
    for (const auto& [size, eta] : blocks) {
        GaussRat e = gauss_from_complex(eta);
        for (int i = 0; i < size; ++i) {
            x[static_cast<std::size_t>(off + i) * n + off + i] = e;
            if (i + 1 < size) x[static_cast<std::size_t>(off + i) * n + off + i + 1] = GaussRat(1);
        }
        off += size;
    }
    return CMatrix::from_exact(n, std::move(x));
}

bool check_pt_symmetry(const CMatrix& H) {
    H.check_valid();
    double scale = 1.0;
    for (const cplx& z : H.a) scale = std::max(scale, std::abs(z));
    const int n = H.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx mirrored = std::conj(H.at(n - 1 - i, n - 1 - j));
            if (std::abs(H.at(i, j) - mirrored) > tols().poly * scale) return false;
        }
    return true;
}

CMatrix swap_symmetry_map(int N) {
    if (N % 2 != 0) throw OddDimension("dimension must be even, got " + std::to_string(N));
    const int K = N / 2;
    std::vector<GaussRat> x(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < K; ++i) {
        x[static_cast<std::size_t>(i) * N + (K - 1 - i)] = GaussRat(1);
        x[static_cast<std::size_t>(K + i) * N + (N - 1 - i)] = GaussRat(1);
    }
    return CMatrix::from_exact(N, std::move(x));
}

namespace {

UniPoly<GaussRat> sym_const(GaussRat v) { return UniPoly<GaussRat>({std::move(v)}); }

BiPoly tridiag_sym_char(const std::vector<UniPoly<GaussRat>>& diag,
                        const std::vector<UniPoly<GaussRat>>& off, const std::string& pname) {
    UniPoly<UniPoly<GaussRat>> p = tridiag_char_poly(diag, off);
    std::vector<UniPoly<Rat>> rows;
    rows.reserve(p.c.size());
    for (const auto& cf : p.c) rows.push_back(real_part_exact(cf));
    return BiPoly::from_f_coeffs(rows, "F", pname);
}

std::string param_label(const std::string& free) { return free.empty() ? "p" : free; }

// Linear form c0 + c1·p, symbolic when p is the free parameter.
UniPoly<GaussRat> linear_in(const std::string& pname, const Rat& c0, const Rat& c1,
                            const ParamPoint& fixed, const std::string& free) {
    if (pname == free) {
        UniPoly<GaussRat> r({GaussRat(c0), GaussRat(c1)});
        return r;
    }
    Rat v = require_param(fixed, pname).exact;
    return sym_const(GaussRat(c0 + c1 * v));
}

// i·(c1·p), symbolic when p is the free parameter.
UniPoly<GaussRat> imag_linear_in(const std::string& pname, const Rat& c1, const ParamPoint& fixed,
                                 const std::string& free) {
    if (pname == free) {
        UniPoly<GaussRat> r({GaussRat(), GaussRat(Rat(0), c1)});
        return r;
    }
    Rat v = require_param(fixed, pname).exact;
    return sym_const(GaussRat(Rat(0), c1 * v));
}

void check_free_name(const std::string& free, const std::vector<std::string>& names) {
    if (free.empty()) return;
    for (const auto& n : names)
        if (n == free) return;
    throw BadParamPoint("family has no parameter '" + free + "'");
}

BiPoly latti_sym_char(int N, const ParamPoint& fixed, const std::string& free) {
    check_free_name(free, {"rho", "w"});
    const int K = N / 2;
    std::vector<UniPoly<GaussRat>> d(N);
    std::vector<UniPoly<GaussRat>> off(N - 1, sym_const(GaussRat(1)));
    d[0] = imag_linear_in("rho", Rat(-1), fixed, free);
    d[K - 1] = d[K - 1] + imag_linear_in("w", Rat(-1), fixed, free);
    d[K] = d[K] + imag_linear_in("w", Rat(1), fixed, free);
    d[N - 1] = d[N - 1] + imag_linear_in("rho", Rat(1), fixed, free);
    return tridiag_sym_char(d, off, param_label(free));
}

BiPoly h6_sym_char(const ParamPoint& fixed, const std::string& free) {
    check_free_name(free, {"w"});
    std::vector<UniPoly<GaussRat>> d(6);
    std::vector<UniPoly<GaussRat>> off(5, sym_const(GaussRat(1)));
    for (int i = 0; i < 3; ++i) d[i] = imag_linear_in("w", Rat(-1), fixed, free);
    for (int i = 3; i < 6; ++i) d[i] = imag_linear_in("w", Rat(1), fixed, free);
    return tridiag_sym_char(d, off, param_label(free));
}

BiPoly ha6_sym_char(const ParamPoint& fixed, const std::string& free) {
    check_free_name(free, {"g", "lambda"});
    std::vector<UniPoly<GaussRat>> d(6);
    std::vector<UniPoly<GaussRat>> off(5);
    d[0] = linear_in("g", Rat(-5), Rat(1), fixed, free);
    d[1] = sym_const(GaussRat(-3));
    d[2] = sym_const(GaussRat(-1));
    d[3] = sym_const(GaussRat(1));
    d[4] = sym_const(GaussRat(3));
    d[5] = linear_in("g", Rat(5), Rat(-1), fixed, free);
    off[0] = linear_in("lambda", Rat(-5), Rat(-5), fixed, free);
    off[1] = linear_in("lambda", Rat(-8), Rat(-8), fixed, free);
    off[2] = linear_in("lambda", Rat(-9), Rat(-9), fixed, free);
    off[3] = off[1];
    off[4] = off[0];
    return tridiag_sym_char(d, off, param_label(free));
}

BiPoly jordan_sym_char(const std::vector<std::pair<int, cplx>>& blocks, const std::string& free) {
    UniPoly<GaussRat> p({GaussRat(1)});
    for (const auto& [size, eta] : blocks) {
        UniPoly<GaussRat> lin({GaussRat() - gauss_from_complex(eta), GaussRat(1)});
        for (int i = 0; i < size; ++i) p = p * lin;
    }
    std::vector<UniPoly<Rat>> rows;
    rows.reserve(p.c.size());
    for (const auto& cf : p.c) {
        if (!is_zero(cf.im))
            throw NotPolynomialInParam("Jordan sum with nonreal eigenvalues has no real table");
        rows.push_back(UniPoly<Rat>({cf.re}));
    }
    return BiPoly::from_f_coeffs(rows, "F", param_label(free));
}

}  // namespace

BiPoly symbolic_char_poly(const ModelFamily& family, const ParamPoint& fixed,
                          const std::string& free) {
    if (!family.sym_char)
        throw NotPolynomialInParam("family '" + family.name + "' has no exact polynomial path");
    return family.sym_char(fixed, free);
}

ModelFamily make_family(const std::string& name, int dim,
                        const std::vector<std::pair<int, cplx>>& blocks) {
    ModelFamily f;
    f.name = name;
    if (name == "latti") {
        f.dim = dim ? dim : 10;
        check_latti_dim(f.dim);
        f.param_names = {"rho", "w"};
        f.symmetry_tags = {"PT"};
        int N = f.dim;
        f.builder = [N](const ParamPoint& p) {
            return build_latti(N, require_param(p, "rho"), require_param(p, "w"));
        };
        f.sym_char = [N](const ParamPoint& fixed, const std::string& free) {
            return latti_sym_char(N, fixed, free);
        };
    } else if (name == "mytoy") {
        f.dim = dim ? dim : 10;
        check_latti_dim(f.dim);
        f.param_names = {"w"};
        f.symmetry_tags = {"PT"};
        int J = (f.dim - 2) / 2;
        f.builder = [J](const ParamPoint& p) { return build_mytoy(J, require_param(p, "w")); };
        int N = f.dim;
        f.sym_char = [N](const ParamPoint& fixed, const std::string& free) {
            ParamPoint aug = fixed;
            aug["rho"] = ParamValue(Rat(0));
            return latti_sym_char(N, aug, free);
        };
    } else if (name == "h6") {
        if (dim && dim != 6) throw EpcatError("h6 is six-dimensional");
        f.dim = 6;
        f.param_names = {"w"};
        f.symmetry_tags = {"PT"};
        f.builder = [](const ParamPoint& p) { return build_h6(require_param(p, "w")); };
        f.sym_char = [](const ParamPoint& fixed, const std::string& free) {
            return h6_sym_char(fixed, free);
        };
    } else if (name == "ha6") {
        if (dim && dim != 6) throw EpcatError("ha6 is six-dimensional");
        f.dim = 6;
        f.param_names = {"g", "lambda"};
        f.entry_kind = ModelFamily::EntryKind::Float;
        f.symmetry_tags = {"real-asymmetric", "hermitian-at-special-point"};
        f.builder = [](const ParamPoint& p) {
            return build_ha6(require_param(p, "g").d, require_param(p, "lambda").d);
        };
        f.sym_char = [](const ParamPoint& fixed, const std::string& free) {
            return ha6_sym_char(fixed, free);
        };
    } else if (name == "jordan") {
        if (blocks.empty()) throw EpcatError("jordan family needs a block list");
        f.dim = 0;
        for (const auto& [size, eta] : blocks) {
            (void)eta;
            f.dim += size;
        }
        if (dim && dim != f.dim) throw EpcatError("dimension disagrees with block sizes");
        f.builder = [blocks](const ParamPoint&) { return build_jordan_sum(blocks); };
        f.sym_char = [blocks](const ParamPoint&, const std::string& free) {
            return jordan_sym_char(blocks, free);
        };
    } else {
        throw UnknownModel("unknown model family '" + name + "'");
    }
    return f;
}

std::vector<std::string> family_names() { return {"latti", "mytoy", "h6", "ha6", "jordan"}; }

}  // namespace epcat
