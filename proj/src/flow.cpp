#include "epcat/flow.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <limits>
#include <map>
#include <optional>

#include "epcat/errors.hpp"
#include "epcat/poly.hpp"
#include "epcat/tolerances.hpp"

namespace epcat {

namespace {

constexpr double kHysteresis = 10.0;

// minimum-cost perfect matching via the potentials method; returns for each
// row the assigned column
std::vector<int> hungarian(const std::vector<std::vector<double>>& a) {
    const int n = static_cast<int>(a.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

void check_sweep_pre(const ModelFamily& family, const std::string& free_param,
                     const std::vector<double>& grid) {
    if (std::find(family.param_names.begin(), family.param_names.end(), free_param) ==
        family.param_names.end())
        throw BadParamPoint("family " + family.name + " has no parameter " + free_param);
    if (grid.size() < 2) throw BadParamPoint("sweep grid needs at least two points");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw BadParamPoint("sweep grid must be sorted");
}

std::optional<std::vector<cplx>> spectrum_or_invalid(const ModelFamily& family,
                                                     const ParamPoint& fixed,
                                                     const std::string& free_param, double x) {
    ParamPoint at = fixed;
    at[free_param] = ParamValue(x);
    try {
        EigenDecomp ed = eigen(family.builder(at));
        if (!ed.converged) return std::nullopt;
        return ed.eigenvalues;
    } catch (const NonConvergence&) {
        return std::nullopt;
    }
}

bool cplx_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

BranchSet sweep(const ModelFamily& family, const ParamPoint& fixed, const std::string& free_param,
                const std::vector<double>& grid) {
    check_sweep_pre(family, free_param, grid);
    const int G = static_cast<int>(grid.size());

    BranchSet bs;
    bs.param_grid = grid;
    std::vector<std::optional<std::vector<cplx>>> spectra(G);
    for (int k = 0; k < G; ++k) {
        spectra[k] = spectrum_or_invalid(family, fixed, free_param, grid[k]);
        if (!spectra[k]) {
            bs.invalid_points.push_back(k);
            std::cerr << "epcat: eigensolve failed at " << free_param << "=" << grid[k]
                      << "; interpolating across the point\n";
        }
    }
    int first_valid = 0;
    while (first_valid < G && !spectra[first_valid]) ++first_valid;
    if (first_valid == G) throw NonConvergence("every sweep point failed to converge");
    const int N = static_cast<int>(spectra[first_valid]->size());

    bs.branches.assign(N, std::vector<cplx>(G));
    std::vector<cplx> current = *spectra[first_valid];
    std::sort(current.begin(), current.end(), cplx_less);
    for (int b = 0; b < N; ++b) bs.branches[b][first_valid] = current[b];
    for (int k = first_valid - 1; k >= 0; --k)
        for (int b = 0; b < N; ++b) bs.branches[b][k] = current[b];

    std::vector<int> pending;  // invalid indices awaiting interpolation
    int last_valid = first_valid;
    for (int k = first_valid + 1; k < G; ++k) {
        if (!spectra[k]) {
            pending.push_back(k);
            continue;
        }
        const std::vector<cplx>& vals = *spectra[k];
        std::vector<std::vector<double>> cost(N, std::vector<double>(N));
        for (int b = 0; b < N; ++b)
            for (int j = 0; j < N; ++j) cost[b][j] = std::abs(current[b] - vals[j]);
        std::vector<int> assign = hungarian(cost);
        for (int b = 0; b < N; ++b) {
            bs.branches[b][k] = vals[assign[b]];
            for (int idx : pending) {
                double t = static_cast<double>(idx - last_valid) / (k - last_valid);
                bs.branches[b][idx] =
                    bs.branches[b][last_valid] * (1.0 - t) + bs.branches[b][k] * t;
            }
            current[b] = vals[assign[b]];
        }
        pending.clear();
        last_valid = k;
    }
    for (int idx : pending)
        for (int b = 0; b < N; ++b) bs.branches[b][idx] = bs.branches[b][last_valid];

    const double tol = tols().real;
    bs.reality_mask.assign(N, std::vector<bool>(G, false));
    for (int b = 0; b < N; ++b) {
        bool real_state = std::abs(bs.branches[b][0].imag()) <= tol;
        for (int k = 0; k < G; ++k) {
            double im = std::abs(bs.branches[b][k].imag());
            if (real_state && im > kHysteresis * tol) real_state = false;
            if (!real_state && im <= tol) real_state = true;
            bs.reality_mask[b][k] = real_state;
        }
    }

    // pairs leaving the real axis between k and k+1, located by bisection on
    // the two eigenvalues nearest the estimated collision energy
    for (int k = 0; k + 1 < G; ++k) {
        bool gap_invalid = !spectra[k] || !spectra[k + 1];
        if (gap_invalid) continue;
        std::vector<int> leaving;
        for (int b = 0; b < N; ++b)
            if (bs.reality_mask[b][k] && !bs.reality_mask[b][k + 1]) leaving.push_back(b);
        std::vector<bool> taken(leaving.size(), false);
        for (size_t ia = 0; ia < leaving.size(); ++ia) {
            if (taken[ia]) continue;
            int a = leaving[ia];
            int partner = -1;
            double best = std::numeric_limits<double>::infinity();
            for (size_t ib = ia + 1; ib < leaving.size(); ++ib) {
                if (taken[ib]) continue;
                int b2 = leaving[ib];
                double d = std::abs(bs.branches[a][k + 1] - std::conj(bs.branches[b2][k + 1]));
                if (d < best) {
                    best = d;
                    partner = static_cast<int>(ib);
                }
            }
            if (partner < 0) continue;
            taken[ia] = true;
            taken[partner] = true;
            int b2 = leaving[partner];

            double mu = 0.5 * (bs.branches[a][k].real() + bs.branches[b2][k].real());
            auto pair_real = [&](double x) {
                auto sp = spectrum_or_invalid(family, fixed, free_param, x);
                if (!sp) return true;  // treat a failed probe as not-yet-complex
                std::sort(sp->begin(), sp->end(), [&](const cplx& p, const cplx& q) {
                    return std::abs(p - cplx(mu, 0)) < std::abs(q - cplx(mu, 0));
                });
                return std::abs((*sp)[0].imag()) <= kHysteresis * tol &&
                       std::abs((*sp)[1].imag()) <= kHysteresis * tol;
            };
            double lo = grid[k], hi = grid[k + 1];
            for (int it = 0; it < 64 && hi - lo > 1e-9; ++it) {
                double mid = 0.5 * (lo + hi);
                if (pair_real(mid))
                    lo = mid;
                else
                    hi = mid;
            }
            MergerEvent ev;
            ev.param_lo = lo;
            ev.param_hi = hi;
            ev.location = 0.5 * (lo + hi);
            ev.branch_a = std::min(a, b2);
            ev.branch_b = std::max(a, b2);
            bs.merger_events.push_back(ev);
        }
    }
    std::sort(bs.merger_events.begin(), bs.merger_events.end(),
              [](const MergerEvent& a, const MergerEvent& b) { return a.location < b.location; });
    return bs;
}

namespace {

bool all_real_at(const ModelFamily& family, const ParamPoint& fixed, const std::string& free_param,
                 double x) {
    ParamPoint at = fixed;
    at[free_param] = ParamValue(x);
    EigenDecomp ed = eigen(family.builder(at));
    if (!ed.converged) throw NonConvergence("eigensolve failed during interval refinement");
    for (const auto& z : ed.eigenvalues)
        if (std::abs(z.imag()) > tols().real) return false;
    return true;
}

}  // namespace

std::vector<RealInterval> physical_interval(const ModelFamily& family, const ParamPoint& fixed,
                                            const std::string& free_param, double lo, double hi,
                                            int grid) {
    if (std::find(family.param_names.begin(), family.param_names.end(), free_param) ==
        family.param_names.end())
        throw BadParamPoint("family " + family.name + " has no parameter " + free_param);
    if (!(lo < hi)) throw BadParamPoint("empty parameter range");
    const int G = std::max(4, grid);
    std::vector<double> xs(G + 1);
    std::vector<char> ok(G + 1);
    for (int i = 0; i <= G; ++i) {
        xs[i] = lo + (hi - lo) * i / G;
        ok[i] = all_real_at(family, fixed, free_param, xs[i]) ? 1 : 0;
    }
    auto refine = [&](double a, double b, bool a_real) {
        while (b - a > 1e-7) {
            double mid = 0.5 * (a + b);
            if (all_real_at(family, fixed, free_param, mid) == a_real)
                a = mid;
            else
                b = mid;
        }
        return 0.5 * (a + b);
    };
    std::vector<RealInterval> out;
    int i = 0;
    while (i <= G) {
        if (!ok[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 <= G && ok[j + 1]) ++j;
        RealInterval iv;
        iv.lo = i == 0 ? lo : refine(xs[i - 1], xs[i], false);
        iv.hi = j == G ? hi : refine(xs[j], xs[j + 1], true);
        out.push_back(iv);
        i = j + 1;
    }
    return out;
}

namespace {

struct NodeField {
    int real_flag;  // 1 real, 0 complex, -1 invalid
    double s;       // squared max imaginary part minus squared threshold
};

NodeField node_field(const ModelFamily& family, double x1, double x2, const std::string& p1,
                     const std::string& p2) {
    ParamPoint at;
    at[p1] = ParamValue(x1);
    at[p2] = ParamValue(x2);
    NodeField nf{-1, 0};
    try {
        EigenDecomp ed = eigen(family.builder(at));
        if (!ed.converged) return nf;
        double mx = 0;
        for (const auto& z : ed.eigenvalues) mx = std::max(mx, std::abs(z.imag()));
        nf.real_flag = mx <= tols().real ? 1 : 0;
        nf.s = mx * mx - tols().real * tols().real;
    } catch (const EpcatError&) {
    }
    return nf;
}

using Pt = std::pair<double, double>;

long long quantize(double v, double span) {
    return static_cast<long long>(std::llround(v / (1e-9 * span)));
}

}  // namespace

DomainMap domain_map(const ModelFamily& family, const std::vector<double>& grid1,
                     const std::vector<double>& grid2) {
    if (family.param_names.size() != 2)
        throw BadParamPoint("domain mapping needs a two-parameter family; " + family.name +
                            " has " + std::to_string(family.param_names.size()));
    if (grid1.empty() || grid2.empty()) throw BadParamPoint("empty domain grid");
    if (!std::is_sorted(grid1.begin(), grid1.end()) || !std::is_sorted(grid2.begin(), grid2.end()))
        throw BadParamPoint("domain grids must be sorted");

    DomainMap dm;
    dm.param1 = family.param_names[0];
    dm.param2 = family.param_names[1];
    dm.grid1 = grid1;
    dm.grid2 = grid2;
    const int n1 = static_cast<int>(grid1.size()), n2 = static_cast<int>(grid2.size());
    std::vector<std::vector<NodeField>> field(n1, std::vector<NodeField>(n2));
    dm.all_real.assign(n1, std::vector<int>(n2, -1));
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            field[i][j] = node_field(family, grid1[i], grid2[j], dm.param1, dm.param2);
            dm.all_real[i][j] = field[i][j].real_flag;
        }

    // marching squares on the sign of the imaginary-part field; corners with
    // failed eigensolves exclude their cells from the contour
    double span1 = std::max(1e-12, grid1.back() - grid1.front());
    double span2 = std::max(1e-12, grid2.back() - grid2.front());
    std::vector<std::pair<Pt, Pt>> segments;
    auto edge_point = [](double xa, double ya, double sa, double xb, double yb, double sb) {
        double t = sa == sb ? 0.5 : sa / (sa - sb);
        t = std::clamp(t, 0.0, 1.0);
        return Pt{xa + t * (xb - xa), ya + t * (yb - ya)};
    };
    for (int i = 0; i + 1 < n1; ++i)
        for (int j = 0; j + 1 < n2; ++j) {
            const NodeField &bl = field[i][j], &br = field[i + 1][j], &tr = field[i + 1][j + 1],
                            &tl = field[i][j + 1];
            if (bl.real_flag < 0 || br.real_flag < 0 || tr.real_flag < 0 || tl.real_flag < 0)
                continue;
            int code = bl.real_flag | (br.real_flag << 1) | (tr.real_flag << 2) |
                       (tl.real_flag << 3);
            if (code == 0 || code == 15) continue;
            double x0 = grid1[i], x1 = grid1[i + 1], y0 = grid2[j], y1 = grid2[j + 1];
            // edge 0: bottom, 1: right, 2: top, 3: left
            auto ep = [&](int e) {
                switch (e) {
                    case 0: return edge_point(x0, y0, bl.s, x1, y0, br.s);
                    case 1: return edge_point(x1, y0, br.s, x1, y1, tr.s);
                    case 2: return edge_point(x1, y1, tr.s, x0, y1, tl.s);
                    default: return edge_point(x0, y1, tl.s, x0, y0, bl.s);
                }
            };
            auto emit = [&](int e1, int e2) { segments.emplace_back(ep(e1), ep(e2)); };
            switch (code) {
                case 1: emit(3, 0); break;
                case 2: emit(0, 1); break;
                case 3: emit(3, 1); break;
                case 4: emit(1, 2); break;
                case 6: emit(0, 2); break;
                case 7: emit(3, 2); break;
                case 8: emit(2, 3); break;
                case 9: emit(0, 2); break;
                case 11: emit(1, 2); break;
                case 12: emit(1, 3); break;
                case 13: emit(0, 1); break;
                case 14: emit(3, 0); break;
                case 5:
                case 10: {
                    double center = 0.25 * (bl.s + br.s + tr.s + tl.s);
                    bool center_real = center <= 0;
                    if (code == 5) {
                        if (center_real) {
                            emit(0, 1);
                            emit(2, 3);
                        } else {
                            emit(3, 0);
                            emit(1, 2);
                        }
                    } else {
                        if (center_real) {
                            emit(3, 0);
                            emit(1, 2);
                        } else {
                            emit(0, 1);
                            emit(2, 3);
                        }
                    }
                    break;
                }
                default: break;
            }
        }

    // chain segments into polylines by shared endpoints
    std::map<std::pair<long long, long long>, std::vector<int>> at_point;
    auto key = [&](const Pt& p) {
        return std::make_pair(quantize(p.first, span1), quantize(p.second, span2));
    };
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
        at_point[key(segments[s].first)].push_back(s);
        at_point[key(segments[s].second)].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);
    for (int s0 = 0; s0 < static_cast<int>(segments.size()); ++s0) {
        if (used[s0]) continue;
        std::vector<Pt> line{segments[s0].first, segments[s0].second};
        used[s0] = true;
        for (int dir = 0; dir < 2; ++dir) {
            bool grew = true;
            while (grew) {
                grew = false;
                Pt tip = dir == 0 ? line.back() : line.front();
                for (int s : at_point[key(tip)]) {
                    if (used[s]) continue;
                    Pt next = key(segments[s].first) == key(tip) ? segments[s].second
                                                                 : segments[s].first;
                    used[s] = true;
                    if (dir == 0)
                        line.push_back(next);
                    else
                        line.insert(line.begin(), next);
                    grew = true;
                    break;
                }
            }
        }
        dm.boundary_polylines.push_back(std::move(line));
    }
    return dm;
}

std::vector<double> cheb_spectrum(int J, double w) {
    if (J < 1) throw EpcatError("chain index must be at least 1");
    if (std::abs(w) > 1.0) throw WOutOfRange("coupling magnitude above 1 has no real closure");
    const double c = std::sqrt(std::max(0.0, 1.0 - w * w));
    UniPoly<cplx> p = to_cplx_poly(chebyshev_U(J + 1)) - cplx(c, 0) * to_cplx_poly(chebyshev_U(J));
    std::vector<double> out;
    for (const auto& r : roots(p)) {
        out.push_back(2.0 * r.real());
        out.push_back(-2.0 * r.real());
    }
    std::sort(out.begin(), out.end());
    if (static_cast<int>(out.size()) != 2 * J + 2)
        throw NonConvergence("closure polynomial lost roots");
    return out;
}

}  // namespace epcat
