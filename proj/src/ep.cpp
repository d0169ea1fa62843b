#include "epcat/ep.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <future>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <thread>
#include <tuple>
#include <utility>

#include "eigen_bridge.hpp"
#include "epcat/errors.hpp"
#include "epcat/poly.hpp"
#include "epcat/tolerances.hpp"

namespace epcat {

namespace {

// Real eigenvalues carry rounding noise near 1e-15 while complexified pairs
// near a coalescence sit orders of magnitude higher, so a loose cut is safe.
constexpr double kImagTol = 1e-6;
constexpr double kStartRadiusFactor = 0.1;
constexpr double kConditionCap = 1e12;
constexpr long kMaxDen = 1000000;

double cluster_scale(const CMatrix& H) { return std::max(1.0, norm_2(H)); }

std::vector<std::vector<int>> union_find_clusters(const std::vector<cplx>& vals,
                                                  const std::vector<int>& idx, double radius) {
    const int m = static_cast<int>(idx.size());
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (std::abs(vals[idx[i]] - vals[idx[j]]) <= radius) parent[find(i)] = find(j);
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < m; ++i) groups[find(i)].push_back(idx[i]);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

struct Stair {
    std::vector<int> dims;    // cumulative kernel-staircase dimensions
    std::vector<EMat> bases;  // orthonormal basis of each staircase space
    EMat A;                   // shifted matrix H - eta*I
    cplx eta;
    double thr = 0;           // rank threshold the staircase was run with
};

enum class StairOutcome { Ok, Stalled, Overflow };

// Kernel staircase of A = H - eta*I: level k holds the vectors A maps into
// level k-1. Dimensions give the Weyr characteristic, hence the block sizes.
StairOutcome run_staircase(const EMat& A, int m, double delta, double scale, Stair& out) {
    const int n = static_cast<int>(A.rows());
    const double thr = scale * std::min(1e-4, std::max(tols().rank, 3.0 * (delta / scale) * (delta / scale)));
    out.A = A;
    out.thr = thr;
    out.dims.clear();
    out.bases.clear();
    EMat prev(n, 0);
    int d_prev = 0;
    for (int k = 1; k <= m; ++k) {
        EMat M = A;
        if (prev.cols() > 0) M -= prev * (prev.adjoint() * A);
        Eigen::JacobiSVD<EMat> svd(M, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        int d = 0;
        for (int i = 0; i < n; ++i)
            if (sv(i) <= thr) ++d;
        if (k == 1 && m == 1 && d == 0) d = 1;  // a simple eigenvalue always has an eigenvector
        if (d > m) return StairOutcome::Overflow;
        if (d <= d_prev) return d_prev == m ? StairOutcome::Ok : StairOutcome::Stalled;
        EMat basis = svd.matrixV().rightCols(d);
        out.dims.push_back(d);
        out.bases.push_back(basis);
        prev = basis;
        d_prev = d;
        if (d == m) return StairOutcome::Ok;
    }
    return StairOutcome::Stalled;
}

std::vector<int> weyr_to_sizes(const std::vector<int>& dims) {
    const int p = static_cast<int>(dims.size());
    std::vector<int> w(p);
    for (int k = 0; k < p; ++k) w[k] = dims[k] - (k ? dims[k - 1] : 0);
    std::vector<int> sizes;
    for (int k = p; k >= 1; --k) {
        int count = w[k - 1] - (k < p ? w[k] : 0);
        if (count < 0) return {};  // non-monotone Weyr sequence, staircase inconsistent
        for (int c = 0; c < count; ++c) sizes.push_back(k);
    }
    return sizes;
}

struct ClusterData {
    cplx eta;
    int m = 0;
    std::vector<int> sizes;  // descending
    Stair stair;
};

void analyze_cluster(const EMat& He, const std::vector<cplx>& vals, std::vector<int> members,
                     double radius, double floor_radius, double scale,
                     std::vector<ClusterData>& out) {
    const int m = static_cast<int>(members.size());
    cplx mean(0, 0);
    for (int i : members) mean += vals[i];
    mean /= static_cast<double>(m);
    double delta = 0;
    for (int i : members)
        for (int j : members) delta = std::max(delta, std::abs(vals[i] - vals[j]));

    ClusterData cd;
    cd.eta = mean;
    cd.m = m;
    if (m == 1) {
        Stair st;
        EMat A = He - mean * EMat::Identity(He.rows(), He.cols());
        if (run_staircase(A, 1, 0.0, scale, st) != StairOutcome::Ok)
            throw NonConvergence("no eigenvector found for a simple eigenvalue");
        st.eta = mean;
        cd.stair = std::move(st);
        cd.sizes = {1};
        out.push_back(std::move(cd));
        return;
    }

    Stair st;
    EMat A = He - mean * EMat::Identity(He.rows(), He.cols());
    StairOutcome res = run_staircase(A, m, delta, scale, st);
    std::vector<int> sizes = res == StairOutcome::Ok ? weyr_to_sizes(st.dims) : std::vector<int>{};
    // A perturbed size-k block scatters its eigenvalues like the k-th root of the
    // perturbation, so a wider spread means the small singular values came from
    // elsewhere in the matrix and the cluster must be split, not called defective.
    if (!sizes.empty() && sizes.front() >= 2 &&
        delta > 3.0 * scale * std::pow(st.thr / scale, 1.0 / sizes.front()))
        sizes.clear();
    if (res == StairOutcome::Ok && !sizes.empty()) {
        st.eta = mean;
        cd.stair = std::move(st);
        cd.sizes = std::move(sizes);
        out.push_back(std::move(cd));
        return;
    }

    double next = radius / 10.0;
    if (next < floor_radius)
        throw AmbiguousClustering("eigenvalue cluster of size " + std::to_string(m) +
                                  " has no consistent block structure at the smallest radius");
    for (auto& sub : union_find_clusters(vals, members, next))
        analyze_cluster(He, vals, std::move(sub), next, floor_radius, scale, out);
}

bool eta_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

std::vector<ClusterData> analyze(const CMatrix& H,
                                 const std::optional<std::vector<cplx>>& eta_candidates) {
    H.check_valid();
    EigenDecomp ed = eigen(H);
    if (!ed.converged) throw NonConvergence("eigenvalue iteration failed");
    const double scale = cluster_scale(H);
    const double radius = kStartRadiusFactor * scale;
    const double floor_radius = tols().cluster * scale;
    EMat He = to_eigen(H);

    std::vector<std::vector<int>> initial;
    std::vector<int> all(H.n);
    std::iota(all.begin(), all.end(), 0);
    if (eta_candidates && !eta_candidates->empty()) {
        std::map<int, std::vector<int>> by_seed;
        std::vector<int> leftover;
        for (int i = 0; i < H.n; ++i) {
            int best = -1;
            double bd = radius;
            for (int s = 0; s < static_cast<int>(eta_candidates->size()); ++s) {
                double d = std::abs(ed.eigenvalues[i] - (*eta_candidates)[s]);
                if (d <= bd) {
                    bd = d;
                    best = s;
                }
            }
            if (best >= 0)
                by_seed[best].push_back(i);
            else
                leftover.push_back(i);
        }
        for (auto& [s, members] : by_seed) initial.push_back(std::move(members));
        for (int i : leftover) initial.push_back({i});
    } else {
        initial = union_find_clusters(ed.eigenvalues, all, radius);
    }

    std::vector<ClusterData> clusters;
    for (auto& members : initial)
        analyze_cluster(He, ed.eigenvalues, std::move(members), radius, floor_radius, scale,
                        clusters);
    std::sort(clusters.begin(), clusters.end(),
              [](const ClusterData& a, const ClusterData& b) { return eta_less(a.eta, b.eta); });
    return clusters;
}

Classification to_classification(const std::vector<ClusterData>& clusters) {
    Classification cls;
    for (const auto& cd : clusters) {
        EigStructure es;
        es.eta = cd.eta;
        es.alg_mult = cd.m;
        es.block_sizes = cd.sizes;
        cls.eigenvalues.push_back(std::move(es));
        for (int s : cd.sizes) {
            cls.partition.push_back(s);
            ++cls.geometric_multiplicity;
            if (s >= 2) cls.defective = true;
        }
    }
    std::sort(cls.partition.begin(), cls.partition.end(), std::greater<int>());
    return cls;
}

// Chain generators for blocks of size k: vectors of staircase level k that are
// independent of level k-1 and of the height-k members of the longer chains.
std::vector<std::pair<int, Eigen::VectorXcd>> build_chains(const ClusterData& cd) {
    const EMat& A = cd.stair.A;
    const int n = static_cast<int>(A.rows());
    const int p = static_cast<int>(cd.stair.dims.size());
    std::vector<int> w(p);
    for (int k = 0; k < p; ++k) w[k] = cd.stair.dims[k] - (k ? cd.stair.dims[k - 1] : 0);

    std::vector<std::pair<int, Eigen::VectorXcd>> generators;  // (chain length, generator)
    for (int k = p; k >= 1; --k) {
        int need = w[k - 1] - (k < p ? w[k] : 0);
        if (need == 0) continue;
        std::vector<Eigen::VectorXcd> forbidden;
        if (k >= 2) {
            const EMat& below = cd.stair.bases[k - 2];
            for (int c = 0; c < below.cols(); ++c) forbidden.push_back(below.col(c));
        }
        for (const auto& [len, g] : generators) {
            Eigen::VectorXcd t = g;
            for (int j = 0; j < len - k; ++j) t = A * t;
            forbidden.push_back(t);
        }
        EMat G = cd.stair.bases[k - 1];
        EMat M = G;
        if (!forbidden.empty()) {
            EMat F(n, static_cast<int>(forbidden.size()));
            for (int c = 0; c < F.cols(); ++c) F.col(c) = forbidden[c];
            Eigen::HouseholderQR<EMat> qr(F);
            EMat Qf = qr.householderQ() * EMat::Identity(n, F.cols());
            M = G - Qf * (Qf.adjoint() * G);
        }
        Eigen::JacobiSVD<EMat> svd(M, Eigen::ComputeThinV);
        for (int i = 0; i < need; ++i) {
            Eigen::VectorXcd x = G * svd.matrixV().col(i);
            generators.emplace_back(k, x);
        }
    }
    return generators;
}

double rational_digits_err(double x, const Rat& q) {
    return std::abs(x - to_double(q));
}

}  // namespace

Classification classify_ep(const CMatrix& H,
                           const std::optional<std::vector<cplx>>& eta_candidates) {
    return to_classification(analyze(H, eta_candidates));
}

CanonicalForm canonical_form(const CMatrix& H) {
    std::vector<ClusterData> clusters = analyze(H, std::nullopt);
    CanonicalForm cf;
    cf.classification = to_classification(clusters);
    const int n = H.n;
    EMat Q(n, n);
    int col = 0;
    for (const auto& cd : clusters) {
        auto generators = build_chains(cd);
        // longest chains first, matching the descending block-size convention
        std::stable_sort(generators.begin(), generators.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [len, g] : generators) {
            std::vector<Eigen::VectorXcd> chain(len);
            chain[len - 1] = g;
            for (int j = len - 2; j >= 0; --j) chain[j] = cd.stair.A * chain[j + 1];
            double peak = 0;
            for (const auto& v : chain) peak = std::max(peak, v.norm());
            if (peak == 0) peak = 1;
            for (auto& v : chain) v /= peak;
            for (const auto& v : chain) Q.col(col++) = v;
            cf.blocks.emplace_back(len, cd.eta);
        }
    }
    if (col != n) throw NonConvergence("chain construction did not fill the basis");

    Eigen::JacobiSVD<EMat> svd(Q);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) <= 0 || sv(0) / sv(n - 1) > kConditionCap) {
        cf.status = "ill-conditioned-chains";
        cf.residual = -1;
        return cf;
    }

    EMat B = EMat::Zero(n, n);
    int pos = 0;
    for (const auto& [size, eta] : cf.blocks) {
        for (int j = 0; j < size; ++j) {
            B(pos + j, pos + j) = eta;
            if (j + 1 < size) B(pos + j, pos + j + 1) = cplx(1, 0);
        }
        pos += size;
    }
    EMat He = to_eigen(H);
    Eigen::PartialPivLU<EMat> lu(Q);
    EMat R = lu.solve(He * Q) - B;
    cf.residual = R.norm() / std::max(1.0, He.norm());
    cf.transition_matrix = from_eigen(Q);
    cf.status = "ok";
    return cf;
}

std::optional<Rat> rat_reconstruct(double x, long max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    double t = x;
    long long h0 = 1, h1 = static_cast<long long>(std::floor(t));
    long long k0 = 0, k1 = 1;
    t -= std::floor(t);
    for (int iter = 0; iter < 64; ++iter) {
        Rat q = Rat(static_cast<long>(h1)) / Rat(static_cast<long>(k1));
        if (rational_digits_err(x, q) <= 1e-12 * std::max(1.0, std::abs(x))) return q;
        if (t < 1e-15) break;
        t = 1.0 / t;
        long long a = static_cast<long long>(std::floor(t));
        t -= std::floor(t);
        long long h2 = a * h1 + h0;
        long long k2 = a * k1 + k0;
        if (k2 > max_den || k2 <= 0) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    return std::nullopt;
}

namespace {

int count_real(const std::vector<cplx>& lam, double scale) {
    int c = 0;
    for (const auto& z : lam)
        if (std::abs(z.imag()) <= kImagTol * scale) ++c;
    return c;
}

struct Candidate {
    double location = 0;
    std::optional<Rat> exact;
};

std::optional<EpRecord> make_record(const ModelFamily& family, const ParamPoint& fixed,
                                    const std::string& free_param, const Candidate& cand,
                                    double probe_delta) {
    ParamPoint at = fixed;
    at[free_param] = cand.exact ? ParamValue(*cand.exact) : ParamValue(cand.location);
    CMatrix H = family.builder(at);
    Classification cls = classify_ep(H);
    if (!cls.defective) return std::nullopt;  // degeneracy with a full eigenspace

    EpRecord rec;
    rec.family = family.name;
    rec.fixed = fixed;
    rec.free_param = free_param;
    rec.location = cand.location;
    rec.location_exact = cand.exact;
    for (const auto& es : cls.eigenvalues)
        if (es.alg_mult >= 2) rec.degenerate_eigenvalues.emplace_back(es.eta, es.alg_mult);
    rec.partition = cls.partition;
    rec.geometric_multiplicity = cls.geometric_multiplicity;

    const double scale = cluster_scale(H);
    ParamPoint below = fixed;
    below[free_param] = ParamValue(cand.location - probe_delta);
    ParamPoint above = fixed;
    above[free_param] = ParamValue(cand.location + probe_delta);
    rec.real_count_below = count_real(eigen(family.builder(below)).eigenvalues, scale);
    rec.real_count_above = count_real(eigen(family.builder(above)).eigenvalues, scale);
    rec.is_on_reality_boundary =
        (rec.real_count_below == H.n) != (rec.real_count_above == H.n);
    return rec;
}

std::vector<EpRecord> find_eps_exact(const ModelFamily& family, const ParamPoint& fixed,
                                     const std::string& free_param, const FindOptions& opt) {
    BiPoly chi = symbolic_char_poly(family, fixed, free_param);
    UniPoly<Rat> disc = discriminant_in_F(chi);
    if (epcat::is_zero(disc))
        throw DegenerateInput("characteristic polynomial has a repeated factor everywhere");

    auto roots = real_roots_with_multiplicity(disc);
    std::vector<double> all_locs;
    for (const auto& [r, mult] : roots) all_locs.push_back(r);

    std::vector<EpRecord> out;
    for (const auto& [r, mult] : roots) {
        if (r < opt.lo || r > opt.hi) continue;
        Candidate cand;
        cand.location = r;
        if (auto q = rat_reconstruct(r, kMaxDen)) {
            if (epcat::is_zero(eval(disc, *q))) {
                cand.exact = q;
                cand.location = to_double(*q);
            }
        }
        double gap = std::numeric_limits<double>::infinity();
        for (double other : all_locs)
            if (other != r) gap = std::min(gap, std::abs(other - r));
        double delta = std::min(opt.probe_delta, 0.4 * gap);
        try {
            if (auto rec = make_record(family, fixed, free_param, cand, delta))
                out.push_back(std::move(*rec));
        } catch (const EpcatError& e) {
            std::cerr << "epcat: skipping candidate " << free_param << "=" << r << ": " << e.what()
                      << "\n";
        }
    }
    return out;
}

std::vector<EpRecord> find_eps_numeric(const ModelFamily& family, const ParamPoint& fixed,
                                       const std::string& free_param, const FindOptions& opt) {
    std::cerr << "epcat: no symbolic characteristic polynomial in " << free_param
              << "; falling back to a numeric scan\n";
    const int G = std::max(8, opt.grid);
    auto spectrum_at = [&](double p) {
        ParamPoint at = fixed;
        at[free_param] = ParamValue(p);
        return eigen(family.builder(at)).eigenvalues;
    };
    auto min_gap = [&](const std::vector<cplx>& lam) {
        double g = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < lam.size(); ++i)
            for (size_t j = i + 1; j < lam.size(); ++j) g = std::min(g, std::abs(lam[i] - lam[j]));
        return g;
    };

    std::vector<double> xs(G + 1), gaps(G + 1);
    std::vector<int> realc(G + 1);
    double scale = 1;
    for (int i = 0; i <= G; ++i) {
        xs[i] = opt.lo + (opt.hi - opt.lo) * i / G;
        auto lam = spectrum_at(xs[i]);
        gaps[i] = min_gap(lam);
        for (const auto& z : lam) scale = std::max(scale, std::abs(z));
        realc[i] = count_real(lam, scale);
    }

    std::vector<double> locations;
    auto refine_min = [&](double a, double b) {
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        double f1 = min_gap(spectrum_at(x1)), f2 = min_gap(spectrum_at(x2));
        for (int it = 0; it < 90; ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = min_gap(spectrum_at(x1));
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = min_gap(spectrum_at(x2));
            }
        }
        double mid = 0.5 * (a + b);
        if (min_gap(spectrum_at(mid)) <= opt.min_gap_accept) locations.push_back(mid);
    };

    for (int i = 1; i < G; ++i)
        if (gaps[i] < gaps[i - 1] && gaps[i] <= gaps[i + 1]) refine_min(xs[i - 1], xs[i + 1]);

    for (int i = 0; i < G; ++i) {
        if (realc[i] == realc[i + 1]) continue;
        bool covered = false;
        for (double loc : locations)
            if (loc >= xs[i] && loc <= xs[i + 1]) covered = true;
        if (covered) continue;
        double a = xs[i], b = xs[i + 1];
        int ra = realc[i];
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (a + b);
            if (count_real(spectrum_at(mid), scale) == ra)
                a = mid;
            else
                b = mid;
        }
        double mid = 0.5 * (a + b);
        if (min_gap(spectrum_at(mid)) <= opt.min_gap_accept)
            locations.push_back(mid);
        else
            std::cerr << "epcat: reality transition near " << free_param << "=" << mid
                      << " shows no eigenvalue coalescence; skipped\n";
    }

    std::sort(locations.begin(), locations.end());
    const double merge_tol = 1e-8 * std::max(1.0, opt.hi - opt.lo);
    std::vector<double> dedup;
    for (double loc : locations)
        if (dedup.empty() || loc - dedup.back() > merge_tol) dedup.push_back(loc);

    std::vector<EpRecord> out;
    for (double loc : dedup) {
        double gap = std::numeric_limits<double>::infinity();
        for (double other : dedup)
            if (other != loc) gap = std::min(gap, std::abs(other - loc));
        Candidate cand;
        cand.location = loc;
        try {
            if (auto rec = make_record(family, fixed, free_param, cand,
                                       std::min(opt.probe_delta, 0.4 * gap)))
                out.push_back(std::move(*rec));
        } catch (const EpcatError& e) {
            std::cerr << "epcat: skipping candidate " << free_param << "=" << loc << ": "
                      << e.what() << "\n";
        }
    }
    return out;
}

}  // namespace

std::vector<EpRecord> find_eps(const ModelFamily& family, const ParamPoint& fixed,
                               const std::string& free_param, const FindOptions& opt) {
    if (std::find(family.param_names.begin(), family.param_names.end(), free_param) ==
        family.param_names.end())
        throw BadParamPoint("family " + family.name + " has no parameter " + free_param);
    if (!(opt.lo <= opt.hi)) throw BadParamPoint("empty parameter range");
    std::vector<EpRecord> out;
    try {
        out = find_eps_exact(family, fixed, free_param, opt);
    } catch (const NotPolynomialInParam&) {
        out = find_eps_numeric(family, fixed, free_param, opt);
    }
    std::sort(out.begin(), out.end(),
              [](const EpRecord& a, const EpRecord& b) { return a.location < b.location; });
    return out;
}

EpTrace trace_ep_curve(const ModelFamily& family, const ParamPoint& fixed,
                       const std::string& free_param, const std::string& pinned_param,
                       const std::vector<double>& pinned_grid, const FindOptions& opt) {
    if (std::find(family.param_names.begin(), family.param_names.end(), pinned_param) ==
        family.param_names.end())
        throw BadParamPoint("family " + family.name + " has no parameter " + pinned_param);

    EpTrace trace;
    trace.pinned_grid = pinned_grid;
    const int G = static_cast<int>(pinned_grid.size());
    trace.per_point.resize(G);

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max(1, G)));
    std::vector<std::future<void>> futs;
    for (unsigned w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&, w]() {
            for (int i = static_cast<int>(w); i < G; i += static_cast<int>(workers)) {
                ParamPoint at = fixed;
                at[pinned_param] = ParamValue(pinned_grid[i]);
                try {
                    trace.per_point[i] = find_eps(family, at, free_param, opt);
                } catch (const EpcatError&) {
                    trace.per_point[i] = {};
                }
            }
        }));
    }
    for (auto& f : futs) f.get();

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double link_tol = 0.1 * (opt.hi - opt.lo) + 1e-12;
    std::vector<int> active;  // curve index per tracked location, aligned with prev_locs
    std::vector<double> prev_locs;
    for (int i = 0; i < G; ++i) {
        const auto& recs = trace.per_point[i];
        std::vector<double> locs;
        for (const auto& r : recs) locs.push_back(r.location);

        std::vector<int> match(locs.size(), -1);
        std::vector<bool> used(prev_locs.size(), false);
        std::vector<std::tuple<double, int, int>> pairs;
        for (size_t a = 0; a < prev_locs.size(); ++a)
            for (size_t b = 0; b < locs.size(); ++b)
                pairs.emplace_back(std::abs(prev_locs[a] - locs[b]), static_cast<int>(a),
                                   static_cast<int>(b));
        std::sort(pairs.begin(), pairs.end());
        for (const auto& [d, a, b] : pairs) {
            if (d > link_tol) break;
            if (used[a] || match[b] >= 0) continue;
            used[a] = true;
            match[b] = active[a];
        }

        std::vector<int> next_active;
        std::vector<double> next_locs;
        for (size_t b = 0; b < locs.size(); ++b) {
            int curve = match[b];
            if (curve < 0) {
                curve = static_cast<int>(trace.curves.size());
                trace.curves.emplace_back(G, nan);
            }
            trace.curves[curve][i] = locs[b];
            next_active.push_back(curve);
            next_locs.push_back(locs[b]);
        }
        active = std::move(next_active);
        prev_locs = std::move(next_locs);
    }
    return trace;
}

}  // namespace epcat
