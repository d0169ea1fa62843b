#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "epcat/ep.hpp"
#include "epcat/errors.hpp"
#include "epcat/flow.hpp"
#include "epcat/models.hpp"

using namespace epcat;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

std::vector<double> sorted_real_parts(const CMatrix& H) {
    auto ev = eigen(H).eigenvalues;
    std::vector<double> re;
    for (const auto& z : ev) re.push_back(z.real());
    std::sort(re.begin(), re.end());
    return re;
}

double max_abs_imag(const CMatrix& H) {
    double mx = 0;
    for (const auto& z : eigen(H).eigenvalues) mx = std::max(mx, std::abs(z.imag()));
    return mx;
}

}  // namespace

TEST_CASE("closure polynomial spectrum matches the eigensolver") {
    for (int J = 1; J <= 8; ++J) {
        for (double w : {0.0, 0.1, -0.1, 0.5, -0.5, 0.9, -0.9}) {
            auto fs = cheb_spectrum(J, w);
            REQUIRE(static_cast<int>(fs.size()) == 2 * J + 2);
            auto es = sorted_real_parts(build_mytoy(J, w));
            CHECK(max_abs_imag(build_mytoy(J, w)) < 1e-9);
            for (size_t i = 0; i < fs.size(); ++i) {
                INFO("J=" << J << " w=" << w << " i=" << i);
                CHECK(std::abs(fs[i] - es[i]) < 1e-9);
            }
        }
    }
}

TEST_CASE("closure spectrum at the confluence doubles every level") {
    const double s3 = std::sqrt(3.0);
    std::vector<double> want{-s3, -s3, -1, -1, 0, 0, 1, 1, s3, s3};
    for (double w : {1.0, -1.0}) {
        auto fs = cheb_spectrum(4, w);
        REQUIRE(fs.size() == want.size());
        for (size_t i = 0; i < fs.size(); ++i) CHECK(std::abs(fs[i] - want[i]) < 1e-12);
    }
    CHECK_THROWS_AS(cheb_spectrum(4, 1.0000001), WOutOfRange);
    CHECK_THROWS_AS(cheb_spectrum(4, -1.1), WOutOfRange);
    CHECK_THROWS_AS(cheb_spectrum(0, 0.5), EpcatError);
}

TEST_CASE("balanced-chain spectrum is even in the coupling and in energy") {
    for (int J : {2, 4}) {
        for (double w : {0.37, 0.8}) {
            auto a = sorted_real_parts(build_mytoy(J, w));
            auto b = sorted_real_parts(build_mytoy(J, -w));
            REQUIRE(a.size() == b.size());
            for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
            for (size_t i = 0; i < a.size(); ++i)
                CHECK(std::abs(a[i] + a[a.size() - 1 - i]) < 1e-10);
        }
    }
}

TEST_CASE("gain-loss chain reality flips only under the joint sign change") {
    auto imag_at = [](double rho, double w) {
        return max_abs_imag(build_latti(10, rho, w));
    };
    CHECK(std::abs(imag_at(0.3, 0.8) - imag_at(-0.3, -0.8)) < 1e-10);
    CHECK(std::abs(imag_at(0.1, 0.92) - imag_at(-0.1, -0.92)) < 1e-10);
    CHECK(imag_at(0.1, 0.92) > 1e-3);   // beyond the w-window edge at 9/10
    CHECK(imag_at(-0.1, 0.92) < 1e-9);  // the mirrored window extends to 11/10
    CHECK(imag_at(0.1, 0.85) < 1e-9);
}

TEST_CASE("simultaneous merger of all five pairs at unit coupling") {
    ModelFamily fam = make_family("latti", 10);
    ParamPoint fixed;
    fixed["rho"] = ParamValue(0.0);
    auto grid = linspace(0.0, 1.2, 121);
    BranchSet bs = sweep(fam, fixed, "w", grid);
    REQUIRE(bs.branches.size() == 10);
    REQUIRE(bs.param_grid.size() == 121);
    CHECK(bs.invalid_points.empty());

    for (int b = 0; b < 10; ++b) {
        CHECK(bs.reality_mask[b][0]);
        CHECK_FALSE(bs.reality_mask[b][120]);
    }
    REQUIRE(bs.merger_events.size() == 5);
    for (const auto& ev : bs.merger_events) {
        CHECK(ev.param_hi - ev.param_lo <= 1e-8);
        CHECK(std::abs(ev.location - 1.0) <= 1e-7);
        CHECK(ev.branch_a != ev.branch_b);
    }

    // branch multiset equals a direct eigensolve at a probe point
    int k = 40;
    std::vector<double> got;
    for (int b = 0; b < 10; ++b) got.push_back(bs.branches[b][k].real());
    std::sort(got.begin(), got.end());
    auto want = sorted_real_parts(build_latti(10, 0.0, grid[k]));
    for (int i = 0; i < 10; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-9);
}

TEST_CASE("merger locations agree with the transition finder") {
    ModelFamily fam = make_family("h6");
    auto grid = linspace(0.0, 0.7, 141);
    BranchSet bs = sweep(fam, {}, "w", grid);
    REQUIRE(bs.merger_events.size() == 3);

    FindOptions opt;
    opt.lo = 0;
    opt.hi = 0.7;
    auto recs = find_eps(fam, {}, "w", opt);
    REQUIRE(recs.size() == 2);
    CHECK(std::abs(bs.merger_events[0].location - recs[0].location) < 1e-6);
    CHECK(std::abs(bs.merger_events[1].location - recs[0].location) < 1e-6);
    CHECK(std::abs(bs.merger_events[2].location - recs[1].location) < 1e-6);
}

TEST_CASE("branch continuity away from mergers") {
    ModelFamily fam = make_family("latti", 10);
    ParamPoint fixed;
    fixed["rho"] = ParamValue(0.0);
    auto grid = linspace(0.0, 0.9, 181);
    BranchSet bs = sweep(fam, fixed, "w", grid);
    std::vector<double> jumps;
    for (const auto& br : bs.branches)
        for (size_t k = 0; k + 1 < br.size(); ++k) jumps.push_back(std::abs(br[k + 1] - br[k]));
    std::sort(jumps.begin(), jumps.end());
    double median = jumps[jumps.size() / 2];
    CHECK(jumps.back() < 10 * median);
}

TEST_CASE("asymmetric chain stays real through the admissible window") {
    ModelFamily fam = make_family("ha6");
    ParamPoint fixed;
    fixed["g"] = ParamValue(0.0);
    auto grid = linspace(-0.95, -0.05, 46);
    BranchSet bs = sweep(fam, fixed, "lambda", grid);
    for (const auto& mask : bs.reality_mask)
        for (bool m : mask) CHECK(m);
    CHECK(bs.merger_events.empty());
}

TEST_CASE("sweep precondition failures") {
    ModelFamily fam = make_family("h6");
    CHECK_THROWS_AS(sweep(fam, {}, "rho", linspace(0, 1, 5)), BadParamPoint);
    CHECK_THROWS_AS(sweep(fam, {}, "w", {0.5}), BadParamPoint);
    CHECK_THROWS_AS(sweep(fam, {}, "w", {0.5, 0.2, 0.9}), BadParamPoint);
}

TEST_CASE("real-spectrum window of the six-site chain") {
    ModelFamily fam = make_family("h6");
    auto ivs = physical_interval(fam, {}, "w", -1.0, 1.0);
    REQUIRE(ivs.size() == 1);
    CHECK(ivs[0].lo == doctest::Approx(-0.322142943000192891).epsilon(1e-5));
    CHECK(ivs[0].hi == doctest::Approx(0.322142943000192891).epsilon(1e-5));
}

TEST_CASE("real-spectrum window of the balanced chain") {
    ModelFamily fam = make_family("mytoy", 10);
    auto ivs = physical_interval(fam, {}, "w", -2.0, 2.0);
    REQUIRE(ivs.size() == 1);
    CHECK(std::abs(ivs[0].lo + 1.0) <= 1e-6);
    CHECK(std::abs(ivs[0].hi - 1.0) <= 1e-6);
}

TEST_CASE("admissibility window of the asymmetric chain closes at zero") {
    ModelFamily fam = make_family("ha6");
    ParamPoint fixed;
    fixed["g"] = ParamValue(0.0);
    auto ivs = physical_interval(fam, fixed, "lambda", -0.999, 0.5);
    REQUIRE(!ivs.empty());
    const RealInterval& iv = ivs.front();
    CHECK(iv.lo == doctest::Approx(-0.999).epsilon(1e-9));
    CHECK(iv.hi <= 1e-6);
    CHECK(iv.hi >= -0.01);
}

TEST_CASE("domain map marks the confluence on the boundary") {
    ModelFamily fam = make_family("latti", 10);
    auto g1 = linspace(-0.7, 0.7, 15);
    auto g2 = linspace(0.0, 1.3, 14);
    DomainMap dm = domain_map(fam, g1, g2);
    CHECK(dm.param1 == "rho");
    CHECK(dm.param2 == "w");
    REQUIRE(dm.all_real.size() == 15);
    REQUIRE(dm.all_real[0].size() == 14);
    CHECK(dm.all_real[7][0] == 1);   // rho=0, w=0
    CHECK(dm.all_real[7][13] == 0);  // rho=0, w=1.3

    REQUIRE(!dm.boundary_polylines.empty());
    double best = 1e9;
    for (const auto& line : dm.boundary_polylines)
        for (const auto& [x, y] : line)
            best = std::min(best, std::hypot(x - 0.0, y - 1.0));
    CHECK(best < 0.15);
}

TEST_CASE("degenerate one-cell domain map") {
    ModelFamily fam = make_family("latti", 10);
    DomainMap dm = domain_map(fam, {0.0}, {0.5});
    REQUIRE(dm.all_real.size() == 1);
    REQUIRE(dm.all_real[0].size() == 1);
    CHECK(dm.all_real[0][0] == 1);
    CHECK(dm.boundary_polylines.empty());
}

TEST_CASE("domain map rejects one-parameter families") {
    ModelFamily fam = make_family("h6");
    CHECK_THROWS_AS(domain_map(fam, {0.0, 0.1}, {0.0, 0.1}), BadParamPoint);
}
