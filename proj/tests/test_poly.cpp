#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "epcat/poly.hpp"

using namespace epcat;

namespace {

Rat frac(long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

UniPoly<Rat> rp(std::initializer_list<long> cs) {
    std::vector<Rat> v;
    for (long x : cs) v.emplace_back(x);
    return UniPoly<Rat>(v);
}

}  // namespace

TEST_CASE("decimal strings parse to exact rationals") {
    CHECK(rat_from_decimal("0.25") == frac(1, 4));
    CHECK(rat_from_decimal("-3.5e-2") == frac(-7, 200));
    CHECK(rat_from_decimal("7/25") == frac(7, 25));
    CHECK(rat_from_decimal("2e3") == Rat(2000));
    CHECK(rat_from_decimal("10") == Rat(10));
    CHECK_THROWS_AS(rat_from_decimal("abc"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_decimal(""), std::invalid_argument);
}

TEST_CASE("gaussian rational arithmetic") {
    GaussRat a(Rat(1), Rat(2));
    GaussRat b(Rat(3), Rat(-1));
    CHECK(a * b == GaussRat(Rat(5), Rat(5)));
    CHECK((a * b) / b == a);
    CHECK(conj(a) == GaussRat(Rat(1), Rat(-2)));
    CHECK(a + conj(a) == GaussRat(Rat(2)));
    CHECK(!is_real(a));
    CHECK(is_real(a * conj(a)));
    CHECK_THROWS_AS(a / GaussRat(), std::domain_error);
}

TEST_CASE("unipoly ring operations") {
    auto one_plus_x = rp({1, 1});
    auto one_minus_x = rp({1, -1});
    CHECK(one_plus_x * one_minus_x == rp({1, 0, -1}));
    CHECK(one_plus_x + one_minus_x == rp({2}));
    CHECK(one_plus_x - one_plus_x == UniPoly<Rat>());
    CHECK(derivative(rp({5, 3, 0, 7})) == rp({3, 0, 21}));
    CHECK(shift_up(rp({1, 2}), 2) == rp({0, 0, 1, 2}));
    CHECK(eval(rp({1, 2, 3}), Rat(2)) == Rat(17));
    CHECK(eval(rp({1, 2, 3}), 2.0) == doctest::Approx(17.0));
}

TEST_CASE("division with remainder") {
    auto a = rp({2, 0, 1, 3});
    auto b = rp({1, 1});
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    CHECK(divexact(rp({1, 0, -1}), rp({1, 1})) == rp({1, -1}));
    CHECK_THROWS_AS(divexact(rp({1, 0, 1}), rp({1, 1})), EpcatError);
}

TEST_CASE("monic gcd") {
    auto f = rp({-1, 1}) * rp({1, 0, 1});
    auto g = rp({-1, 1}) * rp({2, 1});
    CHECK(gcd_monic(f, g) == rp({-1, 1}));
    CHECK(gcd_monic(rp({1, 1}), rp({2, 1})) == rp({1}));
}

TEST_CASE("square-free decomposition recovers multiplicities") {
    auto x_minus_1 = rp({-1, 1});
    auto x_plus_2 = rp({2, 1});
    auto p = x_minus_1 * x_minus_1 * x_minus_1 * x_plus_2 * x_plus_2;
    auto sf = square_free(p);
    REQUIRE(sf.size() == 2);
    CHECK(sf[0].first == x_plus_2);
    CHECK(sf[0].second == 2);
    CHECK(sf[1].first == x_minus_1);
    CHECK(sf[1].second == 3);
    UniPoly<Rat> rebuilt({Rat(1)});
    for (const auto& [fac, mult] : sf)
        for (int i = 0; i < mult; ++i) rebuilt = rebuilt * fac;
    CHECK(rebuilt == make_monic(p));
    CHECK(square_free(rp({-2, 0, 1})).size() == 1);
}

TEST_CASE("resultant exact values") {
    CHECK(resultant(rp({-2, 0, 1}), rp({-3, 0, 1})) == Rat(1));
    CHECK(resultant(rp({-2, 1}), rp({-1, 0, 1})) == Rat(3));
    CHECK(resultant(rp({-1, 0, 1}), rp({-2, 1})) == Rat(3));
    CHECK(resultant(rp({5}), rp({1, 2, 3})) == Rat(25));
    CHECK(resultant(rp({-1, 1}), rp({-1, 1, 0, 0})) == Rat(0));
}

TEST_CASE("resultant and gcd agree with numeric root products") {
    std::mt19937_64 rng(20260822);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> deg(2, 5);
    int done = 0;
    while (done < 60) {
        auto draw = [&](int d) {
            std::vector<Rat> c(d + 1);
            for (auto& x : c) x = Rat(coeff(rng));
            while (c.back() == 0) c.back() = Rat(coeff(rng));
            return UniPoly<Rat>(c);
        };
        auto f = draw(deg(rng));
        auto g = draw(deg(rng));
        Rat res = resultant(f, g);
        auto alpha = roots(f);
        cplx prod = 1.0;
        for (cplx r : alpha) prod *= eval(g, r);
        double lead = f.lead().get_d();
        cplx numeric = std::pow(cplx(lead), g.degree()) * prod;
        double scale = std::max(1.0, std::abs(res.get_d()));
        CHECK(std::abs(numeric - cplx(res.get_d())) < 1e-6 * scale);

        auto h = draw(2);
        auto gg = gcd_monic(f * h, g * h);
        CHECK(gg.degree() >= h.degree());
        CHECK(is_zero(divmod(gg, make_monic(h)).second));
        ++done;
    }
}

TEST_CASE("tridiagonal characteristic polynomial recurrence") {
    std::vector<Rat> diag = {Rat(1), Rat(2), Rat(3)};
    std::vector<Rat> offprod = {Rat(4), Rat(5)};
    CHECK(tridiag_char_poly(diag, offprod) == rp({11, 2, -6, 1}));
    CHECK(tridiag_char_poly<Rat>({Rat(7)}, {}) == rp({-7, 1}));
}

TEST_CASE("chebyshev second kind") {
    CHECK(chebyshev_U(0) == rp({1}));
    CHECK(chebyshev_U(1) == rp({0, 2}));
    CHECK(chebyshev_U(2) == rp({-1, 0, 4}));
    CHECK(chebyshev_U(3) == rp({0, -4, 0, 8}));
    auto two_x = rp({0, 2});
    for (int k = 2; k <= 20; ++k)
        CHECK(chebyshev_U(k) == two_x * chebyshev_U(k - 1) - chebyshev_U(k - 2));

    auto rts = real_roots_with_multiplicity(chebyshev_U(5));
    REQUIRE(rts.size() == 5);
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 5; ++k) {
        CHECK(rts[k].second == 1);
        CHECK(rts[k].first == doctest::Approx(std::cos((5 - k) * pi / 6)).epsilon(1e-12));
    }
}

TEST_CASE("aberth finds well separated roots") {
    UniPoly<Rat> p({Rat(1)});
    for (long k = 1; k <= 8; ++k) p = p * rp({-k, 1});
    auto rts = roots(p);
    REQUIRE(rts.size() == 8);
    std::sort(rts.begin(), rts.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    for (int k = 0; k < 8; ++k) {
        CHECK(std::abs(rts[k].real() - (k + 1)) < 1e-6);
        CHECK(std::abs(rts[k].imag()) < 1e-6);
    }
}

TEST_CASE("aberth reconstructs random separated root sets") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(3, 12);
    for (int trial = 0; trial < 40; ++trial) {
        int n = deg(rng);
        std::vector<cplx> target;
        while (static_cast<int>(target.size()) < n) {
            cplx z(u(rng), u(rng));
            bool ok = true;
            for (cplx t : target)
                if (std::abs(t - z) < 0.15) ok = false;
            if (ok) target.push_back(z);
        }
        UniPoly<cplx> p({cplx(1.0)});
        for (cplx z : target) p = p * UniPoly<cplx>({-z, cplx(1.0)});
        auto found = roots(p);
        REQUIRE(found.size() == target.size());
        for (cplx t : target) {
            double best = 1e9;
            for (cplx f : found) best = std::min(best, std::abs(f - t));
            CHECK(best < 1e-8);
        }
    }
}

TEST_CASE("zero roots survive coefficient stripping") {
    auto rts = roots(rp({0, 0, -1, 1}));
    REQUIRE(rts.size() == 3);
    int zeros = 0;
    for (cplx z : rts)
        if (std::abs(z) < 1e-12) ++zeros;
    CHECK(zeros == 2);
}

TEST_CASE("root clustering merges tight pairs") {
    std::vector<cplx> pts = {cplx(1.0, 0.0), cplx(1.0 + 1e-7, 0.0), cplx(5.0, 0.0)};
    auto cl = cluster_roots(pts);
    REQUIRE(cl.size() == 2);
    CHECK(cl[0].multiplicity == 2);
    CHECK(cl[0].value.real() == doctest::Approx(1.0 + 5e-8).epsilon(1e-9));
    CHECK(cl[1].multiplicity == 1);
    CHECK(cl[1].value.real() == doctest::Approx(5.0));
}

TEST_CASE("real roots with multiplicity") {
    auto quad = rp({-2, 0, 1});
    auto p = quad * quad * rp({-3, 1});
    auto rts = real_roots_with_multiplicity(p);
    REQUIRE(rts.size() == 3);
    CHECK(rts[0].first == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-9));
    CHECK(rts[0].second == 2);
    CHECK(rts[1].first == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(rts[1].second == 2);
    CHECK(rts[2].first == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(rts[2].second == 1);
    CHECK(real_roots_with_multiplicity(rp({1, 0, 1})).empty());
}

TEST_CASE("bipoly slices and evaluation") {
    BiPoly b;
    b.c = {{Rat(1), Rat(0), Rat(-1)}, {}, {Rat(1)}};
    b.trim();
    CHECK(b.deg_f() == 2);
    CHECK(b.deg_p() == 2);
    CHECK(b.even_in_f());
    CHECK(b.at_param(Rat(2)) == rp({-3, 0, 1}));
    CHECK(b.at_energy(Rat(1)) == rp({2, 0, -1}));
    CHECK(b.eval(1.0, 2.0) == doctest::Approx(-2.0));

    BiPoly odd;
    odd.c = {{Rat(0)}, {Rat(1)}};
    odd.trim();
    CHECK(!odd.even_in_f());
}

TEST_CASE("discriminant of a biquadratic pencil") {
    BiPoly b;
    b.c = {{Rat(0), Rat(-1)}, {}, {Rat(1)}};
    b.trim();
    auto d = discriminant_in_F(b);
    REQUIRE(d.degree() == 1);
    CHECK(is_zero(d.coeff(0)));
    CHECK(abs(d.coeff(1)) == Rat(4));
}

namespace {

BiPoly ladder10_table() {
    std::vector<UniPoly<Rat>> rows = {
        rp({-1, 0, 1}), UniPoly<Rat>(), rp({15, 0, -6}),  UniPoly<Rat>(), rp({-35, 0, 11}),
        UniPoly<Rat>(), rp({28, 0, -6}), UniPoly<Rat>(),  rp({-9, 0, 1}), UniPoly<Rat>(),
        rp({1})};
    return BiPoly::from_f_coeffs(rows, "F", "w");
}

}  // namespace

TEST_CASE("parameter inversion on the ten site energy table") {
    BiPoly b = ladder10_table();
    auto up = param_square_poly(b, frac(1, 10));
    REQUIRE(up.degree() == 1);
    Rat u = -up.coeff(0) / up.coeff(1);
    CHECK(u == Rat(8534720899L) / Rat(9410940100L));

    auto ws = invert_for_parameter(b, 0.1);
    REQUIRE(ws.size() >= 2);
    CHECK(ws.front() == doctest::Approx(-0.9523095885427899).epsilon(1e-12));
    CHECK(ws.back() == doctest::Approx(0.9523095885427899).epsilon(1e-12));
    CHECK(std::is_sorted(ws.begin(), ws.end()));
}

TEST_CASE("parameter inversion rejects non-biquadratic dependence") {
    BiPoly lin;
    lin.c = {{Rat(0), Rat(1)}, {Rat(1)}};
    lin.trim();
    CHECK_THROWS_AS(param_square_poly(lin, Rat(0)), NotQuadraticInParam);

    BiPoly sextic;
    sextic.c = {{Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)}, {}, {Rat(1)}};
    sextic.trim();
    CHECK_THROWS_AS(param_square_poly(sextic, Rat(0)), NotQuadraticInParam);

    BiPoly gap;
    gap.c = {{Rat(1), Rat(0), Rat(1)}, {}, {Rat(1)}};
    gap.trim();
    CHECK(invert_for_parameter(gap, 0.0).empty());
}
