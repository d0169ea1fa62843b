#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "epcat/models.hpp"

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

double max_entry_diff(const CMatrix& A, const CMatrix& B) {
    double m = 0;
    for (std::size_t i = 0; i < A.a.size(); ++i) m = std::max(m, std::abs(A.a[i] - B.a[i]));
    return m;
}

}  // namespace

TEST_CASE("parameter values parse exactly") {
    auto v = parse_param_value("0.28");
    CHECK(v.exact == frac(7, 25));
    CHECK(v.d == doctest::Approx(0.28));
    CHECK_THROWS_AS(parse_param_value("x12"), BadParamPoint);

    ParamPoint p;
    p["w"] = parse_param_value("0.5");
    CHECK(require_param(p, "w").exact == frac(1, 2));
    CHECK_THROWS_AS(require_param(p, "rho"), BadParamPoint);
}

TEST_CASE("six site ladder entries") {
    auto H = build_h6(ParamValue(frac(1, 2)));
    REQUIRE(H.n == 6);
    REQUIRE(H.has_exact());
    CHECK(H.at(0, 0) == cplx(0, -0.5));
    CHECK(H.at(2, 2) == cplx(0, -0.5));
    CHECK(H.at(3, 3) == cplx(0, 0.5));
    CHECK(H.at(5, 5) == cplx(0, 0.5));
    CHECK(H.at(0, 1) == cplx(-1.0));
    CHECK(H.at(1, 0) == cplx(-1.0));
    CHECK(H.at(0, 2) == cplx(0.0));
    CHECK(H.xat(0, 0) == GaussRat(Rat(0), frac(-1, 2)));
}

TEST_CASE("two gain loss pair chain entries") {
    auto H = build_latti(10, ParamValue(frac(1, 10)), ParamValue(frac(9, 10)));
    REQUIRE(H.n == 10);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            if (i == j) continue;
            if (std::abs(i - j) == 1)
                CHECK(H.at(i, j) == cplx(-1.0));
            else
                CHECK(H.at(i, j) == cplx(0.0));
        }
    CHECK(H.at(0, 0) == cplx(0, -0.1));
    CHECK(H.at(4, 4) == cplx(0, -0.9));
    CHECK(H.at(5, 5) == cplx(0, 0.9));
    CHECK(H.at(9, 9) == cplx(0, 0.1));
    CHECK(H.at(1, 1) == cplx(0.0));
    CHECK(H.at(8, 8) == cplx(0.0));

    CHECK_THROWS_AS(build_latti(7, 0.1, 0.2), OddDimension);
    CHECK_THROWS_AS(build_latti(2, 0.1, 0.2), EpcatError);
    CHECK_THROWS_AS(build_lattice({cplx(1.0)}), EpcatError);
}

TEST_CASE("single pair chain equals the zero edge gain case") {
    auto A = build_mytoy(4, ParamValue(frac(3, 7)));
    auto B = build_latti(10, ParamValue(Rat(0)), ParamValue(frac(3, 7)));
    REQUIRE(A.has_exact());
    REQUIRE(B.has_exact());
    REQUIRE(A.n == B.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) {
            CHECK(A.xat(i, j) == B.xat(i, j));
            CHECK(A.at(i, j) == B.at(i, j));
        }
}

TEST_CASE("jordan direct sum layout") {
    auto H = build_jordan_sum({{2, cplx(1, 2)}, {1, cplx(0)}});
    REQUIRE(H.n == 3);
    CHECK(H.at(0, 0) == cplx(1, 2));
    CHECK(H.at(0, 1) == cplx(1.0));
    CHECK(H.at(1, 1) == cplx(1, 2));
    CHECK(H.at(1, 2) == cplx(0.0));
    CHECK(H.at(2, 2) == cplx(0.0));
    CHECK_THROWS_AS(build_jordan_sum({}), EpcatError);
    CHECK_THROWS_AS(build_jordan_sum({{0, cplx(1)}}), EpcatError);
}

TEST_CASE("rotor chain entries and domain edge") {
    auto H = build_ha6(0.0, -1.0);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (i != j) CHECK(H.at(i, j) == cplx(0.0));
    CHECK(H.at(0, 0) == cplx(-5.0));
    CHECK(H.at(5, 5) == cplx(5.0));

    auto G = build_ha6(0.3, 0.2);
    CHECK(!G.has_exact());
    for (int i = 0; i < 5; ++i) {
        CHECK(G.at(i, i + 1).real() > 0);
        CHECK(G.at(i, i + 1) == -G.at(i + 1, i));
        CHECK(G.at(i, i + 1).imag() == 0.0);
    }
    CHECK(G.at(1, 2) == cplx(2 * std::sqrt(2.4)));
    CHECK(G.at(2, 3) == cplx(3 * std::sqrt(1.2)));
    CHECK_THROWS_AS(build_ha6(0.0, -1.0000001), LambdaOutOfRange);
}

TEST_CASE("parity time symmetry holds on the chain families") {
    for (double rho : {-0.4, 0.0, 0.3, 1.2})
        for (double w : {-0.9, 0.0, 0.5, 2.0}) CHECK(check_pt_symmetry(build_latti(10, rho, w)));
    for (double w : {-1.0, 0.1, 0.8}) {
        CHECK(check_pt_symmetry(build_mytoy(3, w)));
        CHECK(check_pt_symmetry(build_h6(ParamValue(w))));
    }
    CHECK(!check_pt_symmetry(build_ha6(0.1, 0.5)));

    CHECK(check_pt_symmetry(build_lattice({cplx(0, 1), cplx(0, -1)})));
    CHECK(!check_pt_symmetry(build_lattice({cplx(0, 1), cplx(0, 1)})));
}

TEST_CASE("half chain swap map is an exact involutive permutation") {
    auto U = swap_symmetry_map(10);
    REQUIRE(U.has_exact());
    auto U2 = mat_mul(U, U);
    auto I10 = identity_matrix(10);
    REQUIRE(U2.has_exact());
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) CHECK(U2.xat(i, j) == I10.xat(i, j));
    CHECK_THROWS_AS(swap_symmetry_map(5), OddDimension);
}

TEST_CASE("swap conjugation does not exchange the two edge parameters") {
    auto U = swap_symmetry_map(10);
    auto H = build_latti(10, 0.3, 0.7);
    auto M = mat_mul(mat_mul(U, H), U);
    auto H_swapped = build_latti(10, 0.7, 0.3);
    CHECK(max_entry_diff(M, H_swapped) > 0.5);
}

TEST_CASE("parameter exchange preserves determinant but not the spectrum") {
    auto a = real_part_exact(char_poly_exact(build_latti(10, ParamValue(frac(1, 5)),
                                                        ParamValue(frac(1, 2)))));
    auto b = real_part_exact(char_poly_exact(build_latti(10, ParamValue(frac(1, 2)),
                                                        ParamValue(frac(1, 5)))));
    CHECK(a.coeff(0) == b.coeff(0));
    CHECK(a.coeff(8) == b.coeff(8));
    CHECK(a.coeff(4) != b.coeff(4));
}

TEST_CASE("symbolic table for the four site chain") {
    auto fam = make_family("latti", 4);
    ParamPoint fixed;
    fixed["rho"] = ParamValue(frac(1, 3));
    auto b = symbolic_char_poly(fam, fixed, "w");
    std::vector<UniPoly<Rat>> rows = {
        UniPoly<Rat>({frac(8, 9), frac(2, 3), frac(1, 9)}),
        UniPoly<Rat>(),
        UniPoly<Rat>({frac(-26, 9), Rat(0), Rat(1)}),
        UniPoly<Rat>(),
        rp({1})};
    auto expect = BiPoly::from_f_coeffs(rows, "F", "w");
    CHECK(b == expect);

    fixed["w"] = ParamValue(frac(1, 2));
    auto at_point = symbolic_char_poly(fam, fixed, "");
    auto p = at_point.at_param(Rat(0));
    CHECK(p == UniPoly<Rat>({frac(5, 4), Rat(0), frac(-95, 36), Rat(0), Rat(1)}));
}

TEST_CASE("symbolic table for the six site ladder") {
    auto fam = make_family("h6");
    auto b = symbolic_char_poly(fam, {}, "w");
    std::vector<UniPoly<Rat>> rows = {
        rp({-1, 0, 2, 0, 3, 0, 1}), UniPoly<Rat>(), rp({6, 0, -2, 0, 3}), UniPoly<Rat>(),
        rp({-5, 0, 3}), UniPoly<Rat>(), rp({1})};
    CHECK(b == BiPoly::from_f_coeffs(rows, "F", "w"));

    ParamPoint at;
    at["w"] = parse_param_value("0.7");
    auto direct = real_part_exact(char_poly_exact(build_h6(at["w"])));
    CHECK(b.at_param(frac(7, 10)) == direct);
}

TEST_CASE("symbolic table for the ten site single pair chain") {
    auto fam = make_family("mytoy", 10);
    auto b = symbolic_char_poly(fam, {}, "w");
    std::vector<UniPoly<Rat>> rows = {
        rp({-1, 0, 1}), UniPoly<Rat>(), rp({15, 0, -6}),  UniPoly<Rat>(), rp({-35, 0, 11}),
        UniPoly<Rat>(), rp({28, 0, -6}), UniPoly<Rat>(),  rp({-9, 0, 1}), UniPoly<Rat>(),
        rp({1})};
    CHECK(b == BiPoly::from_f_coeffs(rows, "F", "w"));
}

TEST_CASE("symbolic table for the rotor chain") {
    auto fam = make_family("ha6");
    ParamPoint origin;
    origin["g"] = ParamValue(Rat(0));
    origin["lambda"] = ParamValue(Rat(0));
    auto b0 = symbolic_char_poly(fam, origin, "");
    CHECK(b0.at_param(Rat(0)) == rp({0, 0, 0, 0, 0, 0, 1}));

    ParamPoint g_fixed;
    g_fixed["g"] = ParamValue(frac(1, 500));
    auto bl = symbolic_char_poly(fam, g_fixed, "lambda");
    auto exact_slice = bl.at_param(frac(1, 10));
    auto numeric = char_poly(build_ha6(0.002, 0.1));
    for (int i = 0; i <= 6; ++i) {
        double want = exact_slice.coeff(i).get_d();
        CHECK(std::abs(numeric.coeff(i) - cplx(want)) < 1e-8 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("symbolic table for jordan sums") {
    auto fam = make_family("jordan", 0, {{2, cplx(1)}, {1, cplx(-1)}});
    CHECK(fam.dim == 3);
    auto b = symbolic_char_poly(fam, {}, "");
    CHECK(b.at_param(Rat(0)) == rp({1, -1, -1, 1}));

    auto complex_fam = make_family("jordan", 0, {{1, cplx(0, 1)}});
    CHECK_THROWS_AS(symbolic_char_poly(complex_fam, {}, ""), NotPolynomialInParam);
}

TEST_CASE("family registry") {
    auto names = family_names();
    CHECK(names.size() == 5);
    CHECK_THROWS_AS(make_family("nope"), UnknownModel);
    CHECK_THROWS_AS(make_family("latti", 7), OddDimension);
    CHECK_THROWS_AS(make_family("h6", 8), EpcatError);
    CHECK_THROWS_AS(make_family("jordan"), EpcatError);

    auto fam = make_family("latti");
    CHECK(fam.dim == 10);
    ParamPoint p;
    p["rho"] = ParamValue(0.1);
    p["w"] = ParamValue(0.2);
    auto H = fam.builder(p);
    CHECK(H.n == 10);
    CHECK_THROWS_AS(symbolic_char_poly(fam, p, "zeta"), BadParamPoint);

    ModelFamily bare;
    bare.name = "bare";
    CHECK_THROWS_AS(symbolic_char_poly(bare, {}, ""), NotPolynomialInParam);
}
