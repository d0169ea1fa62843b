#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "epcat/linalg.hpp"
#include "epcat/poly.hpp"

namespace epcat {

/// A real parameter value carried both as double and as the exact rational it
/// denotes, so exact polynomial paths stay available after substitution.
struct ParamValue {
    double d = 0;
    Rat exact;

    ParamValue() = default;
    ParamValue(double v) : d(v), exact(rat_from_double(v)) {}
    ParamValue(Rat r) : exact(std::move(r)) { d = to_double(exact); }
};

/// Parses a decimal literal into a ParamValue whose exact part is the decimal
/// rational (e.g. "0.28" -> 7/25), not the nearest double's dyadic.
ParamValue parse_param_value(const std::string& text);

using ParamPoint = std::map<std::string, ParamValue>;

const ParamValue& require_param(const ParamPoint& p, const std::string& name);

/// Named parametric family producing an N×N matrix from a parameter point.
struct ModelFamily {
    enum class EntryKind { Exact, Float };

    std::string name;
    int dim = 0;
    std::vector<std::string> param_names;
    EntryKind entry_kind = EntryKind::Exact;
    std::vector<std::string> symmetry_tags;
    std::function<CMatrix(const ParamPoint&)> builder;
    /// Exact bivariate char poly in (F, free param) with every other parameter
    /// pinned by `fixed`; null when no exact path exists for the family.
    std::function<BiPoly(const ParamPoint& fixed, const std::string& free)> sym_char;
};

/// Tridiagonal matrix with the given diagonal and all sub/super entries -1.
CMatrix build_lattice(const std::vector<cplx>& v_diag);
CMatrix build_lattice_exact(const std::vector<GaussRat>& v_diag);

/// The two-parameter chain: diagonal (-i rho, 0, ..., 0, -i w | i w, 0, ..., 0, i rho).
CMatrix build_latti(int N, const ParamValue& rho, const ParamValue& w);
CMatrix build_latti(int N, double rho, double w);

/// The rho = 0 member with N = 2J+2.
CMatrix build_mytoy(int J, const ParamValue& w);
CMatrix build_mytoy(int J, double w);

/// The constant-interaction chain: diagonal (-iw,-iw,-iw, iw,iw,iw).
CMatrix build_h6(const ParamValue& w);

/// 6x6 real asymmetric tridiagonal model; lambda < -1 is rejected.
CMatrix build_ha6(double g, double lambda);

/// Block-diagonal direct sum of Jordan blocks J^(size)(eta).
CMatrix build_jordan_sum(const std::vector<std::pair<int, cplx>>& blocks);

/// True iff P·conj(H)·P = H entrywise within tol_poly, P the antidiagonal identity.
bool check_pt_symmetry(const CMatrix& H);

/// The block-diagonal permutation U = antidiag(K) ⊕ antidiag(K), N = 2K.
CMatrix swap_symmetry_map(int N);

/// Exact char poly det(F·I − H) with one parameter symbolic. Throws
/// NotPolynomialInParam when the family has no exact polynomial path.
BiPoly symbolic_char_poly(const ModelFamily& family, const ParamPoint& fixed,
                          const std::string& free);

/// Families by name: "latti" (dim even, >= 4), "mytoy" (dim = 2J+2), "h6",
/// "ha6", "jordan" (built from `blocks`).
ModelFamily make_family(const std::string& name, int dim = 0,
                        const std::vector<std::pair<int, cplx>>& blocks = {});

std::vector<std::string> family_names();

}  // namespace epcat
