#pragma once

#include <string>
#include <utility>
#include <vector>

#include "epcat/linalg.hpp"
#include "epcat/models.hpp"

namespace epcat {

/// Two real branches colliding and moving off the real axis; the bracket is
/// narrowed by bisection to 1e-8 in the parameter.
struct MergerEvent {
    double param_lo = 0;
    double param_hi = 0;
    double location = 0;  // bracket midpoint
    int branch_a = -1;
    int branch_b = -1;
};

struct BranchSet {
    std::vector<double> param_grid;
    std::vector<std::vector<cplx>> branches;      // [branch][grid point]
    std::vector<std::vector<bool>> reality_mask;  // [branch][grid point]
    std::vector<MergerEvent> merger_events;
    std::vector<int> invalid_points;  // grid indices filled by interpolation
};

/// Eigenvalue branches over a sorted grid, matched step to step by optimal
/// assignment so crossings and near-mergers stay on the right branch.
BranchSet sweep(const ModelFamily& family, const ParamPoint& fixed, const std::string& free_param,
                const std::vector<double>& grid);

struct RealInterval {
    double lo = 0;
    double hi = 0;
};

/// Maximal subintervals of [lo,hi] with an entirely real spectrum, interior
/// endpoints refined by bisection to 1e-6.
std::vector<RealInterval> physical_interval(const ModelFamily& family, const ParamPoint& fixed,
                                            const std::string& free_param, double lo, double hi,
                                            int grid = 600);

struct DomainMap {
    std::string param1, param2;
    std::vector<double> grid1, grid2;
    std::vector<std::vector<int>> all_real;  // [i1][i2]: 1 real, 0 complex, -1 invalid
    std::vector<std::vector<std::pair<double, double>>> boundary_polylines;
};

/// Reality classification of a two-parameter family on a rectangular grid,
/// with a marching-squares contour of the all-real region.
DomainMap domain_map(const ModelFamily& family, const std::vector<double>& grid1,
                     const std::vector<double>& grid2);

/// Spectrum of the balanced chain from the Chebyshev recursion closure: the
/// energies are -2x over roots x of U_{J+1} - sqrt(1-w^2) U_J together with
/// their mirror branch, which the x -> -x parity of U folds into one multiset.
/// Sorted ascending; throws WOutOfRange when |w| > 1.
std::vector<double> cheb_spectrum(int J, double w);

}  // namespace epcat
