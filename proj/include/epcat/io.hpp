#pragma once

#include <string>
#include <vector>

#include "epcat/ep.hpp"
#include "epcat/flow.hpp"
#include "epcat/models.hpp"
#include "epcat/poly.hpp"

namespace epcat {

/// Shortest round-trip decimal form of x; identical input bits give identical
/// bytes, so artifacts built from it are reproducible.
std::string fmt_double(double x);

/// CSV with header `param,branch_index,re,im,is_real`, one row per grid point
/// and branch. `columns` restricts output to those grid indices (empty = all).
std::string csv_spectrum(const BranchSet& bs, const std::vector<int>& columns = {});

/// CSV with header `p1,p2,all_real`, row-major over (grid1, grid2).
std::string csv_domain(const DomainMap& dm);

std::string json_spectrum(const ModelFamily& family, const ParamPoint& fixed,
                          const std::string& free_param, const BranchSet& bs);

/// JSON record list for located EPs; `status` other than "ok" is included
/// verbatim (the CLI uses "partial" when some work failed).
std::string json_ep_records(const std::vector<EpRecord>& records,
                            const std::string& status = "ok");

std::string json_classification(const ModelFamily& family, const ParamPoint& at,
                                const CanonicalForm& cf);

std::string json_trace(const ModelFamily& family, const ParamPoint& fixed,
                       const std::string& free_param, const std::string& pinned_param,
                       const EpTrace& tr);

std::string json_domain(const DomainMap& dm);

/// Coefficient table of the exact bivariate characteristic polynomial; every
/// coefficient is emitted as an integer or rational string.
std::string json_charpoly(const ModelFamily& family, const ParamPoint& fixed,
                          const std::string& free_param, const BiPoly& p);

std::string json_cheb(int J, double w, const std::vector<double>& energies, double residual);

/// Error artifact used when a command fails after producing nothing.
std::string json_error(const std::string& message);

/// Real parts vs parameter, one polyline per branch; complexified stretches
/// are drawn dashed.
std::string svg_spectrum(const BranchSet& bs, const std::string& free_param);

/// Filled all-real region with the marching-squares boundary on top.
std::string svg_domain(const DomainMap& dm);

}  // namespace epcat
