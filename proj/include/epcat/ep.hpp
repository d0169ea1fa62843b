#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epcat/linalg.hpp"
#include "epcat/models.hpp"

namespace epcat {

/// One eigenvalue's Jordan data: algebraic multiplicity and block sizes
/// (descending, summing to the algebraic multiplicity).
struct EigStructure {
    cplx eta;
    int alg_mult = 0;
    std::vector<int> block_sizes;
};

/// Full Jordan-structure classification of a single matrix.
struct Classification {
    std::vector<EigStructure> eigenvalues;  // sorted by (re, im)
    std::vector<int> partition;             // all block sizes, descending
    int geometric_multiplicity = 0;         // number of blocks
    bool defective = false;                 // any block of size >= 2
};

/// Jordan block sizes bottom-up from kernel staircase dimensions; throws
/// AmbiguousClustering when the numeric rank sequence is inconsistent.
Classification classify_ep(const CMatrix& H,
                           const std::optional<std::vector<cplx>>& eta_candidates = std::nullopt);

struct CanonicalForm {
    std::vector<std::pair<int, cplx>> blocks;  // (size, eta), deterministic order
    std::optional<CMatrix> transition_matrix;  // Q with Q^-1 H Q = block matrix
    double residual = -1;                      // |Q^-1 H Q - B| / max(1, |H|), -1 without Q
    Classification classification;
    std::string status;  // "ok" or "ill-conditioned-chains"
};

/// Classification plus generalized-eigenvector chains assembled into Q.
/// Conditioning failures drop Q (status flags it) instead of throwing.
CanonicalForm canonical_form(const CMatrix& H);

struct EpRecord {
    std::string family;
    ParamPoint fixed;
    std::string free_param;
    double location = 0;
    std::optional<Rat> location_exact;
    std::vector<std::pair<cplx, int>> degenerate_eigenvalues;  // (eta, alg mult >= 2)
    std::vector<int> partition;                                // full, descending
    int geometric_multiplicity = 0;
    int real_count_below = -1;  // real eigenvalues just below / above the location
    int real_count_above = -1;
    bool is_on_reality_boundary = false;  // all-real on exactly one side
};

struct FindOptions {
    double lo = 0;
    double hi = 0;
    int grid = 400;              // numeric-fallback scan resolution
    double probe_delta = 1e-4;   // reality probe offset
    double min_gap_accept = 1e-5;  // numeric route: max eigengap at an accepted EP
};

/// All real EP locations of the family over [lo,hi] in the chosen parameter,
/// via exact discriminant roots when a symbolic table exists, else a min-gap /
/// reality-transition scan with bisection (warns on stderr). Coinciding EP2s
/// merge into one record. Sorted ascending.
std::vector<EpRecord> find_eps(const ModelFamily& family, const ParamPoint& fixed,
                               const std::string& free_param, const FindOptions& opt);

struct EpTrace {
    std::vector<double> pinned_grid;
    std::vector<std::vector<EpRecord>> per_point;  // find_eps output per grid value
    std::vector<std::vector<double>> curves;       // linked locations; NaN where absent
};

/// find_eps at every grid value of a pinned second parameter (evaluated in
/// parallel), then nearest-neighbor curve linking across grid steps.
EpTrace trace_ep_curve(const ModelFamily& family, const ParamPoint& fixed,
                       const std::string& free_param, const std::string& pinned_param,
                       const std::vector<double>& pinned_grid, const FindOptions& opt);

/// Continued-fraction rationalization of x with denominator <= max_den;
/// empty unless the reconstruction reproduces x to 1 ulp.
std::optional<Rat> rat_reconstruct(double x, long max_den);

}  // namespace epcat
