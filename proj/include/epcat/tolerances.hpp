#pragma once

namespace epcat {

/// Numeric thresholds used across the toolkit. Every field can be overridden
/// by an EPCAT_TOL_<NAME> environment variable (e.g. EPCAT_TOL_RANK=1e-7),
/// loaded once at startup via load_env_overrides().
struct Tolerances {
    double resid = 1e-10;    // eigenpair residual bound, relative to ||H||
    double poly = 1e-9;      // polynomial evaluation / entrywise matrix compare
    double real = 1e-9;      // |Im| below this counts as a real eigenvalue
    double rank = 1e-8;      // singular-value cut, relative to sigma_max
    double disc = 1e-10;     // discriminant residual at a refined EP location
    double canon = 1e-7;     // canonical-form conjugation residual, relative
    double cluster = 1e-6;   // base root-clustering radius, scaled by max(1,|r|)
};

Tolerances& tols();

/// Reads EPCAT_TOL_{RESID,POLY,REAL,RANK,DISC,CANON,CLUSTER} from the
/// environment into the global table. Returns the number of overrides applied.
int load_env_overrides();

}  // namespace epcat
