#include "epcat/tolerances.hpp"

#include <cstdlib>
#include <string>

namespace epcat {

Tolerances& tols() {
    static Tolerances t;
    return t;
}

int load_env_overrides() {
    struct Entry {
        const char* env;
        double Tolerances::*field;
    };
    static const Entry entries[] = {
        {"EPCAT_TOL_RESID", &Tolerances::resid},   {"EPCAT_TOL_POLY", &Tolerances::poly},
        {"EPCAT_TOL_REAL", &Tolerances::real},     {"EPCAT_TOL_RANK", &Tolerances::rank},
        {"EPCAT_TOL_DISC", &Tolerances::disc},     {"EPCAT_TOL_CANON", &Tolerances::canon},
        {"EPCAT_TOL_CLUSTER", &Tolerances::cluster},
    };
    int applied = 0;
    for (const auto& e : entries) {
        const char* v = std::getenv(e.env);
        if (!v || !*v) continue;
        char* end = nullptr;
        double x = std::strtod(v, &end);
        if (end && *end == '\0' && x > 0) {
            tols().*e.field = x;
            ++applied;
        }
    }
    return applied;
}

}  // namespace epcat
