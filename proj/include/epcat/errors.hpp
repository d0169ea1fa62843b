#pragma once

#include <stdexcept>
#include <string>

namespace epcat {

struct EpcatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OddDimension : EpcatError {
    using EpcatError::EpcatError;
};

struct LambdaOutOfRange : EpcatError {
    using EpcatError::EpcatError;
};

struct WOutOfRange : EpcatError {
    using EpcatError::EpcatError;
};

struct NotPolynomialInParam : EpcatError {
    using EpcatError::EpcatError;
};

struct NotQuadraticInParam : EpcatError {
    using EpcatError::EpcatError;
};

struct DegenerateInput : EpcatError {
    using EpcatError::EpcatError;
};

struct NonConvergence : EpcatError {
    using EpcatError::EpcatError;
};

struct AmbiguousClustering : EpcatError {
    using EpcatError::EpcatError;
};

struct IllConditionedChains : EpcatError {
    using EpcatError::EpcatError;
};

struct UnknownModel : EpcatError {
    using EpcatError::EpcatError;
};

struct BadParamPoint : EpcatError {
    using EpcatError::EpcatError;
};

}  // namespace epcat
