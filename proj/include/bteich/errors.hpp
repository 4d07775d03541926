/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <stdexcept>
#include <string>

namespace bteich {

/// Base class for all library errors. `name()` is stable and machine-readable;
/// what() carries the diagnostic text.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& msg)
        : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define BTEICH_ERROR(Name)                                        \
    class Name : public Error {                                   \
    public:                                                       \
        explicit Name(const std::string& msg) : Error(#Name, msg) {} \
    }

BTEICH_ERROR(ValidationError);
BTEICH_ERROR(ResolutionTooLow);
BTEICH_ERROR(NonFiniteDensity);
BTEICH_ERROR(DegenerateCuts);
BTEICH_ERROR(QuadratureFailure);
BTEICH_ERROR(ChartMismatch);
BTEICH_ERROR(ModelMismatch);
BTEICH_ERROR(NumericalDifferentiationFailure);
BTEICH_ERROR(DegenerateTriangle);
BTEICH_ERROR(NoConvergence);
BTEICH_ERROR(JacobianCollapse);
BTEICH_ERROR(NonPositiveH);
BTEICH_ERROR(SingularOperator);
BTEICH_ERROR(BranchCollision);
BTEICH_ERROR(ParseError);
BTEICH_ERROR(ConfigError);
BTEICH_ERROR(ComputationError);

#undef BTEICH_ERROR

} // namespace bteich
