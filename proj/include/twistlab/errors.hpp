#pragma once

#include <stdexcept>
#include <string>

namespace twistlab {

/// Base of every error raised by the library. `kind()` is the stable
/// machine-readable name used in CLI reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)), detail_(detail) {}
    const std::string& kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string kind_;
    std::string detail_;
};

#define TWISTLAB_ERROR(Name)                                                      \
    class Name : public Error {                                                   \
    public:                                                                       \
        explicit Name(const std::string& detail = "") : Error(#Name, detail) {}   \
    };

// specfun
TWISTLAB_ERROR(PoleAtNonPositiveInteger)
TWISTLAB_ERROR(ZeroFactor)
TWISTLAB_ERROR(PoleAtOne)
TWISTLAB_ERROR(ZeroArgument)
// hyp2f1
TWISTLAB_ERROR(NoConvergence)
TWISTLAB_ERROR(DomainError)
TWISTLAB_ERROR(DegenerateParameters)
TWISTLAB_ERROR(ParameterPole)
// dirichlet
TWISTLAB_ERROR(NotPrimitive)
TWISTLAB_ERROR(BadResidue)
// lfun
TWISTLAB_ERROR(GammaPole)
TWISTLAB_ERROR(UnsupportedLane)
TWISTLAB_ERROR(TruncationInsufficient)
// artin
TWISTLAB_ERROR(SchemaError)
TWISTLAB_ERROR(InvariantViolation)
TWISTLAB_ERROR(NetworkError)
TWISTLAB_ERROR(UnknownLabel)
TWISTLAB_ERROR(CacheMiss)
TWISTLAB_ERROR(MissingPrime)
TWISTLAB_ERROR(HypothesisViolation)
TWISTLAB_ERROR(NotUnitModulus)
// converse
TWISTLAB_ERROR(DuplicateNode)
TWISTLAB_ERROR(T0OutOfRange)
TWISTLAB_ERROR(PoolExhausted)
TWISTLAB_ERROR(DigammaPole)
TWISTLAB_ERROR(IncompletePoleData)
TWISTLAB_ERROR(QuadratureFailure)

#undef TWISTLAB_ERROR

}  // namespace twistlab
