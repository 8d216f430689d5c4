#ifndef GFTREE_ERRORS_HPP
#define GFTREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gftree {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotClosed : std::runtime_error {
    explicit NotClosed(const std::string& msg) : std::runtime_error(msg) {}
};

struct DepthExhausted : std::runtime_error {
    explicit DepthExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoFamilyFound : std::runtime_error {
    explicit NoFamilyFound(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : std::runtime_error {
    explicit DivisionByZero(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonUnitDenominator : std::runtime_error {
    explicit NonUnitDenominator(const std::string& msg) : std::runtime_error(msg) {}
};

struct PoleAtEvaluationPoint : std::runtime_error {
    explicit PoleAtEvaluationPoint(const std::string& msg) : std::runtime_error(msg) {}
};

struct VerificationMismatch : std::runtime_error {
    explicit VerificationMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct Unclassified : std::runtime_error {
    explicit Unclassified(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gftree

#endif
