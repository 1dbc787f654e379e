#pragma once

#include <stdexcept>
#include <string>

namespace intlot {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Combining a float-mode scalar with an exact scalar.
class MixedModeError : public Error {
public:
    explicit MixedModeError(const std::string& what) : Error(what) {}
};

/// A product or quotient that would leave the rational-linear domain.
class NonlinearError : public Error {
public:
    explicit NonlinearError(const std::string& what) : Error(what) {}
};

/// High-precision evaluation could not separate a value from zero.
class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

class UnknownConstant : public Error {
public:
    explicit UnknownConstant(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

/// Bounded search ran out of its configured budget.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

/// Float-mode pivoting hit an ill-conditioned tableau.
class NumericalBreakdown : public Error {
public:
    explicit NumericalBreakdown(const std::string& what) : Error(what) {}
};

/// Lattice generators are linearly dependent over the reals.
class DependentGenerators : public Error {
public:
    explicit DependentGenerators(const std::string& what) : Error(what) {}
};

/// A search whose success is guaranteed by a theorem failed anyway
/// (indicates a numeric pathology, treated as a hard error).
class SearchFailed : public Error {
public:
    explicit SearchFailed(const std::string& what) : Error(what) {}
};

class ModelHasArbitrage : public Error {
public:
    explicit ModelHasArbitrage(const std::string& what) : Error(what) {}
};

class ModelHasIntegerArbitrage : public Error {
public:
    explicit ModelHasIntegerArbitrage(const std::string& what) : Error(what) {}
};

class NotOnePeriod : public Error {
public:
    explicit NotOnePeriod(const std::string& what) : Error(what) {}
};

class NotAdapted : public Error {
public:
    explicit NotAdapted(const std::string& what) : Error(what) {}
};

class TerminalMismatch : public Error {
public:
    explicit TerminalMismatch(const std::string& what) : Error(what) {}
};

class NotMartingaleMeasure : public Error {
public:
    explicit NotMartingaleMeasure(const std::string& what) : Error(what) {}
};

/// An internal consistency check failed; a bug, not a user error.
class InvariantViolation : public Error {
public:
    explicit InvariantViolation(const std::string& what) : Error(what) {}
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

} // namespace intlot
