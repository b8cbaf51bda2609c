#pragma once

#include <stdexcept>
#include <string>

namespace dkb {

// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                ": " + msg),
          line(line),
          column(column) {}

    int line;
    int column;
};

class UnknownAtom : public Error {
public:
    explicit UnknownAtom(const std::string& name) : Error("unknown atom: " + name) {}
};

class VocabularyTooLarge : public Error {
public:
    VocabularyTooLarge(std::size_t size, std::size_t limit)
        : Error("vocabulary has " + std::to_string(size) + " atoms, limit is " +
                std::to_string(limit)) {}
};

class DuplicateAtomDeclaration : public Error {
public:
    explicit DuplicateAtomDeclaration(const std::string& name)
        : Error("duplicate atom declaration: " + name) {}
};

class StrengthNotPositive : public Error {
public:
    explicit StrengthNotPositive(const std::string& value)
        : Error("default strength must be positive, got " + value) {}
};

class NegativeOperand : public Error {
public:
    explicit NegativeOperand(const std::string& op)
        : Error(op + ": operand is negative") {}
};

class RootMismatch : public Error {
public:
    explicit RootMismatch(const std::string& detail)
        : Error("exponent denominator does not divide the evaluation root: " + detail) {}
};

class ZeroConditioning : public Error {
public:
    ZeroConditioning() : Error("conditioning on an event of probability zero") {}
};

class VocabularyMismatch : public Error {
public:
    VocabularyMismatch() : Error("operands range over different vocabularies") {}
};

class ConditioningOnImpossible : public Error {
public:
    ConditioningOnImpossible() : Error("conditioning on a formula of rank infinity") {}
};

class DegenerateDistribution : public Error {
public:
    DegenerateDistribution() : Error("all worlds have magnitude infinity") {}
};

class InconsistentDelta : public Error {
public:
    InconsistentDelta() : Error("default set admits no tolerance partition") {}
};

class MEDivergence : public Error {
public:
    explicit MEDivergence(int iters)
        : Error("weight iteration did not reach a fixpoint within " + std::to_string(iters) +
                " iterations") {}
};

class MEInfeasible : public Error {
public:
    MEInfeasible() : Error("weight fixpoint violates the feasibility conditions") {}
};

class TooLargeForOracle : public Error {
public:
    explicit TooLargeForOracle(const std::string& detail)
        : Error("instance too large for exhaustive ranking oracle: " + detail) {}
};

class SolverFailure : public Error {
public:
    explicit SolverFailure(const std::string& detail)
        : Error("numeric maximum-entropy solve failed: " + detail) {}
};

}  // namespace dkb
