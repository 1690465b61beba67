#pragma once

#include <stdexcept>
#include <string>

namespace dircheeger {

enum class ErrorKind {
  kInvalidCut,      // empty or full vertex subset
  kDegenerateCut,   // zero denominator
  kSizeLimit,       // exhaustive routine asked for too many vertices
  kParameter,       // out-of-range argument
  kInfeasible,      // empty feasible region
  kDegenerate,      // zero weight where a positive one is required
  kAsymmetric,      // matrix failed the symmetry check
  kReducible,       // Markov chain is not irreducible
  kNotStationary,   // supplied distribution is not stationary for P
  kParse,           // malformed input file
  kUnknownFamily,   // instance generator does not know the family
  kInternal,        // an asserted invariant failed
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Throws kInternal when cond is false. Used for runtime-asserted guarantees.
void ensure(bool cond, const std::string& what);

}  // namespace dircheeger
