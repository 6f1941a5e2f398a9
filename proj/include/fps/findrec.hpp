#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fps/expr.hpp"
#include "fps/field.hpp"
#include "fps/recurrence.hpp"

namespace fps {

class NonHypergeometricComponent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoRecurrenceFound : public std::runtime_error {
 public:
  NoRecurrenceFound(int max_order, int max_degree)
      : std::runtime_error("no recurrence of order <= " + std::to_string(max_order) + " and degree <= " +
                           std::to_string(max_degree)),
        max_order_(max_order),
        max_degree_(max_degree) {}
  int max_order() const { return max_order_; }
  int max_degree() const { return max_degree_; }

 private:
  int max_order_;
  int max_degree_;
};

class ClosureBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a(k) = sum coefficient_i(k) * term_i(k), term_i(k+1) = certificate_i(k) term_i(k).
struct BasisTerm {
  Expr term;
  Field certificate;
  Field coefficient;
};

struct HypergeomTermBasis {
  std::string index;
  std::vector<BasisTerm> terms;
};

/// Split a into pairwise non-similar hypergeometric terms with rational
/// coefficients. Terms with equal certificates are merged.
HypergeomTermBasis decompose_term(const Expr& a, const std::string& k);

/// A sequence in `re.index` together with a recurrence annihilating it.
struct HolonomicSequence {
  Expr term;
  LinearRecurrence re;
};

enum class ClosureOp { Add, Mul, Shift, PolyScale };

struct ClosureOptions {
  int cap = 16;        // largest admissible basis dimension
  int max_degree = 12;
  long shift = 1;      // for Shift
  Field scale;         // polynomial in the index, for PolyScale
};

/// Annotation for a database head or hypergeometric term in k.
HolonomicSequence holonomic_sequence(const Expr& term, const std::string& k);

HolonomicSequence holonomic_closure(ClosureOp op, const std::vector<HolonomicSequence>& args,
                                    const ClosureOptions& opts = {});

struct FindRecursionOptions {
  int max_order = 4;
  int max_degree = 8;
  int cap = 16;
};

/// Minimal (order, then degree) recurrence sum_j p_j(k) a(k+j) = 0 for a(k).
LinearRecurrence find_recursion(const Expr& a, const std::string& k, const FindRecursionOptions& opts = {});

/// a(k) at an integer; throws std::domain_error where a is undefined.
Field evaluate_term(const Expr& a, const std::string& k, long value);

}  // namespace fps
