#pragma once

#include <stdexcept>
#include <string>

namespace qgroupoid {

// Operands live over different coordinate lists, or arities do not match.
class structural_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A series whose leading coefficient is not the unit.
class not_invertible_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An input violates a documented precondition (non-antisymmetric matrix,
// non-commuting frame, [L,L] != 0, ...).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structure constants or algebroid data failing antisymmetry/Jacobi.
class invalid_structure_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class division_by_zero_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qgroupoid
