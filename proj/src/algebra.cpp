#include "dqgate/algebra.hpp"

#include <sstream>

namespace dqgate {

namespace {

std::string describe(const std::string& where, double defect) {
  std::ostringstream os;
  os.precision(3);
  os << where << ": matrix is not unitary (||U^dag U - I||_F = " << defect
     << ")";
  return os.str();
}

}  // namespace

NotUnitaryError::NotUnitaryError(const std::string& where, double defect)
    : std::domain_error(describe(where, defect)), defect_(defect) {}

ComplexMatrix2 pauli(int i) {
  ComplexMatrix2 s;
  switch (i) {
    case 1:
      s << 0.0, 1.0, 1.0, 0.0;
      break;
    case 2:
      s << 0.0, -kI, kI, 0.0;
      break;
    case 3:
      s << 1.0, 0.0, 0.0, -1.0;
      break;
    default:
      throw std::out_of_range("pauli: index must be 1, 2 or 3");
  }
  return s;
}

ComplexMatrix4 kron(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

ComplexMatrix4 first_spin_pauli(int i) {
  return kron(pauli(i), ComplexMatrix2::Identity());
}

ComplexMatrix4 second_spin_pauli(int i) {
  return kron(ComplexMatrix2::Identity(), pauli(i));
}

ComplexMatrix4 heisenberg_coupling() {
  ComplexMatrix4 out = ComplexMatrix4::Zero();
  for (int i = 1; i <= 3; ++i) out += kron(pauli(i), pauli(i));
  return out;
}

ComplexMatrix4 swap_operator() {
  return 0.5 * (ComplexMatrix4::Identity() + heisenberg_coupling());
}

}  // namespace dqgate
