#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

namespace dqgate {

using Complex = std::complex<double>;

template <int N>
using ComplexMatrix = Eigen::Matrix<Complex, N, N>;

using ComplexMatrix2 = ComplexMatrix<2>;
using ComplexMatrix4 = ComplexMatrix<4>;
using Spinor2 = Eigen::Matrix<Complex, 2, 1>;
using Spinor4 = Eigen::Matrix<Complex, 4, 1>;
using Vec3 = Eigen::Vector3d;

/// Frobenius bound on ||U^dagger U - I|| for a matrix to count as unitary.
inline constexpr double kUnitarityTol = 1e-10;

inline constexpr Complex kI{0.0, 1.0};

class NotUnitaryError : public std::domain_error {
 public:
  NotUnitaryError(const std::string& where, double defect);
  double defect() const { return defect_; }

 private:
  double defect_;
};

// Pauli matrices, index 1..3.
ComplexMatrix2 pauli(int i);

ComplexMatrix4 kron(const ComplexMatrix2& a, const ComplexMatrix2& b);

// Basis |1>=|uu>, |2>=|ud>, |3>=|du>, |4>=|dd>. The first arrow belongs to
// the first Kronecker factor.
ComplexMatrix4 first_spin_pauli(int i);   // sigma_i (x) I
ComplexMatrix4 second_spin_pauli(int i);  // I (x) sigma_i

/// sum_i sigma_i (x) sigma_i, the isotropic Heisenberg coupling operator.
ComplexMatrix4 heisenberg_coupling();

/// (I + heisenberg_coupling()) / 2. Exchanges |ud> and |du>; squares to I.
ComplexMatrix4 swap_operator();

template <int N>
double unitarity_defect(const ComplexMatrix<N>& u) {
  return (u.adjoint() * u - ComplexMatrix<N>::Identity()).norm();
}

template <int N>
double hermiticity_defect(const ComplexMatrix<N>& h) {
  return (h - h.adjoint()).norm();
}

template <int N>
bool is_finite(const ComplexMatrix<N>& m) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

template <int N>
void require_unitary(const ComplexMatrix<N>& u, const std::string& where,
                     double tol = kUnitarityTol) {
  const double d = unitarity_defect<N>(u);
  if (!(d <= tol)) throw NotUnitaryError(where, d);
}

/// exp(-i H t) for Hermitian H, via the spectral decomposition.
template <int N>
ComplexMatrix<N> unitary_exp(const ComplexMatrix<N>& hermitian, double t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<N>> es(hermitian);
  Eigen::Matrix<Complex, N, 1> phases;
  for (int k = 0; k < N; ++k)
    phases(k) = std::exp(-kI * es.eigenvalues()(k) * t);
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

/// |Tr(u^dagger v)| / N. Equals 1 exactly when u and v differ by a global
/// phase. Both arguments must be unitary to within `unitarity_tol`.
template <int N>
double fidelity_phase_invariant(const ComplexMatrix<N>& u,
                                const ComplexMatrix<N>& v,
                                double unitarity_tol = kUnitarityTol) {
  require_unitary<N>(u, "fidelity_phase_invariant(u)", unitarity_tol);
  require_unitary<N>(v, "fidelity_phase_invariant(v)", unitarity_tol);
  const double f = std::abs((u.adjoint() * v).trace()) / N;
  return f > 1.0 ? 1.0 : f;
}

// Row-major array of [re, im] pairs.
template <int N>
nlohmann::json matrix_to_json(const ComplexMatrix<N>& m) {
  auto out = nlohmann::json::array();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      out.push_back({m(i, j).real(), m(i, j).imag()});
  return out;
}

template <int N>
ComplexMatrix<N> matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(N * N))
    throw std::invalid_argument("matrix_from_json: expected " +
                                std::to_string(N * N) + " [re, im] pairs");
  ComplexMatrix<N> m;
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      const auto& e = j.at(static_cast<std::size_t>(i * N + k));
      m(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

}  // namespace dqgate
