#include "qsub/entropy.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qsub/errors.hpp"
#include "qsub/spectral.hpp"

namespace qsub {
namespace {

constexpr double kLogFloor = 1e-300;
constexpr double kDensityHermiticityTol = 1e-10;

void check_square(const DenseOperator& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DomainError(std::string(what) + " must be a non-empty square matrix");
  }
}

}  // namespace

RealVector density_spectrum(const DenseOperator& rho) {
  check_square(rho, "density matrix");
  RealVector ev = hermitian_eigenvalues(rho, kDensityHermiticityTol);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -kPositivityTol) {
      std::ostringstream msg;
      msg << "density matrix has eigenvalue " << ev(i) << " below -" << kPositivityTol;
      throw PositivityError(msg.str());
    }
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  return ev;
}

double von_neumann_entropy(const DenseOperator& rho) {
  const RealVector ev = density_spectrum(rho);
  double s = 0.0;
  for (double p : ev) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double cross_log_trace(const DenseOperator& rho, const DenseOperator& sigma) {
  check_square(rho, "rho");
  check_square(sigma, "sigma");
  if (rho.rows() != sigma.rows()) throw DomainError("rho and sigma dimensions differ");
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(sigma);
  if (es.info() != Eigen::Success) throw Error("eigensolver failed to converge");
  const auto& s = es.eigenvalues();
  // Weights of rho along sigma's eigenvectors.
  const RealVector w = (es.eigenvectors().adjoint() * rho * es.eigenvectors()).diagonal().real();

  double kernel_weight = 0.0;
  double total = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) < -kPositivityTol) throw PositivityError("sigma is not positive semidefinite");
    if (s(k) <= 0.0) kernel_weight += std::abs(w(k));
    total += w(k) * std::log(std::max(s(k), kLogFloor));
  }
  if (kernel_weight > kPositivityTol) {
    throw PositivityError("rho is not supported on the support of sigma; relative entropy is infinite");
  }
  return total;
}

double relative_entropy(const DenseOperator& rho, const DenseOperator& sigma) {
  return -von_neumann_entropy(rho) - cross_log_trace(rho, sigma);
}

double relative_entropy_to_product(const DenseOperator& rho, const DenseOperator& sigma_a,
                                   const DenseOperator& sigma_b, int n_a, int n_b) {
  check_square(rho, "rho");
  if (sigma_a.rows() != n_a || sigma_b.rows() != n_b) {
    throw DomainError("factor dimensions do not match n_a, n_b");
  }
  const DenseOperator rho_a = partial_trace_b(rho, n_a, n_b);
  const DenseOperator rho_b = partial_trace_a(rho, n_a, n_b);
  return -von_neumann_entropy(rho) - cross_log_trace(rho_a, sigma_a) -
         cross_log_trace(rho_b, sigma_b);
}

}  // namespace qsub
