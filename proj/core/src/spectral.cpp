#include "qsub/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "qsub/errors.hpp"

namespace qsub {
namespace {

void check_hermitian(const DenseOperator& h, double tol) {
  if (h.rows() != h.cols()) throw DomainError("Hamiltonian must be square");
  if (h.size() == 0) return;
  const double scale = std::max(std::sqrt(h.cwiseAbs2().maxCoeff()), 1e-300);
  if (hermiticity_defect(h) > tol * scale) throw DomainError("operator is not Hermitian");
}

// Connected components of the nonzero pattern of h.
std::vector<std::vector<Eigen::Index>> components(const DenseOperator& h) {
  const Eigen::Index n = h.rows();
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (h(i, j) != complex(0.0) || h(j, i) != complex(0.0)) {
        const auto ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<Eigen::Index> slot(n, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Eigen::Index>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

// Unit phases d with conj(d_j) h_jk d_k real on every edge. False when some
// cycle carries a net phase.
bool real_gauge(const DenseOperator& hb, Eigen::VectorXcd& gauge) {
  const Eigen::Index n = hb.rows();
  gauge = Eigen::VectorXcd::Zero(n);
  std::vector<bool> seen(n, false);
  std::queue<Eigen::Index> todo;
  for (Eigen::Index root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    gauge(root) = 1.0;
    todo.push(root);
    while (!todo.empty()) {
      const auto j = todo.front();
      todo.pop();
      for (Eigen::Index k = 0; k < n; ++k) {
        const complex hjk = hb(j, k);
        if (seen[k] || hjk == complex(0.0)) continue;
        seen[k] = true;
        gauge(k) = gauge(j) * std::conj(hjk) / std::abs(hjk);
        todo.push(k);
      }
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const complex hjk = hb(j, k);
      if (hjk == complex(0.0)) continue;
      const complex r = std::conj(gauge(j)) * hjk * gauge(k);
      if (std::abs(r.imag()) > 1e-13 * std::abs(hjk)) return false;
    }
  }
  return true;
}

DenseOperator gather(const DenseOperator& h, const std::vector<Eigen::Index>& index) {
  const auto n = static_cast<Eigen::Index>(index.size());
  DenseOperator hb(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) hb(i, j) = h(index[i], index[j]);
  }
  return hb;
}

Eigen::MatrixXd gauged_real(const DenseOperator& hb, const Eigen::VectorXcd& gauge) {
  return (gauge.conjugate().asDiagonal() * hb * gauge.asDiagonal()).real();
}

std::vector<SpectralPropagator::Block> decompose(const DenseOperator& h, bool vectors) {
  std::vector<SpectralPropagator::Block> blocks;
  for (auto& index : components(h)) {
    SpectralPropagator::Block b;
    b.index = std::move(index);
    const DenseOperator hb = gather(h, b.index);
    const auto options = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    b.real = real_gauge(hb, b.gauge);
    if (b.real) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gauged_real(hb, b.gauge), options);
      if (es.info() != Eigen::Success) throw Error("eigensolver failed to converge");
      b.energies = es.eigenvalues();
      if (vectors) {
        b.real_vectors = es.eigenvectors();
        b.vectors = b.gauge.asDiagonal() * b.real_vectors.cast<complex>();
      }
    } else {
      Eigen::SelfAdjointEigenSolver<DenseOperator> es(hb, options);
      if (es.info() != Eigen::Success) throw Error("eigensolver failed to converge");
      b.energies = es.eigenvalues();
      if (vectors) b.vectors = es.eigenvectors();
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

RealVector sorted_energies(const std::vector<SpectralPropagator::Block>& blocks, Eigen::Index dim) {
  RealVector e(dim);
  Eigen::Index k = 0;
  for (const auto& b : blocks) {
    e.segment(k, b.energies.size()) = b.energies;
    k += b.energies.size();
  }
  std::sort(e.data(), e.data() + e.size());
  return e;
}

Eigen::VectorXcd phases(const RealVector& energies, double t) {
  Eigen::VectorXcd c(energies.size());
  for (Eigen::Index j = 0; j < energies.size(); ++j) c(j) = std::polar(1.0, -energies(j) * t);
  return c;
}

}  // namespace

SpectralPropagator::SpectralPropagator(const DenseOperator& h, double hermiticity_tol)
    : dim_(h.rows()) {
  check_hermitian(h, hermiticity_tol);
  blocks_ = decompose(h, true);
}

RealVector SpectralPropagator::eigenvalues() const { return sorted_energies(blocks_, dim_); }

DenseOperator SpectralPropagator::unitary(double t) const {
  DenseOperator u = DenseOperator::Zero(dim_, dim_);
  for (const auto& b : blocks_) {
    const DenseOperator ub = b.vectors * phases(b.energies, t).asDiagonal() * b.vectors.adjoint();
    for (std::size_t j = 0; j < b.index.size(); ++j) {
      for (std::size_t i = 0; i < b.index.size(); ++i) u(b.index[i], b.index[j]) = ub(i, j);
    }
  }
  return u;
}

DenseOperator SpectralPropagator::evolve(const DenseOperator& rho0, double t) const {
  if (rho0.rows() != dim_ || rho0.cols() != dim_) throw DomainError("state dimension mismatch");
  const DenseOperator u = unitary(t);
  return u * rho0 * u.adjoint();
}

DenseOperator SpectralPropagator::evolve_diagonal(const RealVector& populations, double t) const {
  if (populations.size() != dim_) throw DomainError("state dimension mismatch");
  // A diagonal rho0 never couples blocks, so rho(t) is block diagonal too.
  DenseOperator rho = DenseOperator::Zero(dim_, dim_);
  for (const auto& b : blocks_) {
    const auto n = static_cast<Eigen::Index>(b.index.size());
    RealVector p(n);
    for (Eigen::Index i = 0; i < n; ++i) p(i) = populations(b.index[i]);
    const DenseOperator w = b.vectors * phases(b.energies, t).asDiagonal();
    DenseOperator tilde;
    if (b.real) {
      tilde = (b.real_vectors.transpose() * p.asDiagonal() * b.real_vectors).cast<complex>();
    } else {
      tilde = b.vectors.adjoint() * p.cast<complex>().asDiagonal() * b.vectors;
    }
    const DenseOperator rb = w * tilde * w.adjoint();
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) rho(b.index[i], b.index[j]) = rb(i, j);
    }
  }
  return rho;
}

RealVector hermitian_eigenvalues(const DenseOperator& h, double hermiticity_tol) {
  check_hermitian(h, hermiticity_tol);
  return sorted_energies(decompose(h, false), h.rows());
}

DenseOperator evolve(const DenseOperator& h, const DenseOperator& rho0, double t) {
  return SpectralPropagator(h).evolve(rho0, t);
}

}  // namespace qsub
