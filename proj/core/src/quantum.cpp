#include "qeplas/quantum.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qeplas/errors.hpp"

namespace qeplas {

namespace {

SparseMatrix sparse_identity(Eigen::Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

SparseMatrix to_sparse(const Matrix& m) { return m.sparseView(cplx(0.0), 0.0); }

cplx vec_trace(const Vector& v, Eigen::Index dim) {
  cplx tr = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) tr += v(k * dim + k);
  return tr;
}

DensityMatrix finish_steady_state(const HilbertDims& dims, const Vector& x) {
  Matrix rho = unvec(x, dims.total());
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix(dims, std::move(rho));
}

}  // namespace

// ---------------------------------------------------------------------------
// HilbertDims / Operator

HilbertDims::HilbertDims(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw DomainError("HilbertDims needs at least one factor");
  total_ = 1;
  for (int f : factors_) {
    if (f < 2) throw DomainError("every Hilbert space factor must have dimension >= 2");
    total_ *= f;
  }
}

std::string HilbertDims::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "," : "") << factors_[i];
  os << ']';
  return os.str();
}

Operator::Operator(HilbertDims dims, Matrix matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != dims_.total() || matrix_.cols() != dims_.total()) {
    throw DomainError("operator matrix does not match dims " + dims_.to_string());
  }
}

Operator Operator::identity(const HilbertDims& dims) {
  return {dims, Matrix::Identity(dims.total(), dims.total())};
}

Operator Operator::zero(const HilbertDims& dims) {
  return {dims, Matrix::Zero(dims.total(), dims.total())};
}

Operator Operator::adjoint() const { return {dims_, matrix_.adjoint()}; }

double Operator::hermiticity_error() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

Operator& Operator::operator+=(const Operator& rhs) {
  if (!(dims_ == rhs.dims_)) throw DomainError("operator dims mismatch in +");
  matrix_ += rhs.matrix_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  if (!(dims_ == rhs.dims_)) throw DomainError("operator dims mismatch in -");
  matrix_ -= rhs.matrix_;
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  matrix_ *= s;
  return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  if (!(lhs.dims_ == rhs.dims_)) throw DomainError("operator dims mismatch in *");
  return {lhs.dims_, lhs.matrix_ * rhs.matrix_};
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(HilbertDims dims, Matrix matrix, DensityTolerances tol)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != dims_.total() || matrix_.cols() != dims_.total()) {
    throw DomainError("density matrix does not match dims " + dims_.to_string());
  }
  if (!matrix_.allFinite()) throw SolverError("density matrix has non-finite entries");
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermitian) {
    throw SolverError("density matrix not Hermitian (max deviation " +
                      std::to_string(herm) + ")");
  }
  const double tr_err = std::abs(matrix_.trace() - cplx(1.0));
  if (tr_err > tol.trace) {
    throw SolverError("density matrix trace deviates from 1 by " + std::to_string(tr_err));
  }
  const double lam = min_eigenvalue();
  if (lam < tol.min_eigenvalue) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lam
       << " (Fock cutoff likely too small)";
    throw SolverError(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const HilbertDims& dims, const Vector& psi) {
  return {dims, psi * psi.adjoint()};
}

DensityMatrix DensityMatrix::basis_state(const HilbertDims& dims,
                                         std::span<const int> levels) {
  if (levels.size() != dims.size()) throw DomainError("basis_state: one level per factor");
  Eigen::Index index = 0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] < 0 || levels[k] >= dims[k]) throw DomainError("basis_state: level out of range");
    index = index * dims[k] + levels[k];
  }
  Matrix m = Matrix::Zero(dims.total(), dims.total());
  m(index, index) = 1.0;
  return {dims, std::move(m)};
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix h = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::trace_distance(const DensityMatrix& other) const {
  if (!(dims_ == other.dims_)) throw DomainError("trace_distance: dims mismatch");
  const Matrix diff = matrix_ - other.matrix_;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()),
                                           Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// Superoperator

Superoperator::Superoperator(HilbertDims dims, SparseMatrix matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  const Eigen::Index n = dims_.total() * dims_.total();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw DomainError("superoperator size does not match dims " + dims_.to_string());
  }
  matrix_.makeCompressed();
}

Matrix Superoperator::apply(const Matrix& rho) const {
  if (rho.rows() != dims_.total() || rho.cols() != dims_.total()) {
    throw DomainError("superoperator applied to matrix of wrong size");
  }
  return unvec(matrix_ * vec(rho), dims_.total());
}

double Superoperator::norm_inf() const {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(matrix_.rows());
  for (Eigen::Index c = 0; c < matrix_.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(matrix_, c); it; ++it) {
      row_sums(it.row()) += std::abs(it.value());
    }
  }
  return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw DomainError("unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

// ---------------------------------------------------------------------------
// Elementary operators

Operator annihilation(int cutoff) {
  if (cutoff < 2) throw DomainError("Fock cutoff must be >= 2");
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int k = 1; k < cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return {HilbertDims({cutoff}), std::move(a)};
}

Operator transition(int i, int j) {
  if (i < 1 || i > 3 || j < 1 || j > 3) throw DomainError("emitter level must be 1, 2 or 3");
  Matrix s = Matrix::Zero(3, 3);
  s(i - 1, j - 1) = 1.0;
  return {HilbertDims({3}), std::move(s)};
}

Operator embed(const Operator& op, std::size_t slot, const HilbertDims& dims) {
  if (op.dims().size() != 1) throw DomainError("embed expects a single-factor operator");
  if (slot >= dims.size() || op.dims()[0] != dims[slot]) {
    throw DomainError("embed: operator dimension does not match factor " +
                      std::to_string(slot) + " of " + dims.to_string());
  }
  Eigen::Index left = 1;
  Eigen::Index right = 1;
  for (std::size_t k = 0; k < slot; ++k) left *= dims[k];
  for (std::size_t k = slot + 1; k < dims.size(); ++k) right *= dims[k];

  const Matrix inner = Eigen::kroneckerProduct(op.matrix(), Matrix::Identity(right, right)).eval();
  return {dims, Eigen::kroneckerProduct(Matrix::Identity(left, left), inner).eval()};
}

Matrix partial_trace(const Matrix& m, const HilbertDims& dims, std::size_t keep) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DomainError("partial_trace: matrix does not match dims");
  }
  if (keep >= dims.size()) throw DomainError("partial_trace: slot out of range");
  Eigen::Index left = 1;
  Eigen::Index right = 1;
  for (std::size_t k = 0; k < keep; ++k) left *= dims[k];
  for (std::size_t k = keep + 1; k < dims.size(); ++k) right *= dims[k];
  const Eigen::Index d = dims[keep];

  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      cplx acc = 0.0;
      for (Eigen::Index l = 0; l < left; ++l) {
        for (Eigen::Index r = 0; r < right; ++r) {
          acc += m((l * d + a) * right + r, (l * d + b) * right + r);
        }
      }
      out(a, b) = acc;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Liouvillian and solvers

Superoperator liouvillian(const Operator& H, std::span<const Jump> jumps,
                          double hermitian_tol) {
  const double herm = H.hermiticity_error();
  if (herm > hermitian_tol) {
    throw DomainError("Hamiltonian is not Hermitian (max deviation " +
                      std::to_string(herm) + ")");
  }
  const HilbertDims& dims = H.dims();
  const Eigen::Index d = dims.total();
  const SparseMatrix id = sparse_identity(d);
  const cplx minus_i(0.0, -1.0);

  const SparseMatrix h = to_sparse(H.matrix());
  const SparseMatrix ht = to_sparse(H.matrix().transpose());
  SparseMatrix L = minus_i * (SparseMatrix(Eigen::kroneckerProduct(id, h)) -
                              SparseMatrix(Eigen::kroneckerProduct(ht, id)));

  for (const Jump& jump : jumps) {
    if (!(jump.op.dims() == dims)) throw DomainError("jump operator dims mismatch");
    if (!(jump.rate >= 0.0)) throw DomainError("jump rates must be non-negative");
    if (jump.rate == 0.0) continue;
    const Matrix& o = jump.op.matrix();
    const Matrix odo = o.adjoint() * o;
    const SparseMatrix sandwich = Eigen::kroneckerProduct(to_sparse(o.conjugate()), to_sparse(o));
    const SparseMatrix left = Eigen::kroneckerProduct(id, to_sparse(odo));
    const SparseMatrix right = Eigen::kroneckerProduct(to_sparse(odo.transpose()), id);
    L += cplx(jump.rate) * (sandwich - 0.5 * left - 0.5 * right);
  }
  L.prune(cplx(0.0), 0.0);
  return {dims, std::move(L)};
}

DensityMatrix steady_state(const Superoperator& L, const SteadyStateOptions& options) {
  const HilbertDims& dims = L.dims();
  const Eigen::Index d = dims.total();
  const Eigen::Index n = d * d;

  Vector rhs = Vector::Zero(n);
  rhs(0) = 1.0;
  Vector x;

  if (n <= options.dense_limit) {
    Matrix A = Matrix(L.matrix());
    A.row(0).setZero();
    for (Eigen::Index k = 0; k < d; ++k) A(0, k * d + k) = 1.0;
    Eigen::PartialPivLU<Matrix> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > options.rcond_floor)) {
      throw SolverError("steady-state system is singular or ill-conditioned", rcond);
    }
    x = lu.solve(rhs);
  } else {
    std::vector<Eigen::Triplet<cplx>> triplets;
    triplets.reserve(static_cast<std::size_t>(L.matrix().nonZeros() + d));
    for (Eigen::Index c = 0; c < L.matrix().outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(L.matrix(), c); it; ++it) {
        if (it.row() != 0) triplets.emplace_back(it.row(), it.col(), it.value());
      }
    }
    for (Eigen::Index k = 0; k < d; ++k) triplets.emplace_back(0, k * d + k, 1.0);
    SparseMatrix A(n, n);
    A.setFromTriplets(triplets.begin(), triplets.end());
    A.makeCompressed();
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) {
      throw SolverError("sparse steady-state factorization failed: " + lu.lastErrorMessage());
    }
    x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw SolverError("sparse steady-state solve failed");
  }

  if (!x.allFinite()) throw SolverError("steady-state solution is not finite");
  const double scale = std::max(L.norm_inf(), 1.0);
  const double residual = (L.matrix() * x).cwiseAbs().maxCoeff();
  if (residual > options.residual_tol * scale) {
    throw SolverError("steady-state residual " + std::to_string(residual) +
                      " exceeds tolerance");
  }
  return finish_steady_state(dims, x);
}

namespace {

Vector rk4_run(const SparseMatrix& L, Vector y, Eigen::Index dim, double t_end,
               double dt) {
  const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
  if (steps <= 0) return y;
  const double h = t_end / static_cast<double>(steps);
  const cplx tr0 = vec_trace(y, dim);

  const Eigen::SparseMatrix<cplx, Eigen::RowMajor> A = L;
  const Eigen::Index n = y.size();
  Vector k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (long s = 0; s < steps; ++s) {
    k1.noalias() = A * y;
    tmp = y + (0.5 * h) * k1;
    k2.noalias() = A * tmp;
    tmp = y + (0.5 * h) * k2;
    k3.noalias() = A * tmp;
    tmp = y + h * k3;
    k4.noalias() = A * tmp;
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((s & 255) == 255 || s + 1 == steps) {
      if (!y.allFinite()) throw SolverError("RK4 evolution diverged; reduce dt");
      const double drift = std::abs(vec_trace(y, dim) - tr0);
      if (drift > 1e-6) {
        throw SolverError("RK4 trace drift " + std::to_string(drift) + "; reduce dt");
      }
    }
  }
  return y;
}

}  // namespace

DensityMatrix evolve(const DensityMatrix& rho0, const Superoperator& L,
                     double t_end, double dt) {
  if (!(rho0.dims() == L.dims())) throw DomainError("evolve: dims mismatch");
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw DomainError("evolve needs dt > 0 and t_end >= 0");
  const Eigen::Index d = L.dims().total();
  const Vector y = rk4_run(L.matrix(), vec(rho0.matrix()), d, t_end, dt);
  Matrix rho = unvec(y, d);
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix(L.dims(), std::move(rho), {1e-8, 1e-8, -1e-8});
}

HalvingResult evolve_step_halving(const DensityMatrix& rho0, const Superoperator& L,
                                  double t_end, double dt) {
  const DensityMatrix coarse = evolve(rho0, L, t_end, dt);
  DensityMatrix fine = evolve(rho0, L, t_end, 0.5 * dt);
  const double gap = coarse.trace_distance(fine);
  return {std::move(fine), gap};
}

cplx expect(const Operator& A, const DensityMatrix& rho) {
  if (!(A.dims() == rho.dims())) throw DomainError("expect: dims mismatch");
  // tr(A rho) without forming the product.
  return (A.matrix().transpose().cwiseProduct(rho.matrix())).sum();
}

}  // namespace qeplas
