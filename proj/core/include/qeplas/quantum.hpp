#pragma once

// Minimal operator algebra for composite (emitter x Fock modes) Hilbert spaces
// and the Lindblad open-system solvers built on it.
//
// Conventions, fixed library-wide:
//  * Kronecker order is factor 0 (x) factor 1 (x) ... so factor 0 is the most
//    significant index of a product-basis state.
//  * Superoperators act on column-stacked density matrices:
//    vec(A X B) = (B^T (x) A) vec(X).

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qeplas {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

class HilbertDims {
 public:
  HilbertDims() = default;
  explicit HilbertDims(std::vector<int> factors);

  std::span<const int> factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  int operator[](std::size_t slot) const { return factors_.at(slot); }
  Eigen::Index total() const { return total_; }
  std::string to_string() const;

  bool operator==(const HilbertDims& other) const {
    return factors_ == other.factors_;
  }

 private:
  std::vector<int> factors_;
  Eigen::Index total_ = 0;
};

class Operator {
 public:
  Operator(HilbertDims dims, Matrix matrix);

  static Operator identity(const HilbertDims& dims);
  static Operator zero(const HilbertDims& dims);

  const HilbertDims& dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }

  Operator adjoint() const;
  /// max |A - A^dagger| over all entries.
  double hermiticity_error() const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(cplx s);

  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(Operator lhs, cplx s) { return lhs *= s; }
  friend Operator operator*(cplx s, Operator rhs) { return rhs *= s; }
  friend Operator operator*(const Operator& lhs, const Operator& rhs);

 private:
  HilbertDims dims_;
  Matrix matrix_;
};

struct DensityTolerances {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-8;
};

/// A validated quantum state: Hermitian, unit trace, positive semidefinite
/// within DensityTolerances. Construction throws SolverError otherwise.
class DensityMatrix {
 public:
  DensityMatrix(HilbertDims dims, Matrix matrix, DensityTolerances tol = {});

  /// |psi><psi| for a normalized state vector.
  static DensityMatrix pure(const HilbertDims& dims, const Vector& psi);
  /// Product basis state |levels[0]> (x) |levels[1]> (x) ..., zero-based levels.
  static DensityMatrix basis_state(const HilbertDims& dims,
                                   std::span<const int> levels);

  const HilbertDims& dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }

  double min_eigenvalue() const;
  /// (1/2) sum |eigenvalues of (this - other)|.
  double trace_distance(const DensityMatrix& other) const;

 private:
  HilbertDims dims_;
  Matrix matrix_;
};

struct Jump {
  Operator op;
  double rate = 0.0;
};

class Superoperator {
 public:
  Superoperator(HilbertDims dims, SparseMatrix matrix);

  const HilbertDims& dims() const { return dims_; }
  const SparseMatrix& matrix() const { return matrix_; }

  Matrix apply(const Matrix& rho) const;
  /// Largest absolute row sum; an upper bound on the spectral radius.
  double norm_inf() const;

 private:
  HilbertDims dims_;
  SparseMatrix matrix_;
};

Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Eigen::Index dim);

/// Bosonic lowering operator truncated at `cutoff` Fock states.
Operator annihilation(int cutoff);

/// Emitter matrix unit |i><j| with levels i, j in {1, 2, 3}.
Operator transition(int i, int j);

/// Places a single-factor operator at `slot`, identities elsewhere.
Operator embed(const Operator& op, std::size_t slot, const HilbertDims& dims);

/// Reduced matrix on factor `keep` (trace over all other factors).
Matrix partial_trace(const Matrix& m, const HilbertDims& dims, std::size_t keep);

/// Generator of rho' = -i[H, rho] + sum_k rate_k D[o_k] rho with
/// D[o] rho = o rho o^dagger - (o^dagger o rho + rho o^dagger o) / 2.
/// Throws DomainError if H is not Hermitian to `hermitian_tol` or a rate is negative.
Superoperator liouvillian(const Operator& H, std::span<const Jump> jumps,
                          double hermitian_tol = 1e-10);

struct SteadyStateOptions {
  // Liouvillians of vectorized dimension up to this size are solved densely.
  Eigen::Index dense_limit = 1024;
  double rcond_floor = 1e-14;
  // Allowed max-abs residual of L(rho) relative to norm_inf(L).
  double residual_tol = 1e-10;
};

/// Null vector of L normalized to unit trace: one row of L is replaced with
/// the trace functional and the linear system solved, then the result is
/// Hermitian-symmetrized and validated.
DensityMatrix steady_state(const Superoperator& L,
                           const SteadyStateOptions& options = {});

/// Fixed-step RK4 integration of rho' = L rho up to t_end with step <= dt.
/// Throws SolverError when the trace drifts by more than 1e-6 or the state
/// stops being finite.
DensityMatrix evolve(const DensityMatrix& rho0, const Superoperator& L,
                     double t_end, double dt);

struct HalvingResult {
  DensityMatrix state;     // result at step dt / 2
  double discrepancy = 0;  // trace distance between the dt and dt/2 runs
};

HalvingResult evolve_step_halving(const DensityMatrix& rho0,
                                  const Superoperator& L, double t_end,
                                  double dt);

/// tr(A rho).
cplx expect(const Operator& A, const DensityMatrix& rho);

}  // namespace qeplas
