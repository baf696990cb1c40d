#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace permrow {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Column permutation in 0-based image form: perm[k] is the position that
/// original index k is sent to.
using Permutation = std::vector<std::size_t>;

/// n x p matrix of (log-)coverages. Rows are samples, columns are permuted
/// positions. Construction rejects n < 2, p < 2 and non-finite entries.
class ObservationMatrix {
 public:
  explicit ObservationMatrix(Matrix values);

  const Matrix& values() const noexcept { return values_; }
  Eigen::Index rows() const noexcept { return values_.rows(); }
  Eigen::Index cols() const noexcept { return values_.cols(); }

 private:
  Matrix values_;
};

/// Row-centered observations together with the removed row means, so that
/// original = values + rowMeans * 1^T.
struct CenteredMatrix {
  Matrix values;
  Vector rowMeans;
};

enum class SignConvention {
  /// Flip (u, v) so that sum_i (Xv)_i >= 0; falls back to
  /// FirstNonzeroNegative when that sum is exactly zero.
  RowMajoritySign,
  /// Flip (u, v) so that the first nonzero component of v is negative.
  FirstNonzeroNegative,
};

struct SvdOptions {
  double tol = 1e-10;
  int maxIter = 1000;
  SignConvention convention = SignConvention::RowMajoritySign;
  /// Estimate the second singular value by deflation to detect a repeated
  /// leading singular value.
  bool checkMultiplicity = true;
};

struct SingularTriple {
  double lambda = 0.0;
  Vector u;
  Vector v;
  SignConvention convention = SignConvention::RowMajoritySign;
  int iterations = 0;
  bool converged = false;
  /// Set when lambda_1 and lambda_2 agree to within tol * lambda_1.
  bool multiplicityWarning = false;
  /// ||X v - lambda u||_2 of the returned triple.
  double residual = 0.0;
};

/// Ascending ranks (0-based) with ties broken left to right, plus the
/// inverse map: inversePermutation[k] is the index holding rank k.
struct Ranking {
  std::vector<std::size_t> ranks;
  std::vector<std::size_t> inversePermutation;
};

struct ResidualSpectrum {
  double lambda1 = 0.0;
  double residualSum = 0.0;
};

/// Returns values = Y (I - ee^T / p) and the row means (1/p) Y e.
/// Rows that are exactly constant center to exact zeros.
CenteredMatrix center_rows(const ObservationMatrix& y);

/// Leading singular triple of X.values by power iteration on the n x n Gram
/// matrix X X^T. Iteration starts from X x_r where x_r is the row of X with
/// the largest norm, and stops once both the Rayleigh quotient change falls
/// below tol * (mu + 1) and ||X v - lambda u|| <= tol * (lambda + 1).
/// Throws Error{ZeroMatrix} when X is (numerically) zero. Hitting maxIter is
/// not an error; the triple comes back with converged == false.
SingularTriple leading_singular_triple(const CenteredMatrix& x, const SvdOptions& options = {});

/// Top singular value and sum_{i=2..k} lambda_i, obtained by repeated
/// deflation of the Gram matrix. Roundoff-level eigenvalue estimates are
/// clamped to zero.
ResidualSpectrum residual_spectrum(const CenteredMatrix& x, std::size_t k,
                                   const SvdOptions& options = {});

Ranking rank_vector(std::span<const double> x);
Ranking rank_vector(const Vector& x);

/// Y with columns moved so that Y_out[:, perm[k]] = Y_in[:, k].
Matrix permute_columns(const Matrix& m, const Permutation& perm);
Permutation inverse_permutation(const Permutation& perm);
bool is_permutation(const Permutation& perm);

}  // namespace permrow
