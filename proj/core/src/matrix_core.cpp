#include "permrow/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "permrow/errors.hpp"

namespace permrow {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Components of a unit vector at or below this magnitude count as zero when
// locating the "first nonzero" entry.
constexpr double kZeroComponent = 1e-12;

struct EigenPair {
  double mu = 0.0;
  Vector x;
  int iterations = 0;
  bool converged = false;
};

// Power iteration for the dominant eigenpair of a symmetric PSD matrix.
// Converged once the Rayleigh quotient moved by less than tol * (mu + 1)
// and ||G x - mu x|| / sqrt(mu) <= tol * (sqrt(mu) + 1), the latter being
// ||X v - lambda u|| when G = X X^T.
EigenPair dominant_eigenpair(const Matrix& g, Vector x, double tol, int max_iter) {
  EigenPair out;
  double norm = x.norm();
  if (norm == 0.0) {
    out.x = Vector::Zero(g.rows());
    out.converged = true;
    return out;
  }
  x /= norm;

  double mu_prev = std::numeric_limits<double>::quiet_NaN();
  Vector w(g.rows());
  for (int it = 1; it <= max_iter; ++it) {
    w.noalias() = g * x;
    const double mu = x.dot(w);
    const double lambda = std::sqrt(std::max(mu, 0.0));
    const double residual = (w - mu * x).norm();
    out.iterations = it;

    const bool stable = std::abs(mu - mu_prev) < tol * (std::abs(mu) + 1.0);
    const bool small_residual = residual <= tol * (lambda + 1.0) * lambda;
    if (stable && small_residual) {
      out.mu = mu;
      out.x = x;
      out.converged = true;
      return out;
    }

    norm = w.norm();
    if (norm == 0.0) {
      // x lies in the null space; the dominant eigenvalue is zero.
      out.mu = 0.0;
      out.x = x;
      out.converged = true;
      return out;
    }
    x = w / norm;
    mu_prev = mu;
  }
  out.mu = x.dot(g * x);
  out.x = x;
  out.converged = false;
  return out;
}

// Column of g with the largest diagonal entry, i.e. G e_r for the row r of X
// with the largest norm. Ties resolve to the first index.
Eigen::Index largest_diagonal(const Matrix& g) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < g.rows(); ++i) {
    if (g(i, i) > g(best, best)) best = i;
  }
  return best;
}

void apply_first_nonzero_negative(Vector& u, Vector& v) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::abs(v[j]) > kZeroComponent) {
      if (v[j] > 0.0) {
        u = -u;
        v = -v;
      }
      return;
    }
  }
}

void validate_finite(const Matrix& m) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFiniteInput, "matrix contains NaN or infinite entries");
  }
}

}  // namespace

ObservationMatrix::ObservationMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 2 || values_.cols() < 2) {
    throw Error(ErrorCode::DimensionMismatch,
                "observation matrix must be at least 2x2, got " + std::to_string(values_.rows()) +
                    "x" + std::to_string(values_.cols()));
  }
  validate_finite(values_);
}

CenteredMatrix center_rows(const ObservationMatrix& y) {
  const Matrix& m = y.values();
  const auto p = static_cast<double>(m.cols());
  CenteredMatrix out{Matrix(m.rows(), m.cols()), Vector(m.rows())};
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    if (row.minCoeff() == row.maxCoeff()) {
      out.rowMeans[i] = row[0];
      out.values.row(i).setZero();
      continue;
    }
    const double mean = row.sum() / p;
    out.rowMeans[i] = mean;
    out.values.row(i) = row.array() - mean;
  }
  return out;
}

SingularTriple leading_singular_triple(const CenteredMatrix& x, const SvdOptions& options) {
  if (!(options.tol > 0.0) || options.maxIter < 1) {
    throw Error(ErrorCode::InvalidArgument, "tol must be positive and maxIter >= 1");
  }
  const Matrix& xm = x.values;
  validate_finite(xm);
  if (xm.squaredNorm() == 0.0) {
    throw Error(ErrorCode::ZeroMatrix, "centered matrix is zero; no leading direction");
  }

  const Matrix gram = xm * xm.transpose();
  const Eigen::Index start = largest_diagonal(gram);
  EigenPair eig = dominant_eigenpair(gram, gram.col(start), options.tol, options.maxIter);

  SingularTriple t;
  t.convention = options.convention;
  t.iterations = eig.iterations;
  t.converged = eig.converged;
  t.u = eig.x;
  t.v = xm.transpose() * t.u;
  t.lambda = t.v.norm();
  if (t.lambda == 0.0) {
    throw Error(ErrorCode::ZeroMatrix, "leading singular value is zero");
  }
  t.v /= t.lambda;

  Vector xv = xm * t.v;
  switch (options.convention) {
    case SignConvention::RowMajoritySign: {
      const double s = xv.sum();
      if (s < 0.0) {
        t.u = -t.u;
        t.v = -t.v;
        xv = -xv;
      } else if (s == 0.0) {
        apply_first_nonzero_negative(t.u, t.v);
        xv = xm * t.v;
      }
      break;
    }
    case SignConvention::FirstNonzeroNegative:
      apply_first_nonzero_negative(t.u, t.v);
      xv = xm * t.v;
      break;
  }
  t.residual = (xv - t.lambda * t.u).norm();

  if (options.checkMultiplicity && gram.rows() > 1) {
    const Matrix deflated = gram - eig.mu * eig.x * eig.x.transpose();
    const Eigen::Index s = largest_diagonal(deflated);
    double lambda2 = 0.0;
    if (deflated(s, s) > 0.0) {
      const EigenPair second =
          dominant_eigenpair(deflated, deflated.col(s), options.tol, options.maxIter);
      lambda2 = std::sqrt(std::max(second.mu, 0.0));
    }
    t.multiplicityWarning = (t.lambda - lambda2) <= options.tol * t.lambda;
  }
  return t;
}

ResidualSpectrum residual_spectrum(const CenteredMatrix& x, std::size_t k,
                                   const SvdOptions& options) {
  const Matrix& xm = x.values;
  const auto limit = static_cast<std::size_t>(std::min(xm.rows(), xm.cols()));
  if (k < 1 || k > limit) {
    throw Error(ErrorCode::InvalidArgument,
                "k must lie in [1, min(n, p)] = [1, " + std::to_string(limit) + "]");
  }
  validate_finite(xm);
  if (xm.squaredNorm() == 0.0) {
    throw Error(ErrorCode::ZeroMatrix, "centered matrix is zero; no leading direction");
  }

  Matrix gram = xm * xm.transpose();
  const double floor_scale = 64.0 * kEps * static_cast<double>(gram.rows());

  EigenPair eig = dominant_eigenpair(gram, gram.col(largest_diagonal(gram)), options.tol,
                                     options.maxIter);
  const double mu1 = std::max(eig.mu, 0.0);
  ResidualSpectrum out;
  out.lambda1 = std::sqrt(mu1);

  for (std::size_t i = 2; i <= k; ++i) {
    gram -= eig.mu * eig.x * eig.x.transpose();
    const Eigen::Index s = largest_diagonal(gram);
    if (gram(s, s) <= floor_scale * mu1) break;
    eig = dominant_eigenpair(gram, gram.col(s), options.tol, options.maxIter);
    if (eig.mu <= floor_scale * mu1) break;
    out.residualSum += std::sqrt(eig.mu);
  }
  return out;
}

Ranking rank_vector(std::span<const double> x) {
  for (double value : x) {
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::NonFiniteInput, "rank_vector input contains NaN or infinity");
    }
  }
  Ranking r;
  r.inversePermutation.resize(x.size());
  std::iota(r.inversePermutation.begin(), r.inversePermutation.end(), std::size_t{0});
  std::stable_sort(r.inversePermutation.begin(), r.inversePermutation.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  r.ranks.resize(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) r.ranks[r.inversePermutation[k]] = k;
  return r;
}

Ranking rank_vector(const Vector& x) {
  return rank_vector(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

bool is_permutation(const Permutation& perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t target : perm) {
    if (target >= perm.size() || seen[target]) return false;
    seen[target] = true;
  }
  return true;
}

Permutation inverse_permutation(const Permutation& perm) {
  if (!is_permutation(perm)) {
    throw Error(ErrorCode::InvalidArgument, "not a permutation");
  }
  Permutation inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
  return inv;
}

Matrix permute_columns(const Matrix& m, const Permutation& perm) {
  if (perm.size() != static_cast<std::size_t>(m.cols()) || !is_permutation(perm)) {
    throw Error(ErrorCode::InvalidArgument, "permutation does not match the column count");
  }
  Matrix out(m.rows(), m.cols());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    out.col(static_cast<Eigen::Index>(perm[k])) = m.col(static_cast<Eigen::Index>(k));
  }
  return out;
}

}  // namespace permrow
