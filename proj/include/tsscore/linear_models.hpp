#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string_view>

namespace tsscore {

/// Stationary Gaussian AR(1): y_t - mu = phi (y_{t-1} - mu) + z_t,
/// z_t ~ N(0, sigma2), y_1 drawn from the stationary law.
struct Ar1Params {
  double mu = 0.0;
  double sigma2 = 1.0;
  double phi = 0.0;

  /// Throws DomainError unless |phi| < 1 and sigma2 > 0.
  void validate() const;
};

/// Invertible Gaussian MA(1): y_t - mu = alpha z_{t-1} + z_t.
struct Ma1Params {
  double mu = 0.0;
  double sigma2 = 1.0;
  double alpha = 0.0;

  void validate() const;
};

enum class ModelKind { Ar1, Ma1 };

std::string_view to_string(ModelKind kind);
/// Parses "ar1" / "ma1"; throws ValidationError otherwise.
ModelKind parse_model_kind(std::string_view text);

/// A one-parameter family: the level and innovation variance are known and
/// only phi (AR) or alpha (MA) is free.
struct ModelSpec {
  ModelKind kind = ModelKind::Ar1;
  double mu = 0.0;
  double sigma2 = 1.0;

  Ar1Params ar1(double phi) const { return {mu, sigma2, phi}; }
  Ma1Params ma1(double alpha) const { return {mu, sigma2, alpha}; }
};

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense symmetric matrix. Symmetry is enforced on every write; positive
/// definiteness is only checked where a factorization is needed.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Eigen::Index dim);
  /// Throws ValidationError if `dense` is not square and exactly symmetric.
  static SymMatrix from_dense(RowMajorMatrix dense);
  static SymMatrix identity(Eigen::Index dim);

  Eigen::Index dim() const { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  /// Writes (i, j) and (j, i).
  void set(Eigen::Index i, Eigen::Index j, double value);

  const RowMajorMatrix& dense() const { return m_; }
  double trace() const { return m_.trace(); }

  /// Inverse via Cholesky; throws SingularMatrixError if not positive definite.
  SymMatrix inverse() const;
  /// log|A| via Cholesky; throws SingularMatrixError if not positive definite.
  double log_det() const;

 private:
  RowMajorMatrix m_;
};

/// nu x T observations, one series per row.
class SeriesMatrix {
 public:
  SeriesMatrix() = default;
  SeriesMatrix(Eigen::Index nu, Eigen::Index t_len);
  explicit SeriesMatrix(RowMajorMatrix data);

  Eigen::Index nu() const { return data_.rows(); }
  Eigen::Index t_len() const { return data_.cols(); }

  std::span<const double> row(Eigen::Index i) const {
    return {data_.data() + i * data_.cols(), static_cast<std::size_t>(data_.cols())};
  }
  std::span<double> row(Eigen::Index i) {
    return {data_.data() + i * data_.cols(), static_cast<std::size_t>(data_.cols())};
  }

  const RowMajorMatrix& data() const { return data_; }
  RowMajorMatrix& data() { return data_; }

 private:
  RowMajorMatrix data_;
};

SymMatrix ar1_covariance(const Ar1Params& p, Eigen::Index t_len);
/// Tridiagonal inverse of ar1_covariance. For T = 1 this is (1 - phi^2) / sigma2.
SymMatrix ar1_precision(const Ar1Params& p, Eigen::Index t_len);

SymMatrix ma1_covariance(const Ma1Params& p, Eigen::Index t_len);
/// Closed-form inverse of the MA(1) covariance, scaled by 1 / sigma2.
SymMatrix ma1_precision(const Ma1Params& p, Eigen::Index t_len);

SymMatrix covariance(const ModelSpec& model, double theta, Eigen::Index t_len);
SymMatrix precision(const ModelSpec& model, double theta, Eigen::Index t_len);

/// splitmix64 finalizer applied to (master, index); used to give every
/// replicate and Monte Carlo draw an independent, schedule-free stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

SeriesMatrix sample_ar1(const Ar1Params& p, Eigen::Index nu, Eigen::Index t_len,
                        std::uint64_t seed);
SeriesMatrix sample_ma1(const Ma1Params& p, Eigen::Index nu, Eigen::Index t_len,
                        std::uint64_t seed);
SeriesMatrix sample(const ModelSpec& model, double theta, Eigen::Index nu,
                    Eigen::Index t_len, std::uint64_t seed);

/// S = Y^T Y, exactly symmetric as stored.
SymMatrix sum_of_squares(const SeriesMatrix& y);

}  // namespace tsscore
