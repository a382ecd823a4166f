#include "tsscore/linear_models.hpp"

#include "tsscore/errors.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace tsscore {

namespace {

void check_dims(Eigen::Index t_len) {
  if (t_len < 1) throw ValidationError("series length must be >= 1");
}

void check_sizes(Eigen::Index nu, Eigen::Index t_len) {
  if (nu < 1) throw ValidationError("number of series must be >= 1");
  check_dims(t_len);
}

// 1 + r + r^2 + ... + r^k by direct summation; stays finite as r -> 1.
std::vector<double> geometric_prefix(double r, Eigen::Index k_max) {
  std::vector<double> sums(static_cast<std::size_t>(k_max) + 1);
  double term = 1.0;
  double acc = 0.0;
  for (auto& s : sums) {
    acc += term;
    s = acc;
    term *= r;
  }
  return sums;
}

}  // namespace

void Ar1Params::validate() const {
  if (!(std::abs(phi) < 1.0)) {
    throw DomainError("AR(1) requires |phi| < 1, got phi = " + std::to_string(phi));
  }
  if (!(sigma2 > 0.0)) {
    throw DomainError("innovation variance must be > 0, got " + std::to_string(sigma2));
  }
}

void Ma1Params::validate() const {
  if (!(std::abs(alpha) < 1.0)) {
    throw DomainError("MA(1) requires |alpha| < 1, got alpha = " + std::to_string(alpha));
  }
  if (!(sigma2 > 0.0)) {
    throw DomainError("innovation variance must be > 0, got " + std::to_string(sigma2));
  }
}

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::Ar1 ? "ar1" : "ma1";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "ar1") return ModelKind::Ar1;
  if (text == "ma1") return ModelKind::Ma1;
  throw ValidationError("unknown model '" + std::string(text) + "' (expected ar1 or ma1)");
}

// ---------------------------------------------------------------------------
// SymMatrix / SeriesMatrix

SymMatrix::SymMatrix(Eigen::Index dim) : m_(RowMajorMatrix::Zero(dim, dim)) {}

SymMatrix SymMatrix::from_dense(RowMajorMatrix dense) {
  if (dense.rows() != dense.cols()) throw ValidationError("symmetric matrix must be square");
  for (Eigen::Index i = 0; i < dense.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < dense.cols(); ++j) {
      if (dense(i, j) != dense(j, i)) throw ValidationError("matrix is not symmetric");
    }
  }
  SymMatrix out;
  out.m_ = std::move(dense);
  return out;
}

SymMatrix SymMatrix::identity(Eigen::Index dim) {
  SymMatrix out;
  out.m_ = RowMajorMatrix::Identity(dim, dim);
  return out;
}

void SymMatrix::set(Eigen::Index i, Eigen::Index j, double value) {
  m_(i, j) = value;
  m_(j, i) = value;
}

SymMatrix SymMatrix::inverse() const {
  Eigen::LLT<Eigen::MatrixXd> llt(m_);
  if (llt.info() != Eigen::Success) {
    throw SingularMatrixError("matrix is not positive definite");
  }
  RowMajorMatrix inv = llt.solve(Eigen::MatrixXd::Identity(dim(), dim()));
  // Mirror the upper triangle so the result is exactly symmetric.
  inv.triangularView<Eigen::StrictlyLower>() = inv.transpose();
  SymMatrix out;
  out.m_ = std::move(inv);
  return out;
}

double SymMatrix::log_det() const {
  Eigen::LLT<Eigen::MatrixXd> llt(m_);
  if (llt.info() != Eigen::Success) {
    throw SingularMatrixError("matrix is not positive definite");
  }
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

SeriesMatrix::SeriesMatrix(Eigen::Index nu, Eigen::Index t_len)
    : data_(RowMajorMatrix::Zero(nu, t_len)) {}

SeriesMatrix::SeriesMatrix(RowMajorMatrix data) : data_(std::move(data)) {
  if (data_.rows() < 1 || data_.cols() < 1) {
    throw ValidationError("series matrix must have at least one row and column");
  }
}

// ---------------------------------------------------------------------------
// Covariance and precision builders

SymMatrix ar1_covariance(const Ar1Params& p, Eigen::Index t_len) {
  p.validate();
  check_dims(t_len);
  SymMatrix out(t_len);
  const double var = p.sigma2 / (1.0 - p.phi * p.phi);
  for (Eigen::Index l = 0; l < t_len; ++l) {
    double value = var;
    for (Eigen::Index m = l; m < t_len; ++m) {
      out.set(l, m, value);
      value *= p.phi;
    }
  }
  return out;
}

SymMatrix ar1_precision(const Ar1Params& p, Eigen::Index t_len) {
  p.validate();
  check_dims(t_len);
  SymMatrix out(t_len);
  const double inv_s2 = 1.0 / p.sigma2;
  if (t_len == 1) {
    out.set(0, 0, (1.0 - p.phi * p.phi) * inv_s2);
    return out;
  }
  for (Eigen::Index i = 0; i < t_len; ++i) {
    const bool corner = (i == 0 || i == t_len - 1);
    out.set(i, i, (corner ? 1.0 : 1.0 + p.phi * p.phi) * inv_s2);
    if (i + 1 < t_len) out.set(i, i + 1, -p.phi * inv_s2);
  }
  return out;
}

SymMatrix ma1_covariance(const Ma1Params& p, Eigen::Index t_len) {
  p.validate();
  check_dims(t_len);
  SymMatrix out(t_len);
  for (Eigen::Index i = 0; i < t_len; ++i) {
    out.set(i, i, p.sigma2 * (1.0 + p.alpha * p.alpha));
    if (i + 1 < t_len) out.set(i, i + 1, p.sigma2 * p.alpha);
  }
  return out;
}

SymMatrix ma1_precision(const Ma1Params& p, Eigen::Index t_len) {
  p.validate();
  check_dims(t_len);
  // With 1-based indices and j >= i:
  //   w^{ij} = (-a)^{j-i} G(i-1) G(T-j) / G(T),   G(k) = sum_{m<=k} a^{2m}.
  const auto g = geometric_prefix(p.alpha * p.alpha, t_len);
  const double scale = 1.0 / (p.sigma2 * g[static_cast<std::size_t>(t_len)]);
  SymMatrix out(t_len);
  for (Eigen::Index i = 0; i < t_len; ++i) {
    const double left = g[static_cast<std::size_t>(i)] * scale;
    double sign_pow = 1.0;
    for (Eigen::Index j = i; j < t_len; ++j) {
      out.set(i, j, sign_pow * left * g[static_cast<std::size_t>(t_len - 1 - j)]);
      sign_pow *= -p.alpha;
    }
  }
  return out;
}

SymMatrix covariance(const ModelSpec& model, double theta, Eigen::Index t_len) {
  return model.kind == ModelKind::Ar1 ? ar1_covariance(model.ar1(theta), t_len)
                                      : ma1_covariance(model.ma1(theta), t_len);
}

SymMatrix precision(const ModelSpec& model, double theta, Eigen::Index t_len) {
  return model.kind == ModelKind::Ar1 ? ar1_precision(model.ar1(theta), t_len)
                                      : ma1_precision(model.ma1(theta), t_len);
}

// ---------------------------------------------------------------------------
// Sampling

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SeriesMatrix sample_ar1(const Ar1Params& p, Eigen::Index nu, Eigen::Index t_len,
                        std::uint64_t seed) {
  p.validate();
  check_sizes(nu, t_len);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  const double sd = std::sqrt(p.sigma2);
  const double sd0 = std::sqrt(p.sigma2 / (1.0 - p.phi * p.phi));
  SeriesMatrix out(nu, t_len);
  for (Eigen::Index i = 0; i < nu; ++i) {
    auto y = out.row(i);
    double prev = sd0 * normal(gen);
    y[0] = p.mu + prev;
    for (std::size_t t = 1; t < y.size(); ++t) {
      prev = p.phi * prev + sd * normal(gen);
      y[t] = p.mu + prev;
    }
  }
  return out;
}

SeriesMatrix sample_ma1(const Ma1Params& p, Eigen::Index nu, Eigen::Index t_len,
                        std::uint64_t seed) {
  p.validate();
  check_sizes(nu, t_len);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  const double sd = std::sqrt(p.sigma2);
  SeriesMatrix out(nu, t_len);
  for (Eigen::Index i = 0; i < nu; ++i) {
    auto y = out.row(i);
    double z_prev = sd * normal(gen);
    for (auto& v : y) {
      const double z = sd * normal(gen);
      v = p.mu + p.alpha * z_prev + z;
      z_prev = z;
    }
  }
  return out;
}

SeriesMatrix sample(const ModelSpec& model, double theta, Eigen::Index nu,
                    Eigen::Index t_len, std::uint64_t seed) {
  return model.kind == ModelKind::Ar1 ? sample_ar1(model.ar1(theta), nu, t_len, seed)
                                      : sample_ma1(model.ma1(theta), nu, t_len, seed);
}

SymMatrix sum_of_squares(const SeriesMatrix& y) {
  const Eigen::Index t_len = y.t_len();
  RowMajorMatrix s = RowMajorMatrix::Zero(t_len, t_len);
  s.selfadjointView<Eigen::Lower>().rankUpdate(y.data().transpose());
  s.triangularView<Eigen::StrictlyUpper>() = s.transpose();
  return SymMatrix::from_dense(std::move(s));
}

}  // namespace tsscore
