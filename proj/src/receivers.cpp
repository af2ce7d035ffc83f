#include "lspc/receivers.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace lspc::receivers {

void ReceiverInput::check() const {
  if (codes.cols() != gains.size() || codes.cols() != tx_powers.size())
    throw std::invalid_argument("receiver input: codes/gains/powers dimension mismatch");
  if (codes.rows() < 1 || codes.cols() < 1)
    throw std::invalid_argument("receiver input: empty system");
  if (!(noise_psd > 0.0))
    throw std::invalid_argument("receiver input: noise_psd must be > 0");
}

namespace {

// SINR of user k at the unscaled solution x = C^{-1} s_k, interference taken
// over columns [lo, K). lo = 0 gives the linear receiver, lo = k the SIC stage.
void user_sinr_at_solution(const ReceiverInput& in, const Eigen::VectorXd& received,
                           int k, int lo, const Eigen::VectorXd& x,
                           double& sinr_out, double& norm_out) {
  const int kk = in.k();
  const Eigen::VectorXd g = in.codes.rightCols(kk - lo).transpose() * x;
  double interference = 0.0;
  for (int i = lo; i < kk; ++i)
    if (i != k) interference += received[i] * g[i - lo] * g[i - lo];
  const double own = g[k - lo];
  const double num = received[k] * own * own;
  const double den = in.noise_psd * x.squaredNorm() + interference;
  sinr_out = num / den;
  norm_out = std::sqrt(in.tx_powers[k]) * std::abs(in.gains[k]) * x.norm();
}

Eigen::MatrixXd covariance(const ReceiverInput& in, int lo) {
  const int m = in.k() - lo;
  const Eigen::VectorXd received = in.received();
  Eigen::MatrixXd c(in.n(), in.n());
  c.noalias() = in.codes.rightCols(m) * received.tail(m).asDiagonal() *
                in.codes.rightCols(m).transpose();
  c.diagonal().array() += in.noise_psd;
  return c;
}

}  // namespace

Eigen::VectorXd mmse_filter(const ReceiverInput& in, int user) {
  in.check();
  if (user < 0 || user >= in.k()) throw std::invalid_argument("mmse_filter: bad user index");
  Eigen::LLT<Eigen::MatrixXd> llt(covariance(in, 0));
  Eigen::VectorXd x = llt.solve(in.codes.col(user));
  return std::sqrt(in.tx_powers[user]) * in.gains[user] * x;
}

double sinr_linear(const ReceiverInput& in, int user, const Eigen::VectorXd& filter) {
  in.check();
  if (user < 0 || user >= in.k()) throw std::invalid_argument("sinr_linear: bad user index");
  if (filter.size() != in.n() || filter.norm() == 0.0)
    throw std::invalid_argument("sinr_linear: filter must be nonzero of length N");
  const Eigen::VectorXd received = in.received();
  const Eigen::VectorXd g = in.codes.transpose() * filter;
  double interference = 0.0;
  for (int i = 0; i < in.k(); ++i)
    if (i != user) interference += received[i] * g[i] * g[i];
  return received[user] * g[user] * g[user] /
         (in.noise_psd * filter.squaredNorm() + interference);
}

SinrReport linear_sinrs(const ReceiverInput& in) {
  in.check();
  const int kk = in.k();
  const Eigen::VectorXd received = in.received();
  const Eigen::LLT<Eigen::MatrixXd> llt(covariance(in, 0));
  SinrReport rep;
  rep.sinr.resize(kk);
  rep.filter_norm.resize(kk);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < kk; ++k) {
    const Eigen::VectorXd x = llt.solve(in.codes.col(k));
    user_sinr_at_solution(in, received, k, 0, x, rep.sinr[k], rep.filter_norm[k]);
  }
  return rep;
}

SinrReport sic_sinrs(const ReceiverInput& in) {
  in.check();
  const int kk = in.k();
  const Eigen::VectorXd received = in.received();
  SinrReport rep;
  rep.sinr.resize(kk);
  rep.filter_norm.resize(kk);

  // Backward pass: C_k = sigma^2 I + sum_{j >= k} P_j s_j s_j^T maintained by
  // rank-one Cholesky updates, one triangular solve per stage.
  Eigen::LLT<Eigen::MatrixXd> llt(
      Eigen::MatrixXd(in.noise_psd * Eigen::MatrixXd::Identity(in.n(), in.n())));
  for (int k = kk - 1; k >= 0; --k) {
    if (received[k] > 0.0) llt.rankUpdate(in.codes.col(k), received[k]);
    const Eigen::VectorXd x = llt.solve(in.codes.col(k));
    user_sinr_at_solution(in, received, k, k, x, rep.sinr[k], rep.filter_norm[k]);
  }
  return rep;
}

namespace reference {

SinrReport linear_sinrs(const ReceiverInput& in) {
  in.check();
  const int kk = in.k();
  const Eigen::VectorXd received = in.received();
  const Eigen::LLT<Eigen::MatrixXd> llt(covariance(in, 0));
  SinrReport rep;
  rep.sinr.resize(kk);
  rep.filter_norm.resize(kk);
  for (int k = 0; k < kk; ++k) {
    const Eigen::VectorXd x = llt.solve(in.codes.col(k));
    user_sinr_at_solution(in, received, k, 0, x, rep.sinr[k], rep.filter_norm[k]);
  }
  return rep;
}

SinrReport sic_sinrs(const ReceiverInput& in) {
  in.check();
  const int kk = in.k();
  const Eigen::VectorXd received = in.received();
  SinrReport rep;
  rep.sinr.resize(kk);
  rep.filter_norm.resize(kk);
  for (int k = 0; k < kk; ++k) {
    const Eigen::LLT<Eigen::MatrixXd> llt(covariance(in, k));
    const Eigen::VectorXd x = llt.solve(in.codes.col(k));
    user_sinr_at_solution(in, received, k, k, x, rep.sinr[k], rep.filter_norm[k]);
  }
  return rep;
}

}  // namespace reference

}  // namespace lspc::receivers
