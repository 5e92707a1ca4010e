#include "sama/scale_head.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sama/error.hpp"

namespace sama::head {

namespace {

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_finite(const Matrix& m, const char* name) {
  if (!m.allFinite()) throw Error(ErrorCode::NonFiniteInput, std::string(name) + " has non-finite entries");
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Vector softmax(const Vector& w) {
  const double m = w.maxCoeff();
  Vector e = (w.array() - m).exp();
  return e / e.sum();
}

// Per-slot mean of z over rows, cols and channels.
Vector squeeze(const FeatureGrid& z) {
  Vector s = Vector::Zero(z.slots());
  for (int r = 0; r < z.rows(); ++r)
    for (int c = 0; c < z.cols(); ++c)
      for (int t = 0; t < z.slots(); ++t) s[t] += z.feature(r, c, t).sum();
  return s / (static_cast<double>(z.rows()) * z.cols() * z.channels());
}

void check_se(const FeatureGrid& z, const SeParams& p) {
  const int hidden = static_cast<int>(p.w1.rows());
  if (p.w1.cols() != z.slots() || p.b1.size() != hidden || p.w2.rows() != z.slots() || p.w2.cols() != hidden ||
      p.b2.size() != z.slots()) {
    throw Error(ErrorCode::DimMismatch, "SE parameters do not match " + std::to_string(z.slots()) + " slots");
  }
}

}  // namespace

void check_inputs(const AttnInputs& in, ScaleBias mode) {
  const auto L = in.q.rows();
  const auto d = in.q.cols();
  if (L < 1 || d < 1) throw Error(ErrorCode::DimMismatch, "attention needs L >= 1 and d >= 1");
  if (in.k.rows() != L || in.k.cols() != d || in.v.rows() != L) {
    throw Error(ErrorCode::DimMismatch, "Q " + shape(in.q) + ", K " + shape(in.k) + ", V " + shape(in.v));
  }
  if (in.b.rows() != L || in.b.cols() != L) throw Error(ErrorCode::DimMismatch, "B is " + shape(in.b));
  require_finite(in.q, "Q");
  require_finite(in.k, "K");
  require_finite(in.v, "V");
  require_finite(in.b, "B");
  if (mode != ScaleBias::None) {
    if (in.r.rows() != L || in.r.cols() != L) throw Error(ErrorCode::DimMismatch, "R is " + shape(in.r));
    require_finite(in.r, "R");
  }
}

Matrix attention_logits(const AttnInputs& in, ScaleBias mode) {
  check_inputs(in, mode);
  Matrix logits = in.q * in.k.transpose() / std::sqrt(static_cast<double>(in.q.cols())) + in.b;
  switch (mode) {
    case ScaleBias::None: break;
    case ScaleBias::Additive: logits += in.r; break;
    case ScaleBias::Multiplicative: logits = logits.cwiseProduct(in.r); break;
  }
  return logits;
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double m = logits.row(i).maxCoeff();
    out.row(i) = (logits.row(i).array() - m).exp();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

Matrix attention_weights(const AttnInputs& in, ScaleBias mode) { return softmax_rows(attention_logits(in, mode)); }

Matrix attention(const AttnInputs& in, ScaleBias mode) { return attention_weights(in, mode) * in.v; }

Matrix expand_scale_bias(const Matrix& table, std::span<const int> token_scale) {
  const auto L = static_cast<Eigen::Index>(token_scale.size());
  Matrix r(L, L);
  for (Eigen::Index i = 0; i < L; ++i) {
    for (Eigen::Index j = 0; j < L; ++j) {
      const int si = token_scale[i];
      const int sj = token_scale[j];
      if (si < 0 || sj < 0 || si >= table.rows() || sj >= table.cols()) {
        throw Error(ErrorCode::DimMismatch, "token scale outside the " + shape(table) + " bias table");
      }
      r(i, j) = table(si, sj);
    }
  }
  return r;
}

std::vector<int> token_scales(std::span<const std::uint8_t> schedule, int tokens_per_slot) {
  std::vector<int> out;
  out.reserve(schedule.size() * static_cast<std::size_t>(std::max(tokens_per_slot, 0)));
  for (auto s : schedule)
    for (int i = 0; i < tokens_per_slot; ++i) out.push_back(s);
  return out;
}

FeatureGrid::FeatureGrid(int rows, int cols, int slots, int channels)
    : FeatureGrid(rows, cols, slots, channels,
                  std::vector<double>(static_cast<std::size_t>(std::max(rows, 0)) * std::max(cols, 0) *
                                      std::max(slots, 0) * std::max(channels, 0))) {}

FeatureGrid::FeatureGrid(int rows, int cols, int slots, int channels, std::vector<double> values)
    : rows_(rows), cols_(cols), slots_(slots), channels_(channels), values_(std::move(values)) {
  if (rows < 1 || cols < 1 || slots < 1 || channels < 1) {
    throw Error(ErrorCode::DimMismatch, "feature grid dims must be positive");
  }
  if (values_.size() != static_cast<std::size_t>(rows) * cols * slots * channels) {
    throw Error(ErrorCode::DimMismatch, "feature grid payload does not match dims");
  }
}

Vector ScoreMap::slot_means() const {
  Vector m = Vector::Zero(slots);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      for (int t = 0; t < slots; ++t) m[t] += at(r, c, t);
  return m / (static_cast<double>(rows) * cols);
}

Vector se_gate_values(const FeatureGrid& z, const SeParams& params) {
  check_se(z, params);
  const Vector hidden = (params.w1 * squeeze(z) + params.b1).cwiseMax(0.0);
  const Vector u = params.w2 * hidden + params.b2;
  return u.unaryExpr([](double x) { return sigmoid(x); });
}

FeatureGrid se_gate(const FeatureGrid& z, const SeParams& params) {
  const Vector g = se_gate_values(z, params);
  FeatureGrid out = z;
  for (int r = 0; r < z.rows(); ++r)
    for (int c = 0; c < z.cols(); ++c)
      for (int t = 0; t < z.slots(); ++t)
        for (int ch = 0; ch < z.channels(); ++ch) out.at(r, c, t, ch) *= g[t];
  return out;
}

ScoreMap quality_head(const FeatureGrid& z, const HeadParams& p) {
  if (p.w1.rows() != z.channels() || p.w1.cols() != p.b1.size() || p.w2.size() != p.b1.size()) {
    throw Error(ErrorCode::DimMismatch, "head W1 is " + shape(p.w1) + " for " + std::to_string(z.channels()) +
                                            " channels");
  }
  ScoreMap out{z.rows(), z.cols(), z.slots(), std::vector<double>(static_cast<std::size_t>(z.rows()) * z.cols() * z.slots()),
               0.0};
  double sum = 0.0;
  std::size_t i = 0;
  for (int r = 0; r < z.rows(); ++r) {
    for (int c = 0; c < z.cols(); ++c) {
      for (int t = 0; t < z.slots(); ++t) {
        const Vector hidden = (p.w1.transpose() * z.feature(r, c, t) + p.b1).cwiseMax(0.0);
        const double q = p.w2.dot(hidden) + p.b2;
        out.q[i++] = q;
        sum += q;
      }
    }
  }
  out.mean = sum / static_cast<double>(out.q.size());
  return out;
}

double weighted_pool(const ScoreMap& q, const Vector& weights) {
  if (weights.size() != q.slots) {
    throw Error(ErrorCode::DimMismatch, std::to_string(weights.size()) + " weights for " + std::to_string(q.slots) +
                                            " slots");
  }
  return softmax(weights).dot(q.slot_means());
}

Vector temporal_weights(const FeatureGrid& z, const TemporalWeightNet& net) {
  if (net.w1.rows() != z.channels() || net.w1.cols() != net.b1.size() || net.w2.size() != net.b1.size()) {
    throw Error(ErrorCode::DimMismatch, "temporal weight net does not match feature channels");
  }
  Vector w(z.slots());
  for (int t = 0; t < z.slots(); ++t) {
    Vector pooled = Vector::Zero(z.channels());
    for (int r = 0; r < z.rows(); ++r)
      for (int c = 0; c < z.cols(); ++c) pooled += z.feature(r, c, t);
    pooled /= static_cast<double>(z.rows()) * z.cols();
    w[t] = net.w2.dot((net.w1.transpose() * pooled + net.b1).cwiseMax(0.0)) + net.b2;
  }
  return w;
}

double attention_pooled(const AttnInputs& in, ScaleBias mode) { return attention(in, mode).mean(); }

Matrix attention_pooled_grad_r(const AttnInputs& in, ScaleBias mode) {
  const Matrix logits = attention_logits(in, mode);
  const Matrix p = softmax_rows(logits);
  const auto L = in.q.rows();
  if (mode == ScaleBias::None) return Matrix::Zero(L, L);
  // f = mean(P V): dF/dP_ij = sum_c V_jc / (L d).
  const Vector v_row_sums = in.v.rowwise().sum() / static_cast<double>(L * in.v.cols());
  Matrix dp = Matrix::Zero(L, L);
  dp.rowwise() = v_row_sums.transpose();
  const Vector row_dot = p.cwiseProduct(dp).rowwise().sum();
  Matrix ds = p.cwiseProduct(dp.colwise() - row_dot);
  if (mode == ScaleBias::Multiplicative) {
    const Matrix base = in.q * in.k.transpose() / std::sqrt(static_cast<double>(in.q.cols())) + in.b;
    ds = ds.cwiseProduct(base);
  }
  return ds;
}

Vector weighted_pool_grad_weights(const ScoreMap& q, const Vector& weights) {
  const double f = weighted_pool(q, weights);
  const Vector s = softmax(weights);
  return s.cwiseProduct((q.slot_means().array() - f).matrix());
}

double se_pooled(const FeatureGrid& z, const SeParams& params) {
  const auto out = se_gate(z, params);
  double sum = 0.0;
  for (double v : out.values()) sum += v;
  return sum / static_cast<double>(out.size());
}

SeParams se_pooled_grad(const FeatureGrid& z, const SeParams& params) {
  check_se(z, params);
  const Vector s = squeeze(z);
  const Vector pre = params.w1 * s + params.b1;
  const Vector hidden = pre.cwiseMax(0.0);
  const Vector g = (params.w2 * hidden + params.b2).unaryExpr([](double x) { return sigmoid(x); });
  // f = (1/N) sum_t g_t Z_t, Z_t the slot total; Z_t / N == s_t / T.
  const Vector df_dg = s / static_cast<double>(z.slots());
  const Vector du = df_dg.cwiseProduct(g.cwiseProduct((1.0 - g.array()).matrix()));
  const Vector dhidden = params.w2.transpose() * du;
  const Vector dpre = dhidden.cwiseProduct((pre.array() > 0.0).cast<double>().matrix());
  SeParams grad;
  grad.w2 = du * hidden.transpose();
  grad.b2 = du;
  grad.w1 = dpre * s.transpose();
  grad.b1 = dpre;
  return grad;
}

GradCheckReport grad_check(const std::function<double(double)>& along, double analytic,
                           std::span<const double> steps) {
  GradCheckReport report;
  report.analytic = analytic;
  report.best_relative_error = std::numeric_limits<double>::infinity();
  for (double h : steps) {
    const double numeric = (along(h) - along(-h)) / (2.0 * h);
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-10});
    const double rel = std::abs(analytic - numeric) / denom;
    report.steps.push_back(h);
    report.numeric.push_back(numeric);
    report.relative_error.push_back(rel);
    if (rel < report.best_relative_error) {
      report.best_relative_error = rel;
      report.best_step = h;
    }
  }
  return report;
}

GradCheckReport grad_check_attention_r(const AttnInputs& in, ScaleBias mode, const Matrix& direction) {
  const double analytic = attention_pooled_grad_r(in, mode).cwiseProduct(direction).sum();
  return grad_check(
      [&](double eps) {
        AttnInputs moved = in;
        moved.r = in.r + eps * direction;
        return attention_pooled(moved, mode);
      },
      analytic);
}

GradCheckReport grad_check_pool_scores(const ScoreMap& q, const Vector& weights, std::span<const double> direction) {
  if (direction.size() != q.q.size()) throw Error(ErrorCode::DimMismatch, "direction does not match score map");
  ScoreMap dq = q;
  dq.q.assign(direction.begin(), direction.end());
  const double analytic = weighted_pool(dq, weights);  // linear in q
  return grad_check(
      [&](double eps) {
        ScoreMap moved = q;
        for (std::size_t i = 0; i < moved.q.size(); ++i) moved.q[i] += eps * direction[i];
        return weighted_pool(moved, weights);
      },
      analytic);
}

GradCheckReport grad_check_pool_weights(const ScoreMap& q, const Vector& weights, const Vector& direction) {
  const double analytic = weighted_pool_grad_weights(q, weights).dot(direction);
  return grad_check([&](double eps) { return weighted_pool(q, weights + eps * direction); }, analytic);
}

GradCheckReport grad_check_se(const FeatureGrid& z, const SeParams& params, const SeParams& direction) {
  const SeParams g = se_pooled_grad(z, params);
  const double analytic = g.w1.cwiseProduct(direction.w1).sum() + g.b1.dot(direction.b1) +
                          g.w2.cwiseProduct(direction.w2).sum() + g.b2.dot(direction.b2);
  return grad_check(
      [&](double eps) {
        SeParams moved{params.w1 + eps * direction.w1, params.b1 + eps * direction.b1, params.w2 + eps * direction.w2,
                       params.b2 + eps * direction.b2};
        return se_pooled(z, moved);
      },
      analytic);
}

}  // namespace sama::head
