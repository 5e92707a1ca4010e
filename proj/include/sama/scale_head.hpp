#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sama::head {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Window attention operands. q, k, v are L x d; b (relative position bias)
/// and r (relative scale bias) are L x L.
struct AttnInputs {
  Matrix q;
  Matrix k;
  Matrix v;
  Matrix b;
  Matrix r;
};

enum class ScaleBias {
  None,      ///< SoftMax(QK^T/sqrt(d) + B) V
  Additive,  ///< SoftMax(QK^T/sqrt(d) + B + R) V
  Multiplicative,  ///< SoftMax((QK^T/sqrt(d) + B) * R) V, elementwise product
};

/// Throws DimMismatch on inconsistent shapes and NonFiniteInput on NaN/inf.
void check_inputs(const AttnInputs& in, ScaleBias mode);

/// Pre-softmax logits for the given variant.
Matrix attention_logits(const AttnInputs& in, ScaleBias mode);
/// Numerically stable row softmax.
Matrix softmax_rows(const Matrix& logits);
/// Row-stochastic attention weights.
Matrix attention_weights(const AttnInputs& in, ScaleBias mode);
Matrix attention(const AttnInputs& in, ScaleBias mode);

inline Matrix attn_base(const AttnInputs& in) { return attention(in, ScaleBias::None); }
inline Matrix attn_rsb_add(const AttnInputs& in) { return attention(in, ScaleBias::Additive); }
inline Matrix attn_rsb_mul(const AttnInputs& in) { return attention(in, ScaleBias::Multiplicative); }

/// Expands a per-(scale_i, scale_j) bias table to L x L through the scale id
/// of every token.
Matrix expand_scale_bias(const Matrix& table, std::span<const int> token_scale);

/// Scale id of each token in a window holding `tokens_per_slot` tokens for
/// each temporal slot, where slot k carries scale schedule[k].
std::vector<int> token_scales(std::span<const std::uint8_t> schedule, int tokens_per_slot);

/// Backbone output z: rows x cols x slots x channels, channels fastest.
class FeatureGrid {
 public:
  FeatureGrid(int rows, int cols, int slots, int channels);
  FeatureGrid(int rows, int cols, int slots, int channels, std::vector<double> values);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int slots() const noexcept { return slots_; }
  int channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& at(int r, int c, int t, int ch) noexcept { return values_[index(r, c, t, ch)]; }
  double at(int r, int c, int t, int ch) const noexcept { return values_[index(r, c, t, ch)]; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  /// Channel vector at one position.
  Eigen::Map<const Vector> feature(int r, int c, int t) const noexcept {
    return Eigen::Map<const Vector>(values_.data() + index(r, c, t, 0), channels_);
  }

 private:
  std::size_t index(int r, int c, int t, int ch) const noexcept {
    return ((static_cast<std::size_t>(r) * cols_ + c) * slots_ + t) * channels_ + ch;
  }

  int rows_;
  int cols_;
  int slots_;
  int channels_;
  std::vector<double> values_;
};

/// Two FC layers, C -> 64 -> 1, ReLU between.
struct HeadParams {
  Matrix w1;  // C x 64
  Vector b1;  // 64
  Vector w2;  // 64
  double b2 = 0.0;

  static constexpr int kHidden = 64;
};

/// Squeeze-and-excitation over temporal slots with reduction ratio 4.
struct SeParams {
  Matrix w1;  // hidden x T, hidden = max(1, T / 4)
  Vector b1;  // hidden
  Matrix w2;  // T x hidden
  Vector b2;  // T

  static int hidden_for(int slots) noexcept { return slots / 4 > 0 ? slots / 4 : 1; }
};

/// Input-conditioned temporal weights: per slot, FC(C -> hidden) + ReLU +
/// FC(hidden -> 1) applied to the spatially pooled features.
struct TemporalWeightNet {
  Matrix w1;  // C x hidden
  Vector b1;  // hidden
  Vector w2;  // hidden
  double b2 = 0.0;
};

/// Per-position scores q (rows x cols x slots) and their global mean.
struct ScoreMap {
  int rows = 0;
  int cols = 0;
  int slots = 0;
  std::vector<double> q;
  double mean = 0.0;

  double at(int r, int c, int t) const noexcept {
    return q[(static_cast<std::size_t>(r) * cols + c) * slots + t];
  }
  /// Spatial mean of each slot.
  Vector slot_means() const;
};

/// Per-slot gate sigmoid(W2 relu(W1 s + b1) + b2), s = per-slot mean of z.
Vector se_gate_values(const FeatureGrid& z, const SeParams& params);
/// z scaled slot-wise by the gate.
FeatureGrid se_gate(const FeatureGrid& z, const SeParams& params);

/// q = w2 . relu(w1^T z + b1) + b2 at every position; mean over all positions.
ScoreMap quality_head(const FeatureGrid& z, const HeadParams& params);

/// sum_t softmax(weights)_t * spatial_mean(q[.., t]).
double weighted_pool(const ScoreMap& q, const Vector& weights);

/// Raw (pre-softmax) weights from the pooled features of each slot.
Vector temporal_weights(const FeatureGrid& z, const TemporalWeightNet& net);

// ---------------------------------------------------------------------------
// Gradients of scalar-pooled outputs, for finite-difference verification.
// ---------------------------------------------------------------------------

/// Mean of all attention output entries.
double attention_pooled(const AttnInputs& in, ScaleBias mode);
/// d attention_pooled / d R (zero for ScaleBias::None).
Matrix attention_pooled_grad_r(const AttnInputs& in, ScaleBias mode);

/// d weighted_pool / d weights.
Vector weighted_pool_grad_weights(const ScoreMap& q, const Vector& weights);

/// Mean of all se_gate output entries.
double se_pooled(const FeatureGrid& z, const SeParams& params);
/// d se_pooled / d params, laid out like SeParams.
SeParams se_pooled_grad(const FeatureGrid& z, const SeParams& params);

struct GradCheckReport {
  double analytic = 0.0;
  std::vector<double> steps;
  std::vector<double> numeric;
  std::vector<double> relative_error;
  double best_relative_error = 0.0;
  double best_step = 0.0;
};

inline constexpr double kDefaultSteps[] = {1e-3, 1e-4, 1e-5};

/// Compares an analytic directional derivative with central differences of
/// along(eps) = f(x + eps * direction) over the step sweep. Relative error is
/// |analytic - numeric| / max(|analytic|, |numeric|, 1e-10).
GradCheckReport grad_check(const std::function<double(double)>& along, double analytic,
                           std::span<const double> steps = kDefaultSteps);

GradCheckReport grad_check_attention_r(const AttnInputs& in, ScaleBias mode, const Matrix& direction);
GradCheckReport grad_check_pool_scores(const ScoreMap& q, const Vector& weights, std::span<const double> direction);
GradCheckReport grad_check_pool_weights(const ScoreMap& q, const Vector& weights, const Vector& direction);
GradCheckReport grad_check_se(const FeatureGrid& z, const SeParams& params, const SeParams& direction);

}  // namespace sama::head
