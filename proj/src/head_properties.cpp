#include "sama/head_properties.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sama::head {

Matrix random_matrix(CounterRng& rng, Eigen::Index rows, Eigen::Index cols, double lo, double hi) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

AttnInputs random_attn_inputs(CounterRng& rng, int max_tokens, int max_dim) {
  const int L = rng.uniform_int(1, max_tokens);
  const int d = rng.uniform_int(1, max_dim);
  return {random_matrix(rng, L, d), random_matrix(rng, L, d), random_matrix(rng, L, d), random_matrix(rng, L, L),
          random_matrix(rng, L, L)};
}

FeatureGrid random_feature_grid(CounterRng& rng, int rows, int cols, int slots, int channels) {
  FeatureGrid z(rows, cols, slots, channels);
  for (double& v : z.values()) v = rng.uniform(-1.0, 1.0);
  return z;
}

HeadParams random_head_params(CounterRng& rng, int channels) {
  HeadParams p;
  p.w1 = random_matrix(rng, channels, HeadParams::kHidden);
  p.b1 = random_matrix(rng, HeadParams::kHidden, 1);
  p.w2 = random_matrix(rng, HeadParams::kHidden, 1);
  p.b2 = rng.uniform(-1.0, 1.0);
  return p;
}

SeParams random_se_params(CounterRng& rng, int slots, double scale) {
  const int hidden = SeParams::hidden_for(slots);
  return {random_matrix(rng, hidden, slots, -scale, scale), random_matrix(rng, hidden, 1, -scale, scale),
          random_matrix(rng, slots, hidden, -scale, scale), random_matrix(rng, slots, 1, -scale, scale)};
}

namespace {

class Tracker {
 public:
  Tracker(std::string name, double tolerance) { result_.name = std::move(name), result_.tolerance = tolerance; }
  void observe(double deviation) {
    ++result_.instances;
    if (!(deviation <= result_.worst)) result_.worst = deviation;  // NaN sticks
  }
  PropertyResult finish() {
    result_.passed = result_.instances > 0 && result_.worst <= result_.tolerance;
    return result_;
  }

 private:
  PropertyResult result_;
};

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<PropertyResult> run_head_properties(std::uint64_t seed, int instances) {
  CounterRng rng(seed, static_cast<std::uint32_t>(RandomStream::Property));
  Tracker rows_sum("softmax rows sum to 1", 1e-6);
  Tracker add_zero("additive bias R=0 reduces to base", 1e-12);
  Tracker mul_one("multiplicative bias R=1 reduces to base", 1e-12);
  Tracker shift("row-constant logit shift invariance", 1e-9);
  Tracker grad_add("d/dR additive vs central difference", 1e-4);
  Tracker grad_mul("d/dR multiplicative vs central difference", 1e-4);
  Tracker pool_uniform("uniform pooling weights equal global mean", 1e-12);
  Tracker pool_grad("d/dw weighted pool vs central difference", 1e-4);
  Tracker head_perm("head mean invariant to position permutation", 1e-12);
  Tracker se_grad("d/dparams SE gate vs central difference", 1e-4);

  for (int n = 0; n < instances; ++n) {
    AttnInputs in = random_attn_inputs(rng);
    const auto L = in.q.rows();
    const Matrix base = attn_base(in);

    for (auto mode : {ScaleBias::None, ScaleBias::Additive, ScaleBias::Multiplicative}) {
      const Matrix w = attention_weights(in, mode);
      rows_sum.observe((w.rowwise().sum().array() - 1.0).abs().maxCoeff());

      const Matrix logits = attention_logits(in, mode);
      Matrix shifted = logits;
      for (Eigen::Index i = 0; i < L; ++i) shifted.row(i).array() += rng.uniform(-5.0, 5.0);
      shift.observe(max_abs_diff(softmax_rows(shifted) * in.v, attention(in, mode)));
    }

    AttnInputs zero_r = in;
    zero_r.r.setZero();
    add_zero.observe(max_abs_diff(attn_rsb_add(zero_r), base));
    AttnInputs one_r = in;
    one_r.r.setOnes();
    mul_one.observe(max_abs_diff(attn_rsb_mul(one_r), base));

    const Matrix dir = random_matrix(rng, L, L);
    grad_add.observe(grad_check_attention_r(in, ScaleBias::Additive, dir).best_relative_error);
    grad_mul.observe(grad_check_attention_r(in, ScaleBias::Multiplicative, dir).best_relative_error);

    const int slots = rng.uniform_int(1, 16);
    const int rows = rng.uniform_int(1, 4);
    const int cols = rng.uniform_int(1, 4);
    const int channels = rng.uniform_int(1, 8);
    const FeatureGrid z = random_feature_grid(rng, rows, cols, slots, channels);
    const HeadParams hp = random_head_params(rng, channels);
    const ScoreMap q = quality_head(z, hp);
    pool_uniform.observe(std::abs(weighted_pool(q, Vector::Constant(slots, rng.uniform(-3.0, 3.0))) - q.mean));
    const Vector w = random_matrix(rng, slots, 1, -2.0, 2.0);
    pool_grad.observe(grad_check_pool_weights(q, w, random_matrix(rng, slots, 1)).best_relative_error);

    // Reverse the spatial positions; slots stay attached to their position.
    FeatureGrid permuted(rows, cols, slots, channels);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        for (int t = 0; t < slots; ++t)
          for (int ch = 0; ch < channels; ++ch) permuted.at(rows - 1 - r, cols - 1 - c, t, ch) = z.at(r, c, t, ch);
    head_perm.observe(std::abs(quality_head(permuted, hp).mean - q.mean));

    const SeParams sp = random_se_params(rng, slots);
    se_grad.observe(grad_check_se(z, sp, random_se_params(rng, slots)).best_relative_error);
  }

  return {rows_sum.finish(), add_zero.finish(),  mul_one.finish(),      shift.finish(),     grad_add.finish(),
          grad_mul.finish(), pool_uniform.finish(), pool_grad.finish(), head_perm.finish(), se_grad.finish()};
}

}  // namespace sama::head
