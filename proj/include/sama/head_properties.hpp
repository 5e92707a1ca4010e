#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sama/random.hpp"
#include "sama/scale_head.hpp"

namespace sama::head {

struct PropertyResult {
  std::string name;
  bool passed = false;
  /// Largest observed deviation across instances.
  double worst = 0.0;
  double tolerance = 0.0;
  int instances = 0;
};

/// Random attention operands with L in [1, max_tokens], d in [1, max_dim] and
/// entries uniform in [-1, 1].
AttnInputs random_attn_inputs(CounterRng& rng, int max_tokens = 16, int max_dim = 8);
FeatureGrid random_feature_grid(CounterRng& rng, int rows, int cols, int slots, int channels);
HeadParams random_head_params(CounterRng& rng, int channels);
SeParams random_se_params(CounterRng& rng, int slots, double scale = 1.0);
Matrix random_matrix(CounterRng& rng, Eigen::Index rows, Eigen::Index cols, double lo = -1.0, double hi = 1.0);

/// Numerical property suite of the scale-head kernel: row-stochastic softmax,
/// reductions of the scale-bias variants to the base attention, softmax shift
/// invariance, pooling identities and analytic-vs-central-difference
/// gradients. `instances` random cases per property.
std::vector<PropertyResult> run_head_properties(std::uint64_t seed, int instances = 100);

}  // namespace sama::head
