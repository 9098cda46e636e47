#ifndef SHAPLIT_GENERATORS_HPP
#define SHAPLIT_GENERATORS_HPP

#include <Eigen/Core>

#include "shaplit/dataset.hpp"
#include "shaplit/rng.hpp"
#include "shaplit/samplers.hpp"

namespace shaplit {

// k blocks of width n; each block has one important coordinate ~ N(mu_I, sd),
// the rest ~ N(mu_noise, sd). Label = AND over blocks of OR over |x| >= t.
GeneratedDataset generate_boolean(int k, int n, int count, RngStream& rng,
                                  BooleanGenParams params = {});

// Default patch activation probability 1 - (1/2)^(1/(r*s)), which balances
// P[Y=0] = P[Y=1] = 1/2.
double default_patch_activation(int r, int s);

// A d x d cross: ones on the middle row and middle column.
Eigen::VectorXd cross_signal(int d);

struct PatchGenConfig {
  ImageGeom geom{7, 2, 2};
  double sigma2 = 1.0 / 49.0;
  double eta = -1.0;  // < 0 means use default_patch_activation(r, s)
  Eigen::VectorXd signal;  // empty means cross_signal(d)
  bool normalize = true;   // zero-mean / unit-variance with dataset constants
};

// r x s grid of d x d patches; patch (i,j) carries signal + noise with
// probability eta, pure noise otherwise. Label = 1 iff any patch has signal.
GeneratedDataset generate_patch_images(const PatchGenConfig& config, int count, RngStream& rng);

// Conditional sampler matching a generated dataset. For boolean data the
// sampler is sample-specific (oracle mode needs the assignment); for patch
// data it is dataset-wide.
std::unique_ptr<ConditionalSampler> sampler_for_boolean(const GeneratedDataset& data,
                                                        int sample_index,
                                                        BooleanMaskMode mode = BooleanMaskMode::Reference);
std::unique_ptr<ConditionalSampler> sampler_for_patch(const GeneratedDataset& data,
                                                      PatchMaskMode mode = PatchMaskMode::Reference);

}  // namespace shaplit

#endif
