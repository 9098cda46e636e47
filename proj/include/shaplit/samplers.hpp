#ifndef SHAPLIT_SAMPLERS_HPP
#define SHAPLIT_SAMPLERS_HPP

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "shaplit/coalition.hpp"
#include "shaplit/dataset.hpp"
#include "shaplit/rng.hpp"

namespace shaplit {

// Source of reference completions X_{-C} | X_C = x_C. Coalitions range over
// `players()` units; a player may own several coordinates (patch samplers,
// grouped samplers), in which case its coordinates move together. Samplers
// are immutable after construction and safe to share across workers; each
// caller supplies its own RngStream.
class ConditionalSampler {
 public:
  virtual ~ConditionalSampler() = default;

  virtual int players() const = 0;
  virtual int dim() const = 0;
  virtual std::string kind() const = 0;
  virtual bool deterministic() const { return false; }

  // Coordinates owned by player p (identity {p} unless overridden).
  virtual std::vector<int> player_indices(int p) const { return {p}; }

  // Fill `out` (L x dim) with draws that equal x exactly on the coordinates
  // of every player in C; the complement is drawn i.i.d. across the L rows.
  // Coordinates owned by no player are treated as observed.
  void draw(const Eigen::VectorXd& x, const Coalition& C, int L, RngStream& rng,
            Eigen::MatrixXd& out) const;

  // Low-level form: revealed[i] says whether coordinate i keeps x[i].
  virtual void draw_coords(const Eigen::VectorXd& x, const std::vector<std::uint8_t>& revealed,
                           int L, RngStream& rng, Eigen::MatrixXd& out) const = 0;

 protected:
  void check_inputs(const Eigen::VectorXd& x, const std::vector<std::uint8_t>& revealed,
                    int L) const;
};

// The masked-vector operation: L draws of X-tilde_C.
Eigen::MatrixXd masked_draw(const ConditionalSampler& sampler, const Sample& x, const Coalition& C,
                            int L, RngStream& rng);

// X_{-C} | X_C = x_C for X ~ N(mean, cov) via the Schur-complement
// conditional; cov must be symmetric positive definite.
std::unique_ptr<ConditionalSampler> make_gaussian_conditional(Eigen::VectorXd mean,
                                                              Eigen::MatrixXd cov);

// Deterministic imputation with the training mean.
std::unique_ptr<ConditionalSampler> make_mean_imputation(Eigen::VectorXd training_mean);

struct Marginal {
  enum class Kind { Normal, Bernoulli };
  Kind kind = Kind::Normal;
  double a = 0.0;  // mean | success probability
  double b = 1.0;  // stddev | unused
  static Marginal normal(double mu, double sigma) { return {Kind::Normal, mu, sigma}; }
  static Marginal bernoulli(double p) { return {Kind::Bernoulli, p, 0.0}; }
};

// Independent per-coordinate marginals.
std::unique_ptr<ConditionalSampler> make_product_marginal(std::vector<Marginal> marginals);

// Masking modes for the generative samplers. `Reference` redraws masked
// units from the unimportant distribution I^c; `Oracle` uses the generative
// marginals under the sample's known assignment; `Mixture`/`Marginal` uses
// the assignment-free marginal.
enum class BooleanMaskMode { Reference, Oracle, Mixture };
enum class PatchMaskMode { Reference, Marginal };

struct BooleanGenParams {
  double mu_important = 4.0;
  double mu_noise = 0.0;
  double sd = 1.0;
  double threshold = 3.0;
};

// Sampler for the k-block Boolean dataset. `important` is the per-block
// important index of the sample being explained (required by Oracle mode).
std::unique_ptr<ConditionalSampler> make_boolean_sampler(
    int k, int n, std::vector<int> important, BooleanMaskMode mode = BooleanMaskMode::Reference,
    BooleanGenParams params = {});

// Sampler for the patch-image dataset; masks whole patches (one player per
// patch). Draws raw patch content, then applies the dataset normalization.
std::unique_ptr<ConditionalSampler> make_patch_sampler(
    const ImageGeom& geom, double sigma2, double eta, Eigen::VectorXd signal, double norm_mean,
    double norm_std, PatchMaskMode mode = PatchMaskMode::Reference);

// Wrap any coordinate-level sampler so that coalitions range over the given
// groups of coordinates instead; player p of the wrapper owns groups[p].
std::unique_ptr<ConditionalSampler> make_grouped(std::shared_ptr<const ConditionalSampler> base,
                                                 std::vector<std::vector<int>> groups);

BooleanMaskMode boolean_mode_from_string(const std::string& s);
PatchMaskMode patch_mode_from_string(const std::string& s);

}  // namespace shaplit

#endif
