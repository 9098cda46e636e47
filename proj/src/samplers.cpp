#include "shaplit/samplers.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "shaplit/errors.hpp"

namespace shaplit {

void ConditionalSampler::check_inputs(const Eigen::VectorXd& x,
                                      const std::vector<std::uint8_t>& revealed, int L) const {
  if (static_cast<int>(x.size()) != dim())
    throw std::invalid_argument(kind() + ": sample has dimension " + std::to_string(x.size()) +
                                ", sampler expects " + std::to_string(dim()));
  if (static_cast<int>(revealed.size()) != dim())
    throw std::invalid_argument(kind() + ": revealed-flag vector has wrong length");
  if (L < 1) throw std::invalid_argument(kind() + ": draw count must be >= 1");
}

void ConditionalSampler::draw(const Eigen::VectorXd& x, const Coalition& C, int L, RngStream& rng,
                              Eigen::MatrixXd& out) const {
  if (C.n != players())
    throw std::invalid_argument(kind() + ": coalition is over " + std::to_string(C.n) +
                                " players, sampler has " + std::to_string(players()));
  std::vector<std::uint8_t> revealed(static_cast<std::size_t>(dim()), 1);
  for (int p = 0; p < players(); ++p) {
    if (C.contains(p)) continue;
    for (int idx : player_indices(p)) revealed[static_cast<std::size_t>(idx)] = 0;
  }
  draw_coords(x, revealed, L, rng, out);
}

Eigen::MatrixXd masked_draw(const ConditionalSampler& sampler, const Sample& x, const Coalition& C,
                            int L, RngStream& rng) {
  Eigen::MatrixXd out(L, sampler.dim());
  sampler.draw(x.values, C, L, rng, out);
  return out;
}

namespace {

class MeanImputationSampler final : public ConditionalSampler {
 public:
  explicit MeanImputationSampler(Eigen::VectorXd mean) : mean_(std::move(mean)) {}
  int players() const override { return static_cast<int>(mean_.size()); }
  int dim() const override { return static_cast<int>(mean_.size()); }
  std::string kind() const override { return "mean-imputation"; }
  bool deterministic() const override { return true; }

  void draw_coords(const Eigen::VectorXd& x, const std::vector<std::uint8_t>& revealed, int L,
                   RngStream&, Eigen::MatrixXd& out) const override {
    check_inputs(x, revealed, L);
    Eigen::VectorXd row = mean_;
    for (int j = 0; j < dim(); ++j)
      if (revealed[static_cast<std::size_t>(j)]) row[j] = x[j];
    out.resize(L, dim());
    out.rowwise() = row.transpose();
  }

 private:
  Eigen::VectorXd mean_;
};

class ProductMarginalSampler final : public ConditionalSampler {
 public:
  explicit ProductMarginalSampler(std::vector<Marginal> marginals)
      : marginals_(std::move(marginals)) {
    for (const Marginal& m : marginals_) {
      if (m.kind == Marginal::Kind::Normal && m.b < 0)
        throw std::invalid_argument("product-marginal: negative stddev");
      if (m.kind == Marginal::Kind::Bernoulli && (m.a < 0 || m.a > 1))
        throw std::invalid_argument("product-marginal: Bernoulli p outside [0,1]");
    }
  }
  int players() const override { return static_cast<int>(marginals_.size()); }
  int dim() const override { return static_cast<int>(marginals_.size()); }
  std::string kind() const override { return "product-marginal"; }

  void draw_coords(const Eigen::VectorXd& x, const std::vector<std::uint8_t>& revealed, int L,
                   RngStream& rng, Eigen::MatrixXd& out) const override {
    check_inputs(x, revealed, L);
    out.resize(L, dim());
    for (int l = 0; l < L; ++l)
      for (int j = 0; j < dim(); ++j) {
        if (revealed[static_cast<std::size_t>(j)]) {
          out(l, j) = x[j];
        } else {
          const Marginal& m = marginals_[static_cast<std::size_t>(j)];
          out(l, j) = m.kind == Marginal::Kind::Normal ? rng.gaussian(m.a, m.b)
                                                       : (rng.bernoulli(m.a) ? 1.0 : 0.0);
        }
      }
  }

 private:
  std::vector<Marginal> marginals_;
};

class GaussianConditionalSampler final : public ConditionalSampler {
 public:
  GaussianConditionalSampler(Eigen::VectorXd mean, Eigen::MatrixXd cov)
      : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols() || cov_.rows() != mean_.size())
      throw std::invalid_argument("gaussian-conditional: mean/covariance shape mismatch");
    if (!cov_.isApprox(cov_.transpose(), 1e-12))
      throw std::invalid_argument("gaussian-conditional: covariance not symmetric");
    if (Eigen::LLT<Eigen::MatrixXd>(cov_).info() != Eigen::Success)
      throw std::invalid_argument("gaussian-conditional: covariance not positive definite");
  }
  int players() const override { return static_cast<int>(mean_.size()); }
  int dim() const override { return static_cast<int>(mean_.size()); }
  std::string kind() const override { return "gaussian-conditional"; }

  void draw_coords(const Eigen::VectorXd& x, const std::vector<std::uint8_t>& revealed, int L,
                   RngStream& rng, Eigen::MatrixXd& out) const override {
    check_inputs(x, revealed, L);
    out.resize(L, dim());
    std::vector<int> masked, observed;
    for (int j = 0; j < dim(); ++j)
      (revealed[static_cast<std::size_t>(j)] ? observed : masked).push_back(j);
    if (masked.empty()) {
      out.rowwise() = x.transpose();
      return;
    }
    const int nm = static_cast<int>(masked.size());
    const int no = static_cast<int>(observed.size());

    Eigen::VectorXd cond_mean(nm);
    Eigen::MatrixXd cond_cov(nm, nm);
    for (int a = 0; a < nm; ++a) cond_mean[a] = mean_[masked[static_cast<std::size_t>(a)]];
    for (int a = 0; a < nm; ++a)
      for (int b = 0; b < nm; ++b)
        cond_cov(a, b) =
            cov_(masked[static_cast<std::size_t>(a)], masked[static_cast<std::size_t>(b)]);

    if (no > 0) {
      Eigen::MatrixXd cov_oo(no, no), cov_mo(nm, no);
      Eigen::VectorXd delta(no);
      for (int a = 0; a < no; ++a) {
        const int ia = observed[static_cast<std::size_t>(a)];
        delta[a] = x[ia] - mean_[ia];
        for (int b = 0; b < no; ++b) cov_oo(a, b) = cov_(ia, observed[static_cast<std::size_t>(b)]);
        for (int m = 0; m < nm; ++m) cov_mo(m, a) = cov_(masked[static_cast<std::size_t>(m)], ia);
      }
      const Eigen::LLT<Eigen::MatrixXd> llt_oo(cov_oo);
      const Eigen::MatrixXd gain = llt_oo.solve(cov_mo.transpose()).transpose();
      cond_mean += gain * delta;
      cond_cov -= gain * cov_mo.transpose();
      cond_cov = 0.5 * (cond_cov + cond_cov.transpose());
    }

    Eigen::LLT<Eigen::MatrixXd> llt(cond_cov);
    if (llt.info() != Eigen::Success) {
      // The Schur complement is PSD up to roundoff; nudge the diagonal.
      cond_cov.diagonal().array() += 1e-12 * (1.0 + cond_cov.diagonal().maxCoeff());
      llt.compute(cond_cov);
      if (llt.info() != Eigen::Success)
        throw std::invalid_argument("gaussian-conditional: conditional covariance not PSD");
    }
    const Eigen::MatrixXd chol = llt.matrixL();

    Eigen::VectorXd z(nm);
    for (int l = 0; l < L; ++l) {
      out.row(l) = x.transpose();
      for (int a = 0; a < nm; ++a) z[a] = rng.gaussian();
      const Eigen::VectorXd value = cond_mean + chol * z;
      for (int a = 0; a < nm; ++a) out(l, masked[static_cast<std::size_t>(a)]) = value[a];
    }
  }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

class BooleanGenerativeSampler final : public ConditionalSampler {
 public:
  BooleanGenerativeSampler(int k, int n, std::vector<int> important, BooleanMaskMode mode,
                           BooleanGenParams params)
      : k_(k), n_(n), important_(std::move(important)), mode_(mode), params_(params) {
    if (k_ < 1 || n_ < 1) throw std::invalid_argument("boolean-generative: k, n must be >= 1");
    if (mode_ == BooleanMaskMode::Oracle && static_cast<int>(important_.size()) != k_)
      throw std::invalid_argument(
          "boolean-generative: oracle mode needs one important index per block");
    for (int idx : important_)
      if (idx < 0 || idx >= n_)
        throw std::invalid_argument("boolean-generative: important index out of range");
  }
  int players() const override { return k_ * n_; }
  int dim() const override { return k_ * n_; }
  std::string kind() const override { return "boolean-generative"; }

  void draw_coords(const Eigen::VectorXd& x, const std::vector<std::uint8_t>& revealed, int L,
                   RngStream& rng, Eigen::MatrixXd& out) const override {
    check_inputs(x, revealed, L);
    out.resize(L, dim());
    for (int l = 0; l < L; ++l)
      for (int j = 0; j < dim(); ++j) {
        if (revealed[static_cast<std::size_t>(j)]) {
          out(l, j) = x[j];
          continue;
        }
        double mu = params_.mu_noise;
        switch (mode_) {
          case BooleanMaskMode::Reference:
            break;
          case BooleanMaskMode::Oracle:
            if (important_[static_cast<std::size_t>(j / n_)] == j % n_) mu = params_.mu_important;
            break;
          case BooleanMaskMode::Mixture:
            if (rng.uniform() < 1.0 / static_cast<double>(n_)) mu = params_.mu_important;
            break;
        }
        out(l, j) = rng.gaussian(mu, params_.sd);
      }
  }

 private:
  int k_, n_;
  std::vector<int> important_;
  BooleanMaskMode mode_;
  BooleanGenParams params_;
};

class PatchGenerativeSampler final : public ConditionalSampler {
 public:
  PatchGenerativeSampler(const ImageGeom& geom, double sigma2, double eta, Eigen::VectorXd signal,
                         double norm_mean, double norm_std, PatchMaskMode mode)
      : geom_(geom), sigma2_(sigma2), eta_(eta), signal_(std::move(signal)),
        norm_mean_(norm_mean), norm_std_(norm_std), mode_(mode) {
    if (geom_.d < 1 || geom_.r < 1 || geom_.s < 1)
      throw std::invalid_argument("patch-generative: bad geometry");
    if (signal_.size() != static_cast<long>(geom_.d) * geom_.d)
      throw std::invalid_argument("patch-generative: signal must have d*d entries");
    if (sigma2_ < 0 || eta_ < 0 || eta_ > 1 || norm_std_ <= 0)
      throw std::invalid_argument("patch-generative: bad parameters");
    for (int p = 0; p < geom_.patches(); ++p) patch_pixels_.push_back(geom_.patch_pixels(p));
  }
  int players() const override { return geom_.patches(); }
  int dim() const override { return geom_.dim(); }
  std::string kind() const override { return "patch-generative"; }
  std::vector<int> player_indices(int p) const override {
    return patch_pixels_[static_cast<std::size_t>(p)];
  }

  void draw_coords(const Eigen::VectorXd& x, const std::vector<std::uint8_t>& revealed, int L,
                   RngStream& rng, Eigen::MatrixXd& out) const override {
    check_inputs(x, revealed, L);
    // Masking is patch-granular: reject flag vectors that split a patch.
    std::vector<std::uint8_t> patch_revealed(static_cast<std::size_t>(players()));
    for (int p = 0; p < players(); ++p) {
      const auto& pix = patch_pixels_[static_cast<std::size_t>(p)];
      const std::uint8_t first = revealed[static_cast<std::size_t>(pix.front())];
      for (int idx : pix)
        if (revealed[static_cast<std::size_t>(idx)] != first)
          throw std::invalid_argument("patch-generative: mask splits patch " + std::to_string(p) +
                                      "; patches move as one unit");
      patch_revealed[static_cast<std::size_t>(p)] = first;
    }
    out.resize(L, dim());
    const double sd = std::sqrt(sigma2_);
    for (int l = 0; l < L; ++l) {
      out.row(l) = x.transpose();
      for (int p = 0; p < players(); ++p) {
        if (patch_revealed[static_cast<std::size_t>(p)]) continue;
        const bool with_signal = mode_ == PatchMaskMode::Marginal && rng.bernoulli(eta_);
        const auto& pix = patch_pixels_[static_cast<std::size_t>(p)];
        for (std::size_t q = 0; q < pix.size(); ++q) {
          double raw = rng.gaussian(0.0, sd);
          if (with_signal) raw += signal_[static_cast<long>(q)];
          out(l, pix[q]) = (raw - norm_mean_) / norm_std_;
        }
      }
    }
  }

 private:
  ImageGeom geom_;
  double sigma2_, eta_;
  Eigen::VectorXd signal_;
  double norm_mean_, norm_std_;
  PatchMaskMode mode_;
  std::vector<std::vector<int>> patch_pixels_;
};

class GroupedSampler final : public ConditionalSampler {
 public:
  GroupedSampler(std::shared_ptr<const ConditionalSampler> base,
                 std::vector<std::vector<int>> groups)
      : base_(std::move(base)), groups_(std::move(groups)) {
    if (!base_) throw std::invalid_argument("grouped: null base sampler");
    if (groups_.empty()) throw std::invalid_argument("grouped: no groups");
    std::vector<char> seen(static_cast<std::size_t>(base_->dim()), 0);
    for (const auto& g : groups_)
      for (int idx : g) {
        if (idx < 0 || idx >= base_->dim())
          throw std::invalid_argument("grouped: coordinate out of range");
        if (seen[static_cast<std::size_t>(idx)]++)
          throw std::invalid_argument("grouped: groups overlap at coordinate " +
                                      std::to_string(idx));
      }
  }
  int players() const override { return static_cast<int>(groups_.size()); }
  int dim() const override { return base_->dim(); }
  std::string kind() const override { return "grouped(" + base_->kind() + ")"; }
  bool deterministic() const override { return base_->deterministic(); }
  std::vector<int> player_indices(int p) const override {
    return groups_[static_cast<std::size_t>(p)];
  }

  void draw_coords(const Eigen::VectorXd& x, const std::vector<std::uint8_t>& revealed, int L,
                   RngStream& rng, Eigen::MatrixXd& out) const override {
    base_->draw_coords(x, revealed, L, rng, out);
  }

 private:
  std::shared_ptr<const ConditionalSampler> base_;
  std::vector<std::vector<int>> groups_;
};

}  // namespace

std::unique_ptr<ConditionalSampler> make_gaussian_conditional(Eigen::VectorXd mean,
                                                              Eigen::MatrixXd cov) {
  return std::make_unique<GaussianConditionalSampler>(std::move(mean), std::move(cov));
}

std::unique_ptr<ConditionalSampler> make_mean_imputation(Eigen::VectorXd training_mean) {
  return std::make_unique<MeanImputationSampler>(std::move(training_mean));
}

std::unique_ptr<ConditionalSampler> make_product_marginal(std::vector<Marginal> marginals) {
  return std::make_unique<ProductMarginalSampler>(std::move(marginals));
}

std::unique_ptr<ConditionalSampler> make_boolean_sampler(int k, int n, std::vector<int> important,
                                                         BooleanMaskMode mode,
                                                         BooleanGenParams params) {
  return std::make_unique<BooleanGenerativeSampler>(k, n, std::move(important), mode, params);
}

std::unique_ptr<ConditionalSampler> make_patch_sampler(const ImageGeom& geom, double sigma2,
                                                       double eta, Eigen::VectorXd signal,
                                                       double norm_mean, double norm_std,
                                                       PatchMaskMode mode) {
  return std::make_unique<PatchGenerativeSampler>(geom, sigma2, eta, std::move(signal), norm_mean,
                                                  norm_std, mode);
}

std::unique_ptr<ConditionalSampler> make_grouped(std::shared_ptr<const ConditionalSampler> base,
                                                 std::vector<std::vector<int>> groups) {
  return std::make_unique<GroupedSampler>(std::move(base), std::move(groups));
}

BooleanMaskMode boolean_mode_from_string(const std::string& s) {
  if (s == "reference") return BooleanMaskMode::Reference;
  if (s == "oracle") return BooleanMaskMode::Oracle;
  if (s == "mixture") return BooleanMaskMode::Mixture;
  throw std::invalid_argument("unknown boolean mask mode '" + s + "'");
}

PatchMaskMode patch_mode_from_string(const std::string& s) {
  if (s == "reference") return PatchMaskMode::Reference;
  if (s == "marginal") return PatchMaskMode::Marginal;
  throw std::invalid_argument("unknown patch mask mode '" + s + "'");
}

}  // namespace shaplit
