#ifndef SHAPLIT_DATASET_HPP
#define SHAPLIT_DATASET_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace shaplit {

struct Sample {
  Eigen::VectorXd values;
  std::optional<int> label;
  int dim() const { return static_cast<int>(values.size()); }
};

struct Dataset {
  Eigen::MatrixXd X;          // one row per sample
  std::vector<int> labels;    // empty, or one 0/1 label per row

  int dim() const { return static_cast<int>(X.cols()); }
  int size() const { return static_cast<int>(X.rows()); }
  bool labeled() const { return !labels.empty(); }
  Sample sample(int i) const;
  Eigen::VectorXd mean() const;
};

// CSV with header row f0,...,f{n-1}[,label].
void write_csv(const Dataset& data, const std::string& path);
Dataset read_csv(const std::string& path);

struct ImageGeom {
  int d = 0;  // patch side, pixels
  int r = 0;  // patch grid rows
  int s = 0;  // patch grid cols
  int rows() const { return d * r; }
  int cols() const { return d * s; }
  int dim() const { return d * d * r * s; }
  int patches() const { return r * s; }
  int pixel(int row, int col) const { return row * cols() + col; }
  // Pixel indices of patch p = i*s + j, row-major within the patch.
  std::vector<int> patch_pixels(int p) const;
};

// A generated dataset together with its ground truth and generator metadata.
struct GeneratedDataset {
  Dataset data;
  std::string generator;  // "boolean" | "patch"
  nlohmann::json params() const;

  // boolean generator: per-sample important index per block (size k).
  std::vector<std::vector<int>> important_indices;
  int k = 0, block_width = 0;
  double mu_important = 4.0, mu_noise = 0.0, sd = 1.0, threshold = 3.0;

  // patch generator: per-sample, per-patch signal flag.
  std::vector<std::vector<std::uint8_t>> signal_patches;
  ImageGeom geom;
  double sigma2 = 0.0, eta = 0.0;
  Eigen::VectorXd signal;       // x0, d*d values
  double norm_mean = 0.0, norm_std = 1.0;
};

// Sidecar JSON for a generated dataset (parameters + per-sample ground truth).
void write_sidecar(const GeneratedDataset& data, const std::string& path);
GeneratedDataset read_generated(const std::string& csv_path, const std::string& sidecar_path);

}  // namespace shaplit

#endif
