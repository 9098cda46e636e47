#include "shaplit/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "shaplit/errors.hpp"

namespace shaplit {

Sample Dataset::sample(int i) const {
  if (i < 0 || i >= size()) throw DataError("Dataset: row " + std::to_string(i) + " out of range");
  Sample s;
  s.values = X.row(i).transpose();
  if (labeled()) s.label = labels[static_cast<std::size_t>(i)];
  return s;
}

Eigen::VectorXd Dataset::mean() const {
  if (size() == 0) throw DataError("Dataset: mean of empty dataset");
  return X.colwise().mean().transpose();
}

std::vector<int> ImageGeom::patch_pixels(int p) const {
  const int pi = p / s, pj = p % s;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (int row = pi * d; row < (pi + 1) * d; ++row)
    for (int col = pj * d; col < (pj + 1) * d; ++col) out.push_back(pixel(row, col));
  return out;
}

void write_csv(const Dataset& data, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw DataError("write_csv: cannot open " + path);
  for (int j = 0; j < data.dim(); ++j) std::fprintf(f, j ? ",f%d" : "f%d", j);
  if (data.labeled()) std::fprintf(f, ",label");
  std::fprintf(f, "\n");
  for (int i = 0; i < data.size(); ++i) {
    for (int j = 0; j < data.dim(); ++j)
      std::fprintf(f, j ? ",%.17g" : "%.17g", data.X(i, j));
    if (data.labeled()) std::fprintf(f, ",%d", data.labels[static_cast<std::size_t>(i)]);
    std::fprintf(f, "\n");
  }
  std::fclose(f);
}

Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("read_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("read_csv: empty file " + path);
  bool has_label = false;
  int n = 0;
  {
    std::stringstream header(line);
    std::string field;
    while (std::getline(header, field, ',')) {
      if (field == "label")
        has_label = true;
      else if (field == "f" + std::to_string(n))
        ++n;
      else
        throw DataError("read_csv: unexpected column '" + field + "' in " + path);
    }
    if (n == 0) throw DataError("read_csv: no feature columns in " + path);
  }
  std::vector<double> values;
  std::vector<int> labels;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string field;
    int col = 0;
    while (std::getline(row, field, ',')) {
      if (col < n)
        values.push_back(std::stod(field));
      else if (has_label && col == n)
        labels.push_back(std::stoi(field));
      else
        throw DataError("read_csv: too many fields on row " + std::to_string(rows + 1));
      ++col;
    }
    if (col != n + (has_label ? 1 : 0))
      throw DataError("read_csv: wrong field count on row " + std::to_string(rows + 1));
    ++rows;
  }
  Dataset out;
  out.X.resize(rows, n);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < n; ++j)
      out.X(i, j) = values[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
  out.labels = std::move(labels);
  return out;
}

nlohmann::json GeneratedDataset::params() const {
  nlohmann::json p;
  p["generator"] = generator;
  if (generator == "boolean") {
    p["k"] = k;
    p["n"] = block_width;
    p["mu_important"] = mu_important;
    p["mu_noise"] = mu_noise;
    p["sd"] = sd;
    p["threshold"] = threshold;
  } else if (generator == "patch") {
    p["d"] = geom.d;
    p["r"] = geom.r;
    p["s"] = geom.s;
    p["sigma2"] = sigma2;
    p["eta"] = eta;
    p["signal"] = std::vector<double>(signal.data(), signal.data() + signal.size());
    p["norm_mean"] = norm_mean;
    p["norm_std"] = norm_std;
  }
  return p;
}

void write_sidecar(const GeneratedDataset& data, const std::string& path) {
  nlohmann::json doc;
  doc["schema"] = "shaplit-dataset/1";
  doc["params"] = data.params();
  nlohmann::json truth = nlohmann::json::array();
  if (data.generator == "boolean") {
    for (const auto& imp : data.important_indices) truth.push_back({{"important", imp}});
  } else {
    for (const auto& sig : data.signal_patches) {
      std::vector<int> patches;
      for (std::size_t p = 0; p < sig.size(); ++p)
        if (sig[p]) patches.push_back(static_cast<int>(p));
      truth.push_back({{"signal_patches", patches}});
    }
  }
  doc["ground_truth"] = truth;
  std::ofstream out(path);
  if (!out) throw DataError("write_sidecar: cannot open " + path);
  out << doc.dump(2) << "\n";
}

GeneratedDataset read_generated(const std::string& csv_path, const std::string& sidecar_path) {
  GeneratedDataset out;
  out.data = read_csv(csv_path);
  std::ifstream in(sidecar_path);
  if (!in) throw DataError("read_generated: cannot open " + sidecar_path);
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, true);
  if (doc.value("schema", "") != "shaplit-dataset/1")
    throw DataError("read_generated: unknown sidecar schema in " + sidecar_path);
  const nlohmann::json& p = doc.at("params");
  out.generator = p.at("generator").get<std::string>();
  if (out.generator == "boolean") {
    out.k = p.at("k").get<int>();
    out.block_width = p.at("n").get<int>();
    out.mu_important = p.at("mu_important").get<double>();
    out.mu_noise = p.at("mu_noise").get<double>();
    out.sd = p.at("sd").get<double>();
    out.threshold = p.at("threshold").get<double>();
    for (const auto& t : doc.at("ground_truth"))
      out.important_indices.push_back(t.at("important").get<std::vector<int>>());
  } else if (out.generator == "patch") {
    out.geom = ImageGeom{p.at("d").get<int>(), p.at("r").get<int>(), p.at("s").get<int>()};
    out.sigma2 = p.at("sigma2").get<double>();
    out.eta = p.at("eta").get<double>();
    const auto sig = p.at("signal").get<std::vector<double>>();
    out.signal = Eigen::Map<const Eigen::VectorXd>(sig.data(), static_cast<long>(sig.size()));
    out.norm_mean = p.at("norm_mean").get<double>();
    out.norm_std = p.at("norm_std").get<double>();
    for (const auto& t : doc.at("ground_truth")) {
      std::vector<std::uint8_t> flags(static_cast<std::size_t>(out.geom.patches()), 0);
      for (int q : t.at("signal_patches").get<std::vector<int>>())
        flags[static_cast<std::size_t>(q)] = 1;
      out.signal_patches.push_back(std::move(flags));
    }
  } else {
    throw DataError("read_generated: unknown generator '" + out.generator + "'");
  }
  return out;
}

}  // namespace shaplit
