#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ddbin/fill_factor.hpp"
#include "ddbin/naive_bayes.hpp"

namespace ddbin {

inline constexpr int kFormatVersion = 1;

struct Provenance {
  std::string dataset_hash;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::string config_hash;
};

/// Weight file, JSON:
///
///   {
///     "format": "ddbin.weights", "version": 1,
///     "kind": "nb" | "ann", "constraint": "none" | "nonneg",
///     "m_classes": M, "n_pixels": N, "grid": [rows, cols],
///     "class_labels": [...],          // original label of each class row
///     "weights": [...],               // M*N, row-major
///     "bias": [...],                  // M zeros
///     "provenance": {"dataset_hash", "alpha", "seed", "config_hash"}
///   }
struct ModelFile {
  std::string kind = "nb";
  std::string constraint = "none";
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> class_labels;
  WeightMatrix weights;
  Provenance provenance;
};

/// Fill-factor file, JSON. Same header fields as the weight file with
/// "format": "ddbin.fill", plus
///   "mode": "nb" | "ann", "fill": [...], "coverage": xi,
///   "violations": ["...", ...], "source_hash", "config_hash".
struct FillFile {
  std::string mode = "nb";
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> class_labels;
  FillFactorMatrix fill;
  double coverage = 0.0;
  std::vector<std::string> violations;
  std::string source_hash;
  std::string config_hash;
};

std::string to_json(const ModelFile& model);
std::string to_json(const FillFile& fill);
ModelFile model_from_json(std::string_view text);
FillFile fill_from_json(std::string_view text);

void save(const std::filesystem::path& path, const ModelFile& model);
void save(const std::filesystem::path& path, const FillFile& fill);
ModelFile load_model(const std::filesystem::path& path);
FillFile load_fill(const std::filesystem::path& path);

}  // namespace ddbin
