#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ddbin/matrix.hpp"

namespace ddbin {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

/// Images as stored in an IDX3 file: `count` grids of rows x cols bytes.
struct IdxImages {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::uint8_t>> grids;

  bool operator==(const IdxImages&) const = default;
};

/// Labeled 8-bit images straight from disk.
struct RawDataset {
  IdxImages images;
  std::vector<std::uint8_t> labels;
  std::size_t class_count = 10;

  bool operator==(const RawDataset&) const = default;
};

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes,
                                           std::size_t class_count);

std::vector<std::uint8_t> encode_idx_images(const IdxImages& images);
std::vector<std::uint8_t> encode_idx_labels(std::span<const std::uint8_t> labels);

/// Checks that counts match and every label is below `class_count`.
RawDataset make_raw_dataset(IdxImages images, std::vector<std::uint8_t> labels,
                            std::size_t class_count);

/// Real-valued grid, row-major.
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
};

/// Relative optical powers in [0, 1], flattened row-major.
struct Image {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> pixels;
};

/// Mean-pools `factor` x `factor` blocks. Throws NonDivisibleFactor.
Grid downsample(std::span<const std::uint8_t> grid, std::size_t rows,
                std::size_t cols, std::size_t factor);

/// Divides by 255. Throws OutOfRange for entries outside [0, 255].
Image normalize(const Grid& grid);

/// Preprocessed samples: one row of `pixels` per image.
struct Dataset {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t class_count = 0;
  /// Original label value of each class index (e.g. {0, 1} for the digits
  /// '0' and '1' after class selection).
  std::vector<int> class_labels;
  std::vector<std::uint32_t> labels;
  Matrix pixels;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t pixel_count() const noexcept { return rows * cols; }
  std::span<const double> image(std::size_t i) const { return pixels.row(i); }

  bool operator==(const Dataset&) const = default;
};

/// downsample + normalize for every image.
Dataset prepare(const RawDataset& raw, std::size_t pool);

/// Keeps only the listed original labels and renumbers them 0..k-1 in the
/// order given.
Dataset select_classes(const Dataset& data, std::span<const int> keep);

/// Reads a whole file; gzip streams (magic 1f 8b) are inflated transparently.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes);

RawDataset load_idx(const std::filesystem::path& images,
                    const std::filesystem::path& labels, std::size_t class_count);

/// Internal dataset container, version 1 (all integers little-endian):
///
///   magic       8 bytes  "DDBINDS\0"
///   version     u32      1
///   rows, cols  u32 x 2
///   classes     u32
///   count       u64
///   config_hash u64      hash of the run config that produced the file
///   class_labels i32 x classes
///   labels      u8 x count
///   pixels      f64 x count x rows x cols (IEEE-754 binary64)
std::vector<std::uint8_t> encode_dataset(const Dataset& data, std::uint64_t config_hash);
Dataset decode_dataset(std::span<const std::uint8_t> bytes,
                       std::uint64_t* config_hash = nullptr);

}  // namespace ddbin
