#include "ddbin/dataset.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <type_traits>

#include "ddbin/errors.hpp"

namespace ddbin {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t checked_magic(std::span<const std::uint8_t> bytes, std::uint32_t expected,
                            std::size_t header_size) {
  if (bytes.size() < 4) fail(Errc::Truncated, "IDX stream shorter than its magic number");
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != expected) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "IDX magic 0x%08x, expected 0x%08x", magic, expected);
    fail(Errc::BadMagic, buf);
  }
  if (bytes.size() < header_size) fail(Errc::Truncated, "IDX header is incomplete");
  return magic;
}

void check_payload(std::size_t have, std::uint64_t header, std::uint64_t payload) {
  if (have < header + payload) {
    fail(Errc::Truncated, "IDX payload has " + std::to_string(have - header) +
                              " bytes, header promises " + std::to_string(payload));
  }
  if (have > header + payload) {
    fail(Errc::TrailingBytes,
         std::to_string(have - header - payload) + " bytes after the IDX payload");
  }
}

// Little-endian writer/reader for the internal container.
class LeWriter {
 public:
  explicit LeWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  template <typename T>
  void put(T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<std::uint8_t, sizeof(T)> raw{};
    std::memcpy(raw.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
    const std::size_t at = out_.size();
    out_.resize(at + sizeof(T));
    std::memcpy(out_.data() + at, raw.data(), sizeof(T));
  }

 private:
  std::vector<std::uint8_t>& out_;
};

class LeReader {
 public:
  explicit LeReader(std::span<const std::uint8_t> in) : in_(in) {}

  template <typename T>
  T get() {
    if (in_.size() - pos_ < sizeof(T)) fail(Errc::Truncated, "dataset file ends early");
    std::array<std::uint8_t, sizeof(T)> raw{};
    std::memcpy(raw.data(), in_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, raw.data(), sizeof(T));
    return value;
  }

  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

constexpr std::array<char, 8> kDatasetMagic = {'D', 'D', 'B', 'I', 'N', 'D', 'S', '\0'};
constexpr std::uint32_t kDatasetVersion = 1;

}  // namespace

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes) {
  constexpr std::size_t kHeader = 16;
  checked_magic(bytes, kIdxImageMagic, kHeader);
  const std::uint64_t count = read_be32(bytes, 4);
  const std::uint64_t rows = read_be32(bytes, 8);
  const std::uint64_t cols = read_be32(bytes, 12);
  if (count > 0 && (rows == 0 || cols == 0)) {
    fail(Errc::Format, "IDX header declares images with an empty grid");
  }
  // rows * cols < 2^64; guard the multiplication by count against overflow.
  const std::uint64_t stride64 = rows * cols;
  if (count > 0 && count > (bytes.size() - kHeader) / stride64) {
    fail(Errc::Truncated, "IDX header promises " + std::to_string(count) + " images of " +
                              std::to_string(stride64) + " bytes, stream has " +
                              std::to_string(bytes.size() - kHeader));
  }
  check_payload(bytes.size(), kHeader, count * stride64);

  IdxImages out;
  out.rows = rows;
  out.cols = cols;
  out.grids.reserve(count);
  const std::size_t stride = rows * cols;
  for (std::size_t i = 0; i < count; ++i) {
    auto first = bytes.begin() + static_cast<std::ptrdiff_t>(kHeader + i * stride);
    out.grids.emplace_back(first, first + static_cast<std::ptrdiff_t>(stride));
  }
  return out;
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes,
                                           std::size_t class_count) {
  constexpr std::size_t kHeader = 8;
  checked_magic(bytes, kIdxLabelMagic, kHeader);
  const std::uint64_t count = read_be32(bytes, 4);
  check_payload(bytes.size(), kHeader, count);

  std::vector<std::uint8_t> labels(bytes.begin() + kHeader, bytes.end());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= class_count) {
      fail(Errc::LabelOutOfRange, "label " + std::to_string(labels[i]) + " at index " +
                                      std::to_string(i) + " with " +
                                      std::to_string(class_count) + " classes");
    }
  }
  return labels;
}

std::vector<std::uint8_t> encode_idx_images(const IdxImages& images) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + images.grids.size() * images.rows * images.cols);
  append_be32(out, kIdxImageMagic);
  append_be32(out, static_cast<std::uint32_t>(images.grids.size()));
  append_be32(out, static_cast<std::uint32_t>(images.rows));
  append_be32(out, static_cast<std::uint32_t>(images.cols));
  for (const auto& grid : images.grids) {
    if (grid.size() != images.rows * images.cols) {
      fail(Errc::DimensionMismatch, "grid size does not match rows x cols");
    }
    out.insert(out.end(), grid.begin(), grid.end());
  }
  return out;
}

std::vector<std::uint8_t> encode_idx_labels(std::span<const std::uint8_t> labels) {
  std::vector<std::uint8_t> out;
  out.reserve(8 + labels.size());
  append_be32(out, kIdxLabelMagic);
  append_be32(out, static_cast<std::uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

RawDataset make_raw_dataset(IdxImages images, std::vector<std::uint8_t> labels,
                            std::size_t class_count) {
  if (images.grids.size() != labels.size()) {
    fail(Errc::DimensionMismatch, std::to_string(images.grids.size()) + " images but " +
                                      std::to_string(labels.size()) + " labels");
  }
  for (std::uint8_t label : labels) {
    if (label >= class_count) {
      fail(Errc::LabelOutOfRange, "label " + std::to_string(label) + " with " +
                                      std::to_string(class_count) + " classes");
    }
  }
  return RawDataset{std::move(images), std::move(labels), class_count};
}

Grid downsample(std::span<const std::uint8_t> grid, std::size_t rows, std::size_t cols,
                std::size_t factor) {
  if (grid.size() != rows * cols) {
    fail(Errc::DimensionMismatch, "grid has " + std::to_string(grid.size()) +
                                      " bytes, expected " + std::to_string(rows * cols));
  }
  if (factor == 0 || rows % factor != 0 || cols % factor != 0) {
    fail(Errc::NonDivisibleFactor, "pool factor " + std::to_string(factor) +
                                       " does not divide " + std::to_string(rows) + "x" +
                                       std::to_string(cols));
  }
  Grid out{rows / factor, cols / factor, {}};
  out.values.resize(out.rows * out.cols);
  const double block = static_cast<double>(factor * factor);
  for (std::size_t r = 0; r < out.rows; ++r) {
    for (std::size_t c = 0; c < out.cols; ++c) {
      // Integer block sums are exact, so the mean is a single rounding.
      std::uint64_t sum = 0;
      for (std::size_t dr = 0; dr < factor; ++dr) {
        for (std::size_t dc = 0; dc < factor; ++dc) {
          sum += grid[(r * factor + dr) * cols + (c * factor + dc)];
        }
      }
      out.values[r * out.cols + c] = static_cast<double>(sum) / block;
    }
  }
  return out;
}

Image normalize(const Grid& grid) {
  Image out{grid.rows, grid.cols, {}};
  out.pixels.reserve(grid.values.size());
  for (double v : grid.values) {
    if (!(v >= 0.0 && v <= 255.0)) {
      fail(Errc::OutOfRange, "pixel value " + std::to_string(v) + " outside [0, 255]");
    }
    out.pixels.push_back(v / 255.0);
  }
  return out;
}

Dataset prepare(const RawDataset& raw, std::size_t pool) {
  if (raw.images.grids.size() != raw.labels.size()) {
    fail(Errc::DimensionMismatch, "image and label counts differ");
  }
  Dataset out;
  if (pool == 0 || raw.images.rows % pool != 0 || raw.images.cols % pool != 0) {
    fail(Errc::NonDivisibleFactor, "pool factor " + std::to_string(pool) +
                                       " does not divide the image grid");
  }
  out.rows = raw.images.rows / pool;
  out.cols = raw.images.cols / pool;
  out.class_count = raw.class_count;
  out.class_labels.resize(raw.class_count);
  for (std::size_t m = 0; m < raw.class_count; ++m) out.class_labels[m] = static_cast<int>(m);
  out.labels.assign(raw.labels.begin(), raw.labels.end());
  out.pixels = Matrix(raw.labels.size(), out.rows * out.cols);
  for (std::size_t i = 0; i < raw.images.grids.size(); ++i) {
    const Image img = normalize(downsample(raw.images.grids[i], raw.images.rows,
                                           raw.images.cols, pool));
    std::copy(img.pixels.begin(), img.pixels.end(), out.pixels.row(i).begin());
  }
  return out;
}

Dataset select_classes(const Dataset& data, std::span<const int> keep) {
  if (keep.empty()) fail(Errc::InvalidArgument, "class selection is empty");
  std::vector<int> remap(data.class_count, -1);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const auto it = std::find(data.class_labels.begin(), data.class_labels.end(), keep[k]);
    if (it == data.class_labels.end()) {
      fail(Errc::InvalidArgument, "class " + std::to_string(keep[k]) + " not in dataset");
    }
    auto& slot = remap[static_cast<std::size_t>(it - data.class_labels.begin())];
    if (slot != -1) fail(Errc::InvalidArgument, "class " + std::to_string(keep[k]) + " listed twice");
    slot = static_cast<int>(k);
  }

  Dataset out;
  out.rows = data.rows;
  out.cols = data.cols;
  out.class_count = keep.size();
  out.class_labels.assign(keep.begin(), keep.end());
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (remap[data.labels[i]] >= 0) picked.push_back(i);
  }
  out.labels.reserve(picked.size());
  out.pixels = Matrix(picked.size(), data.pixel_count());
  for (std::size_t j = 0; j < picked.size(); ++j) {
    out.labels.push_back(static_cast<std::uint32_t>(remap[data.labels[picked[j]]]));
    const auto src = data.image(picked[j]);
    std::copy(src.begin(), src.end(), out.pixels.row(j).begin());
  }
  return out;
}

std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes) {
  z_stream zs{};
  // 16 + MAX_WBITS: expect a gzip wrapper.
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) fail(Errc::Io, "inflateInit2 failed");
  zs.next_in = const_cast<Bytef*>(bytes.data());
  zs.avail_in = static_cast<uInt>(bytes.size());

  std::vector<std::uint8_t> out;
  std::array<std::uint8_t, 1 << 16> chunk{};
  int status = Z_OK;
  while (status != Z_STREAM_END) {
    zs.next_out = chunk.data();
    zs.avail_out = static_cast<uInt>(chunk.size());
    status = inflate(&zs, Z_NO_FLUSH);
    if (status != Z_OK && status != Z_STREAM_END) {
      inflateEnd(&zs);
      fail(Errc::Io, "corrupt gzip stream");
    }
    out.insert(out.end(), chunk.begin(), chunk.begin() + (chunk.size() - zs.avail_out));
    if (status == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      fail(Errc::Truncated, "gzip stream ends early");
    }
  }
  inflateEnd(&zs);
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b) return gunzip(bytes);
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(Errc::Io, "short write to " + path.string());
}

RawDataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                    std::size_t class_count) {
  return make_raw_dataset(parse_idx_images(read_file(images)),
                          parse_idx_labels(read_file(labels), class_count), class_count);
}

std::vector<std::uint8_t> encode_dataset(const Dataset& data, std::uint64_t config_hash) {
  if (data.class_labels.size() != data.class_count || data.pixels.rows() != data.size() ||
      data.pixels.cols() != data.pixel_count()) {
    fail(Errc::DimensionMismatch, "inconsistent dataset");
  }
  std::vector<std::uint8_t> out(kDatasetMagic.begin(), kDatasetMagic.end());
  out.reserve(48 + data.size() * (1 + 8 * data.pixel_count()));
  LeWriter w(out);
  w.put<std::uint32_t>(kDatasetVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(data.rows));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(data.cols));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(data.class_count));
  w.put<std::uint64_t>(data.size());
  w.put<std::uint64_t>(config_hash);
  for (int label : data.class_labels) w.put<std::int32_t>(label);
  for (std::uint32_t label : data.labels) {
    if (label > 255) fail(Errc::LabelOutOfRange, "label does not fit a byte");
    out.push_back(static_cast<std::uint8_t>(label));
  }
  for (double v : data.pixels.values()) w.put<double>(v);
  return out;
}

Dataset decode_dataset(std::span<const std::uint8_t> bytes, std::uint64_t* config_hash) {
  if (bytes.size() < kDatasetMagic.size() ||
      !std::equal(kDatasetMagic.begin(), kDatasetMagic.end(), bytes.begin())) {
    fail(Errc::BadMagic, "not a ddbin dataset file");
  }
  LeReader r(bytes.subspan(kDatasetMagic.size()));
  const auto version = r.get<std::uint32_t>();
  if (version != kDatasetVersion) {
    fail(Errc::Format, "unsupported dataset version " + std::to_string(version));
  }
  Dataset out;
  out.rows = r.get<std::uint32_t>();
  out.cols = r.get<std::uint32_t>();
  out.class_count = r.get<std::uint32_t>();
  const auto count = r.get<std::uint64_t>();
  const auto hash = r.get<std::uint64_t>();
  if (config_hash != nullptr) *config_hash = hash;

  const std::uint64_t have = r.remaining();
  const std::uint64_t pixels = std::uint64_t{out.rows} * out.cols;  // < 2^64
  if (out.class_count * 4ULL > have || count > have ||
      (count > 0 && pixels > have / 8 / count)) {
    fail(Errc::Truncated, "dataset payload is incomplete");
  }
  const std::uint64_t body = out.class_count * 4ULL + count + count * pixels * 8ULL;
  if (r.remaining() < body) fail(Errc::Truncated, "dataset payload is incomplete");
  if (r.remaining() > body) fail(Errc::TrailingBytes, "bytes after dataset payload");

  out.class_labels.resize(out.class_count);
  for (auto& label : out.class_labels) label = r.get<std::int32_t>();
  out.labels.resize(count);
  for (auto& label : out.labels) {
    label = r.get<std::uint8_t>();
    if (label >= out.class_count) fail(Errc::LabelOutOfRange, "stored label out of range");
  }
  out.pixels = Matrix(count, out.rows * out.cols);
  for (double& v : out.pixels.values()) v = r.get<double>();
  return out;
}

}  // namespace ddbin
