#include "ddbin/formats.hpp"

#include <fstream>
#include <sstream>

#include "ddbin/errors.hpp"
#include "json.hpp"

namespace ddbin {

namespace {

using nlohmann::json;

constexpr const char* kWeightsFormat = "ddbin.weights";
constexpr const char* kFillFormat = "ddbin.fill";

json parse_or_fail(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::Format, std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(Errc::Format, std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(Errc::Format, std::string("field '") + key + "': " + e.what());
  }
}

void check_header(const json& doc, const char* format) {
  if (!doc.is_object()) fail(Errc::Format, "top-level JSON value must be an object");
  if (field<std::string>(doc, "format") != format) {
    fail(Errc::Format, std::string("expected a ") + format + " document");
  }
  const int version = field<int>(doc, "version");
  if (version != kFormatVersion) {
    fail(Errc::Format, "unsupported " + std::string(format) + " version " +
                           std::to_string(version));
  }
}

Matrix matrix_field(const json& doc, const char* key, std::size_t rows, std::size_t cols) {
  auto values = field<std::vector<double>>(doc, key);
  if (values.size() != rows * cols) {
    fail(Errc::DimensionMismatch, std::string("'") + key + "' has " +
                                      std::to_string(values.size()) + " entries, expected " +
                                      std::to_string(rows * cols));
  }
  return Matrix(rows, cols, std::move(values));
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::Io, "cannot write " + path.string());
  out << text;
  if (!out) fail(Errc::Io, "short write to " + path.string());
}

}  // namespace

std::string to_json(const ModelFile& model) {
  const auto& w = model.weights.w;
  json doc = {
      {"format", kWeightsFormat},
      {"version", kFormatVersion},
      {"kind", model.kind},
      {"constraint", model.constraint},
      {"m_classes", w.rows()},
      {"n_pixels", w.cols()},
      {"grid", {model.rows, model.cols}},
      {"class_labels", model.class_labels},
      {"weights", std::vector<double>(w.values().begin(), w.values().end())},
      {"bias", model.weights.bias},
      {"provenance",
       {{"dataset_hash", model.provenance.dataset_hash},
        {"alpha", model.provenance.alpha},
        {"seed", model.provenance.seed},
        {"config_hash", model.provenance.config_hash}}},
  };
  return doc.dump(1) + "\n";
}

ModelFile model_from_json(std::string_view text) {
  const json doc = parse_or_fail(text);
  check_header(doc, kWeightsFormat);
  ModelFile out;
  out.kind = field<std::string>(doc, "kind");
  out.constraint = field<std::string>(doc, "constraint");
  const auto m = field<std::size_t>(doc, "m_classes");
  const auto n = field<std::size_t>(doc, "n_pixels");
  const auto grid = field<std::vector<std::size_t>>(doc, "grid");
  if (grid.size() != 2 || grid[0] * grid[1] != n) {
    fail(Errc::DimensionMismatch, "grid does not match n_pixels");
  }
  out.rows = grid[0];
  out.cols = grid[1];
  out.class_labels = field<std::vector<int>>(doc, "class_labels");
  if (out.class_labels.size() != m) fail(Errc::DimensionMismatch, "class_labels size");
  out.weights = WeightMatrix(matrix_field(doc, "weights", m, n));
  out.weights.bias = field<std::vector<double>>(doc, "bias");
  if (out.weights.bias.size() != m) fail(Errc::DimensionMismatch, "bias size");
  const json prov = field<json>(doc, "provenance");
  out.provenance.dataset_hash = field<std::string>(prov, "dataset_hash");
  out.provenance.alpha = field<double>(prov, "alpha");
  out.provenance.seed = field<std::uint64_t>(prov, "seed");
  out.provenance.config_hash = field<std::string>(prov, "config_hash");
  return out;
}

std::string to_json(const FillFile& fill) {
  const auto& f = fill.fill.f;
  json doc = {
      {"format", kFillFormat},
      {"version", kFormatVersion},
      {"mode", fill.mode},
      {"m_classes", f.rows()},
      {"n_pixels", f.cols()},
      {"grid", {fill.rows, fill.cols}},
      {"class_labels", fill.class_labels},
      {"fill", std::vector<double>(f.values().begin(), f.values().end())},
      {"coverage", fill.coverage},
      {"violations", fill.violations},
      {"source_hash", fill.source_hash},
      {"config_hash", fill.config_hash},
  };
  return doc.dump(1) + "\n";
}

FillFile fill_from_json(std::string_view text) {
  const json doc = parse_or_fail(text);
  check_header(doc, kFillFormat);
  FillFile out;
  out.mode = field<std::string>(doc, "mode");
  const auto m = field<std::size_t>(doc, "m_classes");
  const auto n = field<std::size_t>(doc, "n_pixels");
  const auto grid = field<std::vector<std::size_t>>(doc, "grid");
  if (grid.size() != 2 || grid[0] * grid[1] != n) {
    fail(Errc::DimensionMismatch, "grid does not match n_pixels");
  }
  out.rows = grid[0];
  out.cols = grid[1];
  out.class_labels = field<std::vector<int>>(doc, "class_labels");
  if (out.class_labels.size() != m) fail(Errc::DimensionMismatch, "class_labels size");
  out.fill = FillFactorMatrix{matrix_field(doc, "fill", m, n)};
  out.coverage = field<double>(doc, "coverage");
  out.violations = field<std::vector<std::string>>(doc, "violations");
  out.source_hash = field<std::string>(doc, "source_hash");
  out.config_hash = field<std::string>(doc, "config_hash");
  return out;
}

void save(const std::filesystem::path& path, const ModelFile& model) { spit(path, to_json(model)); }
void save(const std::filesystem::path& path, const FillFile& fill) { spit(path, to_json(fill)); }
ModelFile load_model(const std::filesystem::path& path) { return model_from_json(slurp(path)); }
FillFile load_fill(const std::filesystem::path& path) { return fill_from_json(slurp(path)); }

}  // namespace ddbin
