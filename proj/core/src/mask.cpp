#include "ddbin/mask.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <string>

#include "ddbin/errors.hpp"

namespace ddbin {

namespace {

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) fail(Errc::Format, "cannot format number");
  return std::string(buf.data(), end);
}

double parse_number(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(Errc::Format, "bad number '" + std::string(text) + "' in mask CSV");
  }
  return v;
}

std::size_t parse_index(std::string_view text) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(Errc::Format, "bad index '" + std::string(text) + "' in mask CSV");
  }
  return v;
}

}  // namespace

std::vector<PixelLayout> layout(const FillFactorMatrix& fill) {
  const auto violations = validate(fill);
  if (!violations.empty()) {
    fail(Errc::ConstraintViolation, "fill factors violate hardware constraints: " +
                                        violations.front().describe() + " (" +
                                        std::to_string(violations.size()) + " total)");
  }
  std::vector<PixelLayout> out(fill.pixels());
  for (std::size_t n = 0; n < fill.pixels(); ++n) {
    out[n].pixel = n;
    double x = 0.0;
    for (std::size_t m = 0; m < fill.classes(); ++m) {
      const double width = fill.f(m, n);
      if (width <= 0.0) continue;
      out[n].rects.push_back({m, x, 0.0, width, 1.0});
      x += width;
    }
  }
  return out;
}

std::vector<std::string> default_palette(std::size_t classes) {
  static const std::array<const char*, 10> kBase = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                    "#bcbd22", "#17becf"};
  std::vector<std::string> out;
  out.reserve(classes);
  for (std::size_t m = 0; m < classes; ++m) {
    if (m < kBase.size()) {
      out.emplace_back(kBase[m]);
      continue;
    }
    // Golden-ratio hue walk for extra classes.
    const double hue = static_cast<double>(m) * 0.618033988749895;
    const double h = (hue - static_cast<double>(static_cast<long long>(hue))) * 6.0;
    const int sector = static_cast<int>(h);
    const double frac = h - sector;
    const int up = static_cast<int>(55 + 200 * frac);
    const int down = static_cast<int>(255 - 200 * frac);
    int r = 55, g = 55, b = 55;
    switch (sector) {
      case 0: r = 255; g = up; break;
      case 1: r = down; g = 255; break;
      case 2: g = 255; b = up; break;
      case 3: g = down; b = 255; break;
      case 4: r = up; b = 255; break;
      default: r = 255; b = down; break;
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    out.emplace_back(buf);
  }
  return out;
}

std::string export_svg(std::span<const PixelLayout> layouts, std::size_t rows,
                       std::size_t cols, const SvgOptions& options) {
  if (layouts.size() != rows * cols) {
    fail(Errc::DimensionMismatch, std::to_string(layouts.size()) + " pixel layouts for a " +
                                      std::to_string(rows) + "x" + std::to_string(cols) +
                                      " grid");
  }
  if (!(options.cell_px > 0.0)) fail(Errc::InvalidArgument, "cell size must be positive");
  std::size_t classes = 0;
  for (const auto& px : layouts) {
    for (const auto& rect : px.rects) classes = std::max(classes, rect.class_index + 1);
  }
  const auto colors = options.colors.empty() ? default_palette(classes) : options.colors;
  if (colors.size() < classes) fail(Errc::InvalidArgument, "not enough class colours");

  const double cell = options.cell_px;
  const std::string width = format_number(cell * static_cast<double>(cols));
  const std::string height = format_number(cell * static_cast<double>(rows));
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + width + "\" height=\"" +
         height + "\" viewBox=\"0 0 " + width + " " + height + "\">\n";
  if (!options.config_hash.empty()) {
    svg += "<!-- ddbin mask config_hash=" + options.config_hash + " -->\n";
  }
  for (std::size_t n = 0; n < layouts.size(); ++n) {
    const auto& px = layouts[n];
    const double ox = cell * static_cast<double>(n % cols);
    const double oy = cell * static_cast<double>(n / cols);
    svg += "<g id=\"pixel-" + std::to_string(px.pixel) + "\" transform=\"translate(" +
           format_number(ox) + "," + format_number(oy) + ")\">\n";
    for (const auto& rect : px.rects) {
      svg += "  <rect class=\"class-" + std::to_string(rect.class_index) + "\" x=\"" +
             format_number(rect.x * cell) + "\" y=\"" + format_number(rect.y * cell) +
             "\" width=\"" + format_number(rect.width * cell) + "\" height=\"" +
             format_number(rect.height * cell) + "\" fill=\"" + colors[rect.class_index] +
             "\"/>\n";
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string export_csv(std::span<const PixelLayout> layouts, std::string_view config_hash) {
  std::string csv;
  if (!config_hash.empty()) {
    csv += "# ddbin mask config_hash=";
    csv += config_hash;
    csv += '\n';
  }
  csv += "pixel_n,class_m,x,y,w,h\n";
  for (const auto& px : layouts) {
    for (const auto& rect : px.rects) {
      csv += std::to_string(px.pixel) + ',' + std::to_string(rect.class_index) + ',' +
             format_number(rect.x) + ',' + format_number(rect.y) + ',' +
             format_number(rect.width) + ',' + format_number(rect.height) + '\n';
    }
  }
  return csv;
}

std::vector<PixelLayout> import_csv(std::string_view csv, std::size_t pixel_count) {
  std::vector<PixelLayout> out(pixel_count);
  for (std::size_t n = 0; n < pixel_count; ++n) out[n].pixel = n;

  bool header_seen = false;
  std::size_t line_no = 0;
  while (!csv.empty()) {
    const auto eol = csv.find('\n');
    std::string_view line = csv.substr(0, eol);
    csv.remove_prefix(eol == std::string_view::npos ? csv.size() : eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "pixel_n,class_m,x,y,w,h") fail(Errc::Format, "unexpected mask CSV header");
      header_seen = true;
      continue;
    }
    std::array<std::string_view, 6> fields;
    std::size_t count = 0;
    while (count < fields.size()) {
      const auto comma = line.find(',');
      fields[count++] = line.substr(0, comma);
      if (comma == std::string_view::npos) {
        line = {};
        break;
      }
      line.remove_prefix(comma + 1);
    }
    if (count != fields.size() || !line.empty()) {
      fail(Errc::Format, "mask CSV line " + std::to_string(line_no) + " needs 6 fields");
    }
    const std::size_t pixel = parse_index(fields[0]);
    if (pixel >= pixel_count) fail(Errc::Format, "pixel index out of range in mask CSV");
    out[pixel].rects.push_back({parse_index(fields[1]), parse_number(fields[2]),
                                parse_number(fields[3]), parse_number(fields[4]),
                                parse_number(fields[5])});
  }
  if (!header_seen) fail(Errc::Format, "mask CSV has no header");
  return out;
}

}  // namespace ddbin
