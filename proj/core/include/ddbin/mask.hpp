#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ddbin/fill_factor.hpp"

namespace ddbin {

/// Axis-aligned subpixel in pixel-relative units ([0, 1] on both axes).
struct SubpixelRect {
  std::size_t class_index = 0;
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  double area() const noexcept { return width * height; }
  bool operator==(const SubpixelRect&) const = default;
};

struct PixelLayout {
  std::size_t pixel = 0;
  std::vector<SubpixelRect> rects;

  bool operator==(const PixelLayout&) const = default;
};

/// Vertical full-height strips of width f_mn packed left to right in class
/// order; zero fill factors produce no strip. Throws ConstraintViolation
/// when the fill-factor matrix is not physically valid.
std::vector<PixelLayout> layout(const FillFactorMatrix& fill);

struct SvgOptions {
  double cell_px = 20.0;
  /// One CSS colour per class; empty selects default_palette().
  std::vector<std::string> colors;
  /// Embedded as an XML comment when non-empty.
  std::string config_hash;
};

std::vector<std::string> default_palette(std::size_t classes);

/// One <g> per pixel in row-major order; output is byte-stable.
std::string export_svg(std::span<const PixelLayout> layouts, std::size_t rows,
                       std::size_t cols, const SvgOptions& options = {});

/// Columns pixel_n,class_m,x,y,w,h; numbers use shortest round-trip form.
/// Lines starting with '#' are comments.
std::string export_csv(std::span<const PixelLayout> layouts,
                       std::string_view config_hash = {});
std::vector<PixelLayout> import_csv(std::string_view csv, std::size_t pixel_count);

}  // namespace ddbin
