#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace dagdiff {

struct Rgb {
  std::uint8_t r = 255, g = 255, b = 255;

  friend constexpr bool operator==(Rgb, Rgb) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kBlue{0, 0, 255};

/// 8-bit RGB raster, row-major, no alpha.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = kWhite);

  [[nodiscard]] int width() const { return width_; }
  [[nodiscard]] int height() const { return height_; }
  [[nodiscard]] Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);
  [[nodiscard]] bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  [[nodiscard]] std::span<const std::uint8_t> bytes() const { return data_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Pixel-inclusive bounding box of a pixel set.
struct PixelBox {
  int x0 = 0, y0 = 0, x1 = -1, y1 = -1;

  [[nodiscard]] bool empty() const { return x1 < x0 || y1 < y0; }
  void extend(int x, int y);
  friend constexpr bool operator==(const PixelBox&, const PixelBox&) = default;
};

/// Binary raster; one byte per pixel holding 0 or 1.
class BitImage {
 public:
  BitImage() = default;
  BitImage(int width, int height);

  [[nodiscard]] int width() const { return width_; }
  [[nodiscard]] int height() const { return height_; }
  [[nodiscard]] bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool v = true) { bits_[index(x, y)] = v ? 1 : 0; }
  [[nodiscard]] bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  [[nodiscard]] std::size_t count() const;
  /// Tight bounds of the set pixels; empty() when no pixel is set.
  [[nodiscard]] PixelBox bounds() const;
  [[nodiscard]] std::span<const std::uint8_t> bits() const { return bits_; }

  friend bool operator==(const BitImage&, const BitImage&) = default;

 private:
  [[nodiscard]] std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Ink threshold: a channel below this value counts as non-white.
inline constexpr std::uint8_t kBinarizeThreshold = 250;

/// 1 where any channel is below the threshold.
BitImage binarize(const Image& img);
/// 0 -> white, 1 -> black.
Image to_image(const BitImage& bits);

/// Summed-area table over a BitImage for O(1) rectangle counts.
class IntegralImage {
 public:
  explicit IntegralImage(const BitImage& bits);
  /// Set pixels in [x0, x1) x [y0, y1), clipped to the image.
  [[nodiscard]] std::int64_t sum(int x0, int y0, int x1, int y1) const;

 private:
  int width_;
  int height_;
  std::vector<std::int64_t> table_;
};

/// 8-connected components. Labels are 1-based in raster scan order of each
/// component's first pixel; 0 is background.
struct Components {
  std::vector<int> labels;
  std::vector<PixelBox> boxes;
  std::vector<std::size_t> sizes;
  int width = 0;

  [[nodiscard]] std::size_t count() const { return boxes.size(); }
  [[nodiscard]] int label_at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
  }
};

Components connected_components(const BitImage& bits);

// PNG codec. Encoding is deterministic: fixed compression settings and no
// time or text chunks.
std::vector<std::uint8_t> encode_png(const Image& img);
/// 1-bit grayscale; set pixels are white.
std::vector<std::uint8_t> encode_png(const BitImage& bits);
Image decode_png_rgb(std::span<const std::uint8_t> png);
/// Accepts any grayscale or RGB PNG; non-zero (non-black) pixels become 1.
BitImage decode_png_mask(std::span<const std::uint8_t> png);

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace dagdiff
