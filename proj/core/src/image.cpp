#include "dagdiff/image.hpp"

#include <png.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "dagdiff/errors.hpp"

namespace dagdiff {

Image::Image(int width, int height, Rgb fill)
    : width_(width), height_(height), data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3) {
  if (width < 0 || height < 0) throw std::invalid_argument("negative image size");
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = fill.r;
    data_[i + 1] = fill.g;
    data_[i + 2] = fill.b;
  }
}

Rgb Image::at(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
  return Rgb{data_[i], data_[i + 1], data_[i + 2]};
}

void Image::set(int x, int y, Rgb c) {
  const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
  data_[i] = c.r;
  data_[i + 1] = c.g;
  data_[i + 2] = c.b;
}

void PixelBox::extend(int x, int y) {
  if (empty()) {
    *this = PixelBox{x, y, x, y};
    return;
  }
  x0 = std::min(x0, x);
  y0 = std::min(y0, y);
  x1 = std::max(x1, x);
  y1 = std::max(y1, y);
}

BitImage::BitImage(int width, int height)
    : width_(width), height_(height), bits_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {
  if (width < 0 || height < 0) throw std::invalid_argument("negative image size");
}

std::size_t BitImage::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

PixelBox BitImage::bounds() const {
  PixelBox box;
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      if (at(x, y)) box.extend(x, y);
  return box;
}

BitImage binarize(const Image& img) {
  BitImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const Rgb c = img.at(x, y);
      if (c.r < kBinarizeThreshold || c.g < kBinarizeThreshold || c.b < kBinarizeThreshold) out.set(x, y);
    }
  }
  return out;
}

Image to_image(const BitImage& bits) {
  Image out(bits.width(), bits.height());
  for (int y = 0; y < bits.height(); ++y)
    for (int x = 0; x < bits.width(); ++x)
      if (bits.at(x, y)) out.set(x, y, kBlack);
  return out;
}

IntegralImage::IntegralImage(const BitImage& bits)
    : width_(bits.width()),
      height_(bits.height()),
      table_(static_cast<std::size_t>(bits.width() + 1) * static_cast<std::size_t>(bits.height() + 1), 0) {
  const auto stride = static_cast<std::size_t>(width_ + 1);
  for (int y = 0; y < height_; ++y) {
    std::int64_t row = 0;
    for (int x = 0; x < width_; ++x) {
      row += bits.at(x, y) ? 1 : 0;
      table_[static_cast<std::size_t>(y + 1) * stride + static_cast<std::size_t>(x + 1)] =
          table_[static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(x + 1)] + row;
    }
  }
}

std::int64_t IntegralImage::sum(int x0, int y0, int x1, int y1) const {
  x0 = std::clamp(x0, 0, width_);
  x1 = std::clamp(x1, 0, width_);
  y0 = std::clamp(y0, 0, height_);
  y1 = std::clamp(y1, 0, height_);
  if (x1 <= x0 || y1 <= y0) return 0;
  const auto stride = static_cast<std::size_t>(width_ + 1);
  auto t = [&](int x, int y) { return table_[static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(x)]; };
  return t(x1, y1) - t(x0, y1) - t(x1, y0) + t(x0, y0);
}

Components connected_components(const BitImage& bits) {
  Components out;
  out.width = bits.width();
  out.labels.assign(static_cast<std::size_t>(bits.width()) * static_cast<std::size_t>(bits.height()), 0);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < bits.height(); ++y) {
    for (int x = 0; x < bits.width(); ++x) {
      if (!bits.at(x, y) || out.label_at(x, y) != 0) continue;
      const int label = static_cast<int>(out.boxes.size()) + 1;
      PixelBox box;
      std::size_t size = 0;
      stack.assign(1, {x, y});
      out.labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(out.width) + static_cast<std::size_t>(x)] = label;
      while (!stack.empty()) {
        auto [px, py] = stack.back();
        stack.pop_back();
        box.extend(px, py);
        ++size;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = px + dx;
            const int ny = py + dy;
            if (!bits.contains(nx, ny) || !bits.at(nx, ny)) continue;
            auto& l = out.labels[static_cast<std::size_t>(ny) * static_cast<std::size_t>(out.width) + static_cast<std::size_t>(nx)];
            if (l != 0) continue;
            l = label;
            stack.emplace_back(nx, ny);
          }
        }
      }
      out.boxes.push_back(box);
      out.sizes.push_back(size);
    }
  }
  return out;
}

namespace {

struct PngWriteState {
  std::vector<std::uint8_t>* out;
};

void png_write_cb(png_structp png, png_bytep data, png_size_t len) {
  auto* state = static_cast<PngWriteState*>(png_get_io_ptr(png));
  state->out->insert(state->out->end(), data, data + len);
}

void png_flush_cb(png_structp) {}

struct PngErrorState {
  std::string message = "unknown error";
};

void png_error_cb(png_structp png, png_const_charp msg) {
  if (auto* err = static_cast<PngErrorState*>(png_get_error_ptr(png))) err->message = msg;
  png_longjmp(png, 1);
}

void png_warning_cb(png_structp, png_const_charp) {}

std::vector<std::uint8_t> encode(int width, int height, int bit_depth, int color_type,
                                 const std::vector<std::vector<std::uint8_t>>& rows) {
  std::vector<std::uint8_t> out;
  PngErrorState err;
  PngWriteState state{&out};
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, png_error_cb, png_warning_cb);
  if (!png) throw Error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("PNG encode: " + err.message);
  }
  png_set_write_fn(png, &state, png_write_cb, png_flush_cb);
  png_set_compression_level(png, 6);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_BASE, PNG_FILTER_TYPE_BASE);
  png_write_info(png, info);
  for (const auto& row : rows) png_write_row(png, const_cast<png_bytep>(row.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

struct PngReadState {
  std::span<const std::uint8_t> data;
  std::size_t offset = 0;
};

void png_read_cb(png_structp png, png_bytep out, png_size_t len) {
  auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (state->offset + len > state->data.size()) png_error(png, "truncated PNG");
  std::memcpy(out, state->data.data() + state->offset, len);
  state->offset += len;
}

// Decodes into 8-bit RGB regardless of the stored format. Locals touched
// after setjmp live in `work` so that a longjmp leaves them intact.
Image decode_rgb(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) throw FormatError("not a PNG file");
  struct Work {
    PngErrorState err;
    PngReadState state;
    std::vector<std::uint8_t> pixels;
    std::vector<png_bytep> row_ptrs;
    int width = 0;
    int height = 0;
  } work;
  work.state.data = bytes;

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &work.err, png_error_cb, png_warning_cb);
  if (!png) throw Error("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("PNG decode: " + work.err.message);
  }
  png_set_read_fn(png, &work.state, png_read_cb);
  png_read_info(png, info);
  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  png_read_update_info(png, info);
  work.width = static_cast<int>(png_get_image_width(png, info));
  work.height = static_cast<int>(png_get_image_height(png, info));
  if (png_get_rowbytes(png, info) != static_cast<std::size_t>(work.width) * 3) png_error(png, "unexpected row layout");
  work.pixels.resize(static_cast<std::size_t>(work.width) * static_cast<std::size_t>(work.height) * 3);
  work.row_ptrs.resize(static_cast<std::size_t>(work.height));
  for (int y = 0; y < work.height; ++y)
    work.row_ptrs[static_cast<std::size_t>(y)] = work.pixels.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(work.width) * 3;
  png_read_image(png, work.row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  Image img(work.width, work.height);
  for (int y = 0; y < work.height; ++y) {
    for (int x = 0; x < work.width; ++x) {
      const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(work.width) + static_cast<std::size_t>(x)) * 3;
      img.set(x, y, Rgb{work.pixels[i], work.pixels[i + 1], work.pixels[i + 2]});
    }
  }
  return img;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& img) {
  std::vector<std::vector<std::uint8_t>> rows(static_cast<std::size_t>(img.height()));
  const auto stride = static_cast<std::size_t>(img.width()) * 3;
  for (int y = 0; y < img.height(); ++y) {
    const auto* begin = img.bytes().data() + static_cast<std::size_t>(y) * stride;
    rows[static_cast<std::size_t>(y)].assign(begin, begin + stride);
  }
  return encode(img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB, rows);
}

std::vector<std::uint8_t> encode_png(const BitImage& bits) {
  std::vector<std::vector<std::uint8_t>> rows(static_cast<std::size_t>(bits.height()));
  const auto row_bytes = static_cast<std::size_t>((bits.width() + 7) / 8);
  for (int y = 0; y < bits.height(); ++y) {
    auto& row = rows[static_cast<std::size_t>(y)];
    row.assign(row_bytes, 0);
    for (int x = 0; x < bits.width(); ++x)
      if (bits.at(x, y)) row[static_cast<std::size_t>(x / 8)] |= static_cast<std::uint8_t>(0x80u >> (x % 8));
  }
  return encode(bits.width(), bits.height(), 1, PNG_COLOR_TYPE_GRAY, rows);
}

Image decode_png_rgb(std::span<const std::uint8_t> png) { return decode_rgb(png); }

BitImage decode_png_mask(std::span<const std::uint8_t> png) {
  const Image img = decode_rgb(png);
  BitImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (img.at(x, y) != kBlack) out.set(x, y);
  return out;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(path.string(), "cannot open for writing");
  os.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!os) throw IoError(path.string(), "write failed");
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path.string(), "cannot open for reading");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

}  // namespace dagdiff
