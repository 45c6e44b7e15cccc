// Copyright 2026 The ROPE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rope/image_io.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include <jpeglib.h>
#include <png.h>

namespace rope {

namespace {

constexpr std::uint32_t kMaxSide = 1u << 20;      // per-axis pixel cap
constexpr std::uint64_t kMaxPixels = 1ull << 28;  // total pixel cap

using FileHandle = std::unique_ptr<std::FILE, int (*)(std::FILE *)>;

// libpng's default handlers print to stderr before bailing; fail silently
// and let the setjmp site raise IoError instead.
[[noreturn]] void quiet_png_error(png_structp png, png_const_charp) {
  std::longjmp(png_jmpbuf(png), 1);
}
void quiet_png_warning(png_structp, png_const_charp) {}

FileHandle open_file(const std::filesystem::path &path, const char *mode) {
  FileHandle f(std::fopen(path.string().c_str(), mode), &std::fclose);
  if (!f) {
    throw IoError(IoError::Kind::kUnreadable,
                  "cannot open '" + path.string() + "'");
  }
  return f;
}

void check_dimensions(std::uint64_t w, std::uint64_t h,
                      const std::filesystem::path &path) {
  if (w == 0 || h == 0 || w > kMaxSide || h > kMaxSide || w * h > kMaxPixels) {
    throw IoError(IoError::Kind::kDimensionOverflow,
                  "unsupported dimensions " + std::to_string(w) + "x" +
                      std::to_string(h) + " in '" + path.string() + "'");
  }
}

ColorImage load_png_file(std::FILE *f, const std::filesystem::path &path) {
  png_structp png = png_create_read_struct(
      PNG_LIBPNG_VER_STRING, nullptr, quiet_png_error, quiet_png_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(IoError::Kind::kUnreadable, "libpng init failed");
  }

  ColorImage img;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(IoError::Kind::kUnreadable,
                  "corrupt PNG '" + path.string() + "'");
  }

  png_init_io(png, f);
  png_read_info(png, info);

  png_uint_32 w = 0, h = 0;
  int bit_depth = 0, color_type = 0;
  png_get_IHDR(png, info, &w, &h, &bit_depth, &color_type, nullptr, nullptr,
               nullptr);

  // Normalize every PNG layout to 8-bit RGB.
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_GRAY ||
      color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
    png_set_gray_to_rgb(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  img.width = static_cast<int>(w);
  img.height = static_cast<int>(h);
  img.data.resize(static_cast<std::size_t>(w) * h * 3);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) {
    rows[y] = img.data.data() + static_cast<std::size_t>(y) * w * 3;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf recovery;
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto *mgr = reinterpret_cast<JpegErrorMgr *>(cinfo->err);
  std::longjmp(mgr->recovery, 1);
}

void jpeg_silence(j_common_ptr) {}

ColorImage load_jpeg_file(std::FILE *f, const std::filesystem::path &path) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;
  err.pub.output_message = jpeg_silence;

  ColorImage img;
  bool oversized = false;
  if (setjmp(err.recovery)) {
    jpeg_destroy_decompress(&cinfo);
    throw IoError(IoError::Kind::kUnreadable,
                  "corrupt JPEG '" + path.string() + "'");
  }

  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, f);
  jpeg_read_header(&cinfo, TRUE);
  if (static_cast<std::uint64_t>(cinfo.image_width) * cinfo.image_height >
          kMaxPixels ||
      cinfo.image_width > kMaxSide || cinfo.image_height > kMaxSide) {
    oversized = true;
  }
  if (oversized) {
    const std::uint64_t w = cinfo.image_width, h = cinfo.image_height;
    jpeg_destroy_decompress(&cinfo);
    check_dimensions(w, h, path);
  }
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);

  img.width = static_cast<int>(cinfo.output_width);
  img.height = static_cast<int>(cinfo.output_height);
  img.data.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = img.data.data() +
                   static_cast<std::size_t>(cinfo.output_scanline) * img.width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return img;
}

std::uint32_t read_be32(const unsigned char *p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
         (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

}  // namespace

ColorImage load_image(const std::filesystem::path &path) {
  FileHandle f = open_file(path, "rb");

  unsigned char head[24] = {0};
  const std::size_t got = std::fread(head, 1, sizeof(head), f.get());
  std::rewind(f.get());

  static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n',
                                           0x1a, '\n'};
  if (got >= 8 && std::memcmp(head, png_sig, 8) == 0) {
    if (got >= 24) {
      // IHDR is mandated to be the first chunk; reject absurd headers before
      // handing the stream to libpng.
      check_dimensions(read_be32(head + 16), read_be32(head + 20), path);
    }
    return load_png_file(f.get(), path);
  }
  if (got >= 3 && head[0] == 0xFF && head[1] == 0xD8 && head[2] == 0xFF) {
    return load_jpeg_file(f.get(), path);
  }
  throw IoError(IoError::Kind::kUnsupportedFormat,
                "unsupported image format in '" + path.string() + "'");
}

void save_image(const ColorImage &img, const std::filesystem::path &path) {
  if (img.width < 1 || img.height < 1 ||
      img.data.size() != static_cast<std::size_t>(img.width) * img.height * 3) {
    throw std::invalid_argument("save_image: malformed image");
  }
  FileHandle f = open_file(path, "wb");

  png_structp png = png_create_write_struct(
      PNG_LIBPNG_VER_STRING, nullptr, quiet_png_error, quiet_png_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError(IoError::Kind::kUnreadable, "libpng init failed");
  }

  std::vector<png_bytep> rows(img.height);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError(IoError::Kind::kUnreadable,
                  "cannot write '" + path.string() + "'");
  }

  png_init_io(png, f.get());
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y) {
    rows[y] = const_cast<png_bytep>(img.data.data()) +
              static_cast<std::size_t>(y) * img.width * 3;
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void save_pgm(const GrayImage &img, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(IoError::Kind::kUnreadable,
                  "cannot write '" + path.string() + "'");
  }
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char *>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
}

GrayImage load_pgm(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(IoError::Kind::kUnreadable,
                  "cannot open '" + path.string() + "'");
  }
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (magic != "P5" || maxval != 255) {
    throw IoError(IoError::Kind::kUnsupportedFormat,
                  "not an 8-bit P5 PGM: '" + path.string() + "'");
  }
  check_dimensions(static_cast<std::uint64_t>(w), static_cast<std::uint64_t>(h),
                   path);
  in.get();  // single whitespace after maxval
  GrayImage img(w, h);
  in.read(reinterpret_cast<char *>(img.data.data()),
          static_cast<std::streamsize>(img.data.size()));
  if (!in) {
    throw IoError(IoError::Kind::kUnreadable,
                  "truncated PGM '" + path.string() + "'");
  }
  return img;
}

// Grayscale PFM, little-endian, rows stored bottom-up per convention.
void save_pfm(const ScalarField &field, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(IoError::Kind::kUnreadable,
                  "cannot write '" + path.string() + "'");
  }
  out << "Pf\n" << field.width << " " << field.height << "\n-1.0\n";
  std::vector<float> row(field.width);
  for (int y = field.height - 1; y >= 0; --y) {
    for (int x = 0; x < field.width; ++x) {
      row[x] = static_cast<float>(field.at(x, y));
    }
    out.write(reinterpret_cast<const char *>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
}

ScalarField load_pfm(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(IoError::Kind::kUnreadable,
                  "cannot open '" + path.string() + "'");
  }
  std::string magic;
  int w = 0, h = 0;
  double scale = 0.0;
  in >> magic >> w >> h >> scale;
  if (magic != "Pf" || scale >= 0.0) {
    throw IoError(IoError::Kind::kUnsupportedFormat,
                  "not a little-endian grayscale PFM: '" + path.string() + "'");
  }
  check_dimensions(static_cast<std::uint64_t>(w), static_cast<std::uint64_t>(h),
                   path);
  in.get();
  ScalarField field(w, h);
  std::vector<float> row(w);
  for (int y = h - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char *>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    for (int x = 0; x < w; ++x) {
      field.at(x, y) = row[x];
    }
  }
  if (!in) {
    throw IoError(IoError::Kind::kUnreadable,
                  "truncated PFM '" + path.string() + "'");
  }
  return field;
}

}  // namespace rope
