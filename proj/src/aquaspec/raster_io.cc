/* Copyright 2026 The Aquaspec Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "aquaspec/raster_io.h"

#include <png.h>
#include <tiffio.h>

#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace aquaspec {

namespace {

thread_local std::string g_tiff_message;

void CaptureTiffMessage(const char* module, const char* fmt, va_list ap) {
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  g_tiff_message = module ? std::string(module) + ": " + buf : buf;
}

void QuietTiff() {
  static const bool installed = [] {
    TIFFSetErrorHandler(CaptureTiffMessage);
    TIFFSetWarningHandler(nullptr);
    return true;
  }();
  (void)installed;
}

struct TiffCloser {
  void operator()(TIFF* t) const { TIFFClose(t); }
};
using TiffPtr = std::unique_ptr<TIFF, TiffCloser>;

TiffPtr OpenTiff(const std::string& path, const char* mode) {
  QuietTiff();
  g_tiff_message.clear();
  TiffPtr tif(TIFFOpen(path.c_str(), mode));
  if (!tif) {
    Fail(ErrorCode::kIo, "cannot open TIFF '" + path + "'" +
                             (g_tiff_message.empty() ? "" : " (" + g_tiff_message + ")"));
  }
  return tif;
}

template <typename T>
Grid<T> ReadTiffScalar(const std::string& path, uint16_t want_bits,
                       uint16_t want_format) {
  TiffPtr tif = OpenTiff(path, "r");
  uint32_t w = 0, h = 0;
  uint16_t spp = 1, bits = 1, fmt = SAMPLEFORMAT_UINT, planar = PLANARCONFIG_CONTIG;
  if (!TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &w) ||
      !TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &h)) {
    Fail(ErrorCode::kFormat, "'" + path + "' lacks image dimensions");
  }
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLESPERPIXEL, &spp);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_BITSPERSAMPLE, &bits);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLEFORMAT, &fmt);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_PLANARCONFIG, &planar);
  std::ostringstream layout;
  layout << "'" << path << "': samples=" << spp << " bits=" << bits
         << " format=" << fmt;
  if (spp != 1 || bits != want_bits || fmt != want_format) {
    Fail(ErrorCode::kFormat, "unexpected sample layout in " + layout.str());
  }
  if (TIFFIsTiled(tif.get())) {
    Fail(ErrorCode::kFormat, "tiled TIFF not supported: '" + path + "'");
  }
  if (w == 0 || h == 0 || w > (1u << 20) || h > (1u << 20)) {
    Fail(ErrorCode::kFormat, "bad dimensions in '" + path + "'");
  }
  if (static_cast<size_t>(TIFFScanlineSize(tif.get())) != w * sizeof(T)) {
    Fail(ErrorCode::kFormat, "unexpected scanline size in '" + path + "'");
  }
  Grid<T> grid(static_cast<int>(w), static_cast<int>(h));
  for (uint32_t row = 0; row < h; ++row) {
    if (TIFFReadScanline(tif.get(), &grid.data[size_t(row) * w], row, 0) < 0) {
      Fail(ErrorCode::kFormat, "decode failure in '" + path + "' at row " +
                                   std::to_string(row) + ": " + g_tiff_message);
    }
  }
  return grid;
}

template <typename T>
void WriteTiffScalar(const std::string& path, const Grid<T>& grid,
                     uint16_t bits, uint16_t fmt, uint16_t compression) {
  if (grid.width <= 0 || grid.height <= 0) {
    Fail(ErrorCode::kInvalidArgument, "empty grid for '" + path + "'");
  }
  TiffPtr tif = OpenTiff(path, "w");
  TIFF* t = tif.get();
  TIFFSetField(t, TIFFTAG_IMAGEWIDTH, static_cast<uint32_t>(grid.width));
  TIFFSetField(t, TIFFTAG_IMAGELENGTH, static_cast<uint32_t>(grid.height));
  TIFFSetField(t, TIFFTAG_SAMPLESPERPIXEL, uint16_t{1});
  TIFFSetField(t, TIFFTAG_BITSPERSAMPLE, bits);
  TIFFSetField(t, TIFFTAG_SAMPLEFORMAT, fmt);
  TIFFSetField(t, TIFFTAG_PHOTOMETRIC, PHOTOMETRIC_MINISBLACK);
  TIFFSetField(t, TIFFTAG_PLANARCONFIG, PLANARCONFIG_CONTIG);
  TIFFSetField(t, TIFFTAG_COMPRESSION, compression);
  TIFFSetField(t, TIFFTAG_ROWSPERSTRIP, TIFFDefaultStripSize(t, 0));
  std::vector<T> row(grid.width);
  for (int y = 0; y < grid.height; ++y) {
    std::copy_n(&grid.data[size_t(y) * grid.width], grid.width, row.begin());
    if (TIFFWriteScanline(t, row.data(), static_cast<uint32_t>(y), 0) < 0) {
      Fail(ErrorCode::kIo, "write failure in '" + path + "': " + g_tiff_message);
    }
  }
}

}  // namespace

Grid<uint16_t> ReadTiffU16(const std::string& path) {
  return ReadTiffScalar<uint16_t>(path, 16, SAMPLEFORMAT_UINT);
}

void WriteTiffU16(const std::string& path, const Grid<uint16_t>& grid,
                  bool deflate) {
  WriteTiffScalar(path, grid, 16, SAMPLEFORMAT_UINT,
                  deflate ? COMPRESSION_ADOBE_DEFLATE : COMPRESSION_NONE);
}

Grid<float> ReadTiffF32(const std::string& path) {
  return ReadTiffScalar<float>(path, 32, SAMPLEFORMAT_IEEEFP);
}

void WriteTiffF32(const std::string& path, const Grid<float>& grid) {
  WriteTiffScalar(path, grid, 32, SAMPLEFORMAT_IEEEFP, COMPRESSION_ADOBE_DEFLATE);
}

namespace {

struct PngImage {
  png_image img{};
  PngImage() { img.version = PNG_IMAGE_VERSION; }
  ~PngImage() { png_image_free(&img); }
};

std::string PngMessage(const png_image& img) { return img.message; }

void BeginPngRead(PngImage& png, const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) Fail(ErrorCode::kIo, "cannot open PNG '" + path + "'");
  if (!png_image_begin_read_from_file(&png.img, path.c_str())) {
    Fail(ErrorCode::kFormat, "'" + path + "': " + PngMessage(png.img));
  }
}

void FinishPngWrite(PngImage& png, const std::string& path, png_uint_32 format,
                    const void* data, int width, int height, int stride) {
  png.img.width = static_cast<png_uint_32>(width);
  png.img.height = static_cast<png_uint_32>(height);
  png.img.format = format;
  if (!png_image_write_to_file(&png.img, path.c_str(), 0, data, stride,
                               nullptr)) {
    Fail(ErrorCode::kIo, "cannot write PNG '" + path + "': " + PngMessage(png.img));
  }
}

}  // namespace

Grid<uint8_t> ReadPngGray8(const std::string& path) {
  PngImage png;
  BeginPngRead(png, path);
  const png_uint_32 native = png.img.format;
  if (native & (PNG_FORMAT_FLAG_COLOR | PNG_FORMAT_FLAG_ALPHA |
                PNG_FORMAT_FLAG_LINEAR | PNG_FORMAT_FLAG_COLORMAP)) {
    Fail(ErrorCode::kFormat,
         "'" + path + "' is not a single-channel 8-bit image");
  }
  png.img.format = PNG_FORMAT_GRAY;
  Grid<uint8_t> grid(static_cast<int>(png.img.width),
                     static_cast<int>(png.img.height));
  if (!png_image_finish_read(&png.img, nullptr, grid.data.data(), 0, nullptr)) {
    Fail(ErrorCode::kFormat, "'" + path + "': " + PngMessage(png.img));
  }
  return grid;
}

void WritePngGray8(const std::string& path, const Grid<uint8_t>& grid) {
  PngImage png;
  FinishPngWrite(png, path, PNG_FORMAT_GRAY, grid.data.data(), grid.width,
                 grid.height, grid.width);
}

void WritePngRgba(const std::string& path, const RgbaImage& image) {
  PngImage png;
  FinishPngWrite(png, path, PNG_FORMAT_RGBA, image.rgba.data(), image.width,
                 image.height, image.width * 4);
}

RgbaImage ReadPngRgba(const std::string& path) {
  PngImage png;
  BeginPngRead(png, path);
  png.img.format = PNG_FORMAT_RGBA;
  RgbaImage out(static_cast<int>(png.img.width),
                static_cast<int>(png.img.height));
  if (!png_image_finish_read(&png.img, nullptr, out.rgba.data(), 0, nullptr)) {
    Fail(ErrorCode::kFormat, "'" + path + "': " + PngMessage(png.img));
  }
  return out;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) Fail(ErrorCode::kIo, "short write to '" + path + "'");
}

}  // namespace aquaspec
