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

#ifndef AQUASPEC_RASTER_IO_H_
#define AQUASPEC_RASTER_IO_H_

#include <cstdint>
#include <string>

#include "aquaspec/common.h"

namespace aquaspec {

struct RgbaImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgba;  // 4 bytes per pixel, row-major

  RgbaImage() = default;
  RgbaImage(int w, int h) : width(w), height(h), rgba(size_t(w) * h * 4, 0) {}
  uint8_t* px(int x, int y) { return &rgba[(size_t(y) * width + x) * 4]; }
  const uint8_t* px(int x, int y) const {
    return &rgba[(size_t(y) * width + x) * 4];
  }
};

// Single-channel baseline TIFF. Readers accept stripped files with any
// compression libtiff decodes (none and deflate are what the writers emit).
// Failures raise kIo (cannot open) or kFormat (wrong layout / corrupt data).
Grid<uint16_t> ReadTiffU16(const std::string& path);
void WriteTiffU16(const std::string& path, const Grid<uint16_t>& grid,
                  bool deflate = true);

Grid<float> ReadTiffF32(const std::string& path);
void WriteTiffF32(const std::string& path, const Grid<float>& grid);

// 8-bit single-channel PNG only; anything else is kFormat.
Grid<uint8_t> ReadPngGray8(const std::string& path);
void WritePngGray8(const std::string& path, const Grid<uint8_t>& grid);

void WritePngRgba(const std::string& path, const RgbaImage& image);
RgbaImage ReadPngRgba(const std::string& path);

// Small text helpers shared by the sidecar writers.
std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace aquaspec

#endif  // AQUASPEC_RASTER_IO_H_
