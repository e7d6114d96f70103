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

#include <cctype>

#include "aquaspec/viz.h"

namespace aquaspec {

namespace {

struct Glyph {
  char c;
  const char* rows;  // 5 rows of 3 pixels, top to bottom
};

constexpr Glyph kGlyphs[] = {
    {'0', "111101101101111"}, {'1', "010110010010111"}, {'2', "111001111100111"},
    {'3', "111001111001111"}, {'4', "101101111001001"}, {'5', "111100111001111"},
    {'6', "111100111101111"}, {'7', "111001001001001"}, {'8', "111101111101111"},
    {'9', "111101111001111"}, {'-', "000000111000000"}, {'.', "000000000000010"},
    {'+', "000010111010000"}, {'_', "000000000000111"}, {'(', "001010010010001"},
    {')', "100010010010100"}, {':', "000010000010000"}, {'/', "001001010100100"},
    {'A', "010101111101101"}, {'B', "110101110101110"}, {'C', "011100100100011"},
    {'D', "110101101101110"}, {'E', "111100110100111"}, {'F', "111100110100100"},
    {'G', "011100101101011"}, {'H', "101101111101101"}, {'I', "111010010010111"},
    {'J', "001001001101010"}, {'K', "101101110101101"}, {'L', "100100100100111"},
    {'M', "101111111101101"}, {'N', "110101101101101"}, {'O', "010101101101010"},
    {'P', "110101110100100"}, {'Q', "010101101110011"}, {'R', "110101110101101"},
    {'S', "011100010001110"}, {'T', "111010010010010"}, {'U', "101101101101111"},
    {'V', "101101101101010"}, {'W', "101101111111101"}, {'X', "101101010101101"},
    {'Y', "101101010010010"}, {'Z', "111001010100111"},
};

const char* Lookup(char c) {
  const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const Glyph& g : kGlyphs) {
    if (g.c == up) return g.rows;
  }
  return nullptr;
}

}  // namespace

int TextWidth(std::string_view text, int scale) {
  if (text.empty()) return 0;
  return static_cast<int>(text.size()) * 4 * scale - scale;
}

void DrawText(RgbaImage& img, int x, int y, std::string_view text, int scale, Rgb color) {
  for (size_t n = 0; n < text.size(); ++n) {
    const char* rows = Lookup(text[n]);
    if (!rows) continue;
    const int gx = x + static_cast<int>(n) * 4 * scale;
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 3; ++c) {
        if (rows[r * 3 + c] != '1') continue;
        for (int dy = 0; dy < scale; ++dy) {
          for (int dx = 0; dx < scale; ++dx) {
            const int px = gx + c * scale + dx, py = y + r * scale + dy;
            if (px < 0 || py < 0 || px >= img.width || py >= img.height) continue;
            uint8_t* p = img.px(px, py);
            p[0] = color.r;
            p[1] = color.g;
            p[2] = color.b;
            p[3] = 255;
          }
        }
      }
    }
  }
}

}  // namespace aquaspec
