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

#include "aquaspec/common.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace aquaspec {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kManifestParse: return "ManifestParseError";
    case ErrorCode::kBandFile: return "BandFileError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kUnsupportedRatio: return "UnsupportedRatio";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kMaskDimensionMismatch: return "MaskDimensionMismatch";
    case ErrorCode::kPatchLargerThanScene: return "PatchLargerThanScene";
    case ErrorCode::kEmptyMaxDomain: return "EmptyMaxDomain";
    case ErrorCode::kNoDefinedPixels: return "NoDefinedPixels";
    case ErrorCode::kDegenerateRange: return "DegenerateRange";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kNoValidPixels: return "NoValidPixels";
    case ErrorCode::kEvenWindow: return "EvenWindow";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kNonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::kUnknownPaletteKind: return "UnknownPaletteKind";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(ErrorCodeName(code)) + ": " + what);
}

namespace {

std::string Upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

}  // namespace

std::string_view BandName(BandId band) {
  switch (band) {
    case BandId::kB02: return "B02";
    case BandId::kB03: return "B03";
    case BandId::kB04: return "B04";
    case BandId::kB08: return "B08";
    case BandId::kB11: return "B11";
    case BandId::kB12: return "B12";
  }
  return "?";
}

std::optional<BandId> ParseBand(std::string_view name) {
  for (BandId b : kAllBands) {
    if (BandName(b) == name) return b;
  }
  return std::nullopt;
}

std::string_view IndexKindName(IndexKind kind) {
  switch (kind) {
    case IndexKind::kNdwi: return "NDWI";
    case IndexKind::kMndwi: return "MNDWI";
    case IndexKind::kTurbidity: return "TURBIDITY";
    case IndexKind::kNdci: return "NDCI";
    case IndexKind::kNdosi: return "NDOSI";
    case IndexKind::kRelBathymetry: return "REL_BATHYMETRY";
  }
  return "?";
}

std::optional<IndexKind> ParseIndexKind(std::string_view name) {
  const std::string up = Upper(name);
  for (IndexKind k : kAllIndexKinds) {
    if (IndexKindName(k) == up) return k;
  }
  return std::nullopt;
}

Domain NominalDomain(IndexKind kind) {
  switch (kind) {
    case IndexKind::kTurbidity:
      return {0.0, std::numeric_limits<double>::infinity()};
    case IndexKind::kRelBathymetry:
      return {0.0, 1.0};
    default:
      return {-1.0, 1.0};
  }
}

void RequireSameShape(int w0, int h0, int w1, int h1, const char* what,
                      ErrorCode code) {
  if (w0 == w1 && h0 == h1) return;
  std::ostringstream os;
  os << what << ": " << w0 << "x" << h0 << " vs " << w1 << "x" << h1;
  Fail(code, os.str());
}

}  // namespace aquaspec
