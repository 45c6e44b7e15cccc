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

#ifndef ROPE_IMAGE_IO_HPP_
#define ROPE_IMAGE_IO_HPP_

#include <filesystem>

#include "rope/errors.hpp"
#include "rope/image.hpp"

namespace rope {

/// Decodes a PNG or JPEG file (sniffed by signature) into 8-bit RGB.
/// Throws IoError: kUnreadable for missing/corrupt files, kUnsupportedFormat
/// for unrecognized signatures, kDimensionOverflow for absurd dimensions.
ColorImage load_image(const std::filesystem::path &path);

/// Encodes as 8-bit RGB PNG. Output bytes depend only on the pixel data.
void save_image(const ColorImage &img, const std::filesystem::path &path);

// Debug dumps.
void save_pgm(const GrayImage &img, const std::filesystem::path &path);
GrayImage load_pgm(const std::filesystem::path &path);
void save_pfm(const ScalarField &field, const std::filesystem::path &path);
ScalarField load_pfm(const std::filesystem::path &path);

}  // namespace rope

#endif  // ROPE_IMAGE_IO_HPP_
