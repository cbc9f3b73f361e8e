/**
 * Copyright 2026 The cagnn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef CAGNN_IO_H_
#define CAGNN_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "cagnn/types.h"

namespace cagnn {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

// TSV with one row per node: "<index>\t<v_0>\t...\t<v_{d-1}>".
void write_matrix_tsv(std::ostream& out, const DenseMatrix& m);
void write_matrix_tsv(const std::filesystem::path& path, const DenseMatrix& m);
DenseMatrix read_matrix_tsv(std::istream& in);
DenseMatrix read_matrix_tsv(const std::filesystem::path& path);

// Flat "key=value" text; keys written in sorted order.
using KeyValues = std::map<std::string, std::string>;
void write_key_values(const std::filesystem::path& path, const KeyValues& kv);
KeyValues read_key_values(const std::filesystem::path& path);

// 64-bit FNV-1a, rendered as 16 hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace cagnn

#endif  // CAGNN_IO_H_
