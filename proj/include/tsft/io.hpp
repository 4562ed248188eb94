// Copyright 2026 The tsft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text formats. A matrix file is
//
//   # comment
//   tsft n=2 d=2
//   1 1
//   1 0
//
//   0 1
//   1 1
//
// with one n x n block of 0/1 rows per direction, blocks separated by blank
// lines. Either key may be omitted; without n, matrices of different sizes
// are padded with zero rows and columns. A forbidden-set file is
//
//   forbidden alphabet=2 d=2
//   forbid:
//   0(0,1)
//   1(1,0)
//
// with one block per line.

#ifndef TSFT_IO_HPP_
#define TSFT_IO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsft/blocks.hpp"
#include "tsft/graph.hpp"

namespace tsft {

// A shift as read from a file. For forbidden-set input, `tsft` is the vertex
// presentation on the allowed blocks of the forbidden height and `alphabet`
// names each vertex; `log` records the relabeling.
struct LoadedShift {
  VertexTsft tsft;
  std::optional<ForbiddenTsft> forbidden;
  std::vector<Block> alphabet;
  std::vector<std::string> log;
};

// `arity` overrides or supplies d; 0 keeps the file's value. Throw ParseError
// with 1-based line and column.
VertexTsft ParseMatrices(std::string_view text, unsigned arity = 0);
ForbiddenTsft ParseForbidden(std::string_view text, unsigned arity = 0);

// Dispatches on the header keyword and converts forbidden sets.
LoadedShift ParseShift(std::string_view text, unsigned arity = 0);
// Throws Error(kInvalidArgument) when the file cannot be read.
LoadedShift LoadShift(const std::string& path, unsigned arity = 0);

// Round-trips through ParseMatrices; unequal native sizes are written as is.
std::string FormatMatrices(const VertexTsft& tsft);
std::string FormatForbidden(const ForbiddenTsft& tsft);

// One labeled directed multigraph; vertices ascending, edges by (source,
// target, direction). `names` optionally labels the vertices.
std::string ToDot(const VertexTsft& tsft,
                  const std::vector<std::string>& names = {});

}  // namespace tsft

#endif  // TSFT_IO_HPP_
