// Copyright 2026 The fairum Authors
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

// JSON interchange formats shared by every CLI command.
//
//   instance:   {"format": 1, "name": "...", "valuations": [[...], ...]}
//   allocation: {"format": 1, "owner": [...]}
//
// "format" and "name" are optional on input; output always carries format 1.

#ifndef FAIRUM_IO_HPP_
#define FAIRUM_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "fairum/instance.hpp"

namespace fairum {

inline constexpr int kFormatVersion = 1;

Instance parse_instance(std::string_view text);
std::string dump_instance(const Instance& inst);

Allocation parse_allocation(std::string_view text);
std::string dump_allocation(const Allocation& alloc);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace fairum

#endif  // FAIRUM_IO_HPP_
