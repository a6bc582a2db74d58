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

#include "fairum/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "fairum/errors.hpp"
#include "json.hpp"

namespace fairum {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_object(std::string_view text, const char* what) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
  if (doc.contains("format")) {
    const auto& f = doc["format"];
    if (!f.is_number_integer() || f.get<int>() != kFormatVersion) {
      throw InputError(std::string(what) + ": unsupported format version");
    }
  }
  return doc;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const json doc = parse_object(text, "instance");
  if (!doc.contains("valuations") || !doc["valuations"].is_array()) {
    throw InputError("instance: missing \"valuations\" array");
  }
  std::vector<std::vector<Value>> rows;
  for (const auto& row : doc["valuations"]) {
    if (!row.is_array()) throw InputError("instance: each valuation row must be an array");
    auto& out = rows.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number_integer()) {
        throw InputError("instance: valuations must be integers");
      }
      out.push_back(v.get<Value>());
    }
  }
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError("instance: \"name\" must be a string");
    name = doc["name"].get<std::string>();
  }
  return Instance(rows, std::move(name));
}

std::string dump_instance(const Instance& inst) {
  ordered_json doc;
  doc["format"] = kFormatVersion;
  if (!inst.name().empty()) doc["name"] = inst.name();
  doc["valuations"] = inst.rows();
  return doc.dump() + "\n";
}

Allocation parse_allocation(std::string_view text) {
  const json doc = parse_object(text, "allocation");
  if (!doc.contains("owner") || !doc["owner"].is_array()) {
    throw InputError("allocation: missing \"owner\" array");
  }
  std::vector<int> owner;
  for (const auto& v : doc["owner"]) {
    if (!v.is_number_integer()) throw InputError("allocation: owners must be integers");
    const auto a = v.get<std::int64_t>();
    if (a < 0 || a > std::numeric_limits<int>::max()) {
      throw InputError("allocation: owner " + std::to_string(a) + " out of range");
    }
    owner.push_back(static_cast<int>(a));
  }
  return Allocation(std::move(owner));
}

std::string dump_allocation(const Allocation& alloc) {
  ordered_json doc;
  doc["format"] = kFormatVersion;
  doc["owner"] = alloc.owners();
  return doc.dump() + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ResourceError("write failed for " + path.string());
}

}  // namespace fairum
