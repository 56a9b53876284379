// Copyright 2026 The hdx Authors
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

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "hdx/matrix_group.hpp"

namespace hdx {

namespace fs = std::filesystem;

void write_group_dump(const std::string& path, const GroupEnumeration& group) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write group dump " + tmp.string());
    for (const auto& m : group.elements()) out << m.to_string() << '\n';
    if (!out) throw std::runtime_error("failed writing group dump " + tmp.string());
  }
  fs::rename(tmp, target);
}

GroupEnumeration read_group_dump(const std::string& path, const GroupParams& params, const std::string& label) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read group dump " + path);
  std::vector<RingMatrix> elements;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) elements.push_back(RingMatrix::parse(params, line));
  }
  return GroupEnumeration(params, label, std::move(elements));
}

std::string GroupCache::path_for(const GroupParams& params, const std::string& label) const {
  std::string name;
  for (char c : label) {
    if (c == '{' || c == '}') continue;
    name += (c == ',') ? '-' : c;
  }
  return (fs::path(directory_) / ("group_p" + std::to_string(params.ring.p) + "_s" + std::to_string(params.ring.s) +
                                  "_d" + std::to_string(params.d) + "_" + name + "_v" +
                                  std::to_string(kCacheFormatVersion) + ".txt"))
      .string();
}

bool GroupCache::has(const GroupParams& params, const std::string& label) const {
  return !directory_.empty() && fs::exists(path_for(params, label));
}

std::optional<GroupEnumeration> GroupCache::load(const GroupParams& params, const std::string& label) const {
  if (!has(params, label)) return std::nullopt;
  return read_group_dump(path_for(params, label), params, label);
}

void GroupCache::store(const GroupEnumeration& group) const {
  if (directory_.empty()) return;
  write_group_dump(path_for(group.params(), group.label()), group);
}

std::shared_ptr<const GroupEnumeration> GroupCache::k_group(const GroupParams& params, IndexSet excluded,
                                                            const ClosureOptions& options) const {
  const std::string label = k_label(excluded);
  if (auto cached = load(params, label)) return std::make_shared<const GroupEnumeration>(std::move(*cached));
  auto group = std::make_shared<const GroupEnumeration>(bfs_closure(k_generators(params, excluded), options));
  store(*group);
  return group;
}

}  // namespace hdx
