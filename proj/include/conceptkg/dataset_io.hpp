// Copyright 2026 The conceptkg Authors.
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

#ifndef CONCEPTKG_DATASET_IO_HPP_
#define CONCEPTKG_DATASET_IO_HPP_

#include <string>
#include <string_view>

#include "conceptkg/clusters.hpp"

namespace ckg {

// {"clusters":[{"expected","id","path"?,"questions","source","statements",
//   "target","type"}], "config":{...}, "graph_fingerprint", "version"}
// Sorted keys, two-space indent, trailing newline.
std::string write_dataset(const ClusterDataset &dataset);

// Throws kSchemaViolation naming the JSON path and, inside a cluster, its id.
ClusterDataset read_dataset(std::string_view text);

ClusterDataset read_dataset_file(const std::string &path);
void write_dataset_file(const ClusterDataset &dataset, const std::string &path);

}  // namespace ckg

#endif  // CONCEPTKG_DATASET_IO_HPP_
