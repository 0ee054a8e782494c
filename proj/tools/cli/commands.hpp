// Copyright 2026 The Substinet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "session.hpp"

namespace substinet::cli {

void toy_generate(Session& s);
void ingest(Session& s);
void info(Session& s);
void graph_build(Session& s);
void graph_export(Session& s);
void export_edges(Session& s);
void centrality(Session& s);
void cluster(Session& s);
void profile(Session& s);

void context_dyad(Session& s);
void context_network(Session& s);
void context_map(Session& s);
void drift(Session& s);
void variance(Session& s);

}  // namespace substinet::cli
