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

#include <cstddef>
#include <string>

#include "substinet/store.hpp"

namespace bench {

struct ToyText {
  std::string corpus;
  std::string records;
  std::string stopwords;
};

/// Toy-model output with `count` sentences, as JSONL text.
const ToyText& toy_text(std::size_t count);
/// The same, ingested at mass 0.95. Cached per count.
const substinet::Store& toy_store(std::size_t count);

}  // namespace bench
