// Copyright 2026 The D4M Schema Authors
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

#include "testing/corpus.h"

#include <algorithm>
#include <set>

namespace d4m::testing {

std::vector<std::string> MiniCorpusLines() {
  return {
      "id\tstat\ttime\tuser\ttext",
      "10000061427136913\t200\t2011-01-31 06:33:08\tgetuki\tバスなう",
      "29002227913850880\t200\t2011-01-31 06:33:10\tbimodal\t"
      "@mi_pegadejeito Tipo. Você fazer uma plaquinha pra mim, com o nome do "
      "FC pra você tirar uma foto, pode fazer isso?",
      "29002230724038657\t301\t2011-01-31 06:33:11\tMichelle\tWait :)",
      "29002231692922880\t302\t2011-01-31 06:33:12\tPenny\tnull",
  };
}

RecordSpec MiniCorpusSpec() {
  RecordSpec spec;
  spec.row_key_field = "id";
  spec.explode_fields = {"stat", "time", "user"};
  spec.text_fields = {"text"};
  spec.flip = true;
  return spec;
}

RecordSpec RandomRecordSpec() {
  RecordSpec spec;
  spec.row_key_field = "id";
  spec.explode_fields = {"src", "kind"};
  spec.text_fields = {"text"};
  return spec;
}

std::vector<RawRecord> RandomRecords(std::mt19937_64& rng, size_t count) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> src(0, 19);
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<int> words(0, 6);
  std::set<std::string> ids;
  std::vector<RawRecord> out;
  out.reserve(count);
  while (out.size() < count) {
    std::string id = std::to_string(rng() % 1000000000000ULL);
    if (!ids.insert(id).second) continue;
    std::string text;
    int n = words(rng);
    for (int w = 0; w < n; ++w) {
      double u = unit(rng);
      int word = static_cast<int>(u * u * u * 300);
      if (!text.empty()) text += ' ';
      text += "w" + std::to_string(word);
    }
    out.push_back({{"id", id},
                   {"src", "s" + std::to_string(src(rng))},
                   {"kind", "k" + std::to_string(kind(rng))},
                   {"text", text}});
  }
  return out;
}

void IngestInRandomBatches(const QuadSchema& q,
                           const std::vector<ExplodedRecord>& records,
                           std::mt19937_64& rng, size_t max_batch) {
  std::uniform_int_distribution<size_t> size(1, max_batch);
  size_t i = 0;
  while (i < records.size()) {
    size_t n = std::min(size(rng), records.size() - i);
    std::vector<ExplodedRecord> batch(records.begin() + i,
                                      records.begin() + i + n);
    IngestBatch(q, batch);
    i += n;
  }
}

std::vector<Triple> Dump(const Table& t) {
  return t.Scan(RowSelection::All()).Collect();
}

}  // namespace d4m::testing
