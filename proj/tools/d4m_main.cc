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

// d4m: command line front end for the exploded-schema store.
//
//   d4m init   --base <name> --dir <path> [--flip] [--presplits <n>]
//   d4m ingest --dir <path> --base <name> --input <file>
//              --format tsv|csv|jsonl --spec <configfile>
//              [--batch <n>] [--ingestors <n>]
//   d4m query  row|col|and|degree|text --dir <path> --base <name>
//              --key <k> [--key <k> ...]
//   d4m bench  --scale <s> --edgefactor <e> --seed <x> --ingestors <n>
//              --batch <n> --presplits <n> --keymode flipped|sequential
//              --report <csvfile>
//   d4m stats  --dir <path> --base <name>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "d4m/bench.h"
#include "d4m/error.h"
#include "d4m/parse.h"
#include "d4m/query.h"
#include "d4m/schema.h"
#include "d4m/store.h"
#include "d4m/triple_file.h"

namespace fs = std::filesystem;

namespace {

fs::path SchemaFile(const fs::path& dir, const std::string& base) {
  return dir / (base + ".schema");
}

void WriteSchemaFile(const fs::path& dir, const std::string& base, bool flip) {
  fs::path path = SchemaFile(dir, base);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw d4m::IoError(path, "cannot write schema file");
  out << "base = " << base << '\n'
      << "flip = " << (flip ? "true" : "false") << '\n';
}

bool ReadSchemaFlip(const fs::path& dir, const std::string& base) {
  fs::path path = SchemaFile(dir, base);
  std::ifstream in(path);
  if (!in) throw d4m::IoError(path, "no schema named " + base);
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with("flip = ")) return line.substr(7) == "true";
  }
  throw d4m::IoError(path, "schema file lacks a flip setting");
}

void RestoreIfPresent(d4m::Store& store, const fs::path& dir) {
  if (fs::is_directory(dir)) store.Restore(dir);
}

std::vector<std::string> ReadLines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw d4m::IoError(path, "cannot open input");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(std::move(line));
  return lines;
}

void PrintTriples(const d4m::AssocArray& a) {
  a.ForEach(
      [](const std::string& r, const std::string& c, const d4m::AssocValue& v) {
        std::cout << d4m::FormatTripleLine({r, c, v.ToString()}) << '\n';
      });
}

std::string RangeText(const d4m::TabletStat& s) {
  return "(" + (s.range_lo ? "'" + *s.range_lo + "'" : std::string("-inf")) +
         ", " + (s.range_hi ? "'" + *s.range_hi + "'" : std::string("+inf")) +
         (s.range_hi ? "]" : ")");
}

struct InitArgs {
  std::string base;
  std::string dir;
  bool flip = false;
  size_t presplits = 0;
};

int RunInit(const InitArgs& args) {
  d4m::Store store;
  RestoreIfPresent(store, args.dir);
  d4m::SchemaSplits splits;
  splits.edge = d4m::DecimalSplitKeys(args.presplits);
  splits.raw_text = splits.edge;
  d4m::InitSchema(store, args.base, args.flip, splits);
  store.Snapshot(args.dir);
  WriteSchemaFile(args.dir, args.base, args.flip);
  d4m::SchemaTableNames names = d4m::TableNamesFor(args.base);
  std::cout << "created " << names.edge << ", " << names.edge_t << ", "
            << names.degree << ", " << names.raw_text << " in " << args.dir
            << '\n';
  return 0;
}

struct IngestArgs {
  std::string dir;
  std::string base;
  std::string input;
  std::string format;
  std::string spec;
  size_t batch = 10000;
  size_t ingestors = 1;
};

int RunIngest(const IngestArgs& args) {
  d4m::Store store;
  store.Restore(args.dir);
  bool flip = ReadSchemaFlip(args.dir, args.base);
  d4m::QuadSchema q = d4m::AttachSchema(store, args.base, flip);

  d4m::RecordSpec spec = d4m::LoadRecordSpec(args.spec);
  if (spec.flip && *spec.flip != flip) {
    throw d4m::SchemaError("record spec flip setting disagrees with schema " +
                           args.base);
  }
  std::vector<std::string> lines = ReadLines(args.input);
  d4m::ParseOutput parsed;
  if (args.format == "jsonl") {
    parsed = d4m::ParseJsonLines(lines, spec);
  } else {
    spec.delimiter = args.format == "csv" ? ',' : '\t';
    parsed = d4m::ParseDelimited(lines, spec);
  }
  for (const d4m::LineError& e : parsed.errors) {
    std::cerr << args.input << ":" << e.line << ": " << e.message << '\n';
  }

  std::vector<d4m::ExplodedRecord> exploded;
  exploded.reserve(parsed.records.size());
  size_t rejected = parsed.errors.size();
  for (const d4m::RawRecord& r : parsed.records) {
    try {
      exploded.push_back(d4m::Explode(r, spec, flip));
    } catch (const d4m::ParseError& e) {
      std::cerr << args.input << ": " << e.what() << '\n';
      ++rejected;
    }
  }

  std::atomic<size_t> edge_entries{0};
  std::atomic<size_t> degree_mutations{0};
  std::mutex error_mu;
  std::string first_error;
  auto worker = [&](size_t w) {
    try {
      std::vector<d4m::ExplodedRecord> batch;
      for (size_t i = w; i < exploded.size(); i += args.ingestors) {
        batch.push_back(exploded[i]);
        if (batch.size() == args.batch ||
            i + args.ingestors >= exploded.size()) {
          d4m::IngestStats s = d4m::IngestBatch(q, batch);
          edge_entries += s.edge_entries;
          degree_mutations += s.degree_mutations;
          batch.clear();
        }
      }
    } catch (const std::exception& e) {
      std::lock_guard lock(error_mu);
      if (first_error.empty()) first_error = e.what();
    }
  };
  std::vector<std::thread> threads;
  for (size_t w = 0; w < args.ingestors; ++w) threads.emplace_back(worker, w);
  for (std::thread& t : threads) t.join();
  if (!first_error.empty()) throw d4m::Error(first_error);

  store.Snapshot(args.dir);
  double reduction = degree_mutations == 0
                         ? 0.0
                         : static_cast<double>(edge_entries) / degree_mutations;
  std::cout << "records " << exploded.size() << " rejected " << rejected
            << " edge_entries " << edge_entries << " degree_mutations "
            << degree_mutations << " reduction_factor " << reduction << '\n';
  return 0;
}

struct QueryArgs {
  std::string kind;
  std::string dir;
  std::string base;
  std::vector<std::string> keys;
};

int RunQuery(const QueryArgs& args) {
  d4m::Store store;
  store.Restore(args.dir);
  d4m::QuadSchema q =
      d4m::AttachSchema(store, args.base, ReadSchemaFlip(args.dir, args.base));
  if (args.kind == "row") {
    for (const std::string& k : args.keys)
      PrintTriples(d4m::GetRow(q, k).array);
  } else if (args.kind == "col") {
    for (const std::string& k : args.keys) {
      PrintTriples(d4m::GetByColumn(q, k).array);
    }
  } else if (args.kind == "and") {
    PrintTriples(d4m::AndQuery(q, args.keys).array);
  } else if (args.kind == "degree") {
    PrintTriples(d4m::DegreeOf(q, args.keys));
  } else {
    for (const std::string& k : args.keys) {
      if (auto text = d4m::GetRawText(q, k)) {
        std::cout << d4m::FormatTripleLine({k, "text", *text}) << '\n';
      }
    }
  }
  return 0;
}

struct BenchArgs {
  d4m::BenchConfig cfg;
  std::string keymode = "flipped";
  std::string report;
};

int RunBench(BenchArgs args) {
  args.cfg.key_mode = d4m::ParseKeyMode(args.keymode);
  d4m::BenchReport report = d4m::RunIngestBench(args.cfg);
  std::ofstream out(args.report, std::ios::trunc);
  if (!out) throw d4m::IoError(args.report, "cannot write report");
  d4m::WriteBenchCsv(out, report);
  std::cout << "edges " << report.edge_count << " entries "
            << report.total_entries << " elapsed_s " << report.elapsed_s
            << " mean_rate_eps " << report.mean_rate_eps << " degree_mutations "
            << report.degree_mutations << " verified "
            << (report.verified ? "yes" : "no") << '\n';
  std::cout << "edge tablet writes:";
  for (size_t w : report.tablet_write_counts) std::cout << ' ' << w;
  std::cout << '\n';
  if (!report.valid) {
    std::cerr << "benchmark invalid: " << report.error << '\n';
    return 1;
  }
  return 0;
}

int RunStats(const std::string& dir, const std::string& base) {
  d4m::Store store;
  store.Restore(dir);
  d4m::QuadSchema q = d4m::AttachSchema(store, base, ReadSchemaFlip(dir, base));
  for (const d4m::Table* t : {q.edge, q.edge_t, q.degree, q.raw_text}) {
    std::vector<d4m::TabletStat> stats = t->TabletStats();
    size_t nnz = 0;
    for (const auto& s : stats) nnz += s.entry_count;
    std::cout << t->name() << " nnz " << nnz << " tablets " << stats.size()
              << '\n';
    for (size_t i = 0; i < stats.size(); ++i) {
      std::cout << "  tablet " << i << ' ' << RangeText(stats[i]) << " entries "
                << stats[i].entry_count << " writes " << stats[i].write_count
                << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exploded-schema triple store tools"};
  app.require_subcommand(1);

  InitArgs init;
  auto* init_cmd = app.add_subcommand("init", "Create the four schema tables");
  init_cmd->add_option("--base", init.base, "Table name base")->required();
  init_cmd->add_option("--dir", init.dir, "Store directory")->required();
  init_cmd->add_flag("--flip", init.flip, "Flip row keys");
  init_cmd->add_option("--presplits", init.presplits,
                       "Split keys for the edge and text tables");

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse and ingest records");
  ingest_cmd->add_option("--dir", ingest.dir)->required();
  ingest_cmd->add_option("--base", ingest.base)->required();
  ingest_cmd->add_option("--input", ingest.input)->required();
  ingest_cmd->add_option("--format", ingest.format)
      ->required()
      ->check(CLI::IsMember({"tsv", "csv", "jsonl"}));
  ingest_cmd->add_option("--spec", ingest.spec)->required();
  ingest_cmd->add_option("--batch", ingest.batch)->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--ingestors", ingest.ingestors)
      ->check(CLI::PositiveNumber);

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "Query a schema");
  query_cmd->add_option("kind", query.kind)
      ->required()
      ->check(CLI::IsMember({"row", "col", "and", "degree", "text"}));
  query_cmd->add_option("--dir", query.dir)->required();
  query_cmd->add_option("--base", query.base)->required();
  query_cmd->add_option("--key", query.keys)->required()->take_all();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "RMAT ingest benchmark");
  bench_cmd->add_option("--scale", bench.cfg.rmat.scale)->required();
  bench_cmd->add_option("--edgefactor", bench.cfg.rmat.edgefactor)->required();
  bench_cmd->add_option("--seed", bench.cfg.rmat.seed)->required();
  bench_cmd->add_option("--ingestors", bench.cfg.ingestors)->required();
  bench_cmd->add_option("--batch", bench.cfg.batch_size)->required();
  bench_cmd->add_option("--presplits", bench.cfg.presplits)->required();
  bench_cmd->add_option("--keymode", bench.keymode)
      ->required()
      ->check(CLI::IsMember({"flipped", "sequential"}));
  bench_cmd->add_option("--report", bench.report)->required();

  std::string stats_dir;
  std::string stats_base;
  auto* stats_cmd = app.add_subcommand("stats", "Tablet statistics");
  stats_cmd->add_option("--dir", stats_dir)->required();
  stats_cmd->add_option("--base", stats_base)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*init_cmd) return RunInit(init);
    if (*ingest_cmd) return RunIngest(ingest);
    if (*query_cmd) return RunQuery(query);
    if (*bench_cmd) return RunBench(bench);
    if (*stats_cmd) return RunStats(stats_dir, stats_base);
  } catch (const std::exception& e) {
    std::cerr << "d4m: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
