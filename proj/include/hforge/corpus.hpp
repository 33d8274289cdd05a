#pragma once

#include <string>
#include <vector>

#include "hforge/derivation.hpp"

namespace hforge {

// Source-tree corpus directory, baked in at build time.
std::string default_corpus_dir();

struct CorpusEntry {
  std::string file;
  std::string name;
  std::string ruleset;
  int steps = 0;
  bool ok = false;
  std::string error;
  double millis = 0;
};

struct CorpusReport {
  std::vector<CorpusEntry> entries;  // sorted by file name
  bool ok() const;
  int failures() const;
};

// Checks every *.drv file in dir against its declared rule set and goal.
CorpusReport corpus_replay(const std::string& dir = default_corpus_dir());

Derivation load_derivation(const std::string& path);

}  // namespace hforge
