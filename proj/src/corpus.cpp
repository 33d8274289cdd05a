#include "hforge/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "hforge/calculi.hpp"

#ifndef HFORGE_CORPUS_DIR
#define HFORGE_CORPUS_DIR "corpus"
#endif

namespace hforge {

std::string default_corpus_dir() { return HFORGE_CORPUS_DIR; }

bool CorpusReport::ok() const { return !entries.empty() && failures() == 0; }

int CorpusReport::failures() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const CorpusEntry& e) { return !e.ok; }));
}

Derivation load_derivation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_derivation(ss.str());
}

CorpusReport corpus_replay(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".drv") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  CorpusReport rep;
  std::map<std::string, RuleSet> cache;
  for (const auto& p : files) {
    CorpusEntry ent;
    ent.file = p.filename().string();
    auto t0 = std::chrono::steady_clock::now();
    try {
      Derivation d = load_derivation(p.string());
      ent.name = d.name;
      ent.ruleset = d.ruleset;
      ent.steps = static_cast<int>(d.steps.size());
      auto it = cache.find(d.ruleset);
      if (it == cache.end()) it = cache.emplace(d.ruleset, resolve_ruleset(d.ruleset)).first;
      CheckResult r = check_derivation(it->second, d);
      ent.ok = r.ok();
      if (!ent.ok) ent.error = r.error->str();
    } catch (const std::exception& e) {
      ent.error = e.what();
    }
    ent.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep.entries.push_back(std::move(ent));
  }
  return rep;
}

}  // namespace hforge
