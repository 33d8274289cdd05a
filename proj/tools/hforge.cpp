// hforge: batch entry point. Exit codes: 0 ok, 1 negative verdict, 2 usage or
// bad input, 3 internal error.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "hforge/algebra.hpp"
#include "hforge/calculi.hpp"
#include "hforge/corpus.hpp"
#include "hforge/derivation.hpp"
#include "hforge/io.hpp"
#include "hforge/prover.hpp"
#include "hforge/search.hpp"
#include "hforge/semantics.hpp"

using namespace hforge;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kNegative = 1, kUsage = 2, kInternal = 3;

struct Global {
  int jobs = 0;
  int max = 4;
  std::string format = "text";
  std::string out;
  bool json() const { return format == "json"; }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_file(g.out, text.empty() || text.back() == '\n' ? text : text + "\n");
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

RuleSet load_ruleset(const std::string& spec) {
  if (fs::is_regular_file(spec)) return load_ruleset_file(spec);
  return resolve_ruleset(spec);
}

std::optional<Variety> variety_of_id(const std::string& id) {
  auto slash = id.find('/');
  if (slash == std::string::npos) return std::nullopt;
  try {
    return Variety::parse(id.substr(0, slash));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string file_safe(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return s;
}

// Enumerated algebras, read from or written to $HILBERT_FORGE_CACHE when set.
std::vector<FiniteAlgebra> algebras_for(const Variety& v, int max, bool trivial) {
  EnumerationSpec spec{v, max, trivial};
  const char* cache = std::getenv("HILBERT_FORGE_CACHE");
  if (!cache || !*cache) return enumerate_algebras(spec);
  fs::path file = fs::path(cache) / (file_safe(v.name()) + "-le" + std::to_string(max) + (trivial ? "-t" : "") + ".json");
  if (fs::is_regular_file(file)) {
    std::vector<FiniteAlgebra> out;
    const Json doc = Json::parse(read_file(file.string()));
    for (const auto& a : doc.at("algebras")) out.push_back(algebra_from_json(a));
    return out;
  }
  auto algs = enumerate_algebras(spec);
  Json j;
  j["class"] = v.name();
  j["max"] = max;
  j["include_trivial"] = trivial;
  j["algebras"] = Json::array();
  for (const auto& a : algs) j["algebras"].push_back(to_json(a));
  fs::create_directories(cache);
  write_file(file.string(), dump(j));
  return algs;
}

std::string algebra_text(const FiniteAlgebra& a) {
  std::ostringstream o;
  auto row = [&](const std::vector<Elem>& t, int r) {
    for (int k = 0; k < a.size; ++k) o << (k ? " " : "") << int(t[r * a.size + k]);
  };
  o << "  size " << a.size << ", bot " << int(a.bot) << ", top " << int(a.top) << "\n  neg  ";
  for (int x = 0; x < a.size; ++x) o << (x ? " " : "") << int(a.neg[x]);
  o << "\n";
  for (int r = 0; r < a.size; ++r) {
    o << "  meet ";
    row(a.meet, r);
    o << " | join ";
    row(a.join, r);
    o << "\n";
  }
  return o.str();
}

std::string witness_text(const Witness& w) {
  std::ostringstream o;
  o << "witness for " << w.target << (w.backward ? " (bwd)" : "") << "\n";
  o << "algebra #" << w.algebra_index << "\n" << algebra_text(w.algebra);
  o << "designated " << element_set_str(w.designated) << "\nvaluation";
  for (const auto& [k, v] : w.valuation) o << " " << k << "=" << int(v);
  o << "\n";
  return o.str();
}

std::string blocks_text(const Congruence& c) {
  std::string s;
  for (const auto& blk : congruence_json(c)) {
    s += "{";
    bool first = true;
    for (const auto& x : blk) {
      if (!first) s += ",";
      first = false;
      s += std::to_string(x.get<int>());
    }
    s += "}";
  }
  return s;
}

// ---- compile ---------------------------------------------------------------

struct CompileOpts {
  std::string preset = "SDM";
  std::string equations;
  std::string target = "sdm";
  std::vector<std::string> ext;
};

int cmd_compile(const Global& g, const CompileOpts& o) {
  RuleSet rs;
  if (o.equations.empty()) {
    std::string id = o.preset + "/" + o.target;
    if (o.target.rfind("ockham:", 0) == 0) {
      int m = 0, n = 0;
      if (std::sscanf(o.target.c_str(), "ockham:%d:%d", &m, &n) != 2) throw UsageError("target ockham:<m>:<n>");
      id = "Berman(" + std::to_string(m) + "," + std::to_string(n) + ")/ockham";
    }
    for (const auto& e : o.ext) id += "+" + e;
    rs = resolve_ruleset(id);
  } else {
    auto eqs = parse_equations(read_file(o.equations));
    if (!o.ext.empty()) throw UsageError("--ext needs --preset");
    if (o.target == "sdm") {
      std::vector<std::string> warnings;
      rs = sdm_calculus(eqs, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    } else if (o.target == "sdm-reduced") {
      rs = sdm_calculus_reduced(eqs);
    } else if (o.target == "eq") {
      rs = rules_from_equations(eqs);
    } else if (o.target.rfind("omega:", 0) == 0) {
      rs = closure_upto(rules_from_equations(eqs), std::stoi(o.target.substr(6)));
      rs.add_all(builtin(Builtin::RF));
    } else if (o.target == "assertional") {
      rs = sdm_calculus(eqs);
      rs.add_all(builtin(Builtin::RTop));
    } else {
      throw UsageError("target '" + o.target + "' is not available for equation files");
    }
    rs.set_name(o.equations + "/" + o.target);
  }
  std::string summary = rs.name() + ": " + std::to_string(rs.size()) + " rules";
  if (g.json()) {
    emit(g, dump(to_json(rs)));
  } else {
    emit(g, "-- " + summary + "\n" + print_rules(rs));
  }
  if (!g.out.empty() || g.json()) std::cerr << summary << "\n";
  return kOk;
}

// ---- prove / check ------------------------------------------------------------

struct ProveOpts {
  std::string ruleset;
  std::string goal;
  SearchBudget budget;
};

int cmd_prove(const Global& g, const ProveOpts& o) {
  RuleSet rs = load_ruleset(o.ruleset);
  Consecution c = parse_consecution(o.goal);
  ProveResult r = prove(rs, c, o.budget);
  r.derivation.ruleset = fs::is_regular_file(o.ruleset) ? std::string() : o.ruleset;
  if (g.json()) {
    Json j;
    j["goal"] = print_consecution(c);
    j["verdict"] = r.found ? "proved" : "exhausted";
    j["steps"] = r.steps;
    j["depth"] = r.depth;
    if (!r.found) j["budget"] = r.exhausted;
    if (r.found) j["script"] = print_derivation(r.derivation);
    emit(g, dump(j));
  } else if (r.found) {
    emit(g, print_derivation(r.derivation));
  } else {
    emit(g, "exhausted (" + r.exhausted + ") after " + std::to_string(r.steps) + " formulas, depth " +
                std::to_string(r.depth) + "\n");
  }
  return r.found ? kOk : kNegative;
}

int cmd_check(const Global& g, const std::string& script, const std::string& ruleset) {
  Derivation d = load_derivation(script);
  std::string id = ruleset.empty() ? d.ruleset : ruleset;
  if (id.empty()) throw UsageError("script names no rule set; pass --ruleset");
  CheckResult r = check_derivation(load_ruleset(id), d);
  if (g.json()) {
    Json j;
    j["script"] = script;
    j["verdict"] = r.ok() ? "ok" : "error";
    if (!r.ok()) {
      j["step"] = r.error->step;
      j["reason"] = r.error->str();
    }
    emit(g, dump(j));
  } else {
    emit(g, r.ok() ? script + ": ok (" + std::to_string(d.steps.size()) + " steps)\n" : script + ": " + r.error->str() + "\n");
  }
  return r.ok() ? kOk : kNegative;
}

// ---- refute / sound ---------------------------------------------------------------

struct SemOpts {
  std::string cls;
  std::string mode = "filter";
  bool trivial = false;
};

Variety class_or(const std::string& cls, const std::string& id) {
  if (!cls.empty()) return Variety::parse(cls);
  if (auto v = variety_of_id(id)) return *v;
  throw UsageError("--class is required");
}

int cmd_refute(const Global& g, const SemOpts& s, const std::string& rule_file, const std::string& goal) {
  if (rule_file.empty() == goal.empty()) throw UsageError("give exactly one of --rule and --goal");
  Variety v = class_or(s.cls, "");
  SemanticsMode mode = SemanticsMode::parse(s.mode);
  auto algs = algebras_for(v, g.max, s.trivial);
  std::optional<Witness> w;
  if (!goal.empty()) {
    Consecution c = parse_consecution(goal);
    Verdict verdict = consecution_sound(c, algs, mode);
    if (!verdict.ok) {
      w = verdict.witness;
      w->target = print_consecution(c);
    }
  } else {
    RuleSet rs = load_ruleset_file(rule_file);
    for (const auto& r : rs) {
      Verdict verdict = rule_sound(r, algs, mode);
      if (!verdict.ok) {
        w = verdict.witness;
        break;
      }
    }
  }
  if (!w) {
    std::string msg = "no countermodel in " + v.name() + " up to size " + std::to_string(g.max) + " (" + mode.name() + ")\n";
    if (g.json()) {
      Json j;
      j["verdict"] = "none";
      j["class"] = v.name();
      j["max"] = g.max;
      j["mode"] = mode.name();
      emit(g, dump(j));
    } else {
      emit(g, msg);
    }
    return kNegative;
  }
  if (g.json() || !g.out.empty()) {
    emit(g, dump(to_json(*w)));
  } else {
    emit(g, witness_text(*w));
  }
  return kOk;
}

int cmd_sound(const Global& g, const SemOpts& s, const std::string& ruleset) {
  RuleSet rs = load_ruleset(ruleset);
  Variety v = class_or(s.cls, ruleset);
  SemanticsMode mode = SemanticsMode::parse(s.mode);
  auto algs = algebras_for(v, g.max, s.trivial);
  int failures = 0;
  Json rows = Json::array();
  std::string text;
  for (const auto& r : rs) {
    Verdict verdict = rule_sound(r, algs, mode);
    if (!verdict.ok) ++failures;
    if (g.json()) {
      Json j;
      j["rule"] = r.name;
      j["verdict"] = verdict.ok ? "pass" : "fail";
      if (!verdict.ok) j["witness"] = to_json(*verdict.witness);
      rows.push_back(std::move(j));
    } else if (!verdict.ok) {
      text += "FAIL " + print_rule(r) + "\n" + witness_text(*verdict.witness);
    }
  }
  std::string summary = std::to_string(rs.size() - failures) + "/" + std::to_string(rs.size()) + " rules sound over " +
                        std::to_string(algs.size()) + " " + v.name() + " algebras up to size " + std::to_string(g.max) +
                        " (" + mode.name() + ")";
  if (g.json()) {
    Json j;
    j["ruleset"] = rs.name();
    j["class"] = v.name();
    j["mode"] = mode.name();
    j["max"] = g.max;
    j["algebras"] = algs.size();
    j["failures"] = failures;
    j["rules"] = rows;
    emit(g, dump(j));
  } else {
    emit(g, text + summary + "\n");
  }
  return failures ? kNegative : kOk;
}

// ---- enum / leibniz / corpus ------------------------------------------------------

int cmd_enum(const Global& g, const SemOpts& s, const std::string& seed) {
  Variety v = class_or(s.cls, "");
  auto algs = algebras_for(v, g.max, s.trivial);
  if (!seed.empty()) {
    fs::create_directories(seed);
    char name[32];
    for (std::size_t i = 0; i < algs.size(); ++i) {
      std::snprintf(name, sizeof name, "alg-%04zu.json", i);
      write_file((fs::path(seed) / name).string(), dump(to_json(algs[i])));
    }
  }
  if (g.json()) {
    Json j;
    j["class"] = v.name();
    j["max"] = g.max;
    j["count"] = algs.size();
    j["algebras"] = Json::array();
    for (const auto& a : algs) j["algebras"].push_back(to_json(a));
    emit(g, dump(j));
  } else {
    std::string text;
    for (std::size_t i = 0; i < algs.size(); ++i) text += "#" + std::to_string(i) + "\n" + algebra_text(algs[i]);
    emit(g, text + std::to_string(algs.size()) + " " + v.name() + " algebras up to size " + std::to_string(g.max) + "\n");
  }
  return kOk;
}

int cmd_leibniz(const Global& g, const std::string& file, bool compare) {
  Matrix m = matrix_from_json(Json::parse(read_file(file)));
  if (!is_filter(m.alg, m.designated) && compare) throw UsageError("--compare-sdm needs a lattice filter");
  Congruence om = leibniz(m);
  Json j;
  j["designated"] = element_set_str(m.designated);
  j["leibniz"] = congruence_json(om);
  j["reduced"] = is_identity(om);
  std::string text = "leibniz " + blocks_text(om) + (is_identity(om) ? " (reduced)" : "") + "\n";
  int rc = kOk;
  if (compare) {
    Congruence sd = leibniz_sdm(m);
    j["leibniz_sdm"] = congruence_json(sd);
    std::optional<std::pair<int, int>> diff;
    for (int x = 0; x < m.alg.size && !diff; ++x)
      for (int y = x + 1; y < m.alg.size && !diff; ++y)
        if ((om[x] == om[y]) != (sd[x] == sd[y])) diff = {x, y};
    j["equal"] = !diff;
    text += "closed form " + blocks_text(sd) + "\n";
    if (diff) {
      j["first_difference"] = {diff->first, diff->second};
      text += "differ at (" + std::to_string(diff->first) + "," + std::to_string(diff->second) + ")\n";
      rc = kNegative;
    } else {
      text += "equal\n";
    }
  }
  emit(g, g.json() ? dump(j) : text);
  return rc;
}

int cmd_corpus(const Global& g, const std::string& dir) {
  CorpusReport rep = corpus_replay(dir.empty() ? default_corpus_dir() : dir);
  if (g.json()) {
    Json j = Json::array();
    for (const auto& e : rep.entries) {
      Json r;
      r["file"] = e.file;
      r["name"] = e.name;
      r["ruleset"] = e.ruleset;
      r["steps"] = e.steps;
      r["verdict"] = e.ok ? "ok" : "error";
      if (!e.ok) r["reason"] = e.error;
      j.push_back(std::move(r));
    }
    emit(g, dump(j));
  } else {
    std::string text;
    for (const auto& e : rep.entries)
      text += (e.ok ? "ok    " : "FAIL  ") + e.file + " (" + std::to_string(e.steps) + " steps)" +
              (e.ok ? "" : ": " + e.error) + "\n";
    text += std::to_string(rep.entries.size() - rep.failures()) + "/" + std::to_string(rep.entries.size()) + " scripts ok\n";
    emit(g, text);
  }
  return rep.ok() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert calculi for distributive lattices with negation"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--jobs", g.jobs, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--max", g.max, "algebra size bound")->check(CLI::Range(1, kEnumerationCap));
  app.add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", g.out, "write the result here instead of stdout");

  CompileOpts co;
  auto* compile = app.add_subcommand("compile", "generate a calculus");
  compile->add_option("--preset", co.preset, "DN, SDM, DM, PL, O, B or Berman(m,n)");
  compile->add_option("--equations", co.equations, "equation file")->check(CLI::ExistingFile);
  compile->add_option("--target", co.target, "sdm, sdm-reduced, eq, omega:<n>, ockham, ockham:<m>:<n>, assertional");
  compile->add_option("--ext", co.ext, "extensions: ctx, wxc, top, pl, g<N>");

  ProveOpts po;
  auto* prove_cmd = app.add_subcommand("prove", "bounded proof search");
  prove_cmd->add_option("--ruleset", po.ruleset, "rule set id or file")->required();
  prove_cmd->add_option("--goal", po.goal, "consecution 'f1, f2 |- g'")->required();
  prove_cmd->add_option("--max-size", po.budget.max_formula_size)->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-steps", po.budget.max_steps)->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-depth", po.budget.max_depth)->check(CLI::PositiveNumber);

  std::string script, check_rs;
  auto* check = app.add_subcommand("check", "check a derivation script");
  check->add_option("script", script)->required()->check(CLI::ExistingFile);
  check->add_option("--ruleset", check_rs, "overrides the script's rule set");

  SemOpts so;
  std::string rule_file, goal, sound_rs, seed, matrix, corpus_dir;
  bool compare = false;
  auto sem_flags = [&](CLI::App* c) {
    c->add_option("--class", so.cls, "variety of the enumerated algebras");
    c->add_option("--mode", so.mode, "filter or assertional")->check(CLI::IsMember({"filter", "assertional"}));
    c->add_flag("--include-trivial", so.trivial, "also enumerate the one-element algebra");
  };
  auto* refute = app.add_subcommand("refute", "search for a countermodel");
  refute->add_option("--rule", rule_file, "rule file")->check(CLI::ExistingFile);
  refute->add_option("--goal", goal, "consecution 'f1, f2 |- g'");
  sem_flags(refute);
  auto* sound = app.add_subcommand("sound", "check every rule of a rule set");
  sound->add_option("--ruleset", sound_rs, "rule set id or file")->required();
  sem_flags(sound);
  auto* enm = app.add_subcommand("enum", "enumerate algebras of a variety");
  sem_flags(enm);
  enm->add_option("--seed-corpus", seed, "write each algebra to this directory");
  auto* leib = app.add_subcommand("leibniz", "Leibniz congruence of a matrix");
  leib->add_option("--matrix", matrix, "matrix JSON file")->required()->check(CLI::ExistingFile);
  leib->add_flag("--compare-sdm", compare, "compare with the closed form for SDM algebras");
  auto* corpus = app.add_subcommand("corpus", "replay the derivation corpus");
  corpus->add_option("--dir", corpus_dir, "corpus directory");

  for (auto* c : app.get_subcommands({})) c->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (g.jobs > 0) omp_set_num_threads(g.jobs);

  try {
    if (*compile) return cmd_compile(g, co);
    if (*prove_cmd) return cmd_prove(g, po);
    if (*check) return cmd_check(g, script, check_rs);
    if (*refute) return cmd_refute(g, so, rule_file, goal);
    if (*sound) return cmd_sound(g, so, sound_rs);
    if (*enm) return cmd_enum(g, so, seed);
    if (*leib) return cmd_leibniz(g, matrix, compare);
    if (*corpus) return cmd_corpus(g, corpus_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
