#include "hforge/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hforge {

namespace {

const ParseOptions kMachine{true};

Json table(const std::vector<Elem>& t, int n) {
  Json rows = Json::array();
  for (int i = 0; i < n; ++i) {
    Json row = Json::array();
    for (int k = 0; k < n; ++k) row.push_back(t[i * n + k]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Elem> untable(const Json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw std::invalid_argument(std::string(what) + ": wrong row count");
  std::vector<Elem> t;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument(std::string(what) + ": wrong column count");
    for (const auto& x : row) t.push_back(x.get<Elem>());
  }
  return t;
}

Json set_json(ElemSet s) {
  Json a = Json::array();
  for (Elem e : members(s)) a.push_back(e);
  return a;
}

ElemSet set_from(const Json& j) {
  ElemSet s = 0;
  for (const auto& x : j) {
    int e = x.get<int>();
    if (e < 0 || e >= kMaxCarrier) throw std::invalid_argument("designated element out of range");
    s |= ElemSet{1} << e;
  }
  return s;
}

}  // namespace

Json to_json(const Rule& r) {
  Json j;
  j["name"] = r.name;
  j["premises"] = Json::array();
  for (const auto& p : r.premises) j["premises"].push_back(print(p));
  j["conclusion"] = print(r.conclusion);
  j["bidirectional"] = r.bidirectional;
  j["provenance"] = r.provenance.str();
  return j;
}

Json to_json(const RuleSet& rs) {
  Json j;
  j["name"] = rs.name();
  j["count"] = rs.size();
  j["rules"] = Json::array();
  for (const auto& r : rs) j["rules"].push_back(to_json(r));
  return j;
}

Rule rule_from_json(const Json& j) {
  Rule r;
  r.name = j.at("name").get<std::string>();
  for (const auto& p : j.at("premises")) r.premises.push_back(parse_formula(p.get<std::string>(), kMachine));
  r.conclusion = parse_formula(j.at("conclusion").get<std::string>(), kMachine);
  r.bidirectional = j.value("bidirectional", false);
  if (r.bidirectional && r.premises.size() != 1)
    throw std::invalid_argument("bidirectional rule '" + r.name + "' needs one premise");
  if (j.contains("provenance")) r.provenance = Provenance::parse(j["provenance"].get<std::string>());
  return r;
}

RuleSet ruleset_from_json(const Json& j) {
  RuleSet rs(j.value("name", std::string()));
  for (const auto& r : j.at("rules")) {
    Rule x = rule_from_json(r);
    if (rs.find(x.name)) throw std::invalid_argument("duplicate rule name: " + x.name);
    rs.push(x);
  }
  return rs;
}

Json to_json(const FiniteAlgebra& a) {
  Json j;
  j["size"] = a.size;
  j["bot"] = a.bot;
  j["top"] = a.top;
  j["meet"] = table(a.meet, a.size);
  j["join"] = table(a.join, a.size);
  j["neg"] = a.neg;
  return j;
}

FiniteAlgebra algebra_from_json(const Json& j) {
  FiniteAlgebra a;
  a.size = j.at("size").get<int>();
  if (a.size < 1 || a.size > kMaxCarrier) throw std::invalid_argument("algebra size out of range");
  a.bot = j.at("bot").get<Elem>();
  a.top = j.at("top").get<Elem>();
  a.meet = untable(j.at("meet"), a.size, "meet");
  a.join = untable(j.at("join"), a.size, "join");
  a.neg = j.at("neg").get<std::vector<Elem>>();
  check_tables(a);
  return a;
}

Json to_json(const Matrix& m) {
  Json j;
  j["algebra"] = to_json(m.alg);
  j["designated"] = set_json(m.designated);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  Matrix m;
  m.alg = algebra_from_json(j.at("algebra"));
  m.designated = set_from(j.at("designated"));
  if (m.designated >> m.alg.size) throw std::invalid_argument("designated element out of range");
  return m;
}

Json to_json(const Witness& w) {
  Json j;
  j["target"] = w.target;
  j["direction"] = w.backward ? "bwd" : "fwd";
  j["algebra_index"] = w.algebra_index;
  j["algebra"] = to_json(w.algebra);
  j["designated"] = set_json(w.designated);
  Json v = Json::object();
  for (const auto& [k, e] : w.valuation) v[k] = e;
  j["valuation"] = v;
  return j;
}

Witness witness_from_json(const Json& j) {
  Witness w;
  w.target = j.value("target", std::string());
  w.backward = j.value("direction", std::string("fwd")) == "bwd";
  w.algebra_index = j.value("algebra_index", -1);
  w.algebra = algebra_from_json(j.at("algebra"));
  w.designated = set_from(j.at("designated"));
  for (const auto& [k, e] : j.at("valuation").items()) {
    Elem x = e.get<Elem>();
    if (x >= w.algebra.size) throw std::invalid_argument("valuation value out of range");
    w.valuation[k] = x;
  }
  return w;
}

Json congruence_json(const Congruence& c) {
  Json blocks = Json::array();
  Congruence n = normalize(c);
  int nb = 0;
  for (int b : n) nb = std::max(nb, b + 1);
  for (int b = 0; b < nb; ++b) {
    Json blk = Json::array();
    for (std::size_t x = 0; x < n.size(); ++x)
      if (n[x] == b) blk.push_back(x);
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

RuleSet load_ruleset_file(const std::string& path) {
  std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return ruleset_from_json(Json::parse(text));
  return parse_rules(text);
}

}  // namespace hforge
