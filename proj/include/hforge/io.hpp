#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hforge/algebra.hpp"
#include "hforge/rule.hpp"
#include "hforge/semantics.hpp"

namespace hforge {

using Json = nlohmann::ordered_json;

// Rule sets keep their stored order; reserved variable names are accepted.
Json to_json(const Rule& r);
Json to_json(const RuleSet& rs);
Rule rule_from_json(const Json& j);
RuleSet ruleset_from_json(const Json& j);

// {"size", "bot", "top", "meet": [[..]], "join": [[..]], "neg": [..]}
Json to_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const Json& j);  // runs check_tables

// {"algebra": {...}, "designated": [..]}
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const Witness& w);
Witness witness_from_json(const Json& j);

Json congruence_json(const Congruence& c);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Rule set file: JSON when it starts with '{', text rules otherwise.
RuleSet load_ruleset_file(const std::string& path);

}  // namespace hforge
