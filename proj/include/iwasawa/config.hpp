#pragma once

// JSON experiment configs: rings, polynomials and module payloads.

#include <json.hpp>
#include <string>
#include <vector>

#include "iwasawa/module.hpp"

namespace iwasawa::config {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "iwasawa-config/1";

// Throws ConfigError unless obj is an object whose keys are all in `allowed`.
void require_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& where);

long long get_int(const Json& obj, const std::string& key, const std::string& where);
long long get_int(const Json& obj, const std::string& key, const std::string& where, long long fallback);
std::vector<int> get_ints(const Json& obj, const std::string& key, const std::string& where,
                          std::vector<int> fallback = {});

// {"p": 3, "e": 1, "f": 2, "N": 10}
RingPtr parse_ring(const Json& j);
// [{"exp": [1, 0], "coeff": 1}, {"exp": [0, 0], "coeff": [0, 1], "pi": 1}]
AlgebraElt parse_polynomial(const Json& j, const RingPtr& ring, int vars);
// {"type": "free" | "cyclic" | "elementary" | "generic" | "zero" | "sum", ...}
ModulePresentation parse_module(const Json& j, const RingPtr& ring, int vars);
IntMatrix parse_matrix(const Json& j, const std::string& where);

// Parses the top level and checks the schema tag.
Json load(const std::string& text);

}  // namespace iwasawa::config
