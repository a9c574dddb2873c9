#pragma once

#include <initializer_list>
#include <string>

#include <nlohmann/json.hpp>

#include "gumbelscale/regvar.hpp"
#include "gumbelscale/tail_model.hpp"

namespace gumbelscale {

using Json = nlohmann::ordered_json;

// Parsers are strict: unknown keys and wrong types raise DomainError.
RegVarFn regvar_from_json(const Json& j);
TailModel tail_model_from_json(const Json& j);

Json regvar_to_json(const RegVarFn& g);
Json tail_model_to_json(const TailModel& model);

// Number rounded to `digits` significant digits; integral values become
// JSON integers so they print without a decimal point.
Json rounded_number(double x, int digits = 11);

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                         const std::string& where);
double json_positive(const Json& j, const char* key, const std::string& where);
double json_real(const Json& j, const char* key, const std::string& where);

}  // namespace gumbelscale
