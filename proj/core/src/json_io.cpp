#include "gumbelscale/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <vector>

#include "gumbelscale/errors.hpp"

namespace gumbelscale {

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!j.is_object()) throw DomainError(where + ": expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) throw DomainError(where + ": unknown key '" + item.key() + "'");
  }
}

double json_real(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw DomainError(where + ": missing '" + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw DomainError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

double json_positive(const Json& j, const char* key, const std::string& where) {
  const double v = json_real(j, key, where);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(where + ": '" + key + "' must be positive");
  }
  return v;
}

namespace {

std::vector<double> number_array(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw DomainError(where + ": '" + key + "' must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw DomainError(where + ": '" + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw DomainError(where + ": '" + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

SlowlyVarying slowly_varying_from_json(const Json& j) {
  const std::string where = "slowly_varying";
  const std::string kind = string_field(j, "kind", where);
  if (kind == "const") {
    reject_unknown_keys(j, {"kind"}, where);
    return SlowlyVarying::constant();
  }
  if (kind == "logpow") {
    reject_unknown_keys(j, {"kind", "beta"}, where);
    return SlowlyVarying::log_power(json_real(j, "beta", where));
  }
  if (kind == "tabulated") {
    reject_unknown_keys(j, {"kind", "knots", "values"}, where);
    return SlowlyVarying::tabulated(number_array(j, "knots", where),
                                    number_array(j, "values", where));
  }
  throw DomainError(where + ": unknown kind '" + kind + "'");
}

}  // namespace

RegVarFn regvar_from_json(const Json& j) {
  const std::string where = "regvar";
  reject_unknown_keys(j, {"index", "scale", "slowly_varying"}, where);
  const double index = json_real(j, "index", where);
  const double scale = j.contains("scale") ? json_positive(j, "scale", where) : 1.0;
  SlowlyVarying sv = j.contains("slowly_varying") ? slowly_varying_from_json(j.at("slowly_varying"))
                                                  : SlowlyVarying::constant();
  return RegVarFn(index, scale, std::move(sv));
}

TailModel tail_model_from_json(const Json& j) {
  const std::string where = "tail model";
  const std::string variant = string_field(j, "variant", where);
  if (variant == "weibullian") {
    reject_unknown_keys(j, {"variant", "g", "L", "p"}, where);
    RegVarFn g = j.contains("g") ? regvar_from_json(j.at("g")) : RegVarFn::unit();
    return TailModel::weibullian(std::move(g), json_positive(j, "L", where),
                                 json_positive(j, "p", where));
  }
  if (variant == "logweibullian") {
    const std::string family = string_field(j, "family", where);
    if (family == "normal") {
      reject_unknown_keys(j, {"variant", "family"}, where);
      return TailModel::standard_normal();
    }
    if (family == "half_normal") {
      reject_unknown_keys(j, {"variant", "family"}, where);
      return TailModel::half_normal();
    }
    if (family == "stretched") {
      reject_unknown_keys(j, {"variant", "family", "L", "p", "kappa", "q"}, where);
      return TailModel::stretched(json_positive(j, "L", where), json_positive(j, "p", where),
                                  json_real(j, "kappa", where), json_real(j, "q", where));
    }
    throw DomainError(where + ": unknown log-Weibullian family '" + family + "'");
  }
  if (variant == "bounded") {
    const std::string family = string_field(j, "family", where);
    if (family == "point_mass") {
      reject_unknown_keys(j, {"variant", "family"}, where);
      return TailModel::point_mass_one();
    }
    if (family == "uniform") {
      reject_unknown_keys(j, {"variant", "family"}, where);
      return TailModel::uniform();
    }
    if (family == "beta") {
      reject_unknown_keys(j, {"variant", "family", "a", "b"}, where);
      return TailModel::beta(json_positive(j, "a", where), json_positive(j, "b", where));
    }
    if (family == "discrete") {
      reject_unknown_keys(j, {"variant", "family", "values", "probs"}, where);
      return TailModel::discrete(number_array(j, "values", where),
                                 number_array(j, "probs", where));
    }
    throw DomainError(where + ": unknown bounded family '" + family + "'");
  }
  throw DomainError(where + ": unknown variant '" + variant + "'");
}

Json rounded_number(double x, int digits) {
  if (!std::isfinite(x)) {
    return std::isnan(x) ? Json("nan") : Json(x > 0 ? "inf" : "-inf");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  const double r = std::strtod(buf, nullptr);
  if (r == std::trunc(r) && std::abs(r) < 9.0e15) return Json(static_cast<long long>(r));
  return Json(r);
}

Json regvar_to_json(const RegVarFn& g) {
  Json j;
  j["index"] = g.index();
  j["scale"] = g.scale();
  const auto& sv = g.slowly_varying();
  Json s;
  switch (sv.kind()) {
    case SlowlyVarying::Kind::kConstant:
      s["kind"] = "const";
      break;
    case SlowlyVarying::Kind::kLogPower:
      s["kind"] = "logpow";
      s["beta"] = sv.beta();
      break;
    case SlowlyVarying::Kind::kTabulated:
      s["kind"] = "tabulated";
      s["knots"] = sv.knots();
      s["values"] = sv.values();
      break;
  }
  j["slowly_varying"] = std::move(s);
  return j;
}

Json tail_model_to_json(const TailModel& model) {
  Json j;
  switch (model.variant()) {
    case TailModel::Variant::kWeibullian: {
      const auto& w = model.weibullian_params();
      j["variant"] = "weibullian";
      j["g"] = regvar_to_json(w.g);
      j["L"] = w.L;
      j["p"] = w.p;
      break;
    }
    case TailModel::Variant::kLogWeibullian: {
      const auto& w = model.log_weibullian_params();
      j["variant"] = "logweibullian";
      switch (w.family) {
        case LogWeibullianTail::Family::kNormal: j["family"] = "normal"; break;
        case LogWeibullianTail::Family::kHalfNormal: j["family"] = "half_normal"; break;
        case LogWeibullianTail::Family::kStretched:
          j["family"] = "stretched";
          j["L"] = w.L;
          j["p"] = w.p;
          j["kappa"] = w.kappa;
          j["q"] = w.q;
          break;
        case LogWeibullianTail::Family::kCustom:
          j["family"] = "custom";
          j["L"] = w.L;
          j["p"] = w.p;
          break;
      }
      break;
    }
    case TailModel::Variant::kBounded: {
      const auto& b = model.bounded_params();
      j["variant"] = "bounded";
      switch (b.family) {
        case BoundedScaler::Family::kPointMass: j["family"] = "point_mass"; break;
        case BoundedScaler::Family::kUniform: j["family"] = "uniform"; break;
        case BoundedScaler::Family::kBeta:
          j["family"] = "beta";
          j["a"] = b.a;
          j["b"] = b.b;
          break;
        case BoundedScaler::Family::kDiscrete:
          j["family"] = "discrete";
          j["values"] = b.values;
          j["probs"] = b.probs;
          break;
      }
      break;
    }
  }
  return j;
}

}  // namespace gumbelscale
