#include "isosym/certificate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "isosym/error.hpp"

namespace isosym {

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds:
      return "holds";
    case Status::HoldsWithConstant:
      return "holds-with-constant";
    case Status::Diverges:
      return "diverges";
    case Status::Flagged:
      return "flagged";
    case Status::Indeterminate:
      return "indeterminate";
  }
  return "";
}

Status status_from_string(const std::string& s) {
  for (auto st : {Status::Holds, Status::HoldsWithConstant, Status::Diverges, Status::Flagged,
                  Status::Indeterminate}) {
    if (to_string(st) == s) return st;
  }
  throw ParseError("unknown status '" + s + "'");
}

int severity(Status s) {
  switch (s) {
    case Status::Holds:
      return 0;
    case Status::HoldsWithConstant:
      return 1;
    case Status::Flagged:
    case Status::Indeterminate:
      return 2;
    case Status::Diverges:
      return 3;
  }
  return 3;
}

double safe_ratio(double lhs, double rhs) {
  if (std::isnan(lhs) || std::isnan(rhs)) return std::nan("");
  if (std::isinf(lhs) && std::isinf(rhs)) return std::nan("");
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : HUGE_VAL;
  return lhs / rhs;
}

void RatioCertificate::add(std::string label, double lhs, double rhs) {
  instances.push_back({std::move(label), lhs, rhs, safe_ratio(lhs, rhs)});
}

void RatioCertificate::finalize() {
  bool indeterminate = false;
  double sup = 0.0;
  for (const auto& in : instances) {
    if (std::isnan(in.ratio)) indeterminate = true;
    else sup = std::max(sup, in.ratio);
  }
  sup_ratio = sup;
  if (flagged) status = Status::Flagged;
  else if (indeterminate) status = Status::Indeterminate;
  else if (std::isinf(sup)) status = Status::Diverges;
  else if (sup <= 1.0 + tol_assert) status = Status::Holds;
  else status = Status::HoldsWithConstant;
}

RatioCertificate merge(const std::vector<RatioCertificate>& certs) {
  if (certs.empty()) throw EmptyInputError("merge: no certificates");
  RatioCertificate out = certs.front();
  out.instances.clear();
  for (const auto& c : certs) {
    if (c.inequality_id != out.inequality_id) throw DomainError("merge: mixed inequality ids");
    out.instances.insert(out.instances.end(), c.instances.begin(), c.instances.end());
    out.flagged = out.flagged || c.flagged;
  }
  out.finalize();
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

nlohmann::json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (s == "nan") return std::nan("");
  }
  throw ParseError("expected a number, got " + j.dump());
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}


}  // namespace

std::string params_string(const std::map<std::string, ParamValue>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k + '=';
    if (const auto* d = std::get_if<double>(&v)) out += format_number(*d);
    else out += std::get<std::string>(v);
  }
  return out;
}

nlohmann::json to_json(const RatioCertificate& c) {
  nlohmann::json j;
  j["inequality_id"] = c.inequality_id;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : c.params) {
    if (const auto* d = std::get_if<double>(&v)) params[k] = number_json(*d);
    else params[k] = std::get<std::string>(v);
  }
  j["params"] = params;
  j["family"] = c.family;
  j["n_grid"] = c.n_grid;
  j["tol"] = {{"assert", number_json(c.tol_assert)}, {"quad", number_json(c.tol_quad)}};
  nlohmann::json inst = nlohmann::json::array();
  for (const auto& in : c.instances) {
    inst.push_back({{"label", in.label},
                    {"lhs", number_json(in.lhs)},
                    {"rhs", number_json(in.rhs)},
                    {"ratio", number_json(in.ratio)}});
  }
  j["instances"] = inst;
  j["sup_ratio"] = number_json(c.sup_ratio);
  j["status"] = to_string(c.status);
  j["flagged"] = c.flagged;
  return j;
}

RatioCertificate certificate_from_json(const nlohmann::json& j) {
  RatioCertificate c;
  c.inequality_id = field(j, "inequality_id").get<std::string>();
  for (const auto& [k, v] : field(j, "params").items()) {
    if (v.is_number()) c.params[k] = v.get<double>();
    else if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "inf" || s == "-inf" || s == "nan") c.params[k] = number_from_json(v);
      else c.params[k] = s;
    } else {
      throw ParseError("parameter '" + k + "' must be a number or string");
    }
  }
  c.family = field(j, "family").get<std::string>();
  c.n_grid = field(j, "n_grid").get<std::size_t>();
  const auto& tol = field(j, "tol");
  c.tol_assert = number_from_json(field(tol, "assert"));
  c.tol_quad = number_from_json(field(tol, "quad"));
  for (const auto& in : field(j, "instances")) {
    Instance x;
    x.label = in.value("label", "");
    x.lhs = number_from_json(field(in, "lhs"));
    x.rhs = number_from_json(field(in, "rhs"));
    x.ratio = number_from_json(field(in, "ratio"));
    c.instances.push_back(std::move(x));
  }
  c.sup_ratio = number_from_json(field(j, "sup_ratio"));
  c.status = status_from_string(field(j, "status").get<std::string>());
  c.flagged = j.value("flagged", false);
  return c;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_header() {
  return "inequality_id,family,params,n_grid,tol_assert,tol_quad,instance,label,lhs,rhs,ratio,sup_ratio,status\n";
}

std::string to_csv(const std::vector<RatioCertificate>& certs) {
  std::string out = csv_header();
  for (const auto& c : certs) {
    const std::string prefix = csv_escape(c.inequality_id) + "," + csv_escape(c.family) + "," +
                               csv_escape(params_string(c.params)) + "," + std::to_string(c.n_grid) + "," +
                               format_number(c.tol_assert) + "," + format_number(c.tol_quad) + ",";
    const std::string suffix = "," + format_number(c.sup_ratio) + "," + to_string(c.status) + "\n";
    for (std::size_t i = 0; i < c.instances.size(); ++i) {
      const auto& in = c.instances[i];
      out += prefix + std::to_string(i) + "," + csv_escape(in.label) + "," + format_number(in.lhs) + "," +
             format_number(in.rhs) + "," + format_number(in.ratio) + suffix;
    }
  }
  return out;
}

}  // namespace isosym
