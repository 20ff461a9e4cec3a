#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace isosym {

enum class Status { Holds, HoldsWithConstant, Diverges, Flagged, Indeterminate };

std::string to_string(Status s);
Status status_from_string(const std::string& s);
/// Severity used to rank statuses: holds < holds-with-constant < flagged and
/// indeterminate < diverges.
int severity(Status s);

using ParamValue = std::variant<double, std::string>;

struct Instance {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

/// LHS/RHS record of one inequality over a family of instances.
struct RatioCertificate {
  std::string inequality_id;
  std::map<std::string, ParamValue> params;
  std::string family;
  std::size_t n_grid = 0;
  double tol_assert = 1e-6;
  double tol_quad = 1e-10;
  std::vector<Instance> instances;
  double sup_ratio = 0.0;
  Status status = Status::Holds;
  /// Set when a hypothesis of the inequality fails for this instance.
  bool flagged = false;

  void add(std::string label, double lhs, double rhs);
  /// Recomputes sup_ratio and status from the instances.
  void finalize();
};

/// 0/0 -> 0, finite/0 -> +inf, inf/inf -> NaN (indeterminate).
double safe_ratio(double lhs, double rhs);

/// Concatenates instances of certificates with the same id and settings.
RatioCertificate merge(const std::vector<RatioCertificate>& certs);

/// Locale-independent shortest round-trip formatting with at most 17
/// significant digits; non-finite values print as inf, -inf, nan.
std::string format_number(double x);

nlohmann::json to_json(const RatioCertificate& c);
RatioCertificate certificate_from_json(const nlohmann::json& j);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_escape(const std::string& s);
std::string csv_header();
std::string to_csv(const std::vector<RatioCertificate>& certs);
std::string params_string(const std::map<std::string, ParamValue>& params);

}  // namespace isosym
