#include "bebound/report.hpp"

#include <charconv>
#include <sstream>

#include "bebound/errors.hpp"

namespace bebound {

using nlohmann::json;

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::cdf_sandwich:
      return "cdf_sandwich";
    case BoundKind::tail_moment:
      return "tail_moment";
  }
  return "unknown";
}

BoundKind bound_kind_from_string(const std::string& s) {
  if (s == "cdf_sandwich") return BoundKind::cdf_sandwich;
  if (s == "tail_moment") return BoundKind::tail_moment;
  throw DomainError("unknown bound kind '" + s + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

json to_json(const BoundReport& r) {
  return json{
      {"kind", to_string(r.kind)},
      {"x", r.x},
      {"T", r.T},
      {"k", r.k},
      {"lower", r.lower},
      {"upper", r.upper},
      {"center", r.center},
      {"radius", r.radius},
      {"quadrature_error", r.quadrature_error},
      {"correction", r.correction},
      {"radius_clamped", r.radius_clamped},
      {"params", {{"p", r.params.p}, {"tol", r.params.tol}, {"filter", r.params.filter}, {"mode", r.params.mode}}},
  };
}

BoundReport bound_report_from_json(const json& j) {
  BoundReport r;
  r.kind = bound_kind_from_string(j.at("kind").get<std::string>());
  r.x = j.at("x").get<double>();
  r.T = j.at("T").get<double>();
  r.k = j.at("k").get<int>();
  r.lower = j.at("lower").get<double>();
  r.upper = j.at("upper").get<double>();
  r.center = j.at("center").get<double>();
  r.radius = j.at("radius").get<double>();
  r.quadrature_error = j.at("quadrature_error").get<double>();
  r.correction = j.at("correction").get<double>();
  r.radius_clamped = j.at("radius_clamped").get<bool>();
  const json& p = j.at("params");
  r.params.p = p.at("p").get<double>();
  r.params.tol = p.at("tol").get<double>();
  r.params.filter = p.at("filter").get<std::string>();
  r.params.mode = p.at("mode").get<std::string>();
  return r;
}

json to_json(const DeltaProfile& p) {
  json rows = json::array();
  for (std::size_t i = 0; i < p.z.size(); ++i) {
    rows.push_back({{"z", p.z[i]}, {"delta", p.delta[i]}, {"normalized", p.normalized[i]}});
  }
  return json{
      {"dist_id", p.dist_id},
      {"n", p.n},
      {"beta3", p.beta3},
      {"r_lyapunov", p.r_lyapunov},
      {"max_normalized", p.max_normalized},
      {"max_uniform_ratio", p.max_uniform_ratio},
      {"small_n", p.small_n},
      {"within_small_n_constant", p.within_small_n_constant},
      {"within_envelope", p.within_envelope},
      {"reference_constants",
       {{"uniform_iid_upper", be_constants::uniform_iid_upper},
        {"uniform_general_upper", be_constants::uniform_general_upper},
        {"uniform_general_alt", be_constants::uniform_general_alt},
        {"uniform_lower", be_constants::uniform_lower()},
        {"nagaev_small_n", be_constants::nagaev_small_n},
        {"nonuniform_envelope", be_constants::nonuniform_envelope}}},
      {"profile", rows},
  };
}

std::string to_csv(const DeltaProfile& p) {
  std::ostringstream os;
  os << "z,delta,normalized,r_L\n";
  for (std::size_t i = 0; i < p.z.size(); ++i) {
    os << format_double(p.z[i]) << ',' << format_double(p.delta[i]) << ',' << format_double(p.normalized[i]) << ','
       << format_double(p.r_lyapunov) << '\n';
  }
  return os.str();
}

json to_json(const FilterConstant& c) {
  return json{{"p", c.p}, {"value", c.value}, {"argmax_u", c.argmax_u}, {"attained_in_limit", c.attained_in_limit}};
}

json to_json(const FixCorrection& c) {
  return json{{"coefficient", c.coefficient}, {"exact_term", c.exact_term}, {"moment_min_term", c.moment_min_term}};
}

json to_json(const ERatBounds& b) {
  return json{
      {"exact", b.exact},
      {"chain1", b.chain1},
      {"chain2", b.chain2},
      {"chain3", b.chain3},
      {"normal_comparison_ub", b.normal_comparison_ub},
      {"normal_comparison_note", "externally sourced inequality"},
      {"chain_holds", b.chain_holds},
      {"normal_comparison_holds", b.normal_comparison_holds},
  };
}

json to_json(const NagaevResult& r) {
  json steps = json::array();
  for (const auto& s : r.derivation) {
    steps.push_back({{"claim", s.claim}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"holds", s.holds}});
  }
  return json{
      {"bound", r.bound},
      {"applicable", r.applicable},
      {"derivation", steps},
      {"derivation_closes", r.derivation_closes},
  };
}

}  // namespace bebound
