#include "fqzeta/json_io.hpp"

#include <json.hpp>

#include "fqzeta/parse.hpp"

namespace fqz {

namespace {

nlohmann::json laurent_json(const LaurentNumber& v, i64 grade) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (auto it = v.window().rbegin(); it != v.window().rend(); ++it)
    coeffs.push_back({it->first, format_fq(*v.field(), it->second)});
  nlohmann::json j{{"schema", 1},
                   {"q", v.field()->q()},
                   {"coeffs", coeffs},
                   {"grade", grade}};
  if (v.is_exact())
    j["err_deg"] = nullptr;
  else
    j["err_deg"] = v.err_deg();
  return j;
}

std::string dump(const nlohmann::json& j, int indent) { return j.dump(indent); }

}  // namespace

std::string laurent_to_json(const LaurentNumber& v, int indent) {
  return dump(laurent_json(v, 0), indent);
}

std::string graded_to_json(const GradedNumber& v, int indent) {
  return dump(laurent_json(v.unit(), v.grade()), indent);
}

std::string poly_to_json(const Poly& p, int indent) {
  return dump(laurent_json(LaurentNumber::from_poly(p), 0), indent);
}

std::string digest_hex(const std::string& canonical) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace fqz
