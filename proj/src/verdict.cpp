#include "phwell/verdict.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace phwell {

std::string_view to_string(Consensus c) {
  switch (c) {
    case Consensus::contraction: return "contraction";
    case Consensus::not_contraction: return "not_contraction";
    case Consensus::dissipative_only: return "dissipative_only";
    case Consensus::undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string_view to_string(UnitaryConsensus c) {
  switch (c) {
    case UnitaryConsensus::unitary: return "unitary";
    case UnitaryConsensus::not_unitary: return "not_unitary";
    case UnitaryConsensus::conservative_only: return "conservative_only";
    case UnitaryConsensus::undetermined: return "undetermined";
  }
  return "undetermined";
}

const ConditionResult* Verdict::find(std::string_view id) const {
  for (const auto& c : conditions) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const ConditionResult& Verdict::at(std::string_view id) const {
  const ConditionResult* c = find(id);
  if (c == nullptr) throw std::out_of_range("condition not evaluated: " + std::string(id));
  return *c;
}

bool agree(const Verdict& v, const std::vector<std::string>& ids, bool* value) {
  bool seen = false;
  bool common = false;
  for (const auto& id : ids) {
    const ConditionResult* c = v.find(id);
    if (c == nullptr || !c->applicable) continue;
    if (!seen) {
      seen = true;
      common = c->holds;
    } else if (c->holds != common) {
      return false;
    }
  }
  if (seen && value != nullptr) *value = common;
  return true;
}

namespace {

double report_value(double x) {
  if (!std::isfinite(x)) return x;
  if (std::abs(x) < 1e-13) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace

std::string to_json(const Verdict& v, int indent) {
  nlohmann::json conditions = nlohmann::json::object();
  for (const auto& c : v.conditions) {
    nlohmann::json diag = nlohmann::json::object();
    for (const auto& [name, value] : c.diagnostics) {
      const double r = report_value(value);
      if (std::isfinite(r)) {
        diag[name] = r;
      } else {
        diag[name] = std::isnan(r) ? "nan" : (r > 0 ? "inf" : "-inf");
      }
    }
    conditions[c.id] = {{"applicable", c.applicable},
                        {"holds", c.applicable ? nlohmann::json(c.holds) : nlohmann::json(nullptr)},
                        {"reason", c.reason},
                        {"diagnostics", diag}};
  }
  nlohmann::json out = {{"conditions", conditions},
                        {"consensus", std::string(to_string(v.consensus))},
                        {"unitary", std::string(to_string(v.unitary))},
                        {"discrepancy", v.discrepancy},
                        {"warnings", v.warnings}};
  return out.dump(indent);
}

std::string to_text(const Verdict& v) {
  std::ostringstream os;
  for (const auto& c : v.conditions) {
    os << c.id << "\t";
    if (!c.applicable) {
      os << "n/a";
    } else {
      os << (c.holds ? "holds" : "fails");
    }
    if (!c.reason.empty()) os << "\t(" << c.reason << ")";
    os << "\n";
  }
  os << "consensus\t" << to_string(v.consensus) << "\n";
  os << "unitary\t" << to_string(v.unitary) << "\n";
  os << "discrepancy\t" << (v.discrepancy ? "yes" : "no") << "\n";
  for (const auto& w : v.warnings) os << "warning\t" << w << "\n";
  return os.str();
}

}  // namespace phwell
