#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace phwell {

/// Outcome of one algebraic condition. `holds` is meaningful only when
/// `applicable`; `reason` explains inapplicability or the failing conjunct.
struct ConditionResult {
  std::string id;
  bool applicable = true;
  bool holds = false;
  std::string reason;
  std::map<std::string, double> diagnostics;
};

enum class Consensus { contraction, not_contraction, dissipative_only, undetermined };
enum class UnitaryConsensus { unitary, not_unitary, conservative_only, undetermined };

std::string_view to_string(Consensus c);
std::string_view to_string(UnitaryConsensus c);

struct Verdict {
  std::vector<ConditionResult> conditions;
  Consensus consensus = Consensus::undetermined;
  UnitaryConsensus unitary = UnitaryConsensus::undetermined;
  bool discrepancy = false;
  std::vector<std::string> warnings;

  /// nullptr when the id was not evaluated.
  const ConditionResult* find(std::string_view id) const;
  const ConditionResult& at(std::string_view id) const;

  bool is_contraction() const { return consensus == Consensus::contraction; }
  bool is_unitary() const { return unitary == UnitaryConsensus::unitary; }
};

/// True iff every applicable result among `ids` reports the same `holds`.
/// Writes the common value to `value` when at least one is applicable.
bool agree(const Verdict& v, const std::vector<std::string>& ids, bool* value = nullptr);

/// JSON report: {"conditions": {id: {applicable, holds, reason, diagnostics}},
/// "consensus", "unitary", "discrepancy", "warnings"}. Diagnostics are
/// rounded to 10 significant digits and values below 1e-13 in magnitude are
/// written as 0 so reports are stable across platforms.
std::string to_json(const Verdict& v, int indent = 2);

/// Short human-readable table.
std::string to_text(const Verdict& v);

}  // namespace phwell
