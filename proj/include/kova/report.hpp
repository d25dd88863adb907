#ifndef KOVA_REPORT_HPP
#define KOVA_REPORT_HPP

#include "kova/blowup.hpp"
#include "kova/laurent.hpp"
#include "kova/weights.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace kova {

using Json = nlohmann::ordered_json;

Json scalar_to_json(const Scalar& s);
Json check_to_json(const CheckResult& c);

struct AnalyzeOptions {
  int seeds = 2000;
  double radius = 4.0;
  std::uint64_t rng_seed = 20201013;
};

struct BalanceAnalysis {
  KovalevskayaReport kov;
  bool pairing_ok = false;
  Theorem45Report th45;
};

/// Full pipeline for one system: validation, balances, exponents, pairing
/// and gradient identities, Painleve verdict.
struct AnalyzeOutcome {
  HamiltonianSystem sys;
  ValidationReport validation;
  std::vector<BalanceAnalysis> balances;
  PainleveVerdict verdict;
  bool blowup_applicable = false;
  /// Set when an exact structural identity failed (CI signal, exit code 1).
  std::vector<std::string> invariant_violations;

  /// "(2,3,4,5;8): (-1,2,5,8) x1, (-3,-1,8,10) x1"
  std::string table_row() const;
  std::string weight_string() const;
  /// Signature -> count, ordered as in the tables.
  std::vector<std::pair<std::string, int>> signature_counts() const;
};

AnalyzeOutcome analyze_system(const HamiltonianSystem& sys, const AnalyzeOptions& opts = {});

Json analyze_to_json(const AnalyzeOutcome& outcome);
Json weights_to_json(const std::vector<WeightTuple>& tuples);
Json series_to_json(const LaurentSeries& series);
Json blowup_to_json(const BlowupChart& chart, const HamiltonianSystem& sys,
                    const std::vector<DivisorFixedPoint>& fps);

Json make_report(const std::string& command, const Json& args, const Json& sections);
Json make_report(const std::string& command, const Json& args, const Json& sections,
                 const SystemDef& def);

/// The twelve table rows in catalog order (autonomous analyses).
std::vector<std::string> table4_system_ids();

}  // namespace kova

#endif
