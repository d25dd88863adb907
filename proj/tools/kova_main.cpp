#include "kova/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace kova;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("KOVA_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
    }
  }
  return 20201013ull;
}

HamiltonianSystem resolve_system(const std::string& id, const std::string& path) {
  if (!path.empty()) return HamiltonianSystem(load_system_file(path));
  return HamiltonianSystem::from_catalog(id);
}

void print_validation(const ValidationReport& rep) {
  for (const auto& c : rep.checks) {
    std::cout << "  " << c.name << ": ";
    switch (c.status) {
      case CheckStatus::Pass: std::cout << "pass"; break;
      case CheckStatus::Fail: std::cout << "FAIL"; break;
      case CheckStatus::NotApplicable: std::cout << "n/a"; break;
      case CheckStatus::NoCounterexample: std::cout << "no counterexample"; break;
    }
    if (!c.witness.empty()) std::cout << "  [" << c.witness << "]";
    std::cout << "\n";
  }
}

void print_analysis(const AnalyzeOutcome& outcome) {
  std::cout << "system " << outcome.sys.def().id << "\n";
  std::cout << "weights " << outcome.weight_string() << "\n";
  std::cout << "validation:\n";
  print_validation(outcome.validation);
  std::cout << "balances (" << outcome.balances.size() << "):\n";
  for (std::size_t i = 0; i < outcome.balances.size(); ++i) {
    const auto& b = outcome.balances[i];
    std::cout << "  #" << i << " c=(";
    for (std::size_t j = 0; j < b.kov.balance.c.size(); ++j)
      std::cout << (j ? "," : "") << b.kov.balance.c[j].to_string();
    std::cout << ") " << (b.kov.balance.all_exact() ? "exact" : "numeric");
    std::cout << " kappa=" << signature_string(b.kov);
    if (b.kov.principal) std::cout << " principal";
    std::cout << (b.pairing_ok ? " pairing-ok" : " pairing-FAIL");
    for (const auto& e : b.th45.entries)
      if (e.grad_zero) std::cout << " dH" << e.j + 1 << "=0";
    std::cout << "\n";
  }
  std::cout << "painleve: "
            << (outcome.verdict.kind == PainleveVerdict::Kind::Pass        ? "pass"
                : outcome.verdict.kind == PainleveVerdict::Kind::Obstructed ? "obstructed"
                                                                            : "fail")
            << "\n";
  std::cout << "row: " << outcome.table_row() << "\n";
}

int finish_analysis(const AnalyzeOutcome& outcome) {
  if (!outcome.invariant_violations.empty()) {
    for (const auto& v : outcome.invariant_violations)
      std::cerr << "invariant violation: " << v << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular weights, Kovalevskaya exponents and weighted blow-up analysis"};
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();
  app.add_option("--seed", seed, "RNG seed (default fixed; env KOVA_SEED overrides)");

  // enumerate-weights
  auto* enumw = app.add_subcommand("enumerate-weights", "Certified regular weights up to h-max");
  int opt_n = 1, opt_hmax = 40;
  std::string enum_format = "table";
  enumw->add_option("--n", opt_n, "degrees of freedom (1..3)")->required();
  enumw->add_option("--h-max", opt_hmax, "largest Hamiltonian degree scanned");
  enumw->add_option("--format", enum_format, "table|json")
      ->check(CLI::IsMember({"table", "json"}));

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Balances, exponents and the Painleve test");
  std::string an_system, an_file, an_format = "table";
  bool an_all = false;
  int an_order = 0, an_seeds = 2000;
  double an_radius = 4.0;
  analyze->add_option("--system", an_system, "catalog id");
  analyze->add_option("--file", an_file, "system-definition file");
  analyze->add_flag("--all", an_all, "analyze every table-4 catalog system");
  analyze->add_option("--order", an_order, "series truncation override for the test");
  analyze->add_option("--seeds", an_seeds, "Newton seed budget");
  analyze->add_option("--radius", an_radius, "seed box radius");
  analyze->add_option("--format", an_format, "table|json|table4")
      ->check(CLI::IsMember({"table", "json", "table4"}));

  // blowup
  auto* blow = app.add_subcommand("blowup", "Weighted blow-up chart analysis");
  std::string bl_system, bl_file, bl_chart, bl_format = "table";
  int bl_seeds = 2000;
  blow->add_option("--system", bl_system, "catalog id");
  blow->add_option("--file", bl_file, "system-definition file");
  blow->add_option("--chart", bl_chart, "chart variable name")->required();
  blow->add_option("--seeds", bl_seeds, "Newton seed budget");
  blow->add_option("--format", bl_format, "table|json")->check(CLI::IsMember({"table", "json"}));

  // series
  auto* ser = app.add_subcommand("series", "Laurent series at a balance");
  std::string se_system, se_file, se_z0 = "symbolic", se_format = "table";
  int se_balance = 0, se_order = 0, se_seeds = 2000;
  ser->add_option("--system", se_system, "catalog id");
  ser->add_option("--file", se_file, "system-definition file");
  ser->add_option("--balance", se_balance, "balance index (from analyze ordering)")->required();
  ser->add_option("--order", se_order, "truncation order N")->required();
  ser->add_option("--z0", se_z0, "pole location: 'symbolic' or a rational value");
  ser->add_option("--seeds", se_seeds, "Newton seed budget");
  ser->add_option("--format", se_format, "table|json")->check(CLI::IsMember({"table", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*enumw) {
      std::vector<WeightTuple> tuples = enumerate_regular(opt_n, opt_hmax);
      if (enum_format == "json") {
        Json args{{"n", opt_n}, {"h_max", opt_hmax}};
        std::cout << make_report("enumerate-weights", args,
                                 Json{{"weights", weights_to_json(tuples)}})
                         .dump(2)
                  << "\n";
      } else {
        for (const auto& w : tuples) {
          RegularityCertificate cert = check_weight(w);
          std::cout << w.to_string() << "  chi = " << cert.chi->to_string("T")
                    << "  chi(1) = " << chi_at_one(w).to_string() << "\n";
        }
      }
      return kExitOk;
    }

    if (*analyze) {
      AnalyzeOptions opts;
      opts.seeds = an_seeds;
      opts.radius = an_radius;
      opts.rng_seed = seed;
      if (an_all || an_format == "table4") {
        int rc = kExitOk;
        for (const auto& id : table4_system_ids()) {
          AnalyzeOutcome outcome = analyze_system(HamiltonianSystem::from_catalog(id), opts);
          if (an_format == "json") {
            Json sections{{"analysis", analyze_to_json(outcome)}};
            std::cout << make_report("analyze", Json{{"system", id}}, sections,
                                     outcome.sys.def())
                             .dump(2)
                      << "\n";
          } else {
            std::cout << id << ": " << outcome.table_row() << "\n";
          }
          rc = std::max(rc, finish_analysis(outcome));
        }
        return rc;
      }
      if (an_system.empty() && an_file.empty())
        throw CLI::ValidationError("analyze", "one of --system/--file/--all is required");
      AnalyzeOutcome outcome = analyze_system(resolve_system(an_system, an_file), opts);
      (void)an_order;
      if (an_format == "json") {
        Json args{{"system", an_system.empty() ? an_file : an_system},
                  {"seeds", an_seeds},
                  {"seed", seed}};
        std::cout << make_report("analyze", args, Json{{"analysis", analyze_to_json(outcome)}},
                                 outcome.sys.def())
                         .dump(2)
                  << "\n";
      } else {
        print_analysis(outcome);
      }
      return finish_analysis(outcome);
    }

    if (*blow) {
      HamiltonianSystem sys = resolve_system(bl_system, bl_file);
      if (!sys.positive_weights()) {
        std::cerr << "blowup requires positive weights; system '" << sys.def().id
                  << "' has a nonpositive one\n";
        return kExitUsage;
      }
      BlowupChart chart = make_chart(sys, bl_chart);
      BalanceOptions bopts;
      bopts.seeds = bl_seeds;
      bopts.rng_seed = seed;
      VectorField fa = truncate_autonomous(hamilton_equations(sys, 0));
      std::vector<Balance> balances = find_balances(fa, bopts);
      FixedPointOptions fpo;
      fpo.rng_seed = seed;
      std::vector<DivisorFixedPoint> fps = divisor_fixed_points(chart, balances, fpo);
      for (auto& fp : fps) {
        if (!fp.origin) continue;
        KovalevskayaReport kov = exponents(fa, *fp.origin);
        fp = manifold_dims(chart, sys, fp, kov);
      }
      if (bl_format == "json") {
        Json args{{"system", bl_system.empty() ? bl_file : bl_system}, {"chart", bl_chart}};
        std::cout << make_report("blowup", args,
                                 Json{{"blowup", blowup_to_json(chart, sys, fps)}}, sys.def())
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "chart " << chart.chart_var << " (Z_" << chart.action_order
                  << " quotient), coordinates";
        for (const auto& n : chart.vars->names()) std::cout << " " << n;
        std::cout << "\nfield:\n";
        for (std::size_t i = 0; i < chart.field.dim(); ++i)
          std::cout << "  d" << chart.vars->name(i) << "/dt = "
                    << print_expr(chart.field.components[i]) << "\n";
        std::cout << "pullbacks:\n";
        for (int i = 0; i < sys.k(); ++i)
          std::cout << "  H" << i + 1 << " = r^" << sys.degree(i) << " * ("
                    << print_expr(chart_pullback(chart, sys, i)) << ")\n";
        std::cout << "V0 equations:\n";
        for (const auto& e : v0_equations(chart, sys))
          std::cout << "  " << print_expr(e) << " = 0\n";
        std::cout << "fixed points on the divisor:\n";
        for (const auto& fp : fps) {
          std::cout << "  (";
          for (std::size_t i = 0; i < fp.coords.size(); ++i)
            std::cout << (i ? "," : "") << fp.coords[i].to_string();
          std::cout << ") dims(s,u,c)=(" << fp.dim_stable << "," << fp.dim_unstable << ","
                    << fp.dim_center << ")";
          if (fp.lowest_balance) std::cout << " lowest";
          if (fp.v0_singular) std::cout << " V0-singular";
          std::cout << "\n";
        }
      }
      return kExitOk;
    }

    if (*ser) {
      HamiltonianSystem sys = resolve_system(se_system, se_file);
      BalanceOptions bopts;
      bopts.seeds = se_seeds;
      bopts.rng_seed = seed;
      VectorField full = hamilton_equations(sys, 0);
      std::vector<Balance> balances = find_balances(full, bopts);
      if (se_balance < 0 || se_balance >= static_cast<int>(balances.size())) {
        std::cerr << "balance index " << se_balance << " out of range (have "
                  << balances.size() << ")\n";
        return kExitUsage;
      }
      const Balance& b = balances[se_balance];
      if (!b.all_exact()) {
        std::cerr << "balance " << se_balance << " is not rational; symbolic series unavailable\n";
        return kExitUsage;
      }
      SeriesOptions sopts;
      if (se_z0 != "symbolic") sopts.fixed["z0"] = Rational::from_string(se_z0);
      LaurentSeries series = build_series(sys, b, se_order, sopts);

      // Internal consistency: resonances must sit exactly at the positive
      // integer exponents up to the truncation order.
      VectorField fa = truncate_autonomous(full);
      KovalevskayaReport kov = exponents(fa, b);
      if (!series.obstructed_at) {
        std::vector<int> expected;
        for (const auto& e : kov.exponents)
          if (e.exact && e.rat.is_integer() && e.rat > Rational(0) &&
              e.rat <= Rational(se_order))
            expected.push_back(static_cast<int>(e.rat.numerator().convert_to<long long>()));
        std::sort(expected.begin(), expected.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        std::vector<int> got;
        for (const auto& r : series.resonances) got.push_back(r.j);
        std::sort(got.begin(), got.end());
        if (got != expected) {
          std::cerr << "internal inconsistency: resonance positions differ from exponents\n";
          return kExitInvariant;
        }
      }

      if (series.order_below_max_exponent)
        std::cerr << "warning: order " << se_order
                  << " is below the largest Kovalevskaya exponent; test incomplete\n";

      if (se_format == "json") {
        Json args{{"system", se_system.empty() ? se_file : se_system},
                  {"balance", se_balance},
                  {"order", se_order},
                  {"z0", se_z0}};
        std::cout << make_report("series", args, Json{{"series", series_to_json(series)}},
                                 sys.def())
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "balance #" << se_balance << " c=(";
        for (std::size_t i = 0; i < b.c.size(); ++i)
          std::cout << (i ? "," : "") << b.c[i].to_string();
        std::cout << ")\n";
        for (const auto& t : series_terms(series))
          std::cout << "  " << t.component << ": T^" << t.exponent << "  " << t.coefficient
                    << "\n";
        for (const auto& r : series.resonances) {
          std::cout << "resonance at j=" << r.j << " parameters";
          for (const auto& p : r.params) std::cout << " " << p;
          std::cout << "\n";
        }
        if (series.obstructed_at) {
          std::cout << "OBSTRUCTED at j=" << series.obstructed_at->j << " residuals:";
          for (const auto& p : series.obstructed_at->residuals)
            std::cout << " " << print_expr(p);
          std::cout << "\n";
        }
        std::cout << "free parameters (excluding z0): " << series.free_param_count() << "\n";
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}
