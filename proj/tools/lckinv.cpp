#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lckinv/commands.hpp"

namespace {

void print_text(const lckinv::Report& r) {
  if (r.command == "list") {
    for (const auto& ex : r.details.at("examples")) {
      std::cout << ex.at("display").get<std::string>() << "\n";
      if (!ex.at("volumes").empty()) std::cout << "  volumes: " << ex.at("volumes").dump() << "\n";
      if (!ex.at("fields").empty()) std::cout << "  fields:  " << ex.at("fields").dump() << "\n";
      if (ex.at("has_fixed_point_data").get<bool>()) {
        std::cout << "  fixed-point data for field '" << ex.at("fixed_point_field").get<std::string>() << "'\n";
      }
    }
    return;
  }
  std::cout << std::setprecision(12);
  for (const auto& e : r.results) {
    std::cout << e.label << ": ";
    if (e.exact) {
      std::cout << *e.exact;
    } else {
      std::cout << e.value_re;
      if (e.value_im != 0.0) std::cout << (e.value_im < 0 ? " - " : " + ") << std::abs(e.value_im) << "i";
      if (e.error_estimate != 0.0) std::cout << " +- " << e.error_estimate;
    }
    std::cout << "  [" << e.method << "]";
    if (e.pass) std::cout << (*e.pass ? "  PASS" : "  FAIL") << " (tol " << *e.tolerance << ")";
    std::cout << "\n";
  }
  if (r.pass) std::cout << (*r.pass ? "PASS" : "FAIL") << "\n";
}

void emit(const lckinv::Report& r, bool json) {
  if (json) {
    std::cout << nlohmann::json(r).dump(2) << "\n";
  } else {
    print_text(r);
  }
}

void add_numerics(CLI::App* cmd, lckinv::NumericsOptions& n) {
  cmd->add_option("--refine", n.refine, "quadrature refinement level (>= 1)")->check(CLI::PositiveNumber);
  cmd->add_option("--points", n.points, "quadrature points per axis and panel")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", n.threads, "worker threads (0 = all cores); results do not depend on it");
  cmd->add_option("--step", n.step, "finite-difference step")->check(CLI::PositiveNumber);
  cmd->add_option("--order", n.order, "finite-difference order")->check(CLI::IsMember({2, 4}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral invariants of holomorphic vector fields on LCK examples"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit a JSON report");

  std::string filter;
  auto* list = app.add_subcommand("list", "list built-in examples");
  list->add_option("--filter", filter, "substring filter on example names");
  list->add_flag("--json", json, "emit a JSON report");

  lckinv::InvariantOptions inv;
  auto* invariant = app.add_subcommand("invariant", "compute f(X)");
  invariant->add_option("--example", inv.example, "cp1, hopf or hopf-blowup");
  invariant->add_option("--volume", inv.volume, "volume form name");
  invariant->add_option("--field", inv.field, "vector field name");
  invariant->add_option("--method", inv.method, "direct, alt or localization")
      ->check(CLI::IsMember({"direct", "alt", "localization"}));
  invariant->add_option("--fixed-point-file", inv.fixed_point_file, "JSON fixed-point data (localization)");
  invariant->add_flag("--json", json, "emit a JSON report");
  add_numerics(invariant, inv.numerics);

  lckinv::CheckOptions chk;
  auto* check = app.add_subcommand("check", "run a property suite");
  check->add_option("--example", chk.example, "cp1 or hopf")->required();
  check->add_option("--suite", chk.suite, "automorphy, invariance, deformation, vaisman or convergence")
      ->required();
  check->add_option("--samples", chk.samples, "sample points for sampled checks")->check(CLI::PositiveNumber);
  check->add_option("--tol", chk.tol, "tolerance for sampled checks")->check(CLI::PositiveNumber);
  check->add_flag("--json", json, "emit a JSON report");
  add_numerics(check, chk.numerics);

  std::string export_example;
  auto* exp = app.add_subcommand("export", "print the fixed-point data of an example as JSON");
  exp->add_option("--example", export_example, "example name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? lckinv::exit_pass : lckinv::exit_usage;
  }

  try {
    if (*list) {
      emit(lckinv::cmd_list(filter), json);
      return lckinv::exit_pass;
    }
    if (*invariant) {
      auto out = lckinv::cmd_invariant(inv);
      emit(out.report, json);
      return out.exit_code;
    }
    if (*check) {
      auto out = lckinv::cmd_check(chk);
      emit(out.report, json);
      return out.exit_code;
    }
    if (*exp) {
      std::cout << lckinv::cmd_export(export_example).dump(2) << "\n";
      return lckinv::exit_pass;
    }
  } catch (const lckinv::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return lckinv::exit_usage;
  } catch (const lckinv::UnknownNameError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return lckinv::exit_usage;
  } catch (const lckinv::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return lckinv::exit_usage;
  } catch (const lckinv::NonsingularityError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return lckinv::exit_usage;
  } catch (const lckinv::DimensionMismatchError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return lckinv::exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lckinv::exit_fail;
  }
  return lckinv::exit_usage;
}
