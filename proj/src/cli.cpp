#include "renyi/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "renyi/asymptotics.hpp"
#include "renyi/divergence.hpp"
#include "renyi/families.hpp"
#include "renyi/harness.hpp"
#include "renyi/ldp_bounds.hpp"

namespace renyi::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

FamilySpec resolve_family(const std::string& text) {
  if (text.size() > 5 && text.substr(text.size() - 5) == ".json") {
    return FamilySpec::from_json_file(text);
  }
  return FamilySpec::parse(text);
}

void check_order_flag(double s) {
  if (!(s >= 1e-6) || !(s <= 1.0 - 1e-6)) {
    throw UsageError("--s must lie in (0,1), at least 1e-6 away from either end");
  }
}

ReportFormat parse_format(const std::string& f) {
  if (f == "csv") return ReportFormat::Csv;
  if (f == "json") return ReportFormat::Json;
  throw UsageError("--format must be csv or json");
}

QuadratureConfig quad_config(const Command& cmd) {
  QuadratureConfig cfg;
  cfg.rel_tol = cmd.tol;
  return cfg;
}

void emit_study(const ConvergenceReport& report, const Command& cmd, std::ostream& out,
                std::ostream& err) {
  const ReportFormat fmt = parse_format(cmd.format);
  if (cmd.out.empty()) {
    emit_report(report, fmt, out);
  } else {
    emit_report(report, fmt, cmd.out);
  }
  err << "extrapolated=" << fmt17(report.extrapolated)
      << " closed_form=" << fmt17(report.closed_form)
      << " converged=" << (report.converged ? "true" : "false")
      << (report.noise_limited ? " (noise-limited)" : "") << '\n';
}

const char* location_name(ArgLocation loc) {
  switch (loc) {
    case ArgLocation::Interior: return "interior";
    case ArgLocation::LowerBoundary: return "boundary s->0";
    case ArgLocation::UpperBoundary: return "boundary s->1";
  }
  return "?";
}

nlohmann::ordered_json bound_json(const BoundResult& b) {
  return {{"value", b.value},
          {"arg_s", b.arg_s},
          {"location", location_name(b.location)},
          {"mode", b.mode == OptimizeMode::Sup ? "sup" : "inf"}};
}

int run_divergence(const Command& cmd, const FamilySpec& fam, std::ostream& out) {
  const auto cfg = quad_config(cmd);
  DivergenceResult res;
  if (cmd.quantity == "renyi") {
    res = renyi_divergence(fam, 0.0, cmd.eps, RenyiOrder(cmd.s), cfg);
  } else if (cmd.quantity == "kl") {
    res = kl_divergence(fam, cmd.eps, cfg);
  } else {  // hellinger2, validated at parse time
    res.value = hellinger_sq(fam, cmd.eps, cfg);
  }
  if (cmd.json) {
    nlohmann::ordered_json j;
    j["family"] = fam.to_string();
    j["quantity"] = cmd.quantity;
    if (cmd.quantity != "kl") j["s"] = cmd.s;
    j["eps"] = cmd.eps;
    j["finite"] = std::isfinite(res.value);
    j["value"] = std::isfinite(res.value) ? nlohmann::ordered_json(res.value)
                                          : nlohmann::ordered_json(nullptr);
    j["err_estimate"] = res.err_estimate;
    j["evaluations"] = res.evaluations;
    out << j.dump(2) << '\n';
  } else {
    out << fmt17(res.value) << '\n';
  }
  return 0;
}

int run_limit(const Command& cmd, const FamilySpec& fam, std::ostream& out) {
  const LimitConstant lc = limit_constant(fam, cmd.s);
  if (cmd.json) {
    nlohmann::ordered_json j;
    j["family"] = fam.to_string();
    j["s"] = cmd.s;
    j["value"] = lc.value;
    j["left_term"] = lc.left_term;
    j["right_term"] = lc.right_term;
    j["regime"] = {{"kind", lc.regime.kind == ScalingRegime::Kind::PowerKappa ? "PowerKappa"
                            : lc.regime.kind == ScalingRegime::Kind::EpsSqLog ? "EpsSqLog"
                                                                              : "EpsSq"},
                   {"kappa", lc.regime.kappa}};
    out << j.dump(2) << '\n';
  } else {
    out << fmt17(lc.value) << " regime=" << lc.regime.to_string() << '\n';
  }
  return 0;
}

int run_bounds(const Command& cmd, const FamilySpec& fam, std::ostream& out) {
  const BoundResult a1 = alpha1_bar(fam);
  const BoundResult a2 = alpha2_bar(fam);
  if (cmd.json) {
    nlohmann::ordered_json j;
    j["family"] = fam.to_string();
    j["kappa"] = fam.min_kappa();
    j["alpha1"] = bound_json(a1);
    j["alpha2"] = bound_json(a2);
    out << j.dump(2) << '\n';
  } else {
    out << "alpha1 = " << fmt17(a1.value) << "  [" << (a1.mode == OptimizeMode::Sup ? "sup" : "inf")
        << " at s=" << fmt17(a1.arg_s) << ", " << location_name(a1.location) << "]\n";
    out << "alpha2 = " << fmt17(a2.value) << "  [" << (a2.mode == OptimizeMode::Sup ? "sup" : "inf")
        << " at s=" << fmt17(a2.arg_s) << ", " << location_name(a2.location) << "]\n";
  }
  return 0;
}

int run_families(std::ostream& out) {
  out << "built-in generator densities (all parameters > 0):\n"
         "  beta:a,b     x^(a-1)(1-x)^(b-1)/B(a,b) on (0,1);   kappa: a (left), b (right); "
         "A = 1/B(a,b)\n"
         "  gamma:a,b    b^a/Gamma(a) x^(a-1) e^(-b x) on (0,inf);  kappa = a, A = b^a/Gamma(a)\n"
         "  weibull:a,b  a b x^(a-1) e^(-b x^a) on (0,inf);         kappa = a, A = a b\n"
         "  uniform      1 on (0,1);                                 kappa = 1, A = 1\n"
         "  exp:b        b e^(-b x) on (0,inf);                      kappa = 1, A = b\n"
         "a family can also be given as a JSON file: {\"name\": \"beta\", \"params\": [0.5, 0.5]}\n";
  return 0;
}

}  // namespace

Command parse_args(const std::vector<std::string>& args) {
  Command cmd;
  CLI::App app{"relative Renyi entropy of shifted non-regular densities"};
  app.require_subcommand(1);

  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cmd.family, "family spec string or JSON file")->required();
  };
  auto add_s = [&](CLI::App* sub) { sub->add_option("--s", cmd.s, "Renyi order in (0,1)"); };
  auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--eps0", cmd.eps0, "initial shift of the sweep");
    sub->add_option("--factor", cmd.factor, "geometric sweep factor (> 1)");
    sub->add_option("--steps", cmd.steps, "number of sweep points (>= 4)");
    sub->add_option("--tol", cmd.tol, "quadrature relative tolerance");
    sub->add_option("--conv-tol", cmd.conv_tol, "relative tolerance for the converged flag");
    sub->add_option("--out", cmd.out, "report destination path (default: stdout)");
    sub->add_option("--format", cmd.format, "report format: csv|json");
  };

  auto* divergence = app.add_subcommand("divergence", "evaluate I^s (or KL / squared Hellinger)");
  add_family(divergence);
  add_s(divergence);
  divergence->add_option("--eps", cmd.eps, "location shift (either sign for renyi)");
  divergence->add_option("--quantity", cmd.quantity, "renyi|kl|hellinger2");
  divergence->add_option("--tol", cmd.tol, "quadrature relative tolerance");
  divergence->add_flag("--json", cmd.json, "emit JSON");

  auto* limit = app.add_subcommand("limit", "closed-form limit constant of I^s/g(eps)");
  add_family(limit);
  add_s(limit);
  limit->add_flag("--json", cmd.json, "emit JSON");

  auto* converge = app.add_subcommand("converge", "eps-sweep of I^s/g(eps) with extrapolation");
  add_family(converge);
  add_s(converge);
  add_sweep(converge);

  auto* uniformity = app.add_subcommand("uniformity", "sup_s deviation of the ratio per eps");
  add_family(uniformity);
  add_sweep(uniformity);
  uniformity->add_option("--s-grid", cmd.s_grid, "number of interior s grid points");

  auto* bounds = app.add_subcommand("bounds", "large-deviation upper bounds alpha1/alpha2");
  add_family(bounds);
  bounds->add_flag("--json", cmd.json, "emit JSON");

  auto* lemma = app.add_subcommand("lemma", "endpoint-decomposition sweep I+-_s(c)/g(eps)");
  add_family(lemma);
  add_s(lemma);
  lemma->add_option("--side", cmd.side, "left|right")->required();
  lemma->add_option("--c", cmd.c, "interior split point")->required();
  add_sweep(lemma);

  app.add_subcommand("families", "list the built-in family catalog");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    cmd.help_requested = true;
    cmd.help_text = app.help();
    return cmd;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  cmd.verb = sub->get_name();
  cmd.c_set = sub == lemma;

  // cross-flag validation, before any computation
  if (sub == divergence && cmd.quantity != "renyi" && cmd.quantity != "kl" &&
      cmd.quantity != "hellinger2") {
    throw UsageError("--quantity must be renyi, kl or hellinger2");
  }
  if ((sub == divergence && cmd.quantity != "kl") || sub == limit || sub == converge ||
      sub == lemma) {
    check_order_flag(cmd.s);
  }
  if (sub == converge || sub == uniformity || sub == lemma) {
    if (!(cmd.eps0 > 0.0)) throw UsageError("--eps0 must be > 0");
    if (!(cmd.factor > 1.0)) throw UsageError("--factor must be > 1");
    if (cmd.steps < 4) throw UsageError("--steps must be >= 4");
    parse_format(cmd.format);
  }
  if (sub == uniformity && (cmd.s_grid < 1 || cmd.s_grid > 97)) {
    throw UsageError("--s-grid must be between 1 and 97");
  }
  if (sub == lemma && cmd.side != "left" && cmd.side != "right") {
    throw UsageError("--side must be left or right");
  }
  if (!(cmd.tol > 0.0)) throw UsageError("--tol must be > 0");
  return cmd;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  if (cmd.help_requested) {
    out << cmd.help_text;
    return 0;
  }
  if (cmd.verb == "families") return run_families(out);

  FamilySpec fam = [&]() {
    try {
      return resolve_family(cmd.family);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--family: ") + e.what());
    }
  }();

  if (cmd.verb == "divergence") return run_divergence(cmd, fam, out);
  if (cmd.verb == "limit") return run_limit(cmd, fam, out);
  if (cmd.verb == "bounds") return run_bounds(cmd, fam, out);

  StudyConfig study;
  study.quad = quad_config(cmd);
  study.converge_rel_tol = cmd.conv_tol;

  if (cmd.verb == "converge") {
    const auto report =
        convergence_study(fam, cmd.s, cmd.eps0, cmd.factor, cmd.steps, study);
    emit_study(report, cmd, out, err);
    return 0;
  }
  if (cmd.verb == "uniformity") {
    std::vector<double> s_grid(cmd.s_grid);
    for (int i = 1; i <= cmd.s_grid; ++i) {
      s_grid[i - 1] = static_cast<double>(i) / (cmd.s_grid + 1);
    }
    const auto report =
        uniformity_study(fam, s_grid, cmd.eps0, cmd.factor, cmd.steps, study);
    const ReportFormat fmt = parse_format(cmd.format);
    if (cmd.out.empty()) {
      emit_report(report, fmt, out);
    } else {
      emit_report(report, fmt, cmd.out);
    }
    err << "monotone=" << (report.monotone ? "true" : "false") << '\n';
    return 0;
  }
  if (cmd.verb == "lemma") {
    const Side side = cmd.side == "left" ? Side::Left : Side::Right;
    const auto report =
        lemma_study(fam, side, cmd.c, cmd.s, cmd.eps0, cmd.factor, cmd.steps, study);
    emit_study(report, cmd, out, err);
    return 0;
  }
  throw UsageError("unknown verb '" + cmd.verb + "'");
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const Command cmd = parse_args(args);
    return run(cmd, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n(try --help)\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace renyi::cli
