// photonstat: closed-form photon statistics of photon-added/subtracted
// squeezed thermal states, with a truncated-Fock oracle for verification.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parameter error,
//             3 zero-norm state.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <photonstat/analytics.hpp>
#include <photonstat/errors.hpp>
#include <photonstat/fock_oracle.hpp>
#include <photonstat/params.hpp>
#include <photonstat/verify.hpp>

namespace {

using nlohmann::json;
using photonstat::CheckOptions;
using photonstat::CheckResult;
using photonstat::Distribution;
using photonstat::StateParams;
using photonstat::Variant;

constexpr int kExitSuccess = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitZeroNorm = 3;

// 17 significant digits: round-trip exact and stable across runs.
std::string fmt17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

struct CommonOptions {
  double n_c = 0.0;
  double r = 0.0;
  int m = 0;
  std::string variant = "add";
  std::string format = "csv";
  std::string output;
  bool with_oracle = false;
  std::string dim = "auto";
  std::string nmax = "auto";
};

Variant parse_variant(const std::string& name) {
  if (name == "add") return Variant::Added;
  if (name == "sub") return Variant::Subtracted;
  throw photonstat::parameter_error("variant must be 'add' or 'sub'");
}

StateParams to_params(const CommonOptions& opts) {
  const StateParams params{opts.n_c, opts.r, opts.m, parse_variant(opts.variant)};
  const auto report = photonstat::validate_params(params);
  for (const auto& issue : report) {
    if (issue.severity == photonstat::Severity::Warning) {
      std::cerr << "warning: " << issue.message << "\n";
    }
  }
  if (!photonstat::params_valid(report)) {
    std::string message = "invalid parameters:";
    for (const auto& issue : report) {
      if (issue.severity == photonstat::Severity::Error) {
        message += " " + issue.message + ";";
      }
    }
    throw photonstat::parameter_error(message);
  }
  return params;
}

// "auto" -> nullopt, otherwise a non-negative integer.
std::optional<int> parse_auto_int(const std::string& text, const char* what) {
  if (text == "auto") return std::nullopt;
  try {
    size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size() || value < 0) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw photonstat::parameter_error(std::string(what) +
                                      " must be 'auto' or a non-negative integer");
  }
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw photonstat::error("cannot open output file: " + output_path);
  out << text;
}

json params_json(const StateParams& params) {
  return json{{"n_c", params.n_c},
              {"r", params.r},
              {"m", params.m},
              {"variant", photonstat::to_string(params.variant)}};
}

// ---------------------------------------------------------------- norm ----

int run_norm(const CommonOptions& opts) {
  const StateParams params = to_params(opts);
  const double closed = params.variant == Variant::Added
                            ? photonstat::norm_pasts(params)
                            : photonstat::norm_pssts(params);
  if (closed == 0.0) {
    std::cerr << "error: zero-norm state (nothing to subtract from the vacuum)\n";
    return kExitZeroNorm;
  }

  std::optional<double> oracle;
  std::optional<photonstat::OracleCertificate> cert;
  if (opts.with_oracle) {
    const auto dim = parse_auto_int(opts.dim, "--dim");
    if (dim) {
      oracle = photonstat::oracle_norm(params, *dim);
    } else {
      const auto certified = photonstat::certified_oracle_norm(params);
      oracle = certified.value;
      cert = certified.cert;
    }
  }

  std::ostringstream text;
  if (opts.format == "csv") {
    text << "n_c,r,m,variant,norm_closed_form";
    if (oracle) text << ",norm_oracle,rel_diff";
    text << "\n";
    text << fmt17(params.n_c) << ',' << fmt17(params.r) << ',' << params.m << ','
         << photonstat::to_string(params.variant) << ',' << fmt17(closed);
    if (oracle) {
      text << ',' << fmt17(*oracle) << ','
           << fmt17(std::fabs(closed - *oracle) / std::fabs(*oracle));
    }
    text << "\n";
  } else {
    json doc{{"params", params_json(params)}, {"norm_closed_form", closed}};
    if (oracle) {
      doc["norm_oracle"] = *oracle;
      doc["rel_diff"] = std::fabs(closed - *oracle) / std::fabs(*oracle);
      json truncation;
      if (cert) {
        truncation["dim"] = cert->dim;
        truncation["cert_delta"] = cert->delta;
        truncation["auto"] = true;
      } else {
        truncation["dim"] = *parse_auto_int(opts.dim, "--dim");
        truncation["auto"] = false;
      }
      doc["truncation"] = truncation;
    }
    text << doc.dump(2) << "\n";
  }
  emit(text.str(), opts.output);
  return kExitSuccess;
}

// ----------------------------------------------------------------- pnd ----

int run_pnd(const CommonOptions& opts) {
  const StateParams params = to_params(opts);
  const auto n_max = parse_auto_int(opts.nmax, "--nmax");
  const Distribution dist =
      photonstat::pnd_table(params, n_max ? *n_max : photonstat::kAutoNMax);

  std::optional<Distribution> oracle;
  std::optional<photonstat::OracleCertificate> cert;
  std::optional<int> fixed_dim;
  if (opts.with_oracle) {
    fixed_dim = parse_auto_int(opts.dim, "--dim");
    if (fixed_dim) {
      oracle = photonstat::oracle_pnd(params, *fixed_dim, dist.n_max);
    } else {
      auto certified = photonstat::certified_oracle_pnd(params, dist.n_max);
      oracle = std::move(certified.dist);
      cert = certified.cert;
    }
  }

  std::ostringstream text;
  if (opts.format == "csv") {
    text << "n,pnd_closed_form";
    if (oracle) text << ",pnd_oracle,abs_diff";
    text << "\n";
    for (int n = 0; n <= dist.n_max; ++n) {
      text << n << ',' << fmt17(dist.probabilities[n]);
      if (oracle) {
        const double o = oracle->probabilities[n];
        text << ',' << fmt17(o) << ',' << fmt17(std::fabs(dist.probabilities[n] - o));
      }
      text << "\n";
    }
  } else {
    json truncation{{"n_max", dist.n_max}, {"n_max_auto", !n_max}};
    if (cert) {
      truncation["dim"] = cert->dim;
      truncation["cert_delta"] = cert->delta;
      truncation["dim_auto"] = true;
    } else if (fixed_dim) {
      truncation["dim"] = *fixed_dim;
      truncation["dim_auto"] = false;
    }
    json rows = json::array();
    for (int n = 0; n <= dist.n_max; ++n) {
      json row{{"n", n}, {"pnd_closed_form", dist.probabilities[n]}};
      if (oracle) {
        row["pnd_oracle"] = oracle->probabilities[n];
        row["abs_diff"] = std::fabs(dist.probabilities[n] - oracle->probabilities[n]);
      }
      rows.push_back(row);
    }
    json doc{{"params", params_json(params)},
             {"tail_bound", dist.tail_bound},
             {"truncation", truncation},
             {"rows", rows}};
    text << doc.dump(2) << "\n";
  }
  emit(text.str(), opts.output);
  return kExitSuccess;
}

// -------------------------------------------------------------- genfun ----

int run_genfun(const CommonOptions& opts, double f) {
  CommonOptions base = opts;
  base.m = 0;  // the expectation is a base-state (m = 0) quantity
  base.variant = "add";
  const StateParams params = to_params(base);
  const double closed = photonstat::expectation_exp_number(f, params);

  std::optional<double> oracle;
  std::optional<photonstat::OracleCertificate> cert;
  if (opts.with_oracle) {
    const auto dim = parse_auto_int(opts.dim, "--dim");
    if (dim) {
      oracle = photonstat::oracle_exp_number(f, params, *dim);
    } else {
      const auto certified = photonstat::certified_oracle_exp(f, params);
      oracle = certified.value;
      cert = certified.cert;
    }
  }

  std::ostringstream text;
  if (opts.format == "csv") {
    text << "n_c,r,f,expectation_closed_form";
    if (oracle) text << ",expectation_oracle,rel_diff";
    text << "\n";
    text << fmt17(params.n_c) << ',' << fmt17(params.r) << ',' << fmt17(f) << ','
         << fmt17(closed);
    if (oracle) {
      text << ',' << fmt17(*oracle) << ','
           << fmt17(std::fabs(closed - *oracle) / std::fabs(*oracle));
    }
    text << "\n";
  } else {
    json doc{{"params", params_json(params)},
             {"f", f},
             {"expectation_closed_form", closed}};
    if (oracle) {
      doc["expectation_oracle"] = *oracle;
      doc["rel_diff"] = std::fabs(closed - *oracle) / std::fabs(*oracle);
      if (cert) {
        doc["truncation"] =
            json{{"dim", cert->dim}, {"cert_delta", cert->delta}, {"auto", true}};
      } else {
        doc["truncation"] =
            json{{"dim", *parse_auto_int(opts.dim, "--dim")}, {"auto", false}};
      }
    }
    text << doc.dump(2) << "\n";
  }
  emit(text.str(), opts.output);
  return kExitSuccess;
}

// -------------------------------------------------------------- verify ----

int run_verify(const CommonOptions& opts, const CheckOptions& check_opts) {
  const std::vector<CheckResult> results = photonstat::run_verification(check_opts);

  std::ostringstream text;
  if (opts.format == "csv") {
    text << "check,passed,max_deviation,detail\n";
    for (const auto& res : results) {
      std::string detail = res.detail;
      for (char& ch : detail) {
        if (ch == ',') ch = ';';  // keep one token per CSV column
      }
      text << res.name << ',' << (res.passed ? "pass" : "fail") << ','
           << fmt17(res.max_deviation) << ',' << detail << "\n";
    }
  } else {
    json checks = json::array();
    for (const auto& res : results) {
      json metrics;
      for (const auto& [key, value] : res.metrics) metrics[key] = value;
      checks.push_back(json{{"check", res.name},
                            {"passed", res.passed},
                            {"max_deviation", res.max_deviation},
                            {"metrics", metrics},
                            {"detail", res.detail}});
    }
    json doc{{"tol", check_opts.tol},
             {"passed", photonstat::all_passed(results)},
             {"checks", checks}};
    text << doc.dump(2) << "\n";
  }
  emit(text.str(), opts.output);

  for (const auto& res : results) {
    std::cerr << (res.passed ? "[pass] " : "[FAIL] ") << res.name
              << " (max deviation " << fmt17(res.max_deviation) << ")\n";
  }
  return photonstat::all_passed(results) ? kExitSuccess : kExitVerifyFailed;
}

// --------------------------------------------------------------- sweep ----

// Range syntax: a comma list "0,0.25,0.5" or "lo:hi:count" (inclusive
// linspace with `count` points).
std::vector<double> parse_range(const std::string& text, const char* what) {
  std::vector<double> values;
  try {
    if (text.find(':') != std::string::npos) {
      std::istringstream in(text);
      std::string lo_s, hi_s, count_s;
      std::getline(in, lo_s, ':');
      std::getline(in, hi_s, ':');
      std::getline(in, count_s);
      const double lo = std::stod(lo_s);
      const double hi = std::stod(hi_s);
      const int count = std::stoi(count_s);
      if (count < 1 || count > 100000) throw std::invalid_argument(text);
      if (count == 1) {
        values.push_back(lo);
      } else {
        for (int i = 0; i < count; ++i) {
          values.push_back(lo + (hi - lo) * i / (count - 1));
        }
      }
    } else {
      std::istringstream in(text);
      std::string item;
      while (std::getline(in, item, ',')) values.push_back(std::stod(item));
      if (values.empty()) throw std::invalid_argument(text);
    }
  } catch (const photonstat::error&) {
    throw;
  } catch (const std::exception&) {
    throw photonstat::parameter_error(std::string(what) +
                                      ": expected 'a,b,c' or 'lo:hi:count'");
  }
  return values;
}

int run_sweep(const CommonOptions& opts, const std::string& nc_range,
              const std::string& r_range, const std::string& m_range,
              const std::string& variant_choice) {
  const std::vector<double> ncs = parse_range(nc_range, "--nc");
  const std::vector<double> rs = parse_range(r_range, "--r");
  std::vector<int> ms;
  for (double m : parse_range(m_range, "--m")) {
    const int mi = static_cast<int>(m);
    if (mi != m || mi < 0) {
      throw photonstat::parameter_error("--m values must be non-negative integers");
    }
    ms.push_back(mi);
  }
  std::vector<Variant> variants;
  if (variant_choice == "both") {
    variants = {Variant::Added, Variant::Subtracted};
  } else {
    variants = {parse_variant(variant_choice)};
  }

  const std::size_t grid = ncs.size() * rs.size() * ms.size() * variants.size();
  if (grid > 100000) {
    throw photonstat::parameter_error("sweep grid exceeds 10^5 points");
  }

  const auto n_max = parse_auto_int(opts.nmax, "--nmax");

  std::ostringstream text;
  const bool csv = opts.format == "csv";
  json rows = json::array();
  if (csv) text << "n_c,r,m,variant,n,probability\n";
  for (double nc : ncs) {
    for (double r : rs) {
      for (int m : ms) {
        for (Variant variant : variants) {
          const StateParams params{nc, r, m, variant};
          if (photonstat::is_zero_norm_state(params)) {
            if (csv) {
              text << "# skipped zero-norm state: n_c=" << fmt17(nc)
                   << " r=" << fmt17(r) << " m=" << m
                   << " variant=" << photonstat::to_string(variant) << "\n";
            } else {
              rows.push_back(json{{"n_c", nc},
                                  {"r", r},
                                  {"m", m},
                                  {"variant", photonstat::to_string(variant)},
                                  {"skipped", "zero-norm state"}});
            }
            continue;
          }
          const Distribution dist =
              photonstat::pnd_table(params, n_max ? *n_max : photonstat::kAutoNMax);
          for (int n = 0; n <= dist.n_max; ++n) {
            if (csv) {
              text << fmt17(nc) << ',' << fmt17(r) << ',' << m << ','
                   << photonstat::to_string(variant) << ',' << n << ','
                   << fmt17(dist.probabilities[n]) << "\n";
            } else {
              rows.push_back(json{{"n_c", nc},
                                  {"r", r},
                                  {"m", m},
                                  {"variant", photonstat::to_string(variant)},
                                  {"n", n},
                                  {"probability", dist.probabilities[n]}});
            }
          }
        }
      }
    }
  }
  if (!csv) text << json{{"rows", rows}}.dump(2) << "\n";
  emit(text.str(), opts.output);
  return kExitSuccess;
}

void add_state_options(CLI::App* cmd, CommonOptions& opts, bool with_m = true) {
  cmd->add_option("--nc", opts.n_c, "Mean thermal photon number (>= 0)")->required();
  cmd->add_option("--r", opts.r, "Squeezing parameter");
  if (with_m) {
    cmd->add_option("--m", opts.m, "Photon operation count (>= 0)");
    cmd->add_option("--variant", opts.variant, "Photon operation: add | sub")
        ->check(CLI::IsMember({"add", "sub"}));
  }
}

void add_output_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", opts.output, "Write the report to a file");
}

void add_oracle_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_flag("--with-oracle", opts.with_oracle,
                "Cross-check against the truncated-Fock oracle");
  cmd->add_option("--dim", opts.dim,
                  "Oracle truncation dimension ('auto' = doubling certificate)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Normalization constants and photon-number distributions of "
      "photon-added/subtracted squeezed thermal states"};
  app.require_subcommand(1);

  CommonOptions norm_opts;
  auto* norm_cmd = app.add_subcommand("norm", "Normalization constant");
  add_state_options(norm_cmd, norm_opts);
  add_output_options(norm_cmd, norm_opts);
  add_oracle_options(norm_cmd, norm_opts);

  CommonOptions pnd_opts;
  auto* pnd_cmd = app.add_subcommand("pnd", "Photon-number distribution table");
  add_state_options(pnd_cmd, pnd_opts);
  add_output_options(pnd_cmd, pnd_opts);
  pnd_cmd->add_option("--nmax", pnd_opts.nmax,
                      "Largest photon number ('auto' = mass-based truncation)");
  add_oracle_options(pnd_cmd, pnd_opts);

  CommonOptions genfun_opts;
  double genfun_f = 0.0;
  auto* genfun_cmd =
      app.add_subcommand("genfun", "Expectation of e^{f n} under the squeezed "
                                   "thermal state (its generating function)");
  add_state_options(genfun_cmd, genfun_opts, /*with_m=*/false);
  add_output_options(genfun_cmd, genfun_opts);
  genfun_cmd->add_option("--f", genfun_f, "Exponent f")->required();
  add_oracle_options(genfun_cmd, genfun_opts);

  CommonOptions verify_opts;
  CheckOptions check_opts;
  std::string only_check;
  double verify_nc = -1.0;
  auto* verify_cmd = app.add_subcommand("verify", "Run the cross-check suite");
  add_output_options(verify_cmd, verify_opts);
  verify_cmd->add_option("--tol", check_opts.tol, "Pass/fail threshold")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--check", only_check,
                         "Run one check: coefficients | genfun | oracle | "
                         "purification | exponent");
  verify_cmd->add_option("--nc", verify_nc,
                         "Narrow the purification check to one n_c");

  CommonOptions sweep_opts;
  std::string sweep_nc;
  std::string sweep_r = "0";
  std::string sweep_m = "0";
  std::string sweep_variant = "add";
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Distribution tables over a parameter grid "
                                  "(long-format output)");
  sweep_cmd->add_option("--nc", sweep_nc, "n_c values: 'a,b,c' or 'lo:hi:count'")
      ->required();
  sweep_cmd->add_option("--r", sweep_r, "r values: 'a,b,c' or 'lo:hi:count'");
  sweep_cmd->add_option("--m", sweep_m, "m values: 'a,b,c' or 'lo:hi:count'");
  sweep_cmd->add_option("--variant", sweep_variant, "add | sub | both")
      ->check(CLI::IsMember({"add", "sub", "both"}));
  sweep_cmd->add_option("--nmax", sweep_opts.nmax,
                        "Largest photon number per table ('auto' = mass-based)");
  add_output_options(sweep_cmd, sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (norm_cmd->parsed()) return run_norm(norm_opts);
    if (pnd_cmd->parsed()) return run_pnd(pnd_opts);
    if (genfun_cmd->parsed()) return run_genfun(genfun_opts, genfun_f);
    if (verify_cmd->parsed()) {
      if (!only_check.empty()) check_opts.only_check = only_check;
      if (verify_nc >= 0.0) check_opts.n_c = verify_nc;
      return run_verify(verify_opts, check_opts);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep_opts, sweep_nc, sweep_r, sweep_m, sweep_variant);
    }
  } catch (const photonstat::zero_norm_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitZeroNorm;
  } catch (const photonstat::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
