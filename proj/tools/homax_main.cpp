// Command-line front end over the homax library: space generation and
// inspection, operator evaluation, and the verification suites.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homax/errors.hpp"
#include "homax/generators.hpp"
#include "homax/io.hpp"
#include "homax/norms.hpp"
#include "homax/operators.hpp"
#include "homax/space.hpp"
#include "homax/verify.hpp"

namespace {

constexpr int kExitFail = 1;  // a verification report did not pass
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitValidation = 4;

struct GenOpts {
  std::string kind;
  std::string out;
  int n = 0;
  double length = 1.0;
  double lambda_b = 1.0;
  double r_max = 10.0;
  double dim_growth = 1.0;
};

struct InspectOpts {
  std::string in;
};

struct EvalOpts {
  std::string in, f_path, b_path, op, out;
  double p = 1.0;
  double delta = 0.5;
};

struct VerifyOpts {
  std::string suite, in, config, out = ".";
  std::uint64_t seed = 0;
  int threads = 0;  // 0 keeps the config value
};

int run_gen(const GenOpts& o) {
  homax::Space s = [&] {
    if (o.kind == "grid1d") return homax::make_grid_1d(o.n, o.length);
    if (o.kind == "bessel")
      return homax::make_bessel_halfline(o.lambda_b, o.n, o.r_max);
    return homax::make_finite_torus(o.n, o.dim_growth);
  }();
  homax::save_space_json(s, o.out);
  std::cout << "wrote " << o.out << " (" << s.n() << " points)\n";
  return 0;
}

int run_inspect(const InspectOpts& o) {
  const homax::Space s = homax::load_space_json(o.in);
  const double c_mu = homax::doubling_constant(s);
  std::cout << "points:                   " << s.n() << "\n"
            << "total_mass:               " << homax::format_g17(s.total_mass()) << "\n"
            << "diameter:                 " << homax::format_g17(s.diameter()) << "\n"
            << "quasi_triangle_constant:  " << homax::format_g17(s.a0()) << "\n"
            << "doubling_constant:        " << homax::format_g17(c_mu) << "\n"
            << "upper_dimension_estimate: "
            << homax::format_g17(homax::upper_dimension_estimate(s, c_mu)) << "\n";
  return 0;
}

int run_eval(const EvalOpts& o) {
  const homax::Space s = homax::load_space_json(o.in);
  const homax::FieldFunction f = homax::load_field_json(o.f_path, s.n());
  const bool needs_b =
      o.op == "cb" || o.op == "comm-mp" || o.op == "comm-sharp";
  if (needs_b && o.b_path.empty())
    throw homax::BadParameter("operator '" + o.op + "' needs --b");
  homax::FieldFunction b;
  if (!o.b_path.empty()) b = homax::load_field_json(o.b_path, s.n());

  homax::FieldFunction result;
  if (o.op == "mp") result = homax::maximal(s, f, o.p);
  else if (o.op == "sharp") result = homax::sharp_maximal(s, f);
  else if (o.op == "m2") result = homax::iterated_maximal(s, f);
  else if (o.op == "mllogl") result = homax::maximal_llogl(s, f);
  else if (o.op == "cb") result = homax::maximal_commutator(s, b, f);
  else if (o.op == "comm-mp") result = homax::commutator_maximal(s, b, f, o.p);
  else if (o.op == "comm-sharp") result = homax::commutator_sharp(s, b, f);
  else if (o.op == "delta")
    result = homax::delta_variant(s, f, o.delta, homax::DeltaKind::Plain);
  else
    result = homax::delta_variant(s, f, o.delta, homax::DeltaKind::Sharp);

  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(s.n()));
  for (int i = 0; i < s.n(); ++i)
    rows.push_back({static_cast<double>(s.point_id(i)), result[i]});
  homax::write_csv(o.out, {"point_id", "value"}, rows);
  std::cout << "wrote " << o.out << "\n";
  return 0;
}

int run_verify(const VerifyOpts& o) {
  const homax::Space s = homax::load_space_json(o.in);
  homax::VerifyConfig cfg;
  if (!o.config.empty()) cfg = homax::VerifyConfig::load(o.config);
  if (o.threads > 0) cfg.threads = o.threads;

  const homax::SuiteResult res = homax::run_suite(o.suite, s, o.seed, cfg);

  std::filesystem::create_directories(o.out);
  const std::string base = o.out + "/";
  homax::write_reports_json(res.reports, base + "reports.json");
  homax::write_reports_csv(res.reports, base + "reports.csv");
  for (const homax::RowTable& t : res.tables)
    homax::write_csv(base + t.name + ".csv", t.header, t.rows);

  for (const homax::Report& r : res.reports) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.check_id
              << "  instances=" << r.instances
              << "  max_violation=" << homax::format_g17(r.max_violation);
    if (!r.exact_tier)
      std::cout << "  fitted=" << homax::format_g17(r.fitted_constant);
    std::cout << "\n";
  }
  const bool ok = homax::all_pass(res.reports);
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << " ("
            << res.reports.size() << " reports in " << o.out << ")\n";
  return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximal operators and their commutators on finite doubling spaces"};
  app.require_subcommand(1);

  GenOpts gen_opts;
  InspectOpts inspect_opts;
  EvalOpts eval_opts;
  VerifyOpts verify_opts;

  auto* space_cmd = app.add_subcommand("space", "generate or inspect spaces");
  space_cmd->require_subcommand(1);
  auto* gen = space_cmd->add_subcommand("gen", "write a generated space as JSON");
  gen->add_option("--kind", gen_opts.kind, "grid1d, bessel, or torus")
      ->required()
      ->check(CLI::IsMember({"grid1d", "bessel", "torus"}));
  gen->add_option("--n", gen_opts.n, "point count")->required();
  gen->add_option("--length", gen_opts.length, "grid1d: segment length");
  gen->add_option("--lambda-b", gen_opts.lambda_b, "bessel: measure parameter");
  gen->add_option("--r-max", gen_opts.r_max, "bessel: right endpoint");
  gen->add_option("--dim-growth", gen_opts.dim_growth,
                  "torus: growth exponent for the snowflaked metric");
  gen->add_option("--out", gen_opts.out, "output JSON path")->required();

  auto* inspect = space_cmd->add_subcommand("inspect", "print summary quantities");
  inspect->add_option("--in", inspect_opts.in, "space JSON path")->required();

  auto* eval = app.add_subcommand("eval", "evaluate an operator on a function");
  eval->add_option("--in", eval_opts.in, "space JSON path")->required();
  eval->add_option("--f", eval_opts.f_path, "function JSON (bare array)")->required();
  eval->add_option("--b", eval_opts.b_path, "symbol JSON for commutators");
  eval->add_option("--op", eval_opts.op, "operator to apply")
      ->required()
      ->check(CLI::IsMember({"mp", "sharp", "m2", "mllogl", "cb", "comm-mp",
                             "comm-sharp", "delta", "delta-sharp"}));
  eval->add_option("--p", eval_opts.p, "exponent for mp / comm-mp");
  eval->add_option("--delta", eval_opts.delta, "exponent for delta variants");
  eval->add_option("--out", eval_opts.out, "output CSV path")->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", verify_opts.suite,
                     "pointwise, equivalence, weaktype, counterexample, "
                     "weights, jn, or all")
      ->required();
  verify->add_option("--in", verify_opts.in, "space JSON path")->required();
  verify->add_option("--seed", verify_opts.seed, "ensemble seed (default 0)");
  verify->add_option("--config", verify_opts.config, "tolerance config JSON");
  verify->add_option("--threads", verify_opts.threads,
                     "worker threads (0 = config value)");
  verify->add_option("--out", verify_opts.out, "report directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return run_gen(gen_opts);
    if (*inspect) return run_inspect(inspect_opts);
    if (*eval) return run_eval(eval_opts);
    return run_verify(verify_opts);
  } catch (const homax::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const homax::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
