#include "bconv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bconv/errors.hpp"
#include "bconv/gamma_lattice.hpp"
#include "bconv/io.hpp"
#include "bconv/maximality.hpp"
#include "bconv/measure.hpp"
#include "bconv/spectral.hpp"
#include "bconv/transfer.hpp"
#include "bconv/zero_set.hpp"

namespace bconv::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string lambda = "1/8";
  long n = 4;
  long p = 1;
  std::string depths = "4";  // comma list of digit depths K
  int product_depth = 40;
  std::string grid;
  std::string t;
  std::string set;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";

  // subcommand specific
  std::size_t count = 1000;
  int terms = 60;
  std::int64_t height = 1000000;
  int iters = 60;
  double tol = 1e-10;
  std::size_t nodes = kDefaultNodeCount;
  std::string start = "sine";
  std::string function_out;
  int chain_k = 0;
  std::string b_set;
  std::string l_set;
  long modulus = 8;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_rational(s));
  if (out.empty()) throw ContractViolation("empty list");
  return out;
}

std::vector<int> parse_depths(const std::string& text) {
  std::vector<int> out;
  for (const auto& r : parse_rational_list(text)) {
    if (!is_integer(r) || r < 0 || r > 31) throw ContractViolation("digit depth must be an integer in [0, 31]");
    out.push_back(static_cast<int>(r.get_num().get_si()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Rational text keeps its exact value; decimal text becomes a float-only point.
SpectralPoint parse_point(const std::string& text) {
  try {
    return SpectralPoint::from(parse_rational(text));
  } catch (const ContractViolation&) {
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) throw ContractViolation("cannot parse '" + text + "' as a number");
  return SpectralPoint{v, std::nullopt};
}

std::vector<SpectralPoint> points_from(const RunConfig& cfg) {
  if (!cfg.grid.empty()) return Grid::parse(cfg.grid).points();
  if (!cfg.t.empty()) {
    std::vector<SpectralPoint> pts;
    for (const auto& s : split(cfg.t, ',')) pts.push_back(parse_point(s));
    return pts;
  }
  throw ContractViolation("give evaluation points with --t or --grid");
}

std::vector<Rational> frequencies_from(const RunConfig& cfg) {
  if (!cfg.set.empty()) return parse_rational_list(cfg.set);
  const auto depths = parse_depths(cfg.depths);
  return GammaLattice(SpectrumSpec::make(cfg.n, cfg.p, depths.back())).values();
}

void cmd_muhat(const RunConfig& cfg, std::ostream& out) {
  const auto lam = BernoulliParam::parse(cfg.lambda);
  const auto pts = points_from(cfg);
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& pt : pts) {
      const auto v = eval_muhat(lam, pt.t, cfg.product_depth);
      rows.push_back({{"t", pt.t}, {"value", v.value}, {"error_bound", v.abs_error_bound}, {"depth", v.product_depth}});
    }
    out << json{{"lambda", lam.to_string()}, {"values", rows}}.dump(2) << '\n';
    return;
  }
  out << "t,value,error_bound,depth\n";
  for (const auto& pt : pts) {
    const auto v = eval_muhat(lam, pt.t, cfg.product_depth);
    out << io::format_double(pt.t) << ',' << io::format_double(v.value) << ',' << io::format_double(v.abs_error_bound)
        << ',' << v.product_depth << '\n';
  }
}

void cmd_gamma(const RunConfig& cfg, std::ostream& out) {
  const auto depths = parse_depths(cfg.depths);
  const auto spec = SpectrumSpec::make(cfg.n, cfg.p, depths.back());
  const auto elements = enumerate_gamma(spec);
  io::write_gamma_csv(out, spec, elements);
}

void cmd_ortho(const RunConfig& cfg, std::ostream& out) {
  const auto lam = BernoulliParam::parse(cfg.lambda);
  if (!cfg.t.empty()) {
    const Rational t = parse_rational(cfg.t);
    out << io::to_json(in_zero_set(lam, t)).dump(2) << '\n';
    return;
  }
  const auto set = frequencies_from(cfg);
  const auto report = pairwise_orthogonal(lam, set);
  json j{{"lambda", lam.to_string()},
         {"size", set.size()},
         {"all_orthogonal", report.all_orthogonal},
         {"pairs_checked", report.pairs_checked}};
  if (report.first_failure) {
    const auto [a, b] = *report.first_failure;
    j["first_failure"] = {to_fraction_string(set[a]), to_fraction_string(set[b])};
  } else {
    j["first_failure"] = nullptr;
  }
  out << j.dump(2) << '\n';
}

void cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const auto lam = BernoulliParam::parse(cfg.lambda);
  const auto depths = parse_depths(cfg.depths);
  if (cfg.grid.empty()) throw ContractViolation("scan needs --grid lo:hi:count");
  const auto pts = Grid::parse(cfg.grid).points();
  const auto scans = scan_history(lam, cfg.n, cfg.p, depths, pts, cfg.product_depth);
  if (cfg.format == "json") {
    json blocks = json::array();
    for (const auto& s : scans) {
      json b{{"K", s.digit_depth},
             {"D", s.product_depth},
             {"t", s.grid},
             {"value", s.values},
             {"error_bound", s.error_bounds},
             {"note", s.term_truncation_note}};
      if (s.grid.size() >= 3) b["max_slope"] = derivative_scan(s);
      blocks.push_back(std::move(b));
    }
    json j{{"lambda", lam.to_string()}, {"n", cfg.n}, {"p", cfg.p}, {"scans", blocks}};
    j["diagnosis"] = scans.size() >= 2 ? json(std::string(to_string(classify_scan(scans)))) : json(nullptr);
    out << j.dump(2) << '\n';
    return;
  }
  io::write_scan_csv(out, scans);
}

void cmd_gram(const RunConfig& cfg, std::ostream& out) {
  const auto lam = BernoulliParam::parse(cfg.lambda);
  const auto freqs = frequencies_from(cfg);
  const auto g = gram_section(lam, freqs, cfg.product_depth);
  const auto bounds = frame_bound_estimates(g, std::max(1, cfg.iters));
  out << io::to_json(g, bounds).dump(2) << '\n';
}

std::function<double(double)> start_function(const std::string& name) {
  if (name == "one") return [](double) { return 1.0; };
  if (name == "sine") return [](double t) { return 1.0 + 0.5 * std::sin(std::numbers::pi * t); };
  if (name == "linear") return [](double t) { return 1.0 + t; };
  if (name == "exp") return [](double t) { return std::exp(-t); };
  throw ContractViolation("unknown start function '" + name + "' (one, sine, linear, exp)");
}

void cmd_transfer(const RunConfig& cfg, std::ostream& out) {
  const auto spec = TransferSpec::make(cfg.n, cfg.p);
  const auto interval = invariant_interval(cfg.n, cfg.p);
  const auto f0 = GridFunction::sample(0.0, interval.hi.get_d(), cfg.nodes, start_function(cfg.start));
  const auto run = iterate_to_fixed_point(spec, f0, cfg.iters, cfg.tol);
  if (!cfg.function_out.empty()) {
    std::ofstream f(cfg.function_out, std::ios::binary);
    if (!f) throw ContractViolation("cannot open " + cfg.function_out);
    io::write_grid_function_csv(f, run.f);
  }
  if (cfg.format == "json") {
    const auto c = contractivity_constant(cfg.n, cfg.p);
    out << json{{"n", cfg.n},
                {"p", cfg.p},
                {"interval", {to_fraction_string(interval.lo), to_fraction_string(interval.hi)}},
                {"contractivity_constant", c.constant},
                {"contractive", c.contractive},
                {"iterations", run.iterations},
                {"converged", run.converged},
                {"sup_dev", run.sup_deviation},
                {"seminorm", run.seminorm}}
                .dump(2)
        << '\n';
    return;
  }
  io::write_history_csv(out, run);
}

void cmd_chain(const RunConfig& cfg, std::ostream& out) {
  const auto depths = parse_depths(cfg.depths);
  const int depth = depths.back();
  if (depth < 1) throw ContractViolation("chain needs digit depth K >= 1");
  if (cfg.chain_k < 0 || cfg.chain_k > kDefaultChainCap) {
    throw ResourceLimit("chain index must lie in [0, " + std::to_string(kDefaultChainCap) + "]");
  }
  const auto pts = cfg.grid.empty() ? Grid::make(0, 3, 64).points() : Grid::parse(cfg.grid).points();
  const auto op = chain_operator_38(cfg.chain_k);
  const auto fk = chain_function_38(cfg.chain_k, depth, pts, cfg.product_depth);
  std::vector<SpectralPoint> mapped;
  for (const auto& pt : pts) {
    mapped.push_back(op.branch0(pt));
    mapped.push_back(op.branch1(pt));
  }
  const auto fnext = chain_function_38(cfg.chain_k + 1, depth - 1, mapped, cfg.product_depth - 1);
  out << "t,f_k,transfer_f_next,residual,error_bound\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double transferred = op.combine(pts[i].t, fnext[2 * i].value, fnext[2 * i + 1].value);
    const double w = op.weight(pts[i].t);
    const double bound = fk[i].per_term_error + w * fnext[2 * i].per_term_error + (1 - w) * fnext[2 * i + 1].per_term_error;
    out << io::format_double(pts[i].t) << ',' << io::format_double(fk[i].value) << ',' << io::format_double(transferred)
        << ',' << io::format_double(std::abs(fk[i].value - transferred)) << ',' << io::format_double(bound) << '\n';
  }
}

void cmd_maximal(const RunConfig& cfg, std::ostream& out) {
  if (cfg.t.empty()) throw ContractViolation("maximal needs --t");
  out << io::to_json(find_witness(parse_rational(cfg.t))).dump(2) << '\n';
}

int cmd_stress(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto report = stress_maximality(cfg.count, cfg.height, cfg.seed);
  io::write_stress_csv(out, report);
  if (!report.unresolved.empty()) {
    err << report.unresolved.size() << " unresolved inputs, first " << to_fraction_string(report.unresolved.front())
        << '\n';
    return kUnresolved;
  }
  return kOk;
}

void cmd_sample(const RunConfig& cfg, std::ostream& out) {
  const auto lam = BernoulliParam::parse(cfg.lambda);
  const auto samples = sample_measure(lam, cfg.count, cfg.terms, cfg.seed);
  out << "index,value,tail_radius\n";
  const std::string radius = io::format_double(samples.tail_radius);
  for (std::size_t i = 0; i < samples.values.size(); ++i) {
    out << i << ',' << io::format_double(samples.values[i]) << ',' << radius << '\n';
  }
}

void cmd_hadamard(const RunConfig& cfg, std::ostream& out) {
  std::vector<Integer> b;
  for (const auto& r : parse_rational_list(cfg.b_set)) {
    if (!is_integer(r)) throw ContractViolation("B must contain integers");
    b.push_back(r.get_num());
  }
  const auto l = parse_rational_list(cfg.l_set);
  const bool ok = is_hadamard_triple(b, l, cfg.modulus);
  json jb = json::array(), jl = json::array();
  for (const auto& x : b) jb.push_back(x.get_str());
  for (const auto& x : l) jl.push_back(to_fraction_string(x));
  out << json{{"B", jb}, {"L", jl}, {"N", cfg.modulus}, {"hadamard", ok}}.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Fourier-analytic invariants of Bernoulli convolution measures", "bconv"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "write results to this file instead of stdout");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto lambda_opt = [&](CLI::App* sub) { sub->add_option("--lambda", cfg.lambda, "contraction ratio q/m"); };
  auto lattice_opts = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "lattice base is 2n");
    sub->add_option("--p", cfg.p, "odd dilation");
    sub->add_option("--K", cfg.depths, "digit depth (comma list where several are accepted)");
  };

  auto* muhat = app.add_subcommand("muhat", "truncated Fourier transform with error bound");
  lambda_opt(muhat);
  muhat->add_option("--t", cfg.t, "evaluation point(s), comma separated");
  muhat->add_option("--grid", cfg.grid, "lo:hi:count");
  muhat->add_option("--depth,--D", cfg.product_depth, "product depth");
  common(muhat);

  auto* gamma = app.add_subcommand("gamma", "enumerate p*Gamma(1/2n)");
  lattice_opts(gamma);
  common(gamma);

  auto* ortho = app.add_subcommand("ortho", "exact orthogonality / zero-set certificates");
  lambda_opt(ortho);
  lattice_opts(ortho);
  ortho->add_option("--set", cfg.set, "explicit frequencies, comma separated rationals");
  ortho->add_option("--t", cfg.t, "single rational: print its zero-set certificate");
  common(ortho);

  auto* scan = app.add_subcommand("scan", "truncated spectral function over a grid");
  lambda_opt(scan);
  lattice_opts(scan);
  scan->add_option("--D", cfg.product_depth, "product depth");
  scan->add_option("--grid", cfg.grid, "lo:hi:count")->required();
  common(scan);

  auto* gram = app.add_subcommand("gram", "finite Gram section and eigenvalue estimates");
  lambda_opt(gram);
  lattice_opts(gram);
  gram->add_option("--set", cfg.set, "explicit frequencies, comma separated rationals");
  gram->add_option("--D", cfg.product_depth, "product depth");
  gram->add_option("--iters", cfg.iters, "power iteration steps");
  common(gram);

  auto* transfer = app.add_subcommand("transfer", "fixed-point iteration of T_pL");
  transfer->add_option("--n", cfg.n, "lattice base is 2n");
  transfer->add_option("--p", cfg.p, "odd dilation");
  transfer->add_option("--nodes", cfg.nodes, "grid nodes");
  transfer->add_option("--iters", cfg.iters, "maximum iterations");
  transfer->add_option("--tol", cfg.tol, "stop when sup|f_i - f_{i-1}| < tol");
  transfer->add_option("--start", cfg.start, "one, sine, linear or exp");
  transfer->add_option("--function-out", cfg.function_out, "write the final function as t,value CSV");
  common(transfer);

  auto* chain = app.add_subcommand("chain", "chain identity T_k f_{k+1} = f_k for mu_{3/8}");
  chain->add_option("--k", cfg.chain_k, "chain index");
  chain->add_option("--K", cfg.depths, "digit depth of f_k");
  chain->add_option("--D", cfg.product_depth, "product depth of f_k");
  chain->add_option("--grid", cfg.grid, "lo:hi:count");
  common(chain);

  auto* maximal = app.add_subcommand("maximal", "maximality witness in Gamma(1/8) for mu_{3/8}");
  maximal->add_option("--t", cfg.t, "rational t")->required();
  common(maximal);

  auto* stress = app.add_subcommand("stress", "randomized maximality stress test");
  stress->add_option("--count", cfg.count, "inputs");
  stress->add_option("--height", cfg.height, "height bound on numerator and denominator");
  stress->add_option("--seed", cfg.seed, "generator seed");
  common(stress);

  auto* sample = app.add_subcommand("sample", "draws from mu_lambda");
  lambda_opt(sample);
  sample->add_option("--count", cfg.count, "draws");
  sample->add_option("--terms", cfg.terms, "coin tosses per draw");
  sample->add_option("--seed", cfg.seed, "generator seed");
  common(sample);

  auto* hadamard = app.add_subcommand("hadamard", "Hadamard triple check");
  hadamard->add_option("--B", cfg.b_set, "integer set, comma separated")->required();
  hadamard->add_option("--L", cfg.l_set, "rational set, comma separated")->required();
  hadamard->add_option("--N", cfg.modulus, "modulus");
  common(hadamard);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    if (muhat->parsed()) cmd_muhat(cfg, buffer);
    else if (gamma->parsed()) cmd_gamma(cfg, buffer);
    else if (ortho->parsed()) cmd_ortho(cfg, buffer);
    else if (scan->parsed()) cmd_scan(cfg, buffer);
    else if (gram->parsed()) cmd_gram(cfg, buffer);
    else if (transfer->parsed()) cmd_transfer(cfg, buffer);
    else if (chain->parsed()) cmd_chain(cfg, buffer);
    else if (maximal->parsed()) cmd_maximal(cfg, buffer);
    else if (stress->parsed()) code = cmd_stress(cfg, buffer, err);
    else if (sample->parsed()) cmd_sample(cfg, buffer);
    else if (hadamard->parsed()) cmd_hadamard(cfg, buffer);
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kContractViolation;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const Unresolved& e) {
    err << "unresolved: " << e.what() << '\n';
    return kUnresolved;
  }

  if (cfg.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << cfg.out << '\n';
      return kContractViolation;
    }
    f << buffer.str();
  }
  return code;
}

}  // namespace bconv::cli
