#include "curlspec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "curlspec/antisym_tube.hpp"
#include "curlspec/big_rational.hpp"
#include "curlspec/cross_section.hpp"
#include "curlspec/exact_rational.hpp"
#include "curlspec/grad_shafranov.hpp"
#include "curlspec/symmetry_decider.hpp"

namespace curlspec::cli {
namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VerifyOptions {
  int terms = 5;
  std::string golden;
};

struct Thm1Options {
  double R = 1.0;
  double a_min = 0.01;
  double a_max = 0.5;
  double a_step = 0.01;
  double grid_h = 0.0;  // relative to a; 0 skips the lattice column
  double alpha_max = 10.0;
  double scan_step = 0.005;
};

struct Thm2Options {
  double b = 1.0;
  int n_max = 20;
};

struct ScanOptions {
  std::string family = "disk";
  double a = 1.0;
  double b = 2.0;
  double L = 2.0 * std::numbers::pi;
  bool theorem2 = false;
  int m = 1;
  int m_max = 8;
  int n_ell_max = 8;
  double lambda_max = 0.0;
  double scan_step = 0.01;
  double alpha_max = 10.0;
};

struct GsOptions {
  std::string section = "disk";
  double R = 1.0;
  double a = 0.1;
  double r_lo = 1.0;
  double r_hi = 2.0;
  double z_lo = -1.0;
  double z_hi = 1.0;
  std::string mask;
  double grid_h = 0.0;  // 0: 1/32 of the smallest section dimension
  bool richardson = false;
};

struct Options {
  std::string config;
  unsigned threads = 1;
  std::string out;
  VerifyOptions verify;
  Thm1Options thm1;
  Thm2Options thm2;
  ScanOptions scan;
  GsOptions gs;
};

std::unique_ptr<CLI::App> build_app(Options& o) {
  auto app = std::make_unique<CLI::App>("Symmetric and antisymmetric curl eigenvalue bounds on tori", "curlspec");
  app->require_subcommand(1);
  app->add_option("--config", o.config, "key=value file; command-line flags take precedence");
  app->add_option("--threads", o.threads, "Worker threads for scans (capped by CURLSPEC_THREADS)");

  auto* v = app->add_subcommand("verify-appendix-d", "Exact-rational negativity certificate at s = 287/100");
  v->add_option("--M", o.verify.terms, "Taylor truncation index")->check(CLI::Range(1, 200));
  v->add_option("--golden", o.verify.golden, "JSON file of expected values");
  v->add_option("--out", o.out, "Write the certificate here instead of stdout");

  auto* t1 = app->add_subcommand("reproduce-thm1", "Standard-torus bounds over a sweep of minor radii");
  t1->add_option("--R", o.thm1.R, "Major radius")->check(CLI::PositiveNumber);
  t1->add_option("--a-min", o.thm1.a_min, "Smallest minor radius");
  t1->add_option("--a-max", o.thm1.a_max, "Largest minor radius");
  t1->add_option("--a-step", o.thm1.a_step, "Minor radius step");
  t1->add_option("--grid-h", o.thm1.grid_h, "Lattice spacing relative to a for a numerical lambda_s column");
  t1->add_option("--alpha-max", o.thm1.alpha_max, "j* scan half-width in alpha");
  t1->add_option("--scan-step", o.thm1.scan_step, "j* lattice step");
  t1->add_option("--out", o.out, "Write CSV here instead of stdout");

  auto* t2 = app->add_subcommand("reproduce-thm2", "Asymmetric annular-cylinder construction");
  t2->add_option("--b", o.thm2.b, "Outer radius")->check(CLI::PositiveNumber);
  t2->add_option("--n-max", o.thm2.n_max, "Largest period multiple in the table")->check(CLI::Range(1, 100000));
  t2->add_option("--out", o.out, "Write JSON here instead of stdout");

  auto* s = app->add_subcommand("scan", "Dispersion roots on flat tubes");
  s->add_option("--family", o.scan.family, "disk, annulus or fplane")
      ->check(CLI::IsMember({"disk", "annulus", "fplane"}));
  s->add_option("--a", o.scan.a, "Disk radius or inner annulus radius")->check(CLI::PositiveNumber);
  s->add_option("--b", o.scan.b, "Outer annulus radius")->check(CLI::PositiveNumber);
  s->add_option("--L", o.scan.L, "Tube period")->check(CLI::PositiveNumber);
  s->add_flag("--theorem2", o.scan.theorem2, "Annulus: take a and L from the g root at this b");
  s->add_option("--m", o.scan.m, "fplane: azimuthal index")->check(CLI::Range(1, 63));
  s->add_option("--m-max", o.scan.m_max, "Largest |m|")->check(CLI::Range(0, 63));
  s->add_option("--n-ell-max", o.scan.n_ell_max, "Largest |n_ell|")->check(CLI::NonNegativeNumber);
  s->add_option("--lambda-max", o.scan.lambda_max, "Upper end of the lambda scan (0: default)")
      ->check(CLI::NonNegativeNumber);
  s->add_option("--scan-step", o.scan.scan_step, "Scan step in units of 1/(radial length)")
      ->check(CLI::PositiveNumber);
  s->add_option("--alpha-max", o.scan.alpha_max, "fplane: half-width in alpha");
  s->add_option("--out", o.out, "Write CSV here instead of stdout");

  auto* g = app->add_subcommand("gs", "Grad-Shafranov eigenvalues and brackets on a cross-section");
  g->add_option("--section", o.gs.section, "disk, rectangle or mask")
      ->check(CLI::IsMember({"disk", "rectangle", "mask"}));
  g->add_option("--R", o.gs.R, "Disk centre radius");
  g->add_option("--a", o.gs.a, "Disk radius");
  g->add_option("--r-lo", o.gs.r_lo, "Rectangle inner radius");
  g->add_option("--r-hi", o.gs.r_hi, "Rectangle outer radius");
  g->add_option("--z-lo", o.gs.z_lo, "Rectangle bottom");
  g->add_option("--z-hi", o.gs.z_hi, "Rectangle top");
  g->add_option("--mask", o.gs.mask, "Grid mask file");
  g->add_option("--grid-h", o.gs.grid_h, "Absolute lattice spacing")->check(CLI::NonNegativeNumber);
  g->add_flag("--richardson", o.gs.richardson, "Add a three-grid study on h, h/2, h/4");
  g->add_option("--out", o.out, "Write JSON here instead of stdout");
  return app;
}

void parse(CLI::App& app, std::vector<std::string> args) {
  std::reverse(args.begin(), args.end());
  app.parse(args);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(number) + ": expected key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

bool truthy(const std::string& v) { return v == "true" || v == "1" || v == "yes" || v == "on"; }

// Arguments with config entries appended for every option the command line
// left unset.
std::vector<std::string> merge_config(const CLI::App& app, const std::vector<std::string>& args) {
  const auto entries = read_config(app.get_option("--config")->as<std::string>());
  const CLI::App* sub = app.get_subcommands().front();
  std::vector<std::string> global;
  std::vector<std::string> local;
  for (const auto& [key, value] : entries) {
    if (key == "config") throw UsageError("config files cannot include other config files");
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    auto* target = &local;
    if (opt == nullptr) {
      opt = app.get_option_no_throw(flag);
      target = &global;
    }
    if (opt == nullptr) throw UsageError("unknown config key '" + key + "' for " + sub->get_name());
    if (opt->count() > 0) continue;
    if (opt->get_expected_min() == 0) {
      if (truthy(value)) target->push_back(flag);
    } else {
      target->push_back(flag);
      target->push_back(value);
    }
  }
  std::vector<std::string> merged = global;
  merged.insert(merged.end(), args.begin(), args.end());
  merged.insert(merged.end(), local.begin(), local.end());
  return merged;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Result {
  int status = kExitOk;
  std::string body;
};

// ---------------------------------------------------------------------------

Result cmd_verify(const VerifyOptions& o, std::ostream& err) {
  const auto cert = exact::certify_negativity(BigRational::parse("287/100"), o.terms);
  std::map<std::string, BigRational> golden;
  const auto reference = exact::reference_golden_values();
  if (!o.golden.empty()) {
    golden = exact::parse_golden_values(read_file(o.golden));
  } else if (o.terms == 5) {
    golden = reference;
  } else {
    golden = {{"r_lower_check", reference.at("r_lower_check")}};
  }
  Result res{kExitOk, exact::to_json(cert) + "\n"};
  const auto values = exact::certificate_values(cert);
  for (const auto& name : exact::golden_mismatches(cert, golden)) {
    std::string got = "(absent)";
    for (const auto& [n, v] : values) {
      if (n == name) got = v.to_string();
    }
    err << "mismatch: " << name << " expected " << golden.at(name).to_string() << " got " << got << "\n";
    res.status = kExitVerificationFailed;
  }
  if (!cert.verdict) {
    for (const auto& h : cert.hypotheses()) {
      if (!h.holds) err << "failed hypothesis: " << h.name << ": " << h.statement << "\n";
    }
    res.status = kExitVerificationFailed;
  }
  return res;
}

Result cmd_thm1(const Thm1Options& o, unsigned threads, std::ostream& err) {
  if (!(o.a_step > 0.0) || !(o.a_min > 0.0) || !(o.a_min <= o.a_max) || !(o.a_max < o.R)) {
    throw UsageError("empty or invalid a-range: need 0 < a-min <= a-max < R and a-step > 0");
  }
  if (o.grid_h < 0.0) throw UsageError("grid-h must be non-negative");
  antisym::JStarConfig jc;
  jc.alpha_max = o.alpha_max;
  jc.step = o.scan_step;
  jc.threads = threads;
  const auto js = antisym::j_star(jc);
  err << "j* = " << num(js.value) << " +/- " << num(js.error_bar) << "\n";

  std::ostringstream os;
  os << "a,sym_upper,antisym_lower,verdict" << (o.grid_h > 0.0 ? ",lambda_s_grid" : "") << "\n";
  const auto count = static_cast<long>(std::floor((o.a_max - o.a_min) / o.a_step + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) {
    const double a = o.a_min + o.a_step * static_cast<double>(i);
    const auto bounds = decider::theorem1_bounds(a, o.R, js.lower_bound());
    const auto v = decider::decide(decider::StandardTorus{a, o.R}, js);
    os << num(a) << "," << num(bounds.sym_upper) << "," << num(bounds.antisym_lower) << ","
       << decider::to_string(v.verdict);
    if (o.grid_h > 0.0) os << "," << num(gs::symmetric_amperian_lambda1(CrossSection::disk(o.R, a), o.grid_h * a));
    os << "\n";
  }
  return {kExitOk, os.str()};
}

Result cmd_thm2(const Thm2Options& o, std::ostream& err) {
  antisym::Theorem2Parameters p;
  try {
    p = antisym::find_theorem2_parameters(o.b);
  } catch (const antisym::ScanFailure& e) {
    err << "root finding failed: " << e.what() << "\n";
    return {kExitVerificationFailed, {}};
  }
  const auto bounds = decider::theorem2_bounds(p);
  const double det = antisym::annulus_determinant({p.a, p.b}, {1, 1, p.length}, p.lambda);

  ordered_json doc;
  doc["r"] = p.r;
  doc["b"] = p.b;
  doc["a"] = p.a;
  doc["L"] = p.length;
  doc["lambda"] = p.lambda;
  doc["ell"] = p.ell;
  doc["g_residual"] = p.g_residual;
  doc["determinant_residual"] = det;
  doc["alternative_roots"] = p.alternative_roots;
  doc["sym_lower"] = bounds.sym_lower;
  doc["N_threshold"] = bounds.n_threshold;
  doc["table"] = ordered_json::array();
  bool ok = std::abs(det) <= 1e-6;
  if (!ok) err << "determinant residual " << num(det) << " exceeds 1e-6\n";
  for (int n = 1; n <= o.n_max; ++n) {
    const auto v = decider::decide(decider::AnnularCylinderFamily{p.a, p.b, p.length, n}, {});
    const bool asym = v.verdict == decider::Verdict::Asymmetric;
    if (n >= bounds.n_threshold && !asym) {
      err << "n = " << n << " is past the threshold but not Asymmetric\n";
      ok = false;
    }
    doc["table"].push_back({{"n", n},
                            {"antisym_upper", bounds.antisym_upper(n)},
                            {"verdict", decider::to_string(v.verdict)},
                            {"margin", v.margin}});
  }
  return {ok ? kExitOk : kExitVerificationFailed, doc.dump(2) + "\n"};
}

Result cmd_scan(ScanOptions o, unsigned threads, std::ostream& err) {
  std::ostringstream os;
  if (o.family == "fplane") {
    antisym::JStarConfig jc;
    jc.alpha_max = o.alpha_max;
    jc.step = std::min(o.scan_step, 0.01);
    jc.threads = threads;
    const auto est = antisym::j_star_m(o.m, jc);
    err << "j*_" << o.m << " = " << num(est.value) << " +/- " << num(est.error_bar) << "\n";
    os << "m,alpha,kappa_root\n";
    for (const auto& z : est.first_zeros) os << o.m << "," << num(z.alpha) << "," << num(z.kappa) << "\n";
    return {kExitOk, os.str()};
  }
  antisym::ScanConfig sc;
  sc.m_max = o.m_max;
  sc.n_ell_max = o.n_ell_max;
  sc.lambda_max = o.lambda_max;
  sc.step = o.scan_step;
  sc.threads = threads;
  std::vector<antisym::ModeRoot> roots;
  if (o.family == "disk") {
    roots = antisym::scan_disk_roots(o.a, o.L, sc);
  } else {
    if (o.theorem2) {
      const auto p = antisym::find_theorem2_parameters(o.b);
      o.a = p.a;
      o.L = p.length;
      err << "theorem-2 parameters: a = " << num(p.a) << ", L = " << num(p.length) << ", lambda = " << num(p.lambda)
          << "\n";
    }
    if (!(o.a < o.b)) throw UsageError("annulus needs a < b");
    roots = antisym::scan_annulus_roots({o.a, o.b}, o.L, sc);
  }
  os << "m,n_ell,ell,lambda\n";
  for (const auto& r : roots) os << r.m << "," << r.n_ell << "," << num(r.ell) << "," << num(r.lambda) << "\n";
  return {kExitOk, os.str()};
}

ordered_json study_json(const gs::RichardsonStudy& s) {
  return {{"h", {s.h[0], s.h[1], s.h[2]}},
          {"values", {s.values[0], s.values[1], s.values[2]}},
          {"order", s.order},
          {"extrapolated", s.extrapolated},
          {"error_estimate", s.error_estimate}};
}

Result cmd_gs(const GsOptions& o, std::ostream& err) {
  std::optional<CrossSection> section;
  double h = o.grid_h;
  if (o.section == "disk") {
    section = CrossSection::disk(o.R, o.a);
    if (h == 0.0) h = o.a / 32.0;
  } else if (o.section == "rectangle") {
    section = CrossSection::rectangle(o.r_lo, o.r_hi, o.z_lo, o.z_hi);
    if (h == 0.0) h = std::min(o.r_hi - o.r_lo, o.z_hi - o.z_lo) / 32.0;
  } else {
    if (o.mask.empty()) throw UsageError("--section mask needs --mask FILE");
    auto grid = read_grid_mask_file(o.mask);
    if (h != 0.0 && std::abs(h - grid.h) > 1e-12 * grid.h) throw UsageError("a mask fixes grid-h to its own spacing");
    if (o.richardson) throw UsageError("Richardson refinement is unavailable for masks");
    h = grid.h;
    section = CrossSection::mask(std::move(grid));
  }
  const auto& s = *section;
  const auto lap = gs::laplacian_dirichlet_lambda1(s, h);
  const auto gsv = gs::grad_shafranov_lambda1(s, h);
  const auto ff = gs::solve_flux_free(s, h);
  const double lambda_s = std::sqrt(gsv.value);
  const bool in_bracket = gsv.bracket_low <= gsv.value && gsv.value <= gsv.bracket_high;
  const bool ordered = ff.lambda > lambda_s;

  ordered_json doc;
  doc["section"] = s.describe();
  doc["grid_h"] = h;
  doc["lambda1_D"] = lap.value;
  doc["lambda1_GS"] = gsv.value;
  doc["lambda1_s"] = lambda_s;
  doc["lambda1_sFF"] = ff.lambda;
  doc["brackets"] = {{"laplacian", {lap.bracket_low, lap.bracket_high}},
                     {"grad_shafranov", {gsv.bracket_low, gsv.bracket_high}},
                     {"grad_shafranov_contained", in_bracket}};
  doc["flux_free"] = {{"boundary_value", ff.boundary_value}, {"weighted_mean", ff.weighted_mean}};
  doc["fluxfree_exceeds_symmetric"] = ordered;
  bool ok = in_bracket && ordered;
  if (o.richardson) {
    const auto rd = gs::richardson([&](double hh) { return gs::laplacian_dirichlet_lambda1(s, hh).value; }, h);
    const auto rg = gs::richardson([&](double hh) { return gs::grad_shafranov_lambda1(s, hh).value; }, h);
    const double lo = rd.extrapolated + 3.0 / (4.0 * s.r_max() * s.r_max());
    const double hi = rd.extrapolated + 3.0 / (4.0 * s.r_min() * s.r_min());
    const double tol = 3.0 * std::max(rd.error_estimate, rg.error_estimate);
    const bool contained = lo - tol <= rg.extrapolated && rg.extrapolated <= hi + tol;
    const auto in_range = [](double p) { return p >= 1.5 && p <= 2.5; };
    doc["richardson"] = {{"lambda1_D", study_json(rd)},
                         {"lambda1_GS", study_json(rg)},
                         {"extrapolated_bracket", {lo, hi}},
                         {"tolerance", tol},
                         {"extrapolated_contained", contained},
                         {"order_in_range", in_range(rd.order) && in_range(rg.order)}};
    ok = ok && contained;
  }
  if (!in_bracket) err << "lambda1_GS lies outside its bracket\n";
  if (!ordered) err << "flux-free eigenvalue does not exceed the symmetric one\n";
  return {ok ? kExitOk : kExitVerificationFailed, doc.dump(2) + "\n"};
}

Result dispatch(const CLI::App& app, const Options& o, std::ostream& err) {
  const unsigned threads = o.threads == 0 ? 1 : o.threads;
  const std::string name = app.get_subcommands().front()->get_name();
  if (name == "verify-appendix-d") return cmd_verify(o.verify, err);
  if (name == "reproduce-thm1") return cmd_thm1(o.thm1, threads, err);
  if (name == "reproduce-thm2") return cmd_thm2(o.thm2, err);
  if (name == "scan") return cmd_scan(o.scan, threads, err);
  return cmd_gs(o.gs, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto options = std::make_unique<Options>();
  auto app = build_app(*options);
  try {
    parse(*app, args);
    if (!options->config.empty()) {
      const auto merged = merge_config(*app, args);
      options = std::make_unique<Options>();
      app = build_app(*options);
      parse(*app, merged);
    }
    const Result res = dispatch(*app, *options, err);
    if (options->out.empty()) {
      out << res.body;
    } else if (!res.body.empty()) {
      std::ofstream file(options->out, std::ios::binary);
      if (!file) throw UsageError("cannot write " + options->out);
      file << res.body;
    }
    return res.status;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app->exit(e, out, err);
      return kExitOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
}

}  // namespace curlspec::cli
