#include "toda/conformal.hpp"
#include "toda/verification.hpp"

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> cache_file() {
  const char* dir = std::getenv("TODA_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::string(dir) + "/n1_cache.json";
}

void load_cache(toda::CoefficientCache& cache) {
  if (auto path = cache_file()) cache.load_n1(*path);
}

void save_cache(const toda::CoefficientCache& cache) {
  if (auto path = cache_file()) cache.save_n1(*path);
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream file(out);
  if (!file) throw std::invalid_argument("cannot open output file: " + out);
  file << text << '\n';
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

int run_coeff(const std::string& sig_text, bool table, int max_weight) {
  toda::CoefficientCache cache;
  load_cache(cache);
  if (table) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 1; i <= max_weight; ++i) {
      std::vector<std::vector<std::pair<int, int>>> sides;
      toda::for_each_multiset_of_weight(
          i, i, [&](const std::vector<std::pair<int, int>>& ms) { sides.push_back(ms); });
      for (const auto& hol : sides)
        for (const auto& antihol : sides) {
          toda::MomentSignature sig;
          sig.weight = i;
          sig.hol = hol;
          sig.antihol = antihol;
          rows.push_back({{"sig", sig.str()}, {"n2", toda::to_string(cache.n2(sig))}});
        }
    }
    std::cout << rows.dump(1) << '\n';
  } else {
    const toda::MomentSignature sig = toda::MomentSignature::parse(sig_text);
    std::cout << toda::to_string(cache.n2(sig)) << '\n';
  }
  save_cache(cache);
  return kExitOk;
}

int run_series(int n, int K, int threads, const std::string& out) {
  toda::CoefficientCache cache;
  toda::BuildOptions opts;
  opts.threads = threads;
  if (threads == 1) {
    load_cache(cache);
    opts.cache = &cache;
  }
  const toda::TruncatedF f = toda::build_f(n, K, opts);
  write_output(out, toda::to_json(f).dump(1));
  if (threads == 1) save_cache(cache);
  return kExitOk;
}

int run_moments(const std::string& contour_path, int n, int quad_points,
                const std::string& out) {
  const toda::Contour c = toda::contour_from_json(read_json_file(contour_path));
  const toda::MomentVector t = toda::moments_from_contour(c, n, quad_points);
  write_output(out, toda::to_json(t).dump(1));
  return kExitOk;
}

int run_map(const std::string& moments_path, int n, int K, int J, int threads,
            const std::string& out, const std::string& boundary_out,
            const std::string& contour_path, int samples) {
  const toda::MomentVector t =
      toda::moment_vector_from_json(read_json_file(moments_path));
  if (t.max_index() > n)
    throw std::invalid_argument("moments carry indices beyond --n");

  toda::CoefficientCache cache;
  toda::BuildOptions opts;
  opts.threads = threads;
  if (threads == 1) {
    load_cache(cache);
    opts.cache = &cache;
  }
  const toda::TruncatedF f = toda::build_f(n, K, opts);
  const toda::LaurentMap map = toda::exterior_map(f, t, J);
  write_output(out, toda::to_json(map).dump(1));

  if (!boundary_out.empty()) {
    if (contour_path.empty())
      throw std::invalid_argument("--emit-boundary requires --contour");
    const toda::Contour c = toda::contour_from_json(read_json_file(contour_path));
    const auto images = toda::boundary_image(map, c, samples);
    std::ofstream csv(boundary_out);
    if (!csv) throw std::invalid_argument("cannot open CSV output: " + boundary_out);
    csv << "re,im,modulus\n";
    char line[128];
    for (const auto& w : images) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", w.real(), w.imag(),
                    std::abs(w));
      csv << line;
    }
  }
  if (threads == 1) save_cache(cache);
  return kExitOk;
}

int run_verify(const std::string& suite, int max_i, int max_weight, int K,
               bool quick, const std::string& out) {
  toda::CoefficientCache cache;
  load_cache(cache);

  const int t2_max_i = max_i > 0 ? max_i : (quick ? 6 : 8);
  const int bounds_w = max_weight > 0 ? max_weight : (quick ? 5 : 7);
  const int nonneg_w = max_weight > 0 ? max_weight : (quick ? 4 : 6);
  const int eq4_total = max_weight > 0 ? max_weight : (quick ? 4 : 6);
  const int quartic_K = K > 0 ? K : (quick ? 6 : 8);
  const int tail_K = K > 0 ? K : (quick ? 8 : 10);

  toda::MomentVector region_point;
  region_point.t0 = 0.25;
  region_point.t[1] = {1e-3, 0.0};
  region_point.t[2] = {1e-3, 0.0};

  std::vector<toda::CheckReport> reports;
  auto want = [&suite](const char* name) { return suite == "all" || suite == name; };

  if (want("theorem2")) reports.push_back(toda::check_theorem2(t2_max_i, cache));
  if (want("bounds")) reports.push_back(toda::check_bounds(bounds_w, cache));
  if (want("tail")) reports.push_back(toda::check_tail(region_point, tail_K, &cache));
  if (want("hirota")) {
    const toda::TruncatedF f = toda::build_f(2, quartic_K, {1, 2'000'000, &cache});
    reports.push_back(toda::check_hirota_residuals(
        f, region_point, {10.0, 0.0}, {0.0, 10.0}));
  }
  if (want("expansion"))
    reports.push_back(
        toda::check_derivative_expansion(toda::expansion_tuples(eq4_total), cache));
  if (want("quartic")) reports.push_back(toda::check_quartic(quartic_K, &cache));
  if (want("boundary"))
    reports.push_back(toda::check_boundary_conditions(t2_max_i, cache));
  if (want("nonnegativity"))
    reports.push_back(toda::check_nonnegativity(nonneg_w, cache));

  if (reports.empty()) throw std::invalid_argument("unknown suite: " + suite);

  nlohmann::json doc = nlohmann::json::array();
  bool hard_failure = false;
  for (const auto& r : reports) {
    doc.push_back(toda::to_json(r));
    if (!r.passed() && !r.advisory) hard_failure = true;
    std::cerr << (r.passed() ? "PASS " : (r.advisory ? "NOTE " : "FAIL "))
              << r.name << " (" << r.cases_run << " cases";
    if (!r.failures.empty()) std::cerr << ", " << r.failures.size() << " failures";
    std::cerr << ")\n";
  }
  write_output(out, doc.dump(1));
  save_cache(cache);
  return hard_failure ? kExitCheckFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taylor coefficients of the dispersionless 2D Toda string solution\n"
               "and exterior conformal maps from harmonic moments"};
  app.require_subcommand(1);

  // coeff
  auto* coeff = app.add_subcommand("coeff", "print one exact coefficient, or a table");
  std::string sig_text;
  bool table = false;
  int coeff_max_weight = 4;
  coeff->add_option("--sig", sig_text,
                    "signature i:(i1^n1,...|j1^m1,...), e.g. \"2:(1^2|2^1)\"");
  coeff->add_flag("--table", table, "dump all signatures of weight <= --max-weight");
  coeff->add_option("--max-weight", coeff_max_weight, "weight bound for --table")
      ->check(CLI::Range(1, 16));

  // series
  auto* series = app.add_subcommand("series", "build the truncated series as JSON");
  int n = 0, K = 0, J = 6, threads = 1, quad_points = 0, samples = 256;
  std::string out, moments_path, contour_path, boundary_out;
  series->add_option("--n", n, "moment index bound")->required()->check(CLI::Range(1, 1 << 20));
  series->add_option("--K", K, "total degree bound")->required()->check(CLI::Range(2, 64));
  series->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1 << 20));
  series->add_option("--out", out, "output path (default stdout)");

  // moments
  auto* moments = app.add_subcommand("moments", "harmonic moments of a contour");
  moments->add_option("--contour", contour_path, "contour JSON file")->required();
  moments->add_option("--n", n, "highest moment index")->required()->check(CLI::Range(1, 1 << 20));
  moments->add_option("--quad-points", quad_points, "quadrature nodes (even, >= 4n)")
      ->required();
  moments->add_option("--out", out, "output path (default stdout)");

  // map
  auto* map = app.add_subcommand("map", "exterior conformal map from moments");
  map->add_option("--moments", moments_path, "moment vector JSON file")->required();
  map->add_option("--n", n, "series index bound")->required()->check(CLI::Range(1, 1 << 20));
  map->add_option("--K", K, "series degree bound")->required()->check(CLI::Range(2, 64));
  map->add_option("--J", J, "number of Laurent tail terms")->check(CLI::Range(1, 1 << 20));
  map->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1 << 20));
  map->add_option("--out", out, "output path (default stdout)");
  map->add_option("--emit-boundary", boundary_out, "CSV of boundary images");
  map->add_option("--contour", contour_path, "contour JSON (for --emit-boundary)");
  map->add_option("--samples", samples, "boundary sample count")->check(CLI::Range(1, 1 << 20));

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  int max_i = 0, max_weight = 0, verify_K = 0;
  bool quick = false;
  verify->add_option("--suite", suite,
                     "theorem2|bounds|tail|hirota|expansion|quartic|boundary|"
                     "nonnegativity|all");
  verify->add_option("--max-i", max_i, "weight bound for theorem2/boundary");
  verify->add_option("--max-weight", max_weight,
                     "weight bound for bounds/expansion/nonnegativity");
  verify->add_option("--K", verify_K, "degree bound for tail/quartic/hirota");
  verify->add_flag("--quick", quick, "reduced parameter set");
  verify->add_option("--out", out, "JSON report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (coeff->parsed()) {
      if (table == !sig_text.empty())
        throw std::invalid_argument("coeff: provide exactly one of --sig or --table");
      return run_coeff(sig_text, table, coeff_max_weight);
    }
    if (series->parsed()) return run_series(n, K, threads, out);
    if (moments->parsed()) return run_moments(contour_path, n, quad_points, out);
    if (map->parsed())
      return run_map(moments_path, n, K, J, threads, out, boundary_out, contour_path,
                     samples);
    if (verify->parsed())
      return run_verify(suite, max_i, max_weight, verify_K, quick, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}
