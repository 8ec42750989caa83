#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "grassdim/exterior.hpp"
#include "grassdim/finite_codes.hpp"
#include "grassdim/formulas.hpp"
#include "grassdim/parallel.hpp"
#include "grassdim/report_io.hpp"
#include "grassdim/terracini.hpp"

namespace {

using namespace grassdim;

struct FieldOptions {
  uint64_t seed = 1;
  std::optional<uint64_t> prime;
  bool rationals = false;

  FieldSpec make() const {
    if (rationals) return FieldSpec::rationals(seed);
    if (prime) return FieldSpec::prime_field(*prime, seed);
    return FieldSpec::auto_prime(seed);
  }
};

void add_field_options(CLI::App* cmd, FieldOptions& f) {
  cmd->add_option("--seed", f.seed, "RNG seed (fixed seed => reproducible output)")
      ->capture_default_str();
  auto* p = cmd->add_option("--prime", f.prime,
                            "explicit prime modulus (default: auto-chosen 31-bit prime)");
  cmd->add_flag("--rationals", f.rationals,
                "compute over the rationals (exact certification mode)")
      ->excludes(p);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw Error("cannot open output file " + path);
  return file;
}

/// Parse "a" or "a:b" into an inclusive range.
std::pair<int, int> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) {
    int v = std::stoi(s);
    return {v, v};
  }
  return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
}

PlueckerVector<RationalField> read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open point file " + path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidParams("point file: missing header");
  std::istringstream hdr(line);
  int n = 0, k = 0;
  if (!(hdr >> n >> k)) throw InvalidParams("point file: header must be 'n k'");
  if (n < 0 || k < 0 || k > n)
    throw InvalidParams("point file: header requires 0 <= k <= n");
  long long count = binomial(n, k);
  if (count > 1'000'000)
    throw TooLarge("point file: coordinate space exceeds 10^6");
  if (!std::getline(in, line))
    throw InvalidParams("point file: missing coordinate line");
  std::istringstream nums(line);
  std::vector<long long> numerators(count);
  for (long long i = 0; i < count; ++i)
    if (!(nums >> numerators[i]))
      throw InvalidParams("point file: expected " + std::to_string(count) +
                          " numerators");
  std::vector<long long> denominators(count, 1);
  if (std::getline(in, line) && !line.empty()) {
    std::istringstream dens(line);
    for (long long i = 0; i < count; ++i)
      if (!(dens >> denominators[i]))
        throw InvalidParams("point file: expected " + std::to_string(count) +
                            " denominators");
  }
  RationalField f;
  PlueckerVector<RationalField> w(f, n, k);
  for (long long i = 0; i < count; ++i) {
    if (denominators[i] == 0)
      throw InvalidParams("point file: zero denominator");
    Rational q(static_cast<long>(numerators[i]),
               static_cast<long>(denominators[i]));
    q.canonicalize();
    w.coords[static_cast<size_t>(i)] = q;
  }
  return w;
}

int run_dim(const SecantParams& params, const FieldOptions& fopt, int trials,
            const std::string& format, const std::string& output, int threads) {
  auto report = dimension(params, fopt.make(), trials, thread_budget(threads));
  std::ofstream file;
  auto& os = open_output(file, output);
  if (format == "json") {
    nlohmann::json j = report;
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    os << csv_header() << "\n" << csv_row(report) << "\n";
  } else {
    os << text_report(report);
  }
  return 0;
}

int run_predict(const SecantParams& params, const std::string& format,
                const std::string& output) {
  auto p = predict(params);
  std::ofstream file;
  auto& os = open_output(file, output);
  if (format == "json") {
    nlohmann::json j = p;
    os << j.dump(2) << "\n";
  } else {
    os << text_prediction(p);
  }
  return 0;
}

int run_defect_scan(const std::string& nr, const std::string& kr,
                    const std::string& sr, const std::string& rr,
                    const FieldOptions& fopt, int trials, long long cap,
                    const std::string& output, int threads) {
  auto [n0, n1] = parse_range(nr);
  auto [k0, k1] = parse_range(kr);
  auto [s0, s1] = parse_range(sr);
  auto [r0, r1] = parse_range(rr);
  std::vector<SecantParams> grid;
  for (int n = n0; n <= n1; ++n)
    for (int k = k0; k <= std::min(k1, n); ++k) {
      if (binomial(n, k) > cap) continue;
      for (int s = s0; s <= s1; ++s)
        for (int r = r0; r <= std::min(r1, k); ++r)
          grid.push_back({n, k, s, r});
    }
  if (grid.empty()) throw InvalidParams("defect-scan grid is empty");

  FieldSpec fs = fopt.make();
  std::vector<std::optional<DimensionReport>> results(grid.size());
  std::vector<std::string> errors(grid.size());
  parallel_for(static_cast<int>(grid.size()), thread_budget(threads),
               [&](int i) {
                 try {
                   results[i] = dimension(grid[i], fs, trials, 1);
                 } catch (const Error& e) {
                   errors[i] = e.what();
                 }
               });

  std::ofstream file;
  auto& os = open_output(file, output);
  os << csv_header() << "\n";
  for (size_t i = 0; i < grid.size(); ++i) {
    if (results[i]) {
      os << csv_row(*results[i]) << "\n";
    } else {
      os << "# " << grid[i].str() << " failed: " << errors[i] << "\n";
    }
    os.flush();
  }
  return 0;
}

int run_recover(const std::string& path, int r, const std::string& output) {
  auto w = read_point_file(path);
  std::ofstream file;
  auto& os = open_output(file, output);
  Matrix<RationalField> e = recover_overlap(w, r);
  os << "overlap basis (" << r << " x " << w.n << "):\n" << e.str();
  auto t = fiber_coordinates(w, e);
  os << "fiber coordinates (degree " << t.k << " on quotient of dim " << t.n
     << "):\n";
  auto subs = subsets_lex(t.n, t.k);
  for (size_t i = 0; i < subs.size(); ++i) {
    if (t.field.is_zero(t.coords[i])) continue;
    os << "  " << subs[i].str() << " : " << t.field.str(t.coords[i]) << "\n";
  }
  auto back = embed_fiber(e, t);
  auto scalar = proportionality_scalar(back, w);
  if (!scalar)
    throw Error("round-trip embed is not proportional to the input");
  os << "round-trip scalar: " << w.field.str(*scalar) << "\n";
  return 0;
}

int run_orbit_count(const std::string& seed_form, bool classify, bool randomized,
                    uint64_t seed, const std::string& export_path,
                    const std::string& output) {
  std::ofstream file;
  auto& os = open_output(file, output);
  if (classify) {
    auto table = classify_all();
    os << "label,seed,size\n";
    for (const auto& o : table.orbits)
      os << o.label << "," << trivector_str(o.seed) << "," << o.size << "\n";
    os << "# total," << table.total() << "\n";
    return 0;
  }
  if (seed_form.empty())
    throw InvalidParams("orbit-count needs --seed-form or --classify");
  TrivectorMask mask = trivector_from_triples(seed_form);
  std::vector<uint32_t> orbit;
  if (randomized) {
    Rng rng(seed, 0x9B17ULL);
    orbit = orbit_closure_randomized(mask, rng);
  } else {
    orbit = orbit_closure(mask);
  }
  os << "orbit of " << trivector_str(mask) << ": " << orbit.size()
     << " elements\n";
  if (!export_path.empty()) {
    export_orbit_binary(export_path, orbit);
    os << "wrote " << export_path << " (" << orbit.size() * 4 << " bytes)\n";
  }
  return 0;
}

int run_code_gen(int n, int k, uint32_t q, const std::string& output) {
  auto m = generator_matrix(n, k, q);
  std::ofstream file;
  auto& os = open_output(file, output);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m.at(i, j);
    }
    os << "\n";
  }
  if (!output.empty())
    std::cout << "wrote " << m.rows() << " x " << m.cols()
              << " generator matrix to " << output << "\n";
  return 0;
}

int run_bench(const SecantParams& params, const FieldOptions& fopt,
              const std::string& format, const std::string& output) {
  auto res = benchmark(params, fopt.make());
  std::ofstream file;
  auto& os = open_output(file, output);
  if (format == "json") {
    nlohmann::json j = res;
    os << j.dump(2) << "\n";
  } else {
    os << text_bench(res);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact dimension oracle and predictions for restricted secant "
               "varieties of Grassmannians, plus finite-field Grassmann codes"};
  app.require_subcommand(1);

  SecantParams params;
  FieldOptions fopt;
  int trials = 3;
  int threads = 0;
  std::string format = "text";
  std::string output;

  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("n", params.n, "ambient dimension")->required();
    cmd->add_option("k", params.k, "plane dimension")->required();
    cmd->add_option("s", params.s, "number of summands")->required();
    cmd->add_option("r", params.r, "required overlap dimension")->required();
  };
  auto add_format = [&](CLI::App* cmd, bool with_csv = false) {
    cmd->add_option("--format", format,
                    with_csv ? "output format: text|json|csv"
                             : "output format: text|json")
        ->check(with_csv ? CLI::IsMember({"text", "json", "csv"})
                         : CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--output,-o", output, "write to a file instead of stdout");
  };

  auto* dim_cmd =
      app.add_subcommand("dim", "Jacobian-rank dimension oracle at random points");
  add_params(dim_cmd);
  dim_cmd->add_option("--trials", trials, "independent sample points (>= 2)")
      ->capture_default_str();
  dim_cmd->add_option("--threads", threads,
                      "worker pool size (default: GRASSDIM_THREADS or all cores)");
  add_field_options(dim_cmd, fopt);
  add_format(dim_cmd, true);

  auto* predict_cmd =
      app.add_subcommand("predict", "closed-form dimension predictions only");
  add_params(predict_cmd);
  add_format(predict_cmd);

  std::string nr = "5:8", kr = "2:4", sr = "2:3", rr = "0:4";
  long long cap = 300;
  auto* scan_cmd = app.add_subcommand(
      "defect-scan", "CSV of oracle vs predictions over a parameter grid");
  scan_cmd->add_option("--n", nr, "n range a:b")->capture_default_str();
  scan_cmd->add_option("--k", kr, "k range a:b")->capture_default_str();
  scan_cmd->add_option("--s", sr, "s range a:b")->capture_default_str();
  scan_cmd->add_option("--r", rr, "r range a:b")->capture_default_str();
  scan_cmd->add_option("--cap", cap, "skip tuples with C(n,k) above this")
      ->capture_default_str();
  scan_cmd->add_option("--trials", trials, "sample points per tuple")
      ->capture_default_str();
  scan_cmd->add_option("--threads", threads, "worker pool size");
  add_field_options(scan_cmd, fopt);
  scan_cmd->add_option("--output,-o", output, "CSV file (default stdout)");

  std::string point_file;
  int overlap_r = 0;
  auto* recover_cmd = app.add_subcommand(
      "recover", "overlap basis and fiber coordinates of a point file");
  recover_cmd->add_option("file", point_file, "Plücker point file")->required();
  recover_cmd->add_option("r", overlap_r, "expected overlap dimension")
      ->required();
  recover_cmd->add_option("--output,-o", output, "write to file");

  std::string seed_form;
  bool classify = false, randomized = false;
  std::string export_path;
  auto* orbit_cmd = app.add_subcommand(
      "orbit-count", "orbit sizes in the 20-dim cubic exterior power over F_2");
  orbit_cmd->add_option("--seed-form", seed_form,
                        "digit-triple expression, e.g. 012+034");
  orbit_cmd->add_flag("--classify", classify,
                      "partition the whole space into orbits");
  orbit_cmd->add_flag("--randomized", randomized,
                      "use randomized saturation instead of exact closure");
  orbit_cmd->add_option("--export", export_path,
                        "write the orbit as 32-bit little-endian masks");
  orbit_cmd->add_option("--seed", fopt.seed, "RNG seed for --randomized")
      ->capture_default_str();
  orbit_cmd->add_option("--output,-o", output, "write to file");

  int cg_n = 0, cg_k = 0;
  uint32_t cg_q = 2;
  auto* code_cmd =
      app.add_subcommand("code-gen", "Grassmann code generator matrix as CSV");
  code_cmd->add_option("n", cg_n, "ambient dimension")->required();
  code_cmd->add_option("k", cg_k, "plane dimension")->required();
  code_cmd->add_option("q", cg_q, "field size (prime)")->required();
  code_cmd->add_option("--output,-o", output, "CSV file (default stdout)");

  auto* bench_cmd = app.add_subcommand(
      "bench", "naive symbolic vs cofactor Jacobian timing");
  add_params(bench_cmd);
  add_field_options(bench_cmd, fopt);
  add_format(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (dim_cmd->parsed())
      return run_dim(params, fopt, trials, format, output, threads);
    if (predict_cmd->parsed()) return run_predict(params, format, output);
    if (scan_cmd->parsed())
      return run_defect_scan(nr, kr, sr, rr, fopt, trials, cap, output, threads);
    if (recover_cmd->parsed())
      return run_recover(point_file, overlap_r, output);
    if (orbit_cmd->parsed())
      return run_orbit_count(seed_form, classify, randomized, fopt.seed,
                             export_path, output);
    if (code_cmd->parsed()) return run_code_gen(cg_n, cg_k, cg_q, output);
    if (bench_cmd->parsed()) return run_bench(params, fopt, format, output);
  } catch (const InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateAfterRetries& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const BelowStability& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const UnexpectedKernelDim& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
