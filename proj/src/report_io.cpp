#include "grassdim/report_io.hpp"

#include <sstream>

namespace grassdim {

void to_json(nlohmann::json& j, const SecantParams& p) {
  j = nlohmann::json{{"n", p.n}, {"k", p.k}, {"s", p.s}, {"r", p.r}};
}

void from_json(const nlohmann::json& j, SecantParams& p) {
  j.at("n").get_to(p.n);
  j.at("k").get_to(p.k);
  j.at("s").get_to(p.s);
  j.at("r").get_to(p.r);
}

void to_json(nlohmann::json& j, const Prediction& p) {
  j = nlohmann::json{
      {"params", p.params},
      {"stability_step", p.stability_step},
      {"virtual", p.virtual_dim},
      {"expected", p.expected_dim},
      {"fiber", p.fiber_dim},
      {"assumes_conjecture", p.assumes_conjecture},
      {"forced_r", p.forced_r},
  };
  if (p.stable_family_dim)
    j["stable_family_dim"] = *p.stable_family_dim;
  else
    j["stable_family_dim"] = nullptr;
}

void from_json(const nlohmann::json& j, Prediction& p) {
  j.at("params").get_to(p.params);
  j.at("stability_step").get_to(p.stability_step);
  j.at("virtual").get_to(p.virtual_dim);
  j.at("expected").get_to(p.expected_dim);
  j.at("fiber").get_to(p.fiber_dim);
  j.at("assumes_conjecture").get_to(p.assumes_conjecture);
  j.at("forced_r").get_to(p.forced_r);
  if (j.at("stable_family_dim").is_null())
    p.stable_family_dim.reset();
  else
    p.stable_family_dim = j.at("stable_family_dim").get<long long>();
}

void to_json(nlohmann::json& j, const DimensionReport& r) {
  j = nlohmann::json{
      {"params", r.params},       {"cone_dim", r.cone_dim},
      {"proj_dim", r.proj_dim},   {"trials", r.trials},
      {"primes_used", r.primes_used}, {"agreed", r.agreed},
      {"predicted", r.predicted}, {"defect", r.defect},
  };
}

void from_json(const nlohmann::json& j, DimensionReport& r) {
  j.at("params").get_to(r.params);
  j.at("cone_dim").get_to(r.cone_dim);
  j.at("proj_dim").get_to(r.proj_dim);
  j.at("trials").get_to(r.trials);
  j.at("primes_used").get_to(r.primes_used);
  j.at("agreed").get_to(r.agreed);
  j.at("predicted").get_to(r.predicted);
  j.at("defect").get_to(r.defect);
}

void to_json(nlohmann::json& j, const BenchResult& b) {
  j = nlohmann::json{
      {"params", b.params},
      {"cofactor_ms", b.cofactor_ms},
      {"cofactor_rank", b.cofactor_rank},
      {"naive_skipped", b.naive_skipped},
  };
  if (b.naive_skipped) {
    j["naive_skip_reason"] = b.naive_skip_reason;
  } else {
    j["naive_ms"] = b.naive_ms;
    j["naive_rank"] = b.naive_rank;
    j["speedup"] = b.speedup;
  }
}

std::string csv_header() {
  return "n,k,s,r,cone,proj,virtual,expected,fiber,defect,fiber_match";
}

std::string csv_row(const DimensionReport& r) {
  std::ostringstream os;
  os << r.params.n << ',' << r.params.k << ',' << r.params.s << ','
     << r.params.r << ',' << r.cone_dim << ',' << r.proj_dim << ','
     << r.predicted.virtual_dim << ',' << r.predicted.expected_dim << ','
     << r.predicted.fiber_dim << ',' << r.defect << ','
     << (r.proj_dim == r.predicted.fiber_dim ? 1 : 0);
  return os.str();
}

std::string text_report(const DimensionReport& r) {
  std::ostringstream os;
  os << "restricted secant " << r.params.str() << "\n";
  os << "  cone dim      " << r.cone_dim << "\n";
  os << "  proj dim      " << r.proj_dim << "\n";
  os << "  trials        " << r.trials << (r.agreed ? " (all agreed)" : " (DISAGREED, max taken)") << "\n";
  if (!r.primes_used.empty()) {
    os << "  primes        ";
    for (size_t i = 0; i < r.primes_used.size(); ++i)
      os << (i ? ", " : "") << r.primes_used[i];
    os << "\n";
  } else {
    os << "  field         rationals\n";
  }
  os << "  virtual dim   " << r.predicted.virtual_dim << "\n";
  os << "  expected dim  " << r.predicted.expected_dim << "\n";
  os << "  fiber dim     " << r.predicted.fiber_dim
     << (r.predicted.assumes_conjecture ? " (conjectural)" : "") << "\n";
  if (r.predicted.forced_r != r.params.r)
    os << "  forced r      " << r.predicted.forced_r << "\n";
  os << "  defect        " << r.defect
     << (r.proj_dim == r.predicted.fiber_dim ? "  [matches fiber prediction]"
                                             : "  [fiber prediction MISMATCH]")
     << "\n";
  return os.str();
}

std::string text_prediction(const Prediction& p) {
  std::ostringstream os;
  os << "predictions for " << p.params.str() << "\n";
  os << "  stability step    " << p.stability_step << "\n";
  if (p.stable_family_dim)
    os << "  stable family dim " << *p.stable_family_dim
       << " (virtual, pre-defect count)\n";
  else
    os << "  stable family dim n/a (ambient below stability step)\n";
  os << "  virtual dim       " << p.virtual_dim << "\n";
  os << "  expected dim      " << p.expected_dim << "\n";
  os << "  fiber dim         " << p.fiber_dim
     << (p.assumes_conjecture ? " (conjectural)" : "") << "\n";
  if (p.forced_r != p.params.r) os << "  forced r          " << p.forced_r << "\n";
  return os.str();
}

std::string text_bench(const BenchResult& b) {
  std::ostringstream os;
  os << "benchmark " << b.params.str() << "\n";
  os << "  cofactor path  " << b.cofactor_ms << " ms (rank " << b.cofactor_rank
     << ")\n";
  if (b.naive_skipped) {
    os << "  naive path     skipped: " << b.naive_skip_reason << "\n";
  } else {
    os << "  naive path     " << b.naive_ms << " ms (rank " << b.naive_rank
       << ")\n";
    os << "  speedup        " << b.speedup << "x\n";
  }
  return os.str();
}

}  // namespace grassdim
