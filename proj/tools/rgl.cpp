// rgl: command-line front end for graph-regularity experiments.
//
// Exit codes: 0 graph-regular / accepted / found, 1 not graph-regular /
// rejected / none, 2 usage or parse error, 3 unknown.

#include "rgl/certs.hpp"
#include "rgl/colorings.hpp"
#include "rgl/grid.hpp"
#include "rgl/io.hpp"
#include "rgl/reduction.hpp"
#include "rgl/screens.hpp"
#include "rgl/search.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using rgl::json;

enum Exit { ok = 0, negative = 1, usage = 2, unknown = 3 };

struct Common {
  std::string format = "human";
  std::string output;
  std::uint64_t budget_ms = 20000;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

rgl::Budget stage_budget(const Common& common) {
  std::uint64_t ms = common.budget_ms;
  if (const char* env = std::getenv("RGL_BUDGET_MS")) {
    try {
      ms = std::min<std::uint64_t>(ms, std::stoull(env));
    } catch (const std::exception&) {
      throw UsageError("RGL_BUDGET_MS must be a nonnegative integer");
    }
  }
  return rgl::Budget::from_millis(ms);
}

void emit(const Common& common, const json& doc, const std::string& human) {
  std::ostringstream text;
  if (common.format == "json") text << doc.dump(2) << '\n';
  else text << human;
  if (common.output.empty()) {
    std::cout << text.str();
    return;
  }
  std::ofstream out(common.output);
  if (!out) throw UsageError("cannot write " + common.output);
  out << text.str();
}

json envelope(const std::string& command) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string fractions(const rgl::RatVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
  return s;
}

std::string describe_certificate(const rgl::GCCCertificate& cert) {
  std::ostringstream out;
  out << to_string(cert.flavor) << " certificate, T = " << cert.T() << '\n';
  for (std::size_t t = 0; t < cert.z.size(); ++t) {
    out << "  z_" << t << " = (" << fractions(cert.z[t]) << ")  R_" << t << ": ";
    if (t == 0 && cert.R[t].is_complete()) out << "complete";
    else if (cert.R[t].edgeless()) out << "empty";
    else
      for (auto [i, j] : cert.R[t].edges()) out << '{' << i + 1 << ',' << j + 1 << "} ";
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const Common& common, const std::string& path, std::size_t max_steps) {
  const rgl::IntMatrix a = rgl::load_matrix(path);
  rgl::ClassifyBounds bounds;
  bounds.gcc.max_steps = max_steps;
  bounds.gcc.budget = stage_budget(common);
  const rgl::ScreenReport rep = rgl::classify(a, bounds);

  json doc = envelope("analyze");
  doc["classification"] = to_string(rep.classification);
  doc["sum_to_zero"] = rep.sum_to_zero;
  if (rep.zero_sum_partition) {
    json idx = json::array();
    for (auto i : *rep.zero_sum_partition) idx.push_back(i + 1);
    doc["zero_sum_partition"] = idx;
  } else {
    doc["zero_sum_partition"] = nullptr;
  }
  doc["evidence"] = rep.evidence;
  doc["certificate"] = rep.strong_certificate ? rgl::to_json(*rep.strong_certificate) : json(nullptr);
  doc["weak_certificate"] = rep.weak_certificate ? rgl::to_json(*rep.weak_certificate) : json(nullptr);

  std::ostringstream human;
  human << "classification: " << to_string(rep.classification) << '\n' << "reason: " << rep.evidence << '\n';
  if (rep.strong_certificate) human << describe_certificate(*rep.strong_certificate);
  if (rep.weak_certificate) human << describe_certificate(*rep.weak_certificate);
  emit(common, doc, human.str());

  switch (rep.classification) {
    case rgl::Classification::graph_regular: return ok;
    case rgl::Classification::not_graph_regular: return negative;
    case rgl::Classification::unknown: return unknown;
  }
  return unknown;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Common& common, const std::string& matrix_path, const std::string& cert_path,
               const std::string& flavor_name) {
  const rgl::IntMatrix a = rgl::load_matrix(matrix_path);
  const rgl::AnyCertificate any = rgl::certificate_from_json(rgl::load_json(cert_path));
  const rgl::Flavor flavor = flavor_name.empty() ? any.flavor : rgl::parse_flavor(flavor_name);
  if ((flavor == rgl::Flavor::cc) != (any.flavor == rgl::Flavor::cc))
    throw UsageError("flavor " + to_string(flavor) + " does not match a " + to_string(any.flavor) + " certificate");

  rgl::VerificationReport rep;
  try {
    rep = flavor == rgl::Flavor::cc ? rgl::verify_cc(a, any.cc) : rgl::verify_gcc(a, any.gcc, flavor);
  } catch (const rgl::DimensionError& e) {
    throw UsageError(e.what());
  }

  json doc = envelope("verify");
  doc["flavor"] = to_string(flavor);
  doc["accepted"] = rep.accepted();
  doc["violations"] = json::array();
  for (const auto& v : rep.violations) doc["violations"].push_back(rgl::to_json(v));

  std::ostringstream human;
  if (rep.accepted()) human << "accepted (" << to_string(flavor) << ")\n";
  else human << "rejected (" << to_string(flavor) << "): " << describe(rep.violations.front()) << '\n';
  emit(common, doc, human.str());
  return rep.accepted() ? ok : negative;
}

// ---------------------------------------------------------------- search

int cmd_search(const Common& common, const std::string& path, const std::string& coloring, std::int64_t N,
               bool hyper) {
  const rgl::IntMatrix a = rgl::load_matrix(path);
  rgl::ColoringSpec spec;
  try {
    spec = rgl::parse_coloring(coloring);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (N < 1) throw UsageError("--N must be positive");
  if (hyper && spec.arity() == rgl::Arity::edge && spec.family != rgl::Family::constant)
    throw UsageError(coloring + " is an edge coloring; drop --hyper");
  if (!hyper && spec.arity() != rgl::Arity::edge) throw UsageError(coloring + " is not an edge coloring; use --hyper");

  std::optional<rgl::Witness> w;
  try {
    w = hyper ? rgl::find_mono_hyper(a, spec, N) : rgl::find_mono_solution(a, spec, N);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  json doc = envelope("search");
  doc["coloring"] = rgl::to_string(spec);
  doc["N"] = N;
  doc["found"] = w.has_value();
  doc["witness"] = w ? rgl::to_json(*w) : json(nullptr);
  std::ostringstream human;
  if (w) human << "witness (" << join(w->x) << ") color " << to_string(w->color) << " under " << w->coloring << '\n';
  else human << "avoided up to N = " << N << " under " << rgl::to_string(spec) << '\n';
  emit(common, doc, human.str());
  return w ? ok : negative;
}

// ---------------------------------------------------------------- grid

int cmd_grid(const Common& common, const std::string& path, const std::string& coloring, std::int64_t Q) {
  const rgl::IntMatrix a = rgl::load_matrix(path);
  rgl::ColoringSpec spec;
  try {
    spec = rgl::parse_coloring(coloring);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (spec.arity() != rgl::Arity::edge) throw UsageError(coloring + " is not an edge coloring");
  if (Q < 2) throw UsageError("--Q must be at least 2");

  rgl::PipelineResult res;
  try {
    res = rgl::pipeline_witness(a, spec, Q, stage_budget(common));
  } catch (const rgl::PipelineError& e) {
    throw UsageError(e.what());
  }

  json doc = envelope("grid");
  doc["coloring"] = rgl::to_string(spec);
  doc["Q"] = Q;
  doc["found"] = res.witness.has_value();
  if (res.witness) {
    doc["witness"] = rgl::to_json(*res.witness);
  } else {
    doc["witness"] = nullptr;
    doc["stage"] = res.stage;
    doc["reason"] = res.reason;
  }
  doc["grid"] = res.grid ? rgl::to_json(*res.grid) : json(nullptr);
  doc["certificate"] = res.certificate ? rgl::to_json(*res.certificate) : json(nullptr);

  std::ostringstream human;
  if (res.witness)
    human << "witness (" << join(res.witness->x) << ") color " << to_string(res.witness->color) << " under "
          << res.witness->coloring << '\n';
  else
    human << "none; stage = " << res.stage << ": " << res.reason << '\n';
  emit(common, doc, human.str());
  return res.witness ? ok : negative;
}

// ---------------------------------------------------------------- reduce

std::vector<std::size_t> parse_sigma(const std::string& text, std::size_t n) {
  std::vector<std::size_t> sigma;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      const long v = std::stol(item);
      if (v < 1) throw UsageError("sigma entries are 1-based");
      sigma.push_back(static_cast<std::size_t>(v - 1));
    } catch (const std::logic_error&) {
      throw UsageError("bad sigma entry '" + item + "'");
    }
  }
  if (sigma.size() != n) throw UsageError("sigma must list " + std::to_string(n) + " columns");
  return sigma;
}

int cmd_reduce(const Common& common, const std::string& path, const std::string& sigma_text, bool emit_c) {
  const rgl::IntMatrix a = rgl::load_matrix(path);
  if (!rgl::column_sum_zero(a)) throw UsageError("columns of A must sum to zero");

  std::optional<rgl::ReductionResult> res;
  std::vector<std::size_t> sigma;
  if (!sigma_text.empty()) {
    sigma = parse_sigma(sigma_text, a.cols());
    rgl::PairMatrix pm;
    try {
      pm = rgl::build_c_sigma(a, sigma);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (auto cc = rgl::search_cc(pm.c, rgl::CcSearchOptions{pm.c.cols()}))
      res = rgl::ReductionResult{sigma, *cc, rgl::transfer_certificate(a, sigma, *cc)};
  } else {
    if (a.cols() > 6) throw UsageError("reduction is limited to six columns; pass --sigma for larger inputs");
    res = rgl::wgcc_via_reduction(a);
  }
  if (res) sigma = res->sigma;

  json doc = envelope("reduce");
  doc["found"] = res.has_value();
  if (!sigma.empty()) {
    json s = json::array();
    for (auto v : sigma) s.push_back(v + 1);
    doc["sigma"] = s;
  } else {
    doc["sigma"] = nullptr;
  }
  std::string c_text;
  if (emit_c && !sigma.empty()) {
    c_text = rgl::format_matrix(rgl::build_c_sigma(a, sigma).c);
    doc["C"] = c_text;
  }
  doc["cc_certificate"] = res ? rgl::to_json(res->cc) : json(nullptr);
  doc["certificate"] = res ? rgl::to_json(res->weak) : json(nullptr);

  std::ostringstream human;
  if (res) {
    human << "sigma = (";
    for (std::size_t i = 0; i < sigma.size(); ++i) human << (i ? "," : "") << sigma[i] + 1;
    human << ")\n" << describe_certificate(res->weak);
  } else {
    human << "no columns condition certificate for any C(sigma) tried\n";
  }
  if (!c_text.empty()) human << "C(sigma):\n" << c_text;
  emit(common, doc, human.str());
  return res ? ok : negative;
}

// ---------------------------------------------------------------- color

int cmd_color(const Common& common, const std::string& coloring, const std::vector<std::int64_t>& points) {
  rgl::ColoringSpec spec;
  rgl::Color c;
  try {
    spec = rgl::parse_coloring(coloring);
    if (points.size() == 1) {
      c = rgl::vertex_color(spec, points[0]);
    } else if (points.size() == 2 && spec.arity() != rgl::Arity::hyper) {
      c = rgl::edge_color(spec, points[0], points[1]);
    } else {
      std::vector<std::int64_t> sorted = points;
      std::sort(sorted.begin(), sorted.end());
      c = rgl::hyper_color(spec, sorted);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json doc = envelope("color");
  doc["coloring"] = rgl::to_string(spec);
  doc["points"] = points;
  doc["color"] = to_string(c);
  emit(common, doc, to_string(c) + "\n");
  return ok;
}

// ---------------------------------------------------------------- threshold

int cmd_threshold(const Common& common, const std::string& path, int colors, std::int64_t n_max) {
  const rgl::IntMatrix a = rgl::load_matrix(path);
  rgl::ThresholdReport rep;
  try {
    rep = rgl::exhaustive_threshold(a, colors, n_max);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }

  json doc = envelope("threshold");
  doc["colors"] = colors;
  doc["N_max"] = n_max;
  doc["first_forced"] = rep.first_forced ? json(*rep.first_forced) : json(nullptr);
  doc["verdicts"] = json::array();
  std::ostringstream human;
  for (const auto& v : rep.verdicts) {
    json jv;
    jv["N"] = v.N;
    jv["forced"] = v.forced;
    jv["avoiding"] = v.avoiding ? rgl::to_json(*v.avoiding) : json(nullptr);
    doc["verdicts"].push_back(jv);
    human << "N = " << v.N << ": " << (v.forced ? "forced" : "avoidable") << '\n';
  }
  if (rep.first_forced) human << "first forced N = " << *rep.first_forced << '\n';
  else human << "no forced N up to " << n_max << '\n';
  emit(common, doc, human.str());
  return rep.first_forced ? ok : negative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-regularity of linear systems: screens, certificates, colorings, searches"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("-o,--output", common.output, "Write the report to a file");
  app.add_option("--budget-ms", common.budget_ms, "Per-stage time budget in milliseconds");

  std::string matrix, cert, flavor, coloring, sigma;
  std::size_t max_steps = 4;
  std::int64_t N = 0, Q = 0, n_max = 0;
  int colors = 2;
  bool hyper = false, emit_c = false;
  std::vector<std::int64_t> points;

  auto* analyze = app.add_subcommand("analyze", "Screen and classify A x = 0");
  analyze->add_option("matrix", matrix, "Matrix file")->required();
  analyze->add_option("--T-max", max_steps, "Longest certificate to search for")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Check a certificate against a matrix");
  verify->add_option("matrix", matrix, "Matrix file")->required();
  verify->add_option("certificate", cert, "Certificate JSON")->required();
  verify->add_option("--flavor", flavor, "cc, weak or strong (default: the certificate's own)")
      ->check(CLI::IsMember({"cc", "weak", "strong"}));

  auto* search = app.add_subcommand("search", "Find a monochromatic solution in [1..N]");
  search->add_option("matrix", matrix, "Matrix file")->required();
  search->add_option("--coloring", coloring, "Coloring, e.g. phi:p=3")->required();
  search->add_option("--N", N, "Search bound")->required();
  search->add_flag("--hyper", hyper, "Color r-sets instead of edges");

  auto* grid = app.add_subcommand("grid", "Constructive witness through a monochromatic grid");
  grid->add_option("matrix", matrix, "Matrix file")->required();
  grid->add_option("--coloring", coloring, "Edge coloring")->required();
  grid->add_option("--Q", Q, "Range bound for grid coordinates")->required();
  grid->add_option("--budget", common.budget_ms, "Alias of --budget-ms");

  auto* reduce = app.add_subcommand("reduce", "Columns condition on C(sigma) transferred to A");
  reduce->add_option("matrix", matrix, "Matrix file")->required();
  reduce->add_option("--sigma", sigma, "Column order, 1-based, comma separated");
  reduce->add_flag("--emit-c", emit_c, "Include the matrix C(sigma)");

  auto* color = app.add_subcommand("color", "Evaluate a coloring");
  color->add_option("--coloring", coloring, "Coloring")->required();
  color->add_option("points", points, "One vertex, an edge, or an r-set")->required();

  auto* threshold = app.add_subcommand("threshold", "Exhaustive forcing check on K_N for small N");
  threshold->add_option("matrix", matrix, "Matrix file")->required();
  threshold->add_option("--colors", colors, "Number of colors")->check(CLI::PositiveNumber);
  threshold->add_option("--N-max", n_max, "Largest N")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*analyze) return cmd_analyze(common, matrix, max_steps);
    if (*verify) return cmd_verify(common, matrix, cert, flavor);
    if (*search) return cmd_search(common, matrix, coloring, N, hyper);
    if (*grid) return cmd_grid(common, matrix, coloring, Q);
    if (*reduce) return cmd_reduce(common, matrix, sigma, emit_c);
    if (*color) return cmd_color(common, coloring, points);
    if (*threshold) return cmd_threshold(common, matrix, colors, n_max);
  } catch (const rgl::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return unknown;
  }
  return usage;
}
