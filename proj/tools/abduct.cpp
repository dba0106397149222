// Command-line front end: generate synthetic instances, run abduction, print
// sample-size tables, evaluate explanations on holdouts, and spot-check the
// pipeline against the brute-force reference implementations.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "abduct/abduce.hpp"
#include "abduct/evaluate.hpp"
#include "abduct/oracle.hpp"
#include "abduct/report.hpp"
#include "abduct/sampling.hpp"
#include "abduct/synth.hpp"
#include "abduct/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoExplanation = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// --query and --hypothesis accept a literal string or @path-to-file.
std::string resolve_text_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return trim(slurp(arg.substr(1)));
  return arg;
}

abduct::DataFormat format_of(const std::string& path) {
  return path.ends_with(".jsonl") ? abduct::DataFormat::Jsonl : abduct::DataFormat::Csv;
}

abduct::Dataset load_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  try {
    return abduct::load_dataset(in, format_of(path));
  } catch (const abduct::FormatError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

abduct::KnowledgeBase load_kb_file(const std::string& path, std::size_t n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  try {
    return abduct::parse_kb(in, n);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::uint64_t resolve_seed(const CLI::Option* seed_option, std::uint64_t seed_flag) {
  if (seed_option->count() > 0) return seed_flag;
  if (const char* env = std::getenv("ABDUCT_SEED")) return std::stoull(env);
  return 1;
}

json tool_stamp() {
  return {{"name", abduct::kToolName},
          {"version", abduct::kToolVersion},
          {"prng", abduct::kPrngName}};
}

void print_table(std::ostream& out, const json& j, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object())
      print_table(out, value, prefix + key + ".");
    else
      out << prefix + key << ": " << value.dump() << "\n";
  }
}

void emit(const json& report, const std::string& format, const std::string& out_path) {
  std::string text;
  if (format == "table") {
    std::ostringstream table;
    print_table(table, report);
    text = table.str();
  } else {
    text = report.dump(2) + "\n";
  }
  if (out_path.empty())
    std::cout << text;
  else
    spit(out_path, text);
}

// ---------------------------------------------------------------------------

struct GenerateOptions {
  std::string out_dir = ".";
  std::size_t n = 20;
  int k = 2;
  int r = 3;
  std::size_t rows = 1000;
  std::size_t holdout_rows = 0;
  double mask_rate = 0.2;
  double mu_target = 0.7;
  double epsilon_star = 0.0;
  std::uint64_t seed = 1;
  bool no_kb = false;
  std::string sidecar_path;
};

int cmd_generate(const GenerateOptions& opt) {
  abduct::PlantedInstance instance =
      abduct::plant(opt.n, opt.k, opt.r, opt.mu_target, opt.epsilon_star, opt.seed, !opt.no_kb);
  abduct::MaskProcess process = abduct::IndependentMask{opt.mask_rate};
  abduct::MaskedDataset train = abduct::sample_masked(instance, opt.rows, process, opt.seed + 1);

  fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  spit(dir / "data.csv", abduct::save_dataset_string(train.data, abduct::DataFormat::Csv));

  std::ostringstream kb_text;
  abduct::save_kb(instance.kb, kb_text);
  spit(dir / "kb.txt", kb_text.str());
  spit(dir / "query.txt", instance.c.to_string() + "\n");

  json manifest = {
      {"schema", abduct::kReportSchema},
      {"tool", tool_stamp()},
      {"seed", opt.seed},
      {"n", opt.n},
      {"k", opt.k},
      {"r", opt.r},
      {"rows", opt.rows},
      {"holdout_rows", opt.holdout_rows},
      {"mask", {{"kind", "independent"}, {"rate", opt.mask_rate}}},
      {"mu_target", opt.mu_target},
      {"epsilon_star", opt.epsilon_star},
      {"with_kb", !opt.no_kb},
      {"h_star", instance.h_star.to_string()},
      {"query", instance.c.to_string()},
      {"query_attr", instance.query_attr + 1},
      {"synthetic_model",
       "planted disjoint terms; query materialized as the last attribute column"},
      {"files", {{"data", "data.csv"}, {"kb", "kb.txt"}, {"query", "query.txt"}}},
  };

  if (opt.holdout_rows > 0) {
    abduct::MaskedDataset holdout =
        abduct::sample_masked(instance, opt.holdout_rows, process, opt.seed + 2);
    spit(dir / "holdout.csv",
         abduct::save_dataset_string(holdout.data, abduct::DataFormat::Csv));
    manifest["files"]["holdout"] = "holdout.csv";
  }
  if (!opt.sidecar_path.empty()) {
    std::ostringstream sidecar;
    for (const abduct::GroundSample& ground : train.ground) {
      std::string bits(instance.n, '0');
      for (std::size_t i = 0; i < instance.n; ++i)
        if (ground.assignment[i]) bits[i] = '1';
      sidecar << json{{"assignment", bits}, {"query", ground.query_value}}.dump() << "\n";
    }
    spit(opt.sidecar_path, sidecar.str());
    manifest["files"]["sidecar"] = opt.sidecar_path;
  }

  spit(dir / "manifest.json", manifest.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PipelineOptions {
  std::string examples_path;
  std::string kb_path;
  std::string query;
  double mu = 0.0;  // 0 = estimate
  double epsilon = 0.1;
  double gamma = 0.5;
  double delta = 0.1;
  int k = 2;
  int r = 3;
  std::string engine = "unitprop";
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  std::string holdout_path;
  std::string format = "json";
  std::string out_path;
  unsigned threads = 1;
  double mu_floor = 1e-3;
  std::string hypothesis;
};

json config_json(const PipelineOptions& opt, std::size_t n, bool mu_estimated) {
  return {
      {"examples", opt.examples_path},
      {"kb", opt.kb_path},
      {"query", opt.query},
      {"mu", opt.mu},
      {"mu_estimated", mu_estimated},
      {"mu_floor", opt.mu_floor},
      {"epsilon", opt.epsilon},
      {"gamma", opt.gamma},
      {"delta", opt.delta},
      {"k", opt.k},
      {"r", opt.r},
      {"n", n},
      {"engine", opt.engine},
      {"seed", opt.seed},
      {"budget", opt.budget},
      {"threads", opt.threads},
      {"holdout", opt.holdout_path},
  };
}

int cmd_abduce(PipelineOptions opt) {
  abduct::Dataset data = load_dataset_file(opt.examples_path);
  abduct::KnowledgeBase kb = load_kb_file(opt.kb_path, data.n);
  abduct::Formula c = abduct::parse_formula(resolve_text_arg(opt.query), data.n);
  abduct::ProofEngine engine = abduct::ProofEngine::parse(opt.engine, opt.k + 1);

  abduct::AbductionParams params;
  params.epsilon = opt.epsilon;
  params.gamma = opt.gamma;
  params.delta = opt.delta;
  params.k = opt.k;
  params.r = opt.r;
  params.n = data.n;

  bool mu_estimated = false;
  if (opt.mu > 0.0) {
    params.mu = opt.mu;
  } else {
    abduct::MuEstimate estimate =
        abduct::estimate_mu(kb, c, data, params, engine, opt.mu_floor, opt.threads);
    params.mu = estimate.mu;
    mu_estimated = true;
    if (!estimate.found)
      std::cerr << "warning: no candidate mu down to the floor " << opt.mu_floor
                << " admits a cover; proceeding at the floor\n";
  }
  opt.mu = params.mu;

  json report = {{"schema", abduct::kReportSchema},
                 {"tool", tool_stamp()},
                 {"config", config_json(opt, data.n, mu_estimated)}};

  try {
    abduct::DerivedParams derived = abduct::required_samples(params, opt.budget);
    report["derived"] = abduct::to_json(derived);
    report["derived"]["m_actual"] = data.rows.size();
    if (derived.m_theoretical > data.rows.size())
      std::cerr << "warning: dataset has " << data.rows.size() << " rows but the bounds ask for "
                << derived.m_theoretical << "\n";
  } catch (const std::overflow_error&) {
    report["derived"] = {{"m_theoretical", nullptr}, {"m_actual", data.rows.size()}};
  }

  abduct::AbductionResult result = abduct::abduce(kb, c, data, params, engine, opt.threads);
  report["result"] = abduct::to_json(result);

  if (!opt.holdout_path.empty()) {
    abduct::Dataset holdout = load_dataset_file(opt.holdout_path);
    abduct::EvalReport eval = abduct::evaluate(result.h, kb, c, holdout, params, engine);
    report["holdout"] = {{"path", opt.holdout_path},
                         {"disjoint_from_training", true},
                         {"report", abduct::to_json(eval)},
                         {"bounds", abduct::to_json(abduct::compare_bounds(
                                        eval, params, result.r_prime))}};
  }

  emit(report, opt.format, opt.out_path);
  return result.status == abduct::AbduceStatus::Found ? kExitOk : kExitNoExplanation;
}

int cmd_samples(const PipelineOptions& opt, std::size_t n) {
  abduct::AbductionParams params;
  params.mu = opt.mu > 0 ? opt.mu : 0.5;
  params.epsilon = opt.epsilon;
  params.gamma = opt.gamma;
  params.delta = opt.delta;
  params.k = opt.k;
  params.r = opt.r;
  params.n = n;

  abduct::DerivedParams derived = abduct::required_samples(params, opt.budget);
  json report = {{"schema", abduct::kReportSchema},
                 {"tool", tool_stamp()},
                 {"params",
                  {{"mu", params.mu},
                   {"epsilon", params.epsilon},
                   {"gamma", params.gamma},
                   {"delta", params.delta},
                   {"k", params.k},
                   {"r", params.r},
                   {"n", params.n},
                   {"budget", opt.budget}}},
                 {"derived", abduct::to_json(derived)}};
  emit(report, opt.format, opt.out_path);
  if (derived.budget_capped)
    std::cerr << "warning: theoretical m " << derived.m_theoretical << " capped to " << derived.m
              << "\n";
  return kExitOk;
}

int cmd_evaluate(const PipelineOptions& opt) {
  abduct::Dataset holdout = load_dataset_file(opt.examples_path);
  abduct::KnowledgeBase kb = load_kb_file(opt.kb_path, holdout.n);
  abduct::Formula c = abduct::parse_formula(resolve_text_arg(opt.query), holdout.n);
  abduct::Formula h_formula =
      abduct::parse_formula(resolve_text_arg(opt.hypothesis), holdout.n);
  std::optional<abduct::KDnf> h = abduct::kdnf_from_formula(h_formula, opt.k);
  if (!h) throw std::runtime_error("hypothesis is not a k-DNF of width " + std::to_string(opt.k));
  abduct::ProofEngine engine = abduct::ProofEngine::parse(opt.engine, opt.k + 1);

  abduct::AbductionParams params;
  params.mu = opt.mu > 0 ? opt.mu : 0.5;
  params.epsilon = opt.epsilon;
  params.gamma = opt.gamma;
  params.delta = opt.delta;
  params.k = opt.k;
  params.r = opt.r;
  params.n = holdout.n;

  abduct::EvalReport eval = abduct::evaluate(*h, kb, c, holdout, params, engine);
  abduct::BoundCheck bounds = abduct::compare_bounds(eval, params, h->terms().size());

  json report = {{"schema", abduct::kReportSchema},
                 {"tool", tool_stamp()},
                 {"hypothesis", h->to_string()},
                 {"report", abduct::to_json(eval)},
                 {"bounds", abduct::to_json(bounds)}};
  emit(report, opt.format, opt.out_path);
  return kExitOk;
}

int cmd_verify(const PipelineOptions& opt, const std::string& check) {
  abduct::Dataset data = load_dataset_file(opt.examples_path);
  abduct::KnowledgeBase kb = load_kb_file(opt.kb_path, data.n);
  abduct::Formula c = abduct::parse_formula(resolve_text_arg(opt.query), data.n);
  abduct::ProofEngine engine = abduct::ProofEngine::parse(opt.engine, opt.k + 1);
  std::vector<abduct::Term> terms = abduct::enumerate_terms(data.n, opt.k);
  abduct::OracleConfig limits;

  if (check == "counts") {
    abduct::CoverageMatrix matrix = abduct::build_coverage(terms, kb, c, data, engine);
    std::vector<std::uint64_t> naive = abduct::exact_filter_counts(terms, kb, c, data, engine);
    std::size_t mismatches = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (naive[t] != matrix.bad_counts[t]) {
        ++mismatches;
        std::cout << "mismatch on " << terms[t].to_string() << ": pipeline "
                  << matrix.bad_counts[t] << ", naive " << naive[t] << "\n";
      }
    }
    std::cout << (mismatches == 0 ? "OK" : "MISMATCH") << ": " << terms.size()
              << " terms compared against the naive counter\n";
    return mismatches == 0 ? kExitOk : kExitError;
  }

  if (check == "cover") {
    double mu = opt.mu > 0 ? opt.mu : 0.5;
    abduct::CoverageMatrix matrix = abduct::build_coverage(terms, kb, c, data, engine);
    std::uint64_t threshold =
        abduct::filter_threshold_for(mu, opt.epsilon, data.rows.size());
    std::uint64_t target = abduct::cover_target_for(mu, data.rows.size());

    std::vector<std::pair<std::size_t, std::size_t>> sized;  // (coverage, term index)
    for (std::size_t idx : abduct::filter_terms(matrix, threshold)) {
      std::size_t coverage = matrix.provable_sets[idx].count();
      if (coverage > 0) sized.emplace_back(coverage, idx);
    }
    std::sort(sized.rbegin(), sized.rend());
    if (sized.size() > limits.max_terms) sized.resize(limits.max_terms);

    std::vector<abduct::Bitset> bits;
    std::vector<std::vector<std::size_t>> plain;
    for (const auto& [coverage, idx] : sized) {
      bits.push_back(matrix.provable_sets[idx]);
      std::vector<std::size_t> elements;
      for (std::size_t i = 0; i < data.rows.size(); ++i)
        if (matrix.provable_sets[idx].test(i)) elements.push_back(i);
      plain.push_back(std::move(elements));
    }
    std::cout << "comparing greedy against exact cover on the " << bits.size()
              << " largest surviving sets, target " << target << "\n";
    abduct::CoverResult greedy = abduct::greedy_partial_cover(bits, target);
    abduct::OptimalCover optimal = abduct::optimal_partial_cover(plain, target, limits);
    if (!greedy.success || !optimal.feasible) {
      std::cout << "cover infeasible on this slice (greedy "
                << (greedy.success ? "ok" : "failed") << ", exact "
                << (optimal.feasible ? "ok" : "infeasible") << ")\n";
      return kExitOk;
    }
    double bound = static_cast<double>(optimal.size) *
                       std::log(static_cast<double>(std::max<std::uint64_t>(target, 2))) +
                   1.0;
    bool ok = static_cast<double>(greedy.chosen.size()) <= bound;
    std::cout << (ok ? "OK" : "VIOLATION") << ": greedy " << greedy.chosen.size() << ", optimal "
              << optimal.size << ", bound " << bound << "\n";
    return ok ? kExitOk : kExitError;
  }

  if (check == "soundness") {
    std::size_t checked = 0;
    std::size_t violations = 0;
    for (const abduct::PartialExample& row : data.rows) {
      abduct::Derivation d = abduct::derive_literals(kb, row, engine);
      for (const abduct::Term& t : terms) {
        if (checked >= 5000) break;
        if (!abduct::term_provable_in(d, t)) continue;
        ++checked;
        if (!abduct::semantic_provability(kb, t, row, limits)) {
          ++violations;
          std::cout << "unsound: " << t.to_string() << " on row " << row.to_string() << "\n";
        }
      }
    }
    std::cout << (violations == 0 ? "OK" : "UNSOUND") << ": " << checked
              << " provable (term, example) pairs checked semantically\n";
    return violations == 0 ? kExitOk : kExitError;
  }

  throw std::runtime_error("unknown check \"" + check + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-DNF abduction from partially observed examples"};
  app.require_subcommand(1);

  GenerateOptions gen;
  CLI::App* generate = app.add_subcommand("generate", "emit a synthetic planted instance");
  generate->add_option("--out", gen.out_dir, "output directory");
  generate->add_option("--n", gen.n, "attribute count (incl. the query column)");
  generate->add_option("--k", gen.k, "term width");
  generate->add_option("--r", gen.r, "planted term count");
  generate->add_option("--rows", gen.rows, "training rows");
  generate->add_option("--holdout-rows", gen.holdout_rows, "also emit holdout.csv");
  generate->add_option("--mask-rate", gen.mask_rate, "independent hide probability");
  generate->add_option("--mu-target", gen.mu_target, "P[some planted term true]");
  generate->add_option("--epsilon-star", gen.epsilon_star, "noise on the query rule");
  CLI::Option* gen_seed = generate->add_option("--seed", gen.seed, "rng seed");
  generate->add_flag("--no-kb", gen.no_kb, "skip the alias knowledge base");
  generate->add_option("--sidecar", gen.sidecar_path, "also write ground truth jsonl");

  PipelineOptions run;
  std::string samples_format = "table";
  std::size_t samples_n = 20;
  std::string verify_check = "counts";

  CLI::App* abduce_cmd = app.add_subcommand("abduce", "learn a k-DNF explanation");
  abduce_cmd->add_option("--examples", run.examples_path, "dataset path")->required();
  abduce_cmd->add_option("--kb", run.kb_path, "knowledge base path")->required();
  abduce_cmd->add_option("--query", run.query, "query formula or @file")->required();
  abduce_cmd->add_option("--mu", run.mu, "plausibility floor; omit to estimate");
  abduce_cmd->add_option("--epsilon", run.epsilon, "entailment tolerance");
  abduce_cmd->add_option("--gamma", run.gamma, "multiplicative slack");
  abduce_cmd->add_option("--delta", run.delta, "failure probability");
  abduce_cmd->add_option("--k", run.k, "term width");
  abduce_cmd->add_option("--r", run.r, "assumed optimal term count");
  abduce_cmd->add_option("--engine", run.engine, "witnessed|unitprop|resolution[:W]");
  CLI::Option* abduce_seed = abduce_cmd->add_option("--seed", run.seed, "rng seed (recorded)");
  abduce_cmd->add_option("--budget", run.budget, "cap on theoretical m (0 = none)");
  abduce_cmd->add_option("--holdout", run.holdout_path, "holdout dataset path");
  abduce_cmd->add_option("--format", run.format, "json|table");
  abduce_cmd->add_option("--out", run.out_path, "write the report here instead of stdout");
  abduce_cmd->add_option("--threads", run.threads, "coverage workers");
  abduce_cmd->add_option("--mu-floor", run.mu_floor, "grid floor for mu estimation");

  CLI::App* samples = app.add_subcommand("samples", "print the sample-size bounds");
  samples->add_option("--n", samples_n, "attribute count")->required();
  samples->add_option("--k", run.k, "term width");
  samples->add_option("--r", run.r, "assumed optimal term count");
  samples->add_option("--mu", run.mu, "plausibility floor")->required();
  samples->add_option("--epsilon", run.epsilon, "entailment tolerance");
  samples->add_option("--gamma", run.gamma, "multiplicative slack");
  samples->add_option("--delta", run.delta, "failure probability");
  samples->add_option("--budget", run.budget, "cap on m (0 = none)");
  samples->add_option("--format", samples_format, "json|table");

  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "score a hypothesis on a holdout");
  evaluate_cmd->add_option("--examples", run.examples_path, "holdout dataset path")->required();
  evaluate_cmd->add_option("--kb", run.kb_path, "knowledge base path")->required();
  evaluate_cmd->add_option("--query", run.query, "query formula or @file")->required();
  evaluate_cmd->add_option("--hypothesis", run.hypothesis, "k-DNF formula or @file")->required();
  evaluate_cmd->add_option("--mu", run.mu, "plausibility floor");
  evaluate_cmd->add_option("--epsilon", run.epsilon, "entailment tolerance");
  evaluate_cmd->add_option("--gamma", run.gamma, "multiplicative slack");
  evaluate_cmd->add_option("--delta", run.delta, "failure probability");
  evaluate_cmd->add_option("--k", run.k, "term width");
  evaluate_cmd->add_option("--engine", run.engine, "witnessed|unitprop|resolution[:W]");
  evaluate_cmd->add_option("--format", run.format, "json|table");
  evaluate_cmd->add_option("--out", run.out_path, "write the report here instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "cross-check against the naive oracles");
  verify->add_option("--examples", run.examples_path, "dataset path")->required();
  verify->add_option("--kb", run.kb_path, "knowledge base path")->required();
  verify->add_option("--query", run.query, "query formula or @file")->required();
  verify->add_option("--k", run.k, "term width");
  verify->add_option("--mu", run.mu, "plausibility floor (cover check)");
  verify->add_option("--epsilon", run.epsilon, "entailment tolerance (cover check)");
  verify->add_option("--engine", run.engine, "witnessed|unitprop|resolution[:W]");
  verify->add_option("--check", verify_check, "counts|cover|soundness");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      gen.seed = resolve_seed(gen_seed, gen.seed);
      return cmd_generate(gen);
    }
    if (abduce_cmd->parsed()) {
      run.seed = resolve_seed(abduce_seed, run.seed);
      return cmd_abduce(run);
    }
    if (samples->parsed()) {
      run.format = samples_format;
      return cmd_samples(run, samples_n);
    }
    if (evaluate_cmd->parsed()) return cmd_evaluate(run);
    if (verify->parsed()) return cmd_verify(run, verify_check);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
