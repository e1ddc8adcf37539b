// pcm: efficiency checks, Perron reports, vector generators and fixture
// reproduction for reciprocal matrices.
//
// Exit codes: check/perron 0 efficient, 1 inefficient, 2 input error;
// generate 0 ok, 2 invalid spec, 3 an emitted vector failed its self-check;
// reproduce/oracle 0 all pass, 1 mismatch.

#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <map>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcm/pcm.hpp"

using namespace pcm;

namespace {

enum class Format { json, csv, table };

struct RunConfig {
  Backend backend = Backend::automatic;
  Tolerances tol;
  Format format = Format::table;
  std::uint64_t seed = 1;
  std::size_t count = 10;
};

struct Style {
  bool on = false;
  std::string green(const std::string& s) const { return on ? "\033[32m" + s + "\033[0m" : s; }
  std::string red(const std::string& s) const { return on ? "\033[31m" + s + "\033[0m" : s; }
  std::string bold(const std::string& s) const { return on ? "\033[1m" + s + "\033[0m" : s; }
};

Style make_style() {
  const char* off = std::getenv("PCM_NO_COLOR");
  return Style{(off == nullptr || *off == '\0') && isatty(STDOUT_FILENO) != 0};
}

std::string join(const json& arr, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += sep;
    out += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
  }
  return out;
}

std::string sets_text(const json& parts) {
  std::string out;
  for (const auto& p : parts) out += "{" + join(p, ",") + "}";
  return out;
}

// ---------------------------------------------------------------- check

template <Scalar T>
int run_check(const TextGrid& mg, const TextGrid& vg, const RunConfig& cfg, Backend used, const Style& st) {
  const ReciprocalMatrix<T> a = to_matrix<T>(mg, cfg.tol);
  const WeightVector<T> w = to_vector<T>(vg);
  if (w.size() != a.size()) throw Error(Errc::dimension_mismatch, "matrix and vector sizes differ");
  const EfficiencyVerdict<T> v = is_efficient(a, w, cfg.tol);
  json j = verdict_json(v);
  j["backend"] = backend_name(used);
  switch (cfg.format) {
    case Format::json:
      std::cout << j.dump(2) << "\n";
      break;
    case Format::csv:
      std::cout << "field,value\n";
      std::cout << "status," << j["status"].get<std::string>() << "\n";
      std::cout << "backend," << backend_name(used) << "\n";
      std::cout << "scc_partition," << sets_text(j["scc_partition"]) << "\n";
      if (j.contains("source_set")) std::cout << "source_set,{" << join(j["source_set"], " ") << "}\n";
      if (j.contains("dominator")) std::cout << "dominator," << join(j["dominator"], " ") << "\n";
      break;
    case Format::table:
      std::cout << "backend     " << backend_name(used) << "\n";
      std::cout << "status      " << (v.efficient ? st.green("efficient") : st.red("inefficient")) << "\n";
      std::cout << "components  " << sets_text(j["scc_partition"]) << "\n";
      if (j.contains("source_set")) std::cout << "source      {" << join(j["source_set"], ",") << "}\n";
      if (j.contains("dominator")) std::cout << "dominator   " << join(j["dominator"]) << "\n";
      break;
  }
  return v.efficient ? 0 : 1;
}

// ---------------------------------------------------------------- perron

template <Scalar T>
int run_perron(const TextGrid& mg, const RunConfig& cfg, Backend used, const Style& st) {
  const ReciprocalMatrix<T> a = to_matrix<T>(mg, cfg.tol);
  const PerronReport r = analyze_perron(a, cfg.tol);
  json j = perron_json(r);
  j["backend"] = backend_name(used);
  switch (cfg.format) {
    case Format::json:
      std::cout << j.dump(2) << "\n";
      break;
    case Format::csv:
      std::cout << "field,value\n";
      std::cout << "lambda," << to_string(r.result.lambda) << "\n";
      std::cout << "vector," << join(j["vector"]) << "\n";
      std::cout << "residual," << to_string(r.result.residual) << "\n";
      std::cout << "structure_ok," << (r.structure_ok ? "true" : "false") << "\n";
      std::cout << "sufficient_condition,"
                << (r.sufficient_condition ? condition_name(*r.sufficient_condition) : "n/a") << "\n";
      for (const auto& c : r.cycles) std::cout << "cycle," << join(json(c), "->") << "\n";
      std::cout << "verdict," << j["verdict"].get<std::string>() << "\n";
      break;
    case Format::table:
      std::cout << "lambda      " << to_string(r.result.lambda) << "\n";
      std::cout << "vector      " << join(j["vector"]) << "\n";
      std::cout << "residual    " << to_string(r.result.residual) << " (" << r.result.iterations << " iterations)\n";
      if (r.block_size) std::cout << "block size  " << *r.block_size << "\n";
      std::cout << "equal tail  " << (r.structure_ok ? (r.structure_vacuous ? "vacuous" : "yes") : "no") << "\n";
      if (r.sufficient_condition) {
        std::cout << "condition   " << condition_name(*r.sufficient_condition)
                  << (r.block_reversed ? " (block reversed)" : "") << "\n";
      }
      for (const auto& c : r.cycles) std::cout << "cycle       " << join(json(c), "->") << "\n";
      std::cout << "verdict     " << (r.efficient ? st.green("efficient") : st.red("inefficient")) << "\n";
      break;
  }
  return r.efficient ? 0 : 1;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string kind;
  std::string x = "2";
  std::string block;  // "a12,a13,a23"
  Index s = 3;
  Index n = 5;
  std::vector<std::string> seeds;  // 4-vectors, "13,8,7,12"
};

std::vector<std::string> split_list(const std::string& s) {
  TextGrid g = parse_vector_text(s);
  return g.cells.front();
}

template <Scalar T>
json provenance(const WeightVector<T>& w, const WeightVector<T>& head, const T& lo, const T& hi,
                const std::vector<Index>& perm) {
  json j;
  j["vector"] = vector_json(w);
  j["seed_head"] = vector_json(head);
  j["tail_bounds"] = json::array({scalar_json(lo), scalar_json(hi)});
  json p = json::array();
  for (Index k : perm) p.push_back(k + 1);
  j["permutation"] = p;
  return j;
}

void emit(const json& j, const RunConfig& cfg, std::size_t index) {
  switch (cfg.format) {
    case Format::json:
      std::cout << j.dump() << "\n";
      break;
    case Format::csv:
      std::cout << join(j["vector"], ",") << "\n";
      break;
    case Format::table:
      std::cout << index + 1 << "  " << join(j["vector"]) << "\n";
      break;
  }
}

/// Candidate 4-vectors for the 3-block generator: columns of A_4(B) with
/// entries jittered by small rational factors; the digraph filter keeps
/// the efficient ones.
template <Scalar T, class Rng>
std::vector<WeightVector<T>> random_four_vectors(const ReciprocalMatrix<T>& a4, std::size_t want, Rng& rng) {
  static const long nums[] = {1, 2, 3, 4, 5, 6, 8};
  std::uniform_int_distribution<int> pick(0, 6), col(0, 3);
  std::vector<WeightVector<T>> out;
  for (std::size_t attempt = 0; attempt < 200 * want && out.size() < want; ++attempt) {
    const int c = col(rng);
    std::vector<T> v(4);
    for (int i = 0; i < 4; ++i) v[i] = a4(i, c) * from_ratio<T>(nums[pick(rng)], nums[pick(rng)]);
    WeightVector<T> w(std::move(v));
    if (digraph_efficient(a4, w)) out.push_back(std::move(w));
  }
  for (int c = 0; out.size() < want; c = (c + 1) % 4) {
    std::vector<T> v(4);
    for (int i = 0; i < 4; ++i) v[i] = a4(i, c);
    out.emplace_back(std::move(v));
  }
  return out;
}

template <Scalar T>
int run_generate(const GenerateArgs& g, const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  bool self_check_failed = false;
  auto certify = [&](const ReciprocalMatrix<T>& a, const WeightVector<T>& w) {
    if (!digraph_efficient(a, w, cfg.tol)) {
      self_check_failed = true;
      return false;
    }
    return true;
  };
  if (cfg.format == Format::csv) std::cout << "# one vector per line\n";

  if (g.kind == "2block") {
    const T x = parse_scalar<T>(g.x);
    if (!(x > T(0)) || g.n < 3) throw Error(Errc::invalid_spec, "2block needs x > 0 and n >= 3");
    const TwoBlockMatrix<T> s{x, g.n};
    const ReciprocalMatrix<T> a = s.matrix();
    for (std::size_t k = 0; k < cfg.count; ++k) {
      const WeightVector<T> w = sample_two_block(s, rng);
      if (!certify(a, w)) break;
      const IndexSet head_idx{0, 1};
      const WeightVector<T> head = w.restrict_to(head_idx);
      const auto [lo, hi] = std::minmax(head[0], head[1]);
      std::vector<Index> perm(g.n - 2);
      std::iota(perm.begin(), perm.end(), Index{2});
      emit(provenance(w, head, lo, hi, perm), cfg, k);
    }
  } else if (g.kind == "3block") {
    const std::vector<std::string> parts = split_list(g.block);
    if (parts.size() != 3) throw Error(Errc::invalid_spec, "--block needs a12,a13,a23");
    if (g.n < 4) throw Error(Errc::invalid_spec, "3block needs n >= 4");
    std::vector<T> up;
    for (const auto& p : parts) up.push_back(parse_scalar<T>(p));
    const ThreeBlockMatrix<T> tb{ReciprocalMatrix<T>::from_upper(3, up), g.n};
    const ReciprocalMatrix<T> a = tb.matrix();
    std::vector<WeightVector<T>> seeds;
    for (const auto& s : g.seeds) {
      WeightVector<T> w = to_vector<T>(parse_vector_text(s));
      if (w.size() != 4) throw Error(Errc::invalid_spec, "seed vectors need 4 entries");
      seeds.push_back(std::move(w));
    }
    const ReciprocalMatrix<T> a4 = ReciprocalMatrix<T>::block_perturbed(tb.block, 4);
    if (seeds.empty()) seeds = random_four_vectors(a4, cfg.count, rng);
    std::size_t k = 0;
    while (k < cfg.count) {
      const auto batch = three_block_generate(tb, seeds, rng, 1, cfg.tol);
      if (batch.empty()) throw Error(Errc::invalid_spec, "no seed vector is efficient for A[{1,2,3,4}]");
      for (const auto& gv : batch) {
        if (k == cfg.count) break;
        if (!certify(a, gv.vector)) break;
        std::vector<Index> perm;
        for (Index p : gv.permutation) perm.push_back(p + 3);
        emit(provenance(gv.vector, gv.seed_head, gv.tail_lo, gv.tail_hi, perm), cfg, k++);
      }
      if (self_check_failed) break;
    }
  } else if (g.kind == "constant") {
    const T x = parse_scalar<T>(g.x);
    if (!(x > T(0)) || g.s < 3 || g.n < g.s) throw Error(Errc::invalid_spec, "constant needs x > 0, s >= 3, n >= s");
    const ConstantBlockMatrix<T> m{x, g.s, g.n};
    const ReciprocalMatrix<T> a = m.matrix();
    const BlockPerturbedForm<T> form = canonical_form(m.block(), g.n == g.s ? g.s + 1 : g.n);
    for (std::size_t k = 0; k < cfg.count; ++k) {
      const WeightVector<T> head = sample_constant_block_head(m, rng);
      const LcomplSampler<T> sampler(form, head, g.n - g.s, cfg.tol);
      const WeightVector<T> w = sampler.next(rng);
      if (!certify(a, w)) break;
      std::vector<Index> perm(g.n - g.s);
      std::iota(perm.begin(), perm.end(), g.s);
      emit(provenance(w, head, sampler.tail_lo(), sampler.tail_hi(), perm), cfg, k);
    }
  } else {
    throw Error(Errc::invalid_spec, "unknown generator '" + g.kind + "' (2block, 3block, constant)");
  }
  if (self_check_failed) {
    std::cerr << "pcm: generated vector failed the digraph self-check\n";
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------- reproduce

int print_report(const std::vector<std::pair<std::string, ReproduceReport>>& reps, const RunConfig& cfg,
                 const Style& st) {
  bool ok = true;
  json all = json::array();
  for (const auto& [target, rep] : reps) {
    ok = ok && rep.all_pass();
    for (const auto& l : rep.lines) {
      all.push_back({{"target", target}, {"check", l.name}, {"pass", l.pass}, {"detail", l.detail}});
    }
  }
  switch (cfg.format) {
    case Format::json: {
      json j;
      j["checks"] = all;
      j["pass"] = ok;
      std::cout << j.dump(2) << "\n";
      break;
    }
    case Format::csv:
      std::cout << "target,check,pass,detail\n";
      for (const auto& l : all) {
        std::cout << l["target"].get<std::string>() << ",\"" << l["check"].get<std::string>() << "\","
                  << (l["pass"].get<bool>() ? "pass" : "FAIL") << ",\"" << l["detail"].get<std::string>() << "\"\n";
      }
      break;
    case Format::table:
      for (const auto& [target, rep] : reps) {
        std::cout << st.bold(target) << "\n";
        for (const auto& l : rep.lines) {
          std::cout << "  " << (l.pass ? st.green("pass") : st.red("FAIL")) << "  " << l.name;
          if (!l.detail.empty()) std::cout << "  [" << l.detail << "]";
          std::cout << "\n";
        }
        std::size_t passed = 0;
        for (const auto& l : rep.lines) passed += l.pass;
        std::cout << "  " << passed << "/" << rep.lines.size() << " in " << rep.runtime_ms << " ms\n";
      }
      break;
  }
  return ok ? 0 : 1;
}

int run_reproduce(const std::string& target, const RunConfig& cfg, const Style& st) {
  std::vector<std::pair<std::string, ReproduceReport>> reps;
  if (target == "table1" || target == "all") reps.emplace_back("table1", reproduce_table1(cfg.tol));
  if (target == "examples" || target == "all") reps.emplace_back("examples", reproduce_examples());
  if (reps.empty()) throw Error(Errc::invalid_spec, "unknown target '" + target + "' (table1, examples, all)");
  return print_report(reps, cfg, st);
}

int run_oracle(Index n, const RunConfig& cfg, const Style& st) {
  std::mt19937_64 rng(cfg.seed);
  const OracleReport r = exhaustive_small_equivalence(cfg.count, n, rng, GridSpec{}, cfg.tol);
  json j;
  j["trials"] = r.trials;
  j["n"] = r.n;
  j["efficient"] = r.efficient;
  j["inefficient"] = r.inefficient;
  j["contradictions"] = r.contradictions;
  j["runtime_ms"] = r.runtime_ms;
  if (cfg.format == Format::json) {
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == Format::csv) {
    std::cout << "trials,n,efficient,inefficient,contradictions,runtime_ms\n"
              << r.trials << "," << r.n << "," << r.efficient << "," << r.inefficient << ","
              << r.contradictions.size() << "," << r.runtime_ms << "\n";
  } else {
    std::cout << "trials " << r.trials << " (n=" << r.n << "): " << r.efficient << " efficient, " << r.inefficient
              << " inefficient, "
              << (r.contradictions.empty() ? st.green("0 contradictions")
                                           : st.red(std::to_string(r.contradictions.size()) + " contradictions"))
              << ", " << r.runtime_ms << " ms\n";
    for (const auto& c : r.contradictions) std::cout << "  " << c << "\n";
  }
  return r.contradictions.empty() ? 0 : 1;
}

template <class F>
int dispatch(Backend used, F&& f) {
  if (used == Backend::exact) return f(Rational{});
  return f(double{});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Efficiency of weight vectors for reciprocal matrices"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::map<std::string, Backend> backends{
      {"auto", Backend::automatic}, {"exact", Backend::exact}, {"float", Backend::floating}};
  std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"table", Format::table}};
  auto tol_range = CLI::Range(0.0, 1e-3);
  app.add_option("--backend", cfg.backend, "exact, float or auto (p/q literals force exact)")
      ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
  app.add_option("--tol-edge", cfg.tol.edge, "relative slack for the edge rule (float backend)")->check(tol_range);
  app.add_option("--tol-perron", cfg.tol.perron, "power iteration tolerance")->check(tol_range);
  app.add_option("--format", cfg.format, "json, csv or table")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--count", cfg.count, "number of vectors or trials");

  std::string matrix_path, vector_path, target = "all";
  GenerateArgs gen;
  Index oracle_n = 3;

  auto* check = app.add_subcommand("check", "digraph efficiency test with certificate");
  check->add_option("matrix", matrix_path, "matrix file (CSV or JSON)")->required();
  check->add_option("vector", vector_path, "vector file (CSV or JSON)")->required();

  auto* perron_cmd = app.add_subcommand("perron", "Perron eigenvector and its efficiency");
  perron_cmd->add_option("matrix", matrix_path, "matrix file (CSV or JSON)")->required();

  auto* generate = app.add_subcommand("generate", "emit efficient vectors as JSON lines");
  generate->add_option("kind", gen.kind, "2block, 3block or constant")->required();
  generate->add_option("--x", gen.x, "perturbation value for 2block and constant");
  generate->add_option("--block", gen.block, "a12,a13,a23 for 3block");
  generate->add_option("--s", gen.s, "block size for constant");
  generate->add_option("--n", gen.n, "matrix size");
  generate->add_option("--seed-vector", gen.seeds, "4-vector seed for 3block (repeatable)");

  auto* reproduce = app.add_subcommand("reproduce", "run the bundled fixtures");
  reproduce->add_option("target", target, "table1, examples or all");

  auto* oracle = app.add_subcommand("oracle", "cross-check against brute-force lattice search");
  oracle->add_option("--n", oracle_n, "matrix size")->check(CLI::Range(2, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const Style st = make_style();
  std::cout.precision(17);
  try {
    if (check->parsed()) {
      const TextGrid mg = parse_matrix_text(read_file(matrix_path));
      const TextGrid vg = parse_vector_text(read_file(vector_path));
      const Backend used = resolve_backend(cfg.backend, mg.has_rational || vg.has_rational);
      return dispatch(used, [&](auto tag) { return run_check<decltype(tag)>(mg, vg, cfg, used, st); });
    }
    if (perron_cmd->parsed()) {
      const TextGrid mg = parse_matrix_text(read_file(matrix_path));
      const Backend used = resolve_backend(cfg.backend, mg.has_rational);
      return dispatch(used, [&](auto tag) { return run_perron<decltype(tag)>(mg, cfg, used, st); });
    }
    if (generate->parsed()) {
      // Generators default to exact arithmetic; --backend float opts out.
      const Backend used = cfg.backend == Backend::floating ? Backend::floating : Backend::exact;
      return dispatch(used, [&](auto tag) { return run_generate<decltype(tag)>(gen, cfg); });
    }
    if (reproduce->parsed()) return run_reproduce(target, cfg, st);
    if (oracle->parsed()) return run_oracle(oracle_n, cfg, st);
  } catch (const Error& e) {
    std::cerr << "pcm: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pcm: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
