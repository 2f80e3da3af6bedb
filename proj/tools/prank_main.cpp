// prank command-line tool. Talks to the library only through prank.h.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "prank/prank.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitModel = 3;
constexpr int kExitOracle = 4;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(prank_status s) {
  switch (s) {
    case PRANK_E_INVALID_ARGUMENT:
    case PRANK_E_PARSE:
    case PRANK_E_CONFIG:
    case PRANK_E_MISMATCHED_K:
    case PRANK_E_SIZE_LIMIT:
      return kExitUsage;
    default:
      return kExitModel;
  }
}

void check(prank_status s) {
  if (s != PRANK_OK) {
    throw Failure{exit_code_for(s), std::string(prank_status_name(s)) + ": " + prank_last_error()};
  }
}

struct ModelDeleter {
  void operator()(prank_model* m) const { prank_model_free(m); }
};
struct ResultDeleter {
  void operator()(prank_result* r) const { prank_result_free(r); }
};
struct MixtureDeleter {
  void operator()(prank_mixture* m) const { prank_mixture_free(m); }
};
struct FreeDeleter {
  void operator()(void* p) const { prank_free(p); }
};
using ModelPtr = std::unique_ptr<prank_model, ModelDeleter>;
using ResultPtr = std::unique_ptr<prank_result, ResultDeleter>;
using MixturePtr = std::unique_ptr<prank_mixture, MixtureDeleter>;

struct ModelArgs {
  std::string kind = "ind";
  std::string input;
  std::string scores;  // junction scores CSV
};

void add_model_flags(CLI::App* cmd, ModelArgs& a) {
  cmd->add_option("--model", a.kind, "Model kind")
      ->check(CLI::IsMember({"ind", "andxor", "junction"}))
      ->capture_default_str();
  cmd->add_option("--input", a.input, "Relation CSV, tree JSON or junction JSON")->required();
  cmd->add_option("--scores", a.scores, "Relation CSV with scores for a junction model");
}

ModelPtr load_model(const ModelArgs& a) {
  prank_model* m = nullptr;
  if (a.kind == "ind") {
    check(prank_model_load_relation(a.input.c_str(), &m));
  } else if (a.kind == "andxor") {
    check(prank_model_load_tree(a.input.c_str(), &m));
  } else {
    check(prank_model_load_junction(a.input.c_str(), a.scores.empty() ? nullptr : a.scores.c_str(),
                                    &m));
  }
  ModelPtr out(m);
  size_t violations = 0;
  char* report = nullptr;
  check(prank_model_validate(out.get(), &violations, &report));
  std::unique_ptr<char, FreeDeleter> keep(report);
  if (violations > 0) throw Failure{kExitModel, std::string("invalid model:\n") + report};
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Failure{kExitUsage, "cannot write '" + path + "'"};
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string rank_spec(const std::string& fn, double alpha, double alpha_im, size_t h,
                      const std::vector<double>& weights) {
  if (fn == "prfe") {
    return "prfe:" + fmt(alpha) + (alpha_im != 0.0 ? ":" + fmt(alpha_im) : "");
  }
  if (fn == "pt") return "pt:" + std::to_string(h);
  if (fn == "prfw") {
    std::string s = "prfw:";
    for (size_t i = 0; i < weights.size(); ++i) s += (i ? ";" : "") + fmt(weights[i]);
    return s;
  }
  return fn;
}

struct Entry {
  int64_t id;
  double re, im;
};

std::vector<Entry> entries(const prank_result* r) {
  std::vector<Entry> out(prank_result_size(r));
  for (size_t i = 0; i < out.size(); ++i) check(prank_result_entry(r, i, &out[i].id, &out[i].re, &out[i].im));
  return out;
}

std::vector<int64_t> model_ids(const prank_model* m) {
  int64_t* ids = nullptr;
  size_t n = 0;
  check(prank_model_ids(m, &ids, &n));
  std::unique_ptr<int64_t, FreeDeleter> keep(ids);
  return {ids, ids + n};
}

std::vector<double> read_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kExitUsage, "cannot open '" + path + "'"};
  std::vector<double> w;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("position", 0) == 0) continue;
    const auto comma = line.find(',');
    const std::string cell = comma == std::string::npos ? line : line.substr(comma + 1);
    try {
      w.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw Failure{kExitUsage, "bad weight line '" + line + "' in " + path};
    }
  }
  return w;
}

// Timing helpers for bench: one discarded warm-up, median of three.
double median_seconds(const std::function<void()>& f) {
  f();
  std::vector<double> t;
  for (int i = 0; i < 3; ++i) {
    const auto a = std::chrono::steady_clock::now();
    f();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - a).count());
  }
  std::sort(t.begin(), t.end());
  return t[1];
}

ModelPtr sorted_independent(size_t n, uint64_t seed) {
  prank_model* raw = nullptr;
  check(prank_model_generate("IND", n, seed, &raw));
  ModelPtr gen(raw);
  const auto ids = model_ids(gen.get());
  prank_model* sorted = nullptr;
  check(prank_model_restrict(gen.get(), ids.data(), ids.size(), &sorted));
  return ModelPtr(sorted);
}

double time_rank(const prank_model* m, const std::string& spec, size_t k) {
  return median_seconds([&] {
    prank_result* r = nullptr;
    check(prank_rank(m, spec.c_str(), k, &r));
    prank_result_free(r);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ranking over probabilistic data"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  // rank
  ModelArgs rank_model;
  std::string rank_fn = "prfe", rank_format = "text", rank_out, rank_weights, rank_mixture, prefs_out;
  double rank_alpha = 0.9, rank_alpha_im = 0.0;
  size_t rank_h = 1, rank_k = 10;
  auto* rank = app.add_subcommand("rank", "Top-k answer under one ranking function");
  add_model_flags(rank, rank_model);
  rank->add_option("--fn", rank_fn, "prfe, prfw, pt, urank, erank, escore, kselection, mixture")
      ->check(CLI::IsMember({"prfe", "prfw", "pt", "urank", "erank", "escore", "kselection", "mixture"}))
      ->capture_default_str();
  rank->add_option("--alpha", rank_alpha, "PRFe base (real part)")->capture_default_str();
  rank->add_option("--alpha-im", rank_alpha_im, "PRFe base (imaginary part)");
  rank->add_option("--h", rank_h, "PT threshold")->capture_default_str();
  rank->add_option("--weights", rank_weights, "Weights file for prfw (position,weight rows)");
  rank->add_option("--mixture", rank_mixture, "Mixture JSON for --fn mixture");
  rank->add_option("--k", rank_k, "Answer size")->capture_default_str();
  rank->add_option("--format", rank_format)->check(CLI::IsMember({"text", "csv", "json"}));
  rank->add_option("--output", rank_out, "Output path (default stdout)");
  rank->add_option("--prefs-out", prefs_out, "Also write the answer as a preference CSV");

  // compare
  ModelArgs cmp_model;
  std::vector<std::string> cmp_fns;
  std::string cmp_format = "csv", cmp_out;
  size_t cmp_k = 10;
  auto* compare = app.add_subcommand("compare", "Pairwise Kendall distances between top-k answers");
  add_model_flags(compare, cmp_model);
  compare->add_option("--fns", cmp_fns, "Ranking specs, e.g. escore pt:100 urank erank prfe:0.9")
      ->required()
      ->expected(2, -1);
  compare->add_option("--k", cmp_k)->capture_default_str();
  compare->add_option("--format", cmp_format)->check(CLI::IsMember({"csv", "json"}));
  compare->add_option("--output", cmp_out);

  // gen-synth
  std::string gen_kind = "IND", gen_out;
  size_t gen_n = 1000;
  uint64_t gen_seed = 42;
  auto* gen = app.add_subcommand("gen-synth", "Generate a synthetic dataset");
  gen->add_option("--kind", gen_kind, "IND, XOR, LOW, MED or HIGH")->capture_default_str();
  gen->add_option("--n", gen_n)->capture_default_str();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--output", gen_out)->required();

  // oracle-check
  ModelArgs oc_model;
  auto* oracle = app.add_subcommand("oracle-check", "Compare fast paths with world enumeration");
  add_model_flags(oracle, oc_model);

  // bench
  std::string bench_suite = "all";
  size_t bench_n = 0, bench_h = 1000, bench_L = 50;
  uint64_t bench_seed = 42;
  auto* bench = app.add_subcommand("bench", "Timing table (median of three after a warm-up)");
  bench->add_option("--suite", bench_suite)
      ->check(CLI::IsMember({"prfe", "pt", "mixture", "all"}))
      ->capture_default_str();
  bench->add_option("--n", bench_n, "Tuple count (0 uses the suite default)");
  bench->add_option("--h", bench_h, "Base PT threshold for the pt suite")->capture_default_str();
  bench->add_option("--L", bench_L, "Mixture size for the mixture suite")->capture_default_str();
  bench->add_option("--seed", bench_seed)->capture_default_str();

  // learn-alpha
  ModelArgs la_model;
  std::string la_target;
  double la_tol = 1e-4;
  auto* learn_alpha = app.add_subcommand("learn-alpha", "Learn the PRFe base from preferences");
  add_model_flags(learn_alpha, la_model);
  learn_alpha->add_option("--target", la_target, "Preference CSV tuple_id,rank_position")->required();
  learn_alpha->add_option("--tol", la_tol)->capture_default_str();

  // learn-weights
  ModelArgs lw_model;
  std::string lw_target, lw_out;
  size_t lw_h = 0, lw_epochs = 500;
  double lw_reg = 1e-3;
  uint64_t lw_seed = 42;
  auto* learn_weights = app.add_subcommand("learn-weights", "Learn positional weights from preferences");
  add_model_flags(learn_weights, lw_model);
  learn_weights->add_option("--target", lw_target)->required();
  learn_weights->add_option("--h", lw_h, "Feature cutoff (0 = sample size)");
  learn_weights->add_option("--reg", lw_reg)->capture_default_str();
  learn_weights->add_option("--epochs", lw_epochs)->capture_default_str();
  learn_weights->add_option("--seed", lw_seed)->capture_default_str();
  learn_weights->add_option("--output", lw_out, "Weights CSV (default stdout)");

  // approx
  prank_approx_config acfg = prank_approx_default();
  std::string ap_fn = "step", ap_spec, ap_out;
  size_t ap_h = 100;
  auto* approx = app.add_subcommand("approx", "Approximate a weight function by exponentials");
  approx->add_option("--fn", ap_fn, "step, delta, linear, discount")->capture_default_str();
  approx->add_option("--h", ap_h, "Parameter of --fn (threshold, position or domain)")
      ->capture_default_str();
  approx->add_option("--spec", ap_spec, "Full weight spec, e.g. tabulated:3;2;1 (overrides --fn)");
  approx->add_option("--L", acfg.L)->capture_default_str();
  approx->add_option("--a", acfg.a)->capture_default_str();
  approx->add_option("--b", acfg.b)->capture_default_str();
  approx->add_option("--eps", acfg.eps)->capture_default_str();
  approx->add_option("--N", acfg.N, "Active domain (0 derives it)");
  approx->add_option("--output", ap_out, "Mixture JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*rank) {
      auto m = load_model(rank_model);
      prank_result* raw = nullptr;
      std::string label = rank_fn;
      if (rank_fn == "mixture") {
        if (rank_mixture.empty()) throw Failure{kExitUsage, "--fn mixture needs --mixture"};
        prank_mixture* mix = nullptr;
        check(prank_mixture_load(rank_mixture.c_str(), &mix));
        MixturePtr keep(mix);
        check(prank_rank_mixture(m.get(), mix, rank_k, &raw));
      } else if (rank_fn == "prfw") {
        if (rank_weights.empty()) throw Failure{kExitUsage, "--fn prfw needs --weights"};
        const auto w = read_weights(rank_weights);
        check(prank_rank_weights(m.get(), w.data(), w.size(), rank_k, &raw));
      } else {
        label = rank_spec(rank_fn, rank_alpha, rank_alpha_im, rank_h, {});
        check(prank_rank(m.get(), label.c_str(), rank_k, &raw));
      }
      ResultPtr r(raw);
      const auto es = entries(r.get());
      Output o(rank_out);
      if (rank_format == "json") {
        nlohmann::json j;
        j["model"] = prank_model_kind(m.get());
        j["function"] = label;
        j["k"] = rank_k;
        for (size_t i = 0; i < es.size(); ++i) {
          j["entries"].push_back({{"rank", i + 1},
                                  {"id", es[i].id},
                                  {"value", es[i].re},
                                  {"imag", es[i].im},
                                  {"magnitude", std::hypot(es[i].re, es[i].im)}});
        }
        o.out() << j.dump(1) << "\n";
      } else {
        const char* sep = rank_format == "csv" ? "," : "\t";
        o.out() << "rank" << sep << "id" << sep << "value" << sep << "magnitude\n";
        for (size_t i = 0; i < es.size(); ++i) {
          std::string value = fmt(es[i].re);
          if (es[i].im != 0.0) value += (es[i].im < 0 ? "-" : "+") + fmt(std::abs(es[i].im)) + "i";
          o.out() << i + 1 << sep << es[i].id << sep << value << sep
                  << fmt(std::hypot(es[i].re, es[i].im)) << "\n";
        }
      }
      if (!prefs_out.empty()) {
        std::vector<int64_t> order;
        for (const auto& e : es) order.push_back(e.id);
        check(prank_write_preferences(prefs_out.c_str(), order.data(), order.size()));
      }
      return kExitOk;
    }

    if (*compare) {
      auto m = load_model(cmp_model);
      std::vector<ResultPtr> results;
      for (const auto& spec : cmp_fns) {
        prank_result* r = nullptr;
        check(prank_rank(m.get(), spec.c_str(), cmp_k, &r));
        results.emplace_back(r);
      }
      const size_t f = results.size();
      std::vector<std::vector<double>> d(f, std::vector<double>(f, 0.0));
      for (size_t i = 0; i < f; ++i) {
        for (size_t j = i + 1; j < f; ++j) {
          check(prank_kendall(results[i].get(), results[j].get(), &d[i][j]));
          d[j][i] = d[i][j];
        }
      }
      Output o(cmp_out);
      if (cmp_format == "json") {
        nlohmann::json j;
        j["functions"] = cmp_fns;
        j["k"] = cmp_k;
        j["kendall"] = d;
        o.out() << j.dump(1) << "\n";
      } else {
        o.out() << "function";
        for (const auto& s : cmp_fns) o.out() << "," << s;
        o.out() << "\n";
        for (size_t i = 0; i < f; ++i) {
          o.out() << cmp_fns[i];
          for (size_t j = 0; j < f; ++j) o.out() << "," << fmt(d[i][j]);
          o.out() << "\n";
        }
      }
      return kExitOk;
    }

    if (*gen) {
      prank_model* raw = nullptr;
      check(prank_model_generate(gen_kind.c_str(), gen_n, gen_seed, &raw));
      ModelPtr m(raw);
      check(prank_model_save(m.get(), gen_out.c_str()));
      int height = 0;
      check(prank_model_height(m.get(), &height));
      std::cout << "kind=" << gen_kind << " n=" << prank_model_size(m.get()) << " height=" << height
                << " seed=" << gen_seed << " generator=mt19937_64 output=" << gen_out << "\n";
      return kExitOk;
    }

    if (*oracle) {
      auto m = load_model(oc_model);
      double max_dev = 0.0;
      char* report = nullptr;
      check(prank_oracle_check(m.get(), &max_dev, &report));
      std::unique_ptr<char, FreeDeleter> keep(report);
      std::cout << report << "max," << fmt(max_dev) << "\n";
      if (max_dev > 1e-7) {
        std::cerr << "oracle check failed: deviation " << fmt(max_dev) << " exceeds 1e-7\n";
        return kExitOracle;
      }
      return kExitOk;
    }

    if (*bench) {
      std::cout << "n,algorithm,params,wall_seconds\n";
      auto row = [](size_t n, const std::string& alg, const std::string& params, double secs) {
        std::cout << n << "," << alg << "," << params << "," << fmt(secs) << std::endl;
      };
      if (bench_suite == "prfe" || bench_suite == "all") {
        const size_t n = bench_n ? bench_n : 1000000;
        auto m = sorted_independent(n, bench_seed);
        row(n, "prfe", "alpha=0.95", time_rank(m.get(), "prfe:0.95", 100));
      }
      if (bench_suite == "pt" || bench_suite == "all") {
        const size_t n = bench_n ? bench_n : 200000;
        auto m = sorted_independent(n, bench_seed);
        for (size_t h : {bench_h, 2 * bench_h}) {
          row(n, "pt", "h=" + std::to_string(h), time_rank(m.get(), "pt:" + std::to_string(h), 100));
        }
      }
      if (bench_suite == "mixture" || bench_suite == "all") {
        const size_t n = bench_n ? bench_n : 500000;
        const size_t h = 10000;
        auto m = sorted_independent(n, bench_seed);
        prank_approx_config c = prank_approx_default();
        c.L = bench_L;
        prank_mixture* mix = nullptr;
        check(prank_approx(("step:" + std::to_string(h)).c_str(), &c, &mix));
        MixturePtr keep(mix);
        row(n, "mixture", "L=" + std::to_string(bench_L) + ",h=" + std::to_string(h),
            median_seconds([&] {
              prank_result* r = nullptr;
              check(prank_rank_mixture(m.get(), mix, 100, &r));
              prank_result_free(r);
            }));
        row(n, "pt", "h=" + std::to_string(h), time_rank(m.get(), "pt:" + std::to_string(h), 100));
      }
      return kExitOk;
    }

    if (*learn_alpha) {
      auto m = load_model(la_model);
      int64_t* order = nullptr;
      size_t n = 0;
      check(prank_read_preferences(la_target.c_str(), &order, &n));
      std::unique_ptr<int64_t, FreeDeleter> keep(order);
      double alpha = 0.0, dist = 0.0;
      check(prank_learn_alpha(m.get(), order, n, la_tol, &alpha, &dist));
      std::cout << "alpha=" << fmt(alpha) << " kendall=" << fmt(dist) << "\n";
      return kExitOk;
    }

    if (*learn_weights) {
      auto m = load_model(lw_model);
      int64_t* order = nullptr;
      size_t n = 0;
      check(prank_read_preferences(lw_target.c_str(), &order, &n));
      std::unique_ptr<int64_t, FreeDeleter> keep(order);
      double* w = nullptr;
      size_t h = 0;
      double loss = 0.0;
      check(prank_learn_weights(m.get(), order, n, lw_h, lw_reg, lw_epochs, lw_seed, &w, &h, &loss));
      std::unique_ptr<double, FreeDeleter> keep_w(w);
      Output o(lw_out);
      o.out() << "position,weight\n";
      for (size_t i = 0; i < h; ++i) o.out() << i + 1 << "," << fmt(w[i]) << "\n";
      std::cerr << "loss=" << fmt(loss) << " seed=" << lw_seed << "\n";
      return kExitOk;
    }

    if (*approx) {
      const std::string spec = !ap_spec.empty() ? ap_spec : ap_fn + ":" + std::to_string(ap_h);
      prank_mixture* raw = nullptr;
      check(prank_approx(spec.c_str(), &acfg, &raw));
      MixturePtr mix(raw);
      if (!ap_out.empty()) check(prank_mixture_save(mix.get(), ap_out.c_str()));
      const size_t span = acfg.N ? acfg.N : (ap_spec.empty() ? ap_h : 0);
      std::cout << "spec=" << spec << " L=" << prank_mixture_size(mix.get()) << "\n";
      if (span > 0) {
        double mx = 0.0, mean = 0.0;
        check(prank_mixture_residual(mix.get(), spec.c_str(), span, &mx, &mean));
        std::cout << "residual positions=1.." << span << " max_abs=" << fmt(mx)
                  << " mean_abs=" << fmt(mean) << "\n";
        check(prank_mixture_residual(mix.get(), spec.c_str(), 4 * span, &mx, &mean));
        std::cout << "residual positions=1.." << 4 * span << " max_abs=" << fmt(mx)
                  << " mean_abs=" << fmt(mean) << "\n";
      }
      if (ap_out.empty()) {
        std::cout << "re_u,im_u,re_alpha,im_alpha\n";
        for (size_t i = 0; i < prank_mixture_size(mix.get()); ++i) {
          double t[4];
          check(prank_mixture_term(mix.get(), i, &t[0], &t[1], &t[2], &t[3]));
          std::cout << fmt(t[0]) << "," << fmt(t[1]) << "," << fmt(t[2]) << "," << fmt(t[3]) << "\n";
        }
      }
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  }
  return kExitOk;
}
