#include "prank/prank.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "check.hpp"
#include "io.hpp"
#include "learn.hpp"
#include "rankspec.hpp"
#include "synth.hpp"

struct prank_model {
  prank::Model m;
};

struct prank_result {
  prank::RankedList list;
};

struct prank_mixture {
  prank::ExpMixture mix;
};

namespace {

thread_local std::string g_last_error;

prank_status to_status(prank::ErrorCode c) {
  using prank::ErrorCode;
  switch (c) {
    case ErrorCode::kInvalidArgument: return PRANK_E_INVALID_ARGUMENT;
    case ErrorCode::kParse: return PRANK_E_PARSE;
    case ErrorCode::kSizeLimit: return PRANK_E_SIZE_LIMIT;
    case ErrorCode::kUnknownTuple: return PRANK_E_UNKNOWN_TUPLE;
    case ErrorCode::kProbabilityConstraint: return PRANK_E_PROBABILITY_CONSTRAINT;
    case ErrorCode::kInvalidModel: return PRANK_E_INVALID_MODEL;
    case ErrorCode::kInvalidTree: return PRANK_E_INVALID_TREE;
    case ErrorCode::kDegreeBoundExceeded: return PRANK_E_DEGREE_BOUND_EXCEEDED;
    case ErrorCode::kConfig: return PRANK_E_CONFIG;
    case ErrorCode::kZeroProbability: return PRANK_E_ZERO_PROBABILITY;
    case ErrorCode::kInconsistentPotentials: return PRANK_E_INCONSISTENT_POTENTIALS;
    case ErrorCode::kShape: return PRANK_E_SHAPE;
    case ErrorCode::kMismatchedK: return PRANK_E_MISMATCHED_K;
    case ErrorCode::kUnsupportedModel: return PRANK_E_UNSUPPORTED_MODEL;
    case ErrorCode::kDegenerateSample: return PRANK_E_DEGENERATE_SAMPLE;
  }
  return PRANK_E_INTERNAL;
}

template <class F>
prank_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return PRANK_OK;
  } catch (const prank::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PRANK_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PRANK_E_INTERNAL;
  }
}

void need(bool ok, const char* what) {
  if (!ok) throw prank::Error(prank::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class T>
T* dup_array(const std::vector<T>& v) {
  T* p = static_cast<T*>(std::malloc(std::max<std::size_t>(1, v.size()) * sizeof(T)));
  if (!p) throw std::bad_alloc();
  if (!v.empty()) std::memcpy(p, v.data(), v.size() * sizeof(T));
  return p;
}

prank_model* wrap(prank::Model m) { return new prank_model{std::move(m)}; }

prank::PreferenceSample preferences(const prank_model* sample, const int64_t* order, size_t n) {
  need(sample && (order || n == 0), "null argument");
  return {sample->m, std::vector<prank::TupleId>(order, order + n)};
}

}  // namespace

extern "C" {

const char* prank_last_error(void) { return g_last_error.c_str(); }

const char* prank_status_name(prank_status status) {
  switch (status) {
    case PRANK_OK: return "Ok";
    case PRANK_E_INVALID_ARGUMENT: return "InvalidArgument";
    case PRANK_E_PARSE: return "ParseError";
    case PRANK_E_SIZE_LIMIT: return "SizeLimit";
    case PRANK_E_UNKNOWN_TUPLE: return "UnknownTuple";
    case PRANK_E_PROBABILITY_CONSTRAINT: return "ProbabilityConstraint";
    case PRANK_E_INVALID_MODEL: return "InvalidModel";
    case PRANK_E_INVALID_TREE: return "InvalidTree";
    case PRANK_E_DEGREE_BOUND_EXCEEDED: return "DegreeBoundExceeded";
    case PRANK_E_CONFIG: return "ConfigError";
    case PRANK_E_ZERO_PROBABILITY: return "ZeroProbability";
    case PRANK_E_INCONSISTENT_POTENTIALS: return "InconsistentPotentials";
    case PRANK_E_SHAPE: return "ShapeError";
    case PRANK_E_MISMATCHED_K: return "MismatchedK";
    case PRANK_E_UNSUPPORTED_MODEL: return "UnsupportedModel";
    case PRANK_E_DEGENERATE_SAMPLE: return "DegenerateSample";
    case PRANK_E_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

void prank_free(void* p) { std::free(p); }

prank_status prank_model_from_arrays(const int64_t* ids, const double* scores, const double* probs,
                                     size_t n, prank_model** out) {
  return guard([&] {
    need(out && (n == 0 || (ids && scores && probs)), "null argument");
    std::vector<prank::ProbTuple> t(n);
    for (size_t i = 0; i < n; ++i) t[i] = {ids[i], scores[i], probs[i]};
    *out = wrap(prank::Relation(std::move(t)));
  });
}

prank_status prank_model_load_relation(const char* csv_path, prank_model** out) {
  return guard([&] {
    need(csv_path && out, "null argument");
    *out = wrap(prank::parse_relation_csv(prank::read_file(csv_path)));
  });
}

prank_status prank_model_load_tree(const char* json_path, prank_model** out) {
  return guard([&] {
    need(json_path && out, "null argument");
    *out = wrap(prank::parse_tree_json(prank::read_file(json_path)));
  });
}

prank_status prank_model_load_junction(const char* json_path, const char* scores_csv,
                                       prank_model** out) {
  return guard([&] {
    need(json_path && out, "null argument");
    auto file = prank::parse_junction_json(prank::read_file(json_path));
    prank::Relation scores;
    if (scores_csv) {
      scores = prank::parse_relation_csv(prank::read_file(scores_csv));
    } else if (file.scores) {
      scores = *file.scores;
    } else {
      throw prank::Error(prank::ErrorCode::kInvalidArgument,
                         "junction variables carry no scores and no relation was given");
    }
    *out = wrap(prank::make_junction_model(file.jt, scores));
  });
}

prank_status prank_model_generate(const char* kind, size_t n, uint64_t seed, prank_model** out) {
  return guard([&] {
    need(kind && out, "null argument");
    const auto k = prank::parse_synth_kind(kind);
    if (k == prank::SynthKind::kInd) {
      *out = wrap(prank::synth_independent(n, seed));
    } else {
      need(k != prank::SynthKind::kCustom, "custom trees need explicit parameters");
      *out = wrap(prank::synth_tree(prank::synth_preset(k, n), seed));
    }
  });
}

prank_status prank_model_save(const prank_model* m, const char* path) {
  return guard([&] {
    need(m && path, "null argument");
    std::string text;
    if (const auto* r = std::get_if<prank::Relation>(&m->m)) {
      text = prank::format_relation_csv(*r);
    } else if (const auto* t = std::get_if<prank::AndXorTree>(&m->m)) {
      text = prank::format_tree_json(*t);
    } else {
      const auto& j = std::get<prank::JunctionModel>(m->m);
      text = prank::format_junction_json(j.jt, &j.rel);
    }
    prank::write_file(path, text);
  });
}

prank_status prank_model_restrict(const prank_model* m, const int64_t* ids, size_t n,
                                  prank_model** out) {
  return guard([&] {
    need(m && out && (ids || n == 0), "null argument");
    *out = wrap(prank::restrict_model(m->m, std::vector<prank::TupleId>(ids, ids + n)));
  });
}

void prank_model_free(prank_model* m) { delete m; }

const char* prank_model_kind(const prank_model* m) {
  return m ? prank::model_kind_name(m->m) : "";
}

size_t prank_model_size(const prank_model* m) { return m ? prank::tuple_count(m->m) : 0; }

prank_status prank_model_ids(const prank_model* m, int64_t** ids, size_t* n) {
  return guard([&] {
    need(m && ids && n, "null argument");
    std::vector<int64_t> v;
    for (const auto& t : prank::ranked_tuples(m->m)) v.push_back(t.id);
    *ids = dup_array(v);
    *n = v.size();
  });
}

prank_status prank_model_validate(const prank_model* m, size_t* violations, char** report) {
  return guard([&] {
    need(m && violations, "null argument");
    std::string text;
    std::size_t count = 0;
    if (const auto* t = std::get_if<prank::AndXorTree>(&m->m)) {
      for (const auto& v : prank::validate_tree(*t)) {
        text += "node " + std::to_string(v.node) + ": " + v.rule + ": " + v.detail + "\n";
        ++count;
      }
    }
    *violations = count;
    if (report) *report = dup_string(text);
  });
}

prank_status prank_model_height(const prank_model* m, int* height) {
  return guard([&] {
    need(m && height, "null argument");
    int h = 1;
    if (const auto* t = std::get_if<prank::AndXorTree>(&m->m)) {
      h = 0;
      for (int leaf : t->ranked_leaves()) h = std::max(h, t->depth(leaf));
    }
    *height = h;
  });
}

prank_status prank_rank(const prank_model* m, const char* spec, size_t k, prank_result** out) {
  return guard([&] {
    need(m && spec && out, "null argument");
    *out = new prank_result{prank::run_ranking(m->m, prank::parse_rank_spec(spec), k)};
  });
}

prank_status prank_rank_weights(const prank_model* m, const double* weights, size_t h, size_t k,
                                prank_result** out) {
  return guard([&] {
    need(m && weights && h > 0 && out, "null argument");
    prank::RankSpec s;
    s.fn = prank::RankSpec::Fn::kPrfw;
    s.weights.assign(weights, weights + h);
    *out = new prank_result{prank::run_ranking(m->m, s, k)};
  });
}

prank_status prank_rank_mixture(const prank_model* m, const prank_mixture* mix, size_t k,
                                prank_result** out) {
  return guard([&] {
    need(m && mix && out, "null argument");
    prank::RankSpec s;
    s.fn = prank::RankSpec::Fn::kMixture;
    s.mixture = mix->mix;
    *out = new prank_result{prank::run_ranking(m->m, s, k)};
  });
}

size_t prank_result_size(const prank_result* r) { return r ? r->list.entries.size() : 0; }

prank_status prank_result_entry(const prank_result* r, size_t i, int64_t* id, double* re,
                                double* im) {
  return guard([&] {
    need(r, "null argument");
    need(i < r->list.entries.size(), "result index out of range");
    const auto& e = r->list.entries[i];
    if (id) *id = e.id;
    if (re) *re = e.value.real();
    if (im) *im = e.value.imag();
  });
}

void prank_result_free(prank_result* r) { delete r; }

prank_status prank_kendall(const prank_result* a, const prank_result* b, double* out) {
  return guard([&] {
    need(a && b && out, "null argument");
    *out = prank::kendall(a->list.top(), b->list.top());
  });
}

prank_status prank_rank_distribution(const prank_model* m, int64_t id, double** probs,
                                     size_t* len) {
  return guard([&] {
    need(m && probs && len, "null argument");
    for (const auto& d : prank::rank_distributions(m->m)) {
      if (d.id == id) {
        *probs = dup_array(d.probs);
        *len = d.probs.size();
        return;
      }
    }
    throw prank::Error(prank::ErrorCode::kUnknownTuple, "unknown tuple id " + std::to_string(id));
  });
}

prank_status prank_oracle_check(const prank_model* m, double* max_dev, char** report) {
  return guard([&] {
    need(m && max_dev, "null argument");
    const auto rep = prank::oracle_check(m->m);
    *max_dev = rep.max_dev();
    if (report) {
      std::string text = "check,max_abs_deviation\n";
      char buf[64];
      for (const auto& row : rep.rows) {
        std::snprintf(buf, sizeof buf, "%.3e", row.max_dev);
        text += row.name + "," + buf + "\n";
      }
      *report = dup_string(text);
    }
  });
}

prank_approx_config prank_approx_default(void) {
  const prank::ApproxConfig d;
  return {d.L, d.a, d.b, d.eps, d.N};
}

prank_status prank_approx(const char* fn, const prank_approx_config* cfg, prank_mixture** out) {
  return guard([&] {
    need(fn && cfg && out, "null argument");
    const auto ws = prank::parse_weight_spec(fn);
    prank::ApproxConfig c{cfg->L, cfg->a, cfg->b, cfg->eps, cfg->N};
    if (c.N == 0 && ws.domain > 0) c.N = ws.domain + 1;
    *out = new prank_mixture{prank::dft_approx_full(ws.w, c)};
  });
}

prank_status prank_mixture_load(const char* path, prank_mixture** out) {
  return guard([&] {
    need(path && out, "null argument");
    *out = new prank_mixture{prank::parse_mixture_json(prank::read_file(path))};
  });
}

prank_status prank_mixture_save(const prank_mixture* mix, const char* path) {
  return guard([&] {
    need(mix && path, "null argument");
    prank::write_file(path, prank::format_mixture_json(mix->mix));
  });
}

size_t prank_mixture_size(const prank_mixture* mix) { return mix ? mix->mix.size() : 0; }

prank_status prank_mixture_term(const prank_mixture* mix, size_t i, double* re_u, double* im_u,
                                double* re_alpha, double* im_alpha) {
  return guard([&] {
    need(mix, "null argument");
    need(i < mix->mix.size(), "mixture index out of range");
    const auto& t = mix->mix.terms[i];
    if (re_u) *re_u = t.u.real();
    if (im_u) *im_u = t.u.imag();
    if (re_alpha) *re_alpha = t.alpha.real();
    if (im_alpha) *im_alpha = t.alpha.imag();
  });
}

prank_status prank_mixture_eval(const prank_mixture* mix, double i, double* re, double* im) {
  return guard([&] {
    need(mix, "null argument");
    const auto v = prank::eval_mixture(mix->mix, i);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

prank_status prank_mixture_residual(const prank_mixture* mix, const char* fn, size_t n,
                                    double* max_abs, double* mean_abs) {
  return guard([&] {
    need(mix && fn && n > 0, "null argument");
    const auto ws = prank::parse_weight_spec(fn);
    double mx = 0.0, sum = 0.0;
    for (size_t i = 1; i <= n; ++i) {
      const double d = std::abs(ws.w.at(i) - prank::eval_mixture(mix->mix, static_cast<double>(i)));
      mx = std::max(mx, d);
      sum += d;
    }
    if (max_abs) *max_abs = mx;
    if (mean_abs) *mean_abs = sum / static_cast<double>(n);
  });
}

void prank_mixture_free(prank_mixture* mix) { delete mix; }

prank_status prank_read_preferences(const char* csv_path, int64_t** order, size_t* n) {
  return guard([&] {
    need(csv_path && order && n, "null argument");
    const auto v = prank::parse_preferences_csv(prank::read_file(csv_path));
    *order = dup_array(v);
    *n = v.size();
  });
}

prank_status prank_write_preferences(const char* csv_path, const int64_t* order, size_t n) {
  return guard([&] {
    need(csv_path && (order || n == 0), "null argument");
    prank::write_file(csv_path, prank::format_preferences_csv({order, order + n}));
  });
}

prank_status prank_learn_alpha(const prank_model* sample, const int64_t* order, size_t n,
                               double tol, double* alpha, double* distance) {
  return guard([&] {
    need(alpha, "null argument");
    const auto fit = prank::learn_alpha(preferences(sample, order, n), tol);
    *alpha = fit.alpha;
    if (distance) *distance = fit.distance;
  });
}

prank_status prank_learn_weights(const prank_model* sample, const int64_t* order, size_t n,
                                 size_t h, double reg, size_t epochs, uint64_t seed,
                                 double** weights, size_t* h_out, double* final_loss) {
  return guard([&] {
    need(weights && h_out, "null argument");
    prank::WeightFitConfig cfg;
    cfg.h = h;
    cfg.reg = reg;
    cfg.epochs = epochs;
    cfg.seed = seed;
    const auto fit = prank::learn_prfw_weights(preferences(sample, order, n), cfg);
    *weights = dup_array(fit.weights);
    *h_out = fit.weights.size();
    if (final_loss) *final_loss = fit.loss.empty() ? 0.0 : fit.loss.back();
  });
}

}  // extern "C"
