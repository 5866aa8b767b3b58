#include "ksp/ksp.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "ksp/hardness.hpp"
#include "ksp/instances.hpp"
#include "ksp/solvers.hpp"
#include "ksp/treelemma.hpp"

struct ksp_family {
  ksp::SetFamily family;
};

struct ksp_result {
  ksp::LocalSearchResult result;
};

struct ksp_reduction {
  ksp::ReductionOutput output;
  ksp_family family;
};

struct ksp_mgraph {
  ksp::LabeledMultigraph graph;
};

struct ksp_tree {
  ksp::DecomposedSubgraph sub;
  ksp::DecompositionReport checks;
  int n = 0;
  int gamma = 1;
};

namespace {

thread_local std::string last_error;

ksp_status fail(ksp_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, mapping exceptions to status codes.
template <class F>
ksp_status guarded(F&& body) {
  try {
    return body();
  } catch (const ksp::Error& e) {
    return fail(static_cast<ksp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(KSP_ERR_SIZE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(KSP_ERR_INTERNAL, e.what());
  }
}

std::ifstream open_in(const char* path) {
  if (!path) throw ksp::Error(ksp::ErrorCode::kInvalidArgument, "null path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ksp::Error(ksp::ErrorCode::kIo, std::string("cannot open ") + path);
  return in;
}

template <class F>
void write_file(const char* path, F&& emit) {
  if (!path) throw ksp::Error(ksp::ErrorCode::kInvalidArgument, "null path");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ksp::Error(ksp::ErrorCode::kIo, std::string("cannot write ") + path);
  emit(out);
  out.flush();
  if (!out) throw ksp::Error(ksp::ErrorCode::kIo, std::string("write failed: ") + path);
}

void copy_text(char* dst, std::size_t cap, const std::string& s) {
  std::size_t n = std::min(cap - 1, s.size());
  std::memcpy(dst, s.data(), n);
  dst[n] = '\0';
}

#define KSP_REQUIRE(cond)                                                 \
  do {                                                                    \
    if (!(cond)) return fail(KSP_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* ksp_last_error(void) { return last_error.c_str(); }

const char* ksp_status_name(ksp_status status) {
  switch (status) {
    case KSP_OK: return "ok";
    case KSP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case KSP_ERR_PARSE: return "parse error";
    case KSP_ERR_PRECONDITION: return "precondition violated";
    case KSP_ERR_SIZE_LIMIT: return "size limit";
    case KSP_ERR_BUDGET: return "budget exceeded";
    case KSP_ERR_VERIFICATION: return "verification failed";
    case KSP_ERR_IO: return "i/o error";
    case KSP_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

ksp_status ksp_family_read(const char* path, ksp_family** out) {
  KSP_REQUIRE(out);
  return guarded([&] {
    auto in = open_in(path);
    *out = new ksp_family{ksp::read_instance(in)};
    return KSP_OK;
  });
}

ksp_status ksp_family_parse(const char* text, ksp_family** out) {
  KSP_REQUIRE(text && out);
  return guarded([&] {
    std::istringstream in(text);
    *out = new ksp_family{ksp::read_instance(in)};
    return KSP_OK;
  });
}

ksp_status ksp_family_create(int n_elements, int k, int n_sets, const int* sizes,
                             const int* elements, ksp_family** out) {
  KSP_REQUIRE(out && (n_sets == 0 || (sizes && elements)));
  return guarded([&] {
    if (n_sets < 0) return fail(KSP_ERR_INVALID_ARGUMENT, "negative set count");
    std::vector<std::vector<ksp::ElementId>> sets(n_sets);
    std::size_t pos = 0;
    for (int i = 0; i < n_sets; ++i) {
      if (sizes[i] < 0) return fail(KSP_ERR_INVALID_ARGUMENT, "negative set size");
      sets[i].assign(elements + pos, elements + pos + sizes[i]);
      pos += sizes[i];
    }
    *out = new ksp_family{ksp::SetFamily(n_elements, k, std::move(sets))};
    return KSP_OK;
  });
}

ksp_status ksp_family_write(const ksp_family* family, const char* path) {
  KSP_REQUIRE(family);
  return guarded([&] {
    write_file(path, [&](std::ostream& o) { ksp::write_instance(o, family->family); });
    return KSP_OK;
  });
}

ksp_status ksp_family_gen_random(int n_elements, int n_sets, int k, uint64_t seed,
                                 ksp_family** out) {
  KSP_REQUIRE(out);
  return guarded([&] {
    *out = new ksp_family{ksp::gen_random(n_elements, n_sets, k, seed)};
    return KSP_OK;
  });
}

ksp_status ksp_family_gen_3dm(int m, int noise, uint64_t seed, ksp_family** out,
                              int* planted) {
  KSP_REQUIRE(out);
  return guarded([&] {
    auto p = ksp::gen_planted_3dm(m, noise, seed);
    if (planted) *planted = p.planted;
    *out = new ksp_family{std::move(p.family)};
    return KSP_OK;
  });
}

void ksp_family_free(ksp_family* family) { delete family; }

int ksp_family_num_elements(const ksp_family* f) { return f ? f->family.n_elements() : 0; }
int ksp_family_num_sets(const ksp_family* f) { return f ? f->family.num_sets() : 0; }
int ksp_family_k(const ksp_family* f) { return f ? f->family.k() : 0; }

int ksp_family_set(const ksp_family* f, int index, int* elements, int capacity) {
  if (!f || index < 0 || index >= f->family.num_sets()) return -1;
  auto s = f->family.set(index);
  if (elements)
    for (int i = 0; i < capacity && i < static_cast<int>(s.size()); ++i)
      elements[i] = s[i];
  return static_cast<int>(s.size());
}

void ksp_solve_options_init(ksp_solve_options* o) {
  if (!o) return;
  ksp::SolverConfig d;
  o->mode = KSP_MODE_GREEDY;
  o->r = d.r;
  o->pw = d.pw;
  o->trials = d.trials;
  o->seed = d.seed;
  o->delta = d.failure_prob;
  o->budget_seconds = d.budget_seconds;
  o->iteration_cap = d.iteration_cap;
}

ksp_status ksp_solve(const ksp_family* family, const ksp_solve_options* o,
                     ksp_result** out) {
  KSP_REQUIRE(family && o && out);
  return guarded([&] {
    ksp::SolverConfig cfg;
    switch (o->mode) {
      case KSP_MODE_GREEDY: cfg.mode = ksp::SolverMode::kGreedy; break;
      case KSP_MODE_EXACT: cfg.mode = ksp::SolverMode::kExact; break;
      case KSP_MODE_SWAP: cfg.mode = ksp::SolverMode::kSwapBruteforce; break;
      case KSP_MODE_PWLS: cfg.mode = ksp::SolverMode::kSwapPathwidth; break;
      default: return fail(KSP_ERR_INVALID_ARGUMENT, "unknown mode");
    }
    cfg.r = o->r;
    cfg.pw = o->pw;
    cfg.trials = o->trials;
    cfg.seed = o->seed;
    cfg.failure_prob = o->delta;
    cfg.budget_seconds = o->budget_seconds;
    cfg.iteration_cap = o->iteration_cap;
    *out = new ksp_result{ksp::local_search(family->family, cfg)};
    return KSP_OK;
  });
}

void ksp_result_free(ksp_result* r) { delete r; }
int ksp_result_size(const ksp_result* r) { return r ? r->result.packing.size() : 0; }
const int* ksp_result_members(const ksp_result* r) {
  return r ? r->result.packing.members.data() : nullptr;
}
int ksp_result_start_size(const ksp_result* r) { return r ? r->result.start.size() : 0; }
int ksp_result_num_swaps(const ksp_result* r) {
  return r ? static_cast<int>(r->result.trace.size()) : 0;
}
int ksp_result_budget_terminated(const ksp_result* r) {
  return r && r->result.budget_terminated ? 1 : 0;
}
int64_t ksp_result_trials(const ksp_result* r) { return r ? r->result.coloring_trials : 0; }

ksp_status ksp_result_write_certificate(const ksp_result* r, const char* path) {
  KSP_REQUIRE(r);
  return guarded([&] {
    write_file(path, [&](std::ostream& o) { ksp::write_certificate(o, r->result.packing); });
    return KSP_OK;
  });
}

ksp_status ksp_result_write_trace(const ksp_result* r, const char* path) {
  KSP_REQUIRE(r);
  return guarded([&] {
    write_file(path, [&](std::ostream& o) {
      ksp::write_trace(o, ksp::Trace{r->result.start, r->result.trace});
    });
    return KSP_OK;
  });
}

ksp_status ksp_verify_certificate(const ksp_family* family, const char* path,
                                  int* size) {
  KSP_REQUIRE(family);
  return guarded([&] {
    auto in = open_in(path);
    auto p = ksp::read_certificate(in, family->family);
    std::string why;
    if (!ksp::is_valid_packing(family->family, p, &why))
      return fail(KSP_ERR_VERIFICATION, why);
    if (size) *size = p.size();
    return KSP_OK;
  });
}

ksp_status ksp_verify_trace(const ksp_family* family, const char* trace_path,
                            const char* certificate_path) {
  KSP_REQUIRE(family);
  return guarded([&] {
    auto tin = open_in(trace_path);
    auto trace = ksp::read_trace(tin, family->family);
    ksp::Packing end;
    try {
      end = ksp::replay_trace(family->family, trace.start, trace.swaps);
    } catch (const ksp::PreconditionError& e) {
      return fail(KSP_ERR_VERIFICATION, e.what());
    }
    if (certificate_path) {
      auto cin = open_in(certificate_path);
      if (!(ksp::read_certificate(cin, family->family) == end))
        return fail(KSP_ERR_VERIFICATION, "trace does not end at the certificate");
    }
    return KSP_OK;
  });
}

ksp_status ksp_exact_size(const ksp_family* family, double budget, int* size,
                          int* finished) {
  KSP_REQUIRE(family && size);
  return guarded([&] {
    try {
      *size = ksp::exact_max_packing(family->family, budget).size();
      if (finished) *finished = 1;
    } catch (const ksp::BudgetExceededError& e) {
      *size = e.incumbent().size();
      if (finished) *finished = 0;
    }
    return KSP_OK;
  });
}

ksp_status ksp_suggest_parameters(int k, double eps, int n_sets, ksp_parameters* out) {
  KSP_REQUIRE(out);
  return guarded([&] {
    auto p = ksp::suggested_parameters(k, eps, n_sets);
    out->r = p.r;
    out->pw = p.pw;
    copy_text(out->warning, sizeof out->warning, p.warning);
    return KSP_OK;
  });
}

ksp_status ksp_reduction_from_mcc(const char* path, ksp_reduction** out) {
  KSP_REQUIRE(out);
  return guarded([&] {
    auto in = open_in(path);
    auto red = ksp::reduce_mcc(ksp::read_mcc(in));
    auto family = red.family;
    *out = new ksp_reduction{std::move(red), ksp_family{std::move(family)}};
    return KSP_OK;
  });
}

void ksp_reduction_free(ksp_reduction* r) { delete r; }
const ksp_family* ksp_reduction_family(const ksp_reduction* r) {
  return r ? &r->family : nullptr;
}
int ksp_reduction_f0_size(const ksp_reduction* r) { return r ? r->output.f0.size() : 0; }
int ksp_reduction_padded_k(const ksp_reduction* r) { return r ? r->output.padded.k : 0; }

ksp_status ksp_reduction_write_map(const ksp_reduction* r, const char* path) {
  KSP_REQUIRE(r);
  return guarded([&] {
    write_file(path, [&](std::ostream& o) { ksp::write_name_map(o, r->output); });
    return KSP_OK;
  });
}

ksp_status ksp_reduction_extract(const ksp_reduction* r, const ksp_result* packing,
                                 int* vertices, int* count) {
  KSP_REQUIRE(r && packing && vertices && count);
  return guarded([&] {
    auto k = ksp::extract_clique(r->output, packing->result.packing);
    std::copy(k.begin(), k.end(), vertices);
    *count = static_cast<int>(k.size());
    return KSP_OK;
  });
}

ksp_status ksp_check_reduction(const char* mcc_path, double budget,
                               ksp_reduction_report* out) {
  KSP_REQUIRE(out);
  return guarded([&] {
    auto in = open_in(mcc_path);
    auto c = ksp::check_reduction(ksp::read_mcc(in), budget);
    out->universe = c.universe;
    out->sets = c.sets;
    out->f0_size = c.f0_size;
    out->padded_k = c.padded_k;
    out->cliques = c.cliques;
    out->witnesses_ok = c.witnesses_ok;
    out->max_symmetric_difference = c.max_symmetric_difference;
    out->exact_finished = c.exact_finished;
    out->optimum = c.optimum;
    out->perfect = c.perfect;
    out->extraction_ok = c.extraction_ok;
    copy_text(out->failure, sizeof out->failure, c.failure);
    if (!c.consistent()) return fail(KSP_ERR_VERIFICATION, c.failure);
    if (!c.exact_finished)
      return fail(KSP_ERR_BUDGET, "exact solve did not finish within the budget");
    return KSP_OK;
  });
}

ksp_status ksp_mgraph_read(const char* path, ksp_mgraph** out) {
  KSP_REQUIRE(out);
  return guarded([&] {
    auto in = open_in(path);
    *out = new ksp_mgraph{ksp::read_multigraph(in)};
    return KSP_OK;
  });
}

ksp_status ksp_mgraph_random(int n, int gamma, uint64_t seed, ksp_mgraph** out) {
  KSP_REQUIRE(out);
  return guarded([&] {
    *out = new ksp_mgraph{ksp::random_labeled_multigraph(n, gamma, seed)};
    return KSP_OK;
  });
}

ksp_status ksp_mgraph_write(const ksp_mgraph* g, const char* path) {
  KSP_REQUIRE(g);
  return guarded([&] {
    write_file(path, [&](std::ostream& o) { ksp::write_multigraph(o, g->graph); });
    return KSP_OK;
  });
}

void ksp_mgraph_free(ksp_mgraph* g) { delete g; }
int ksp_mgraph_num_vertices(const ksp_mgraph* g) { return g ? g->graph.n : 0; }
int ksp_mgraph_num_edges(const ksp_mgraph* g) {
  return g ? static_cast<int>(g->graph.edges.size()) : 0;
}

ksp_status ksp_tree_find(const ksp_mgraph* g, ksp_tree** out) {
  KSP_REQUIRE(g && out);
  return guarded([&] {
    auto sub = ksp::build_decomposed_subgraph(g->graph);
    auto checks = ksp::check_decomposed_subgraph(g->graph, sub);
    *out = new ksp_tree{std::move(sub), checks, g->graph.n, g->graph.gamma};
    return KSP_OK;
  });
}

void ksp_tree_free(ksp_tree* t) { delete t; }

ksp_status ksp_tree_write(const ksp_tree* t, const char* path) {
  KSP_REQUIRE(t);
  return guarded([&] {
    write_file(path, [&](std::ostream& o) {
      ksp::write_tree_certificate(o, t->sub.certificate);
    });
    return KSP_OK;
  });
}

ksp_status ksp_tree_report_get(const ksp_tree* t, ksp_tree_report* out) {
  KSP_REQUIRE(t && out);
  out->vertices = static_cast<int>(t->sub.vertices.size());
  out->edges = static_cast<int>(t->sub.edges.size());
  out->width = t->sub.decomposition.width();
  out->width_limit = t->sub.width_limit;
  out->vertex_limit = ksp::tree_vertex_limit(t->n);
  out->beta = ksp::beta(t->gamma);
  out->checks_passed = t->checks.all() ? 1 : 0;
  return KSP_OK;
}

ksp_status ksp_tree_verify(const ksp_mgraph* g, const char* path) {
  KSP_REQUIRE(g);
  return guarded([&] {
    auto in = open_in(path);
    auto cert = ksp::read_tree_certificate(in);
    std::string why;
    if (!ksp::verify_tree_certificate(g->graph, cert, &why))
      return fail(KSP_ERR_VERIFICATION, why);
    return KSP_OK;
  });
}

}  // extern "C"
