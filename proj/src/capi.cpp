#include "hinges.h"

#include "hinges/json_io.hpp"

#include <cstdlib>
#include <cstring>
#include <map>

using namespace hinges;

struct hng_relation {
  LinearRelation v;
};
struct hng_hinge {
  Hinge h;
};
struct hng_sample {
  ClosedSetSample s;
};
struct hng_scene {
  QuotientScene s;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
int guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return HNG_OK;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return HNG_ERROR_DOMAIN;
  } catch (const UsageError& e) {
    g_last_error = e.what();
    return HNG_ERROR_USAGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HNG_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return HNG_ERROR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw UsageError(std::string("null argument: ") + what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** slot, const Json& j) { *slot = dup_string(j.dump()); }

Json parse_json(const char* text, const char* what) {
  require(text != nullptr, what);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("invalid JSON for ") + what + ": " + e.what());
  }
}

GridSpec grid_of(const hng_grid* g) {
  if (!g) return {};
  GridSpec out;
  out.modulus_min = g->modulus_min;
  out.modulus_max = g->modulus_max;
  out.moduli = g->moduli;
  out.phases = g->phases;
  out.positive_only = g->positive_only != 0;
  return out;
}

Mat matrix_arg(const char* json, const char* what, Field field) {
  const Mat m = matrix_from_json(parse_json(json, what));
  if (field == Field::Real && m.size() > 0 && m.imag().cwiseAbs().maxCoeff() > 0.0)
    throw UsageError(std::string(what) + " carries imaginary entries over the real field");
  return m;
}

std::vector<double> probes_arg(const double* probes, int count) {
  require(probes != nullptr, "probes");
  if (count <= 0) throw UsageError("need at least one probe");
  return std::vector<double>(probes, probes + count);
}

// Family defined only at the given probes; lookup tolerates roundoff at the
// call sites inside hinge_limit, which probe these exact values.
MatrixFamily family_at_probes(std::vector<double> probes, std::vector<Mat> mats) {
  return [probes = std::move(probes), mats = std::move(mats)](double t) -> Mat {
    for (size_t i = 0; i < probes.size(); ++i)
      if (std::abs(probes[i] - t) <= 1e-12 * std::abs(t)) return mats[i];
    throw UsageError("family has no sample at the requested probe");
  };
}

}  // namespace

extern "C" {

const char* hng_version(void) { return "0.1.0"; }

const char* hng_last_error(void) { return g_last_error.c_str(); }

void hng_string_free(char* s) { std::free(s); }

hng_grid hng_grid_default(void) {
  GridSpec d;
  return {d.modulus_min, d.modulus_max, d.moduli, d.phases, d.positive_only ? 1 : 0};
}

int hng_relation_parse(const char* json, double rank_tol, hng_relation** out) {
  return guarded([&] {
    require(out != nullptr, "out");
    *out = new hng_relation{relation_from_json(parse_json(json, "relation"), rank_tol)};
  });
}

int hng_relation_to_json(const hng_relation* v, char** out_json) {
  return guarded([&] {
    require(v != nullptr, "relation");
    require(out_json != nullptr, "out");
    emit(out_json, relation_to_json(v->v));
  });
}

void hng_relation_free(hng_relation* v) { delete v; }

int hng_relation_invariants(const hng_relation* v, double tol, double rank_tol, char** out_json) {
  return guarded([&] {
    require(v != nullptr, "relation");
    require(out_json != nullptr, "out");
    const LinearRelation& r = v->v;
    Json out;
    out["n"] = r.space().ambient() / 2;
    out["field"] = field_name(r.field());
    out["dims"] = {{"ker", r.ker().dim()},
                   {"im", r.im().dim()},
                   {"dom", r.dom().dim()},
                   {"indef", r.indef().dim()}};
    const InducedOperator op = induced_operator(r, rank_tol);
    out["induced"] = op.empty() ? Json() : matrix_to_json(r.field(), op.matrix);
    out["fixed"] = is_scaling_fixed(r, tol);
    emit(out_json, out);
  });
}

int hng_relation_scale(const hng_relation* v, double re, double im, hng_relation** out) {
  return guarded([&] {
    require(v != nullptr, "relation");
    require(out != nullptr, "out");
    *out = new hng_relation{scale_relation(cplx(re, im), v->v)};
  });
}

int hng_relation_gap(const hng_relation* a, const hng_relation* b, double* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr, "relation");
    require(out != nullptr, "out");
    *out = gap_distance(a->v, b->v);
  });
}

int hng_relation_equal_mod_scale(const hng_relation* a, const hng_relation* b, double tol,
                                 double rank_tol, int* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr, "relation");
    require(out != nullptr, "out");
    *out = equal_mod_scale(a->v, b->v, tol, rank_tol) ? 1 : 0;
  });
}

int hng_orbit_sample(const hng_relation* v, const hng_grid* grid, double rank_tol,
                     hng_sample** out) {
  return guarded([&] {
    require(v != nullptr, "relation");
    require(out != nullptr, "out");
    *out = new hng_sample{orbit_closure_sample(v->v, grid_of(grid), rank_tol)};
  });
}

int hng_hinge_parse(const char* json, double rank_tol, hng_hinge** out) {
  return guarded([&] {
    require(out != nullptr, "out");
    *out = new hng_hinge{hinge_from_json(parse_json(json, "hinge"), rank_tol)};
  });
}

int hng_hinge_to_json(const hng_hinge* h, char** out_json) {
  return guarded([&] {
    require(h != nullptr, "hinge");
    require(out_json != nullptr, "out");
    emit(out_json, hinge_to_json(h->h));
  });
}

void hng_hinge_free(hng_hinge* h) { delete h; }

int hng_hinge_validate(const hng_hinge* h, double tol, double rank_tol, char** report_json) {
  return guarded([&] {
    require(h != nullptr, "hinge");
    require(report_json != nullptr, "out");
    emit(report_json, report_to_json(validate_hinge(h->h, tol, rank_tol)));
  });
}

int hng_hinge_validate_pd(const hng_hinge* h, double tol, char** report_json) {
  return guarded([&] {
    require(h != nullptr, "hinge");
    require(report_json != nullptr, "out");
    emit(report_json, pd_report_to_json(validate_pd_hinge(h->h, tol)));
  });
}

int hng_hinge_of_matrix(const char* matrix_json, const char* field, double rank_tol,
                        hng_hinge** out) {
  return guarded([&] {
    require(field != nullptr, "field");
    require(out != nullptr, "out");
    const Field f = field_from_name(field);
    *out = new hng_hinge{hinge_of_invertible(f, matrix_arg(matrix_json, "matrix", f), rank_tol)};
  });
}

int hng_hinge_limit_diag(const char* field, int n, const double* exponents, const double* probes,
                         int probe_count, const char* left_json, const char* right_json,
                         double tol, double rank_tol, hng_hinge** out) {
  return guarded([&] {
    require(field != nullptr, "field");
    require(exponents != nullptr, "exponents");
    require(out != nullptr, "out");
    if (n <= 0) throw UsageError("dimension must be positive");
    const Field f = field_from_name(field);
    const std::vector<double> ts = probes_arg(probes, probe_count);
    const std::vector<double> a(exponents, exponents + n);

    Mat left = Mat::Identity(n, n);
    Mat right = Mat::Identity(n, n);
    if (left_json) left = matrix_arg(left_json, "left conjugator", f);
    if (right_json) right = matrix_arg(right_json, "right conjugator", f);
    if (left.rows() != n || left.cols() != n || right.rows() != n || right.cols() != n)
      throw UsageError("conjugators must be n x n");

    MatrixFamily g = [n, a, left, right](double t) -> Mat {
      Vec d(n);
      for (int i = 0; i < n; ++i) d(i) = std::pow(t, a[i]);
      return left * d.asDiagonal() * right;
    };
    *out = new hng_hinge{hinge_limit(f, g, ts, tol, rank_tol)};
  });
}

int hng_hinge_limit_samples(const char* field, const char* const* matrix_jsons, int count,
                            const double* probes, double tol, double rank_tol, hng_hinge** out) {
  return guarded([&] {
    require(field != nullptr, "field");
    require(matrix_jsons != nullptr, "matrices");
    require(out != nullptr, "out");
    const Field f = field_from_name(field);
    const std::vector<double> ts = probes_arg(probes, count);
    std::vector<Mat> mats;
    for (int i = 0; i < count; ++i) mats.push_back(matrix_arg(matrix_jsons[i], "matrix", f));
    *out = new hng_hinge{hinge_limit(f, family_at_probes(ts, std::move(mats)), ts, tol, rank_tol)};
  });
}

int hng_hinge_sample(const hng_hinge* h, const hng_grid* grid, double rank_tol, hng_sample** out) {
  return guarded([&] {
    require(h != nullptr, "hinge");
    require(out != nullptr, "out");
    *out = new hng_sample{hinge_to_sample(h->h, grid_of(grid), rank_tol)};
  });
}

int hng_hinge_extract(const hng_sample* s, double tol, double rank_tol, hng_hinge** out) {
  return guarded([&] {
    require(s != nullptr, "sample");
    require(out != nullptr, "out");
    *out = new hng_hinge{extract_hinge_from_sample(s->s, tol, rank_tol)};
  });
}

int hng_pd_boundary_diag(int n, const double* exponents, const char* conjugator_json,
                         const double* probes, int probe_count, double tol, double rank_tol,
                         hng_hinge** out) {
  return guarded([&] {
    require(exponents != nullptr, "exponents");
    require(out != nullptr, "out");
    if (n <= 0) throw UsageError("dimension must be positive");
    const std::vector<double> ts = probes_arg(probes, probe_count);
    const std::vector<double> a(exponents, exponents + n);

    RMat conj = RMat::Identity(n, n);
    if (conjugator_json) {
      conj = matrix_arg(conjugator_json, "conjugator", Field::Real).real();
      if (conj.rows() != n || conj.cols() != n) throw UsageError("conjugator must be n x n");
    }
    SymmetricFamily s = [n, a, conj](double t) -> RMat {
      RVec d(n);
      for (int i = 0; i < n; ++i) d(i) = std::pow(t, a[i]);
      return conj.transpose() * d.asDiagonal() * conj;
    };
    *out = new hng_hinge{pd_boundary_hinge(s, ts, tol, rank_tol)};
  });
}

int hng_limit_of_orbit_closures(const char* field, const char* const* matrix_jsons, int count,
                                const hng_grid* grid, double tol, double rank_tol,
                                hng_sample** out) {
  return guarded([&] {
    require(field != nullptr, "field");
    require(matrix_jsons != nullptr, "matrices");
    require(out != nullptr, "out");
    if (count <= 0) throw UsageError("family is empty");
    const Field f = field_from_name(field);
    std::vector<Mat> mats;
    for (int i = 0; i < count; ++i) mats.push_back(matrix_arg(matrix_jsons[i], "matrix", f));
    *out = new hng_sample{limit_of_orbit_closures(f, mats, grid_of(grid), tol, rank_tol)};
  });
}

int hng_sample_parse(const char* json, double rank_tol, hng_sample** out) {
  return guarded([&] {
    require(out != nullptr, "out");
    *out = new hng_sample{sample_from_json(parse_json(json, "sample"), rank_tol)};
  });
}

int hng_sample_to_json(const hng_sample* s, char** out_json) {
  return guarded([&] {
    require(s != nullptr, "sample");
    require(out_json != nullptr, "out");
    emit(out_json, sample_to_json(s->s));
  });
}

void hng_sample_free(hng_sample* s) { delete s; }

int hng_hausdorff(const hng_sample* a, const hng_sample* b, double* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr, "sample");
    require(out != nullptr, "out");
    *out = hausdorff_distance(a->s, b->s);
  });
}

int hng_scene_parse(const char* json, double rank_tol, hng_scene** out) {
  return guarded([&] {
    require(out != nullptr, "out");
    *out = new hng_scene{scene_from_json(parse_json(json, "scene"), rank_tol)};
  });
}

void hng_scene_free(hng_scene* s) { delete s; }

int hng_quotient_run(const hng_scene* s, double tol, double eps, char** out_json) {
  return guarded([&] {
    require(s != nullptr, "scene");
    require(out_json != nullptr, "out");
    Json out;
    out["members"] = members_to_json(separated_quotient(s->s, tol));
    if (s->s.classes.size() <= 16) {
      Json adm = Json::array();
      for (const auto& labels : admissible_label_sets(s->s, eps)) adm.push_back(labels);
      out["admissible"] = std::move(adm);
    } else {
      out["admissible"] = Json();
    }
    emit(out_json, out);
  });
}

}  // extern "C"
