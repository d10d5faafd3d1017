#include "hinges/json_io.hpp"

#include <algorithm>

namespace hinges {

namespace {

const Json& need(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw UsageError(std::string(what) + " is missing \"" + key + "\"");
  return j.at(key);
}

int need_int(const Json& j, const char* key, const char* what) {
  const Json& v = need(j, key, what);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw UsageError(std::string(what) + " field \"" + key + "\" must be a nonnegative integer");
  return v.get<int>();
}

double need_number(const Json& j, const char* key, const char* what) {
  const Json& v = need(j, key, what);
  if (!v.is_number()) throw UsageError(std::string(what) + " field \"" + key + "\" must be a number");
  return v.get<double>();
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw UsageError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw UsageError(std::string(what) + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Json rows_of(const Mat& m, bool imag) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

void fill_part(Mat& m, const Json& rows, bool imag) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != m.rows())
    throw UsageError("matrix entries must form rows x cols nested arrays");
  for (int i = 0; i < m.rows(); ++i) {
    const Json& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != m.cols())
      throw UsageError("matrix entries must form rows x cols nested arrays");
    for (int j = 0; j < m.cols(); ++j) {
      if (!row.at(j).is_number()) throw UsageError("matrix entries must be numbers");
      const double x = row.at(j).get<double>();
      if (imag)
        m(i, j) = cplx(m(i, j).real(), x);
      else
        m(i, j) = cplx(x, m(i, j).imag());
    }
  }
}

std::shared_ptr<const MetricSpace> space_from_id(const std::string& id) {
  const auto bad = [&] { return UsageError("unknown metric space id: " + id); };
  const auto colon = id.find(':');
  if (colon == std::string::npos) throw bad();
  const std::string head = id.substr(0, colon);
  if (head == "euclidean") {
    try {
      return MetricSpace::euclidean(std::stoi(id.substr(colon + 1)));
    } catch (const std::exception&) {
      throw bad();
    }
  }
  if (head == "grassmann") {
    const auto second = id.find(':', colon + 1);
    if (second == std::string::npos) throw bad();
    const Field f = field_from_name(id.substr(colon + 1, second - colon - 1));
    try {
      return MetricSpace::grassmann(f, std::stoi(id.substr(second + 1)));
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw bad();
    }
  }
  throw bad();
}

Json point_to_json(const Point& p) {
  if (const RVec* v = std::get_if<RVec>(&p)) {
    Json out = Json::array();
    for (int i = 0; i < v->size(); ++i) out.push_back((*v)(i));
    return out;
  }
  return subspace_to_json(std::get<Subspace>(p));
}

RVec euclidean_point_from_json(const Json& j) {
  if (!j.is_array()) throw UsageError("euclidean points must be arrays of numbers");
  RVec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j.at(i).is_number()) throw UsageError("euclidean points must be arrays of numbers");
    v(i) = j.at(i).get<double>();
  }
  return v;
}

}  // namespace

Field field_from_name(const std::string& name) {
  if (name == "real") return Field::Real;
  if (name == "complex") return Field::Complex;
  throw UsageError("unknown field: " + name);
}

Json matrix_to_json(Field field, const Mat& m) {
  Json out;
  out["rows"] = static_cast<int>(m.rows());
  out["cols"] = static_cast<int>(m.cols());
  out["re"] = rows_of(m, false);
  if (field == Field::Complex) out["im"] = rows_of(m, true);
  return out;
}

Mat matrix_from_json(const Json& j) {
  const int rows = need_int(j, "rows", "matrix");
  const int cols = need_int(j, "cols", "matrix");
  Mat m = Mat::Zero(rows, cols);
  fill_part(m, need(j, "re", "matrix"), false);
  if (j.contains("im")) fill_part(m, j.at("im"), true);
  return m;
}

Json subspace_to_json(const Subspace& v) {
  Json out;
  out["n"] = v.ambient() / 2;
  out["field"] = field_name(v.field());
  out["frame"] = matrix_to_json(v.field(), v.frame());
  return out;
}

Subspace subspace_from_json(const Json& j, double rank_tol) {
  const int n = need_int(j, "n", "relation");
  if (n <= 0) throw UsageError("relation field \"n\" must be positive");
  const Field field = field_from_name(need(j, "field", "relation").get<std::string>());
  const Mat frame = matrix_from_json(need(j, "frame", "relation"));
  if (frame.rows() != 2 * n) throw UsageError("relation frame must have 2n rows");
  if (field == Field::Real && frame.size() > 0 && frame.imag().cwiseAbs().maxCoeff() > 0.0)
    throw UsageError("real relation carries imaginary entries");
  return Subspace::span(field, 2 * n, frame, rank_tol);
}

Json relation_to_json(const LinearRelation& v) { return subspace_to_json(v.space()); }

LinearRelation relation_from_json(const Json& j, double rank_tol) {
  return LinearRelation::from_subspace(subspace_from_json(j, rank_tol), rank_tol);
}

Json sample_to_json(const ClosedSetSample& s) {
  if (!s.space) throw UsageError("sample has no metric space");
  Json out;
  out["space"] = s.space->id;
  out["resolution"] = s.resolution;
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(point_to_json(p));
  out["points"] = std::move(pts);
  return out;
}

ClosedSetSample sample_from_json(const Json& j, double rank_tol) {
  ClosedSetSample out;
  out.space = space_from_id(need(j, "space", "sample").get<std::string>());
  out.resolution = j.contains("resolution") ? need_number(j, "resolution", "sample") : 0.0;
  if (out.resolution < 0.0) throw UsageError("sample resolution must be nonnegative");
  const Json& pts = need(j, "points", "sample");
  if (!pts.is_array()) throw UsageError("sample field \"points\" must be an array");
  for (const auto& p : pts) {
    if (out.space->kind == MetricSpace::Kind::Euclidean) {
      RVec v = euclidean_point_from_json(p);
      if (v.size() != out.space->dim)
        throw UsageError("sample point dimension does not match the space");
      out.points.emplace_back(std::move(v));
    } else {
      Subspace v = subspace_from_json(p, rank_tol);
      if (v.field() != out.space->field || v.ambient() != 2 * out.space->n)
        throw UsageError("sample point does not live in the stated grassmannian");
      out.points.emplace_back(std::move(v));
    }
  }
  return out;
}

Json hinge_to_json(const Hinge& h) {
  Json out;
  out["n"] = h.n;
  out["field"] = field_name(h.field);
  out["k"] = h.k();
  Json p = Json::array();
  for (const auto& r : h.p) p.push_back(relation_to_json(r));
  Json q = Json::array();
  for (const auto& r : h.q) q.push_back(relation_to_json(r));
  out["P"] = std::move(p);
  out["Q"] = std::move(q);
  return out;
}

Hinge hinge_from_json(const Json& j, double rank_tol) {
  Hinge h;
  h.n = need_int(j, "n", "hinge");
  h.field = field_from_name(need(j, "field", "hinge").get<std::string>());
  const int k = need_int(j, "k", "hinge");
  const Json& p = need(j, "P", "hinge");
  const Json& q = need(j, "Q", "hinge");
  if (!p.is_array() || !q.is_array()) throw UsageError("hinge fields \"P\" and \"Q\" must be arrays");
  if (static_cast<int>(p.size()) != k || static_cast<int>(q.size()) != k + 1)
    throw UsageError("hinge must carry k moving components and k+1 fixed ones");
  for (const auto& e : p) h.p.push_back(relation_from_json(e, rank_tol));
  for (const auto& e : q) h.q.push_back(relation_from_json(e, rank_tol));
  return h;
}

Json report_to_json(const HingeReport& r) {
  Json out;
  out["pass"] = r.pass;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json jc;
    jc["axiom"] = c.axiom;
    jc["pass"] = c.pass;
    jc["worst_gap"] = c.worst_gap;
    jc["issues"] = c.issues;
    checks.push_back(std::move(jc));
  }
  out["checks"] = std::move(checks);
  out["summary"] = r.summary();
  return out;
}

Json pd_report_to_json(const PDHingeReport& r) {
  Json out = report_to_json(r.report);
  out["lagrangian_residual"] = r.lagrangian_residuals;
  Json blocks = Json::array();
  for (const auto& ev : r.block_eigenvalues) {
    Json b = Json::array();
    for (int i = 0; i < ev.size(); ++i) b.push_back(ev(i));
    blocks.push_back(std::move(b));
  }
  out["block_eigenvalues"] = std::move(blocks);
  return out;
}

QuotientScene scene_from_json(const Json& j, double rank_tol) {
  QuotientScene scene;
  const std::string metric = need(j, "metric", "scene").get<std::string>();
  const Json& pts = need(j, "points", "scene");
  if (!pts.is_array() || pts.empty()) throw UsageError("scene needs a nonempty points array");

  if (metric == "euclidean") {
    for (const auto& p : pts) scene.points.emplace_back(euclidean_point_from_json(p));
    const int dim = static_cast<int>(std::get<RVec>(scene.points.front()).size());
    for (const auto& p : scene.points)
      if (std::get<RVec>(p).size() != dim) throw UsageError("scene points disagree on dimension");
    scene.space = MetricSpace::euclidean(dim);
  } else if (metric == "grassmann-gap") {
    for (const auto& p : pts) scene.points.emplace_back(subspace_from_json(p, rank_tol));
    const Subspace& first = std::get<Subspace>(scene.points.front());
    for (const auto& p : scene.points) {
      const Subspace& s = std::get<Subspace>(p);
      if (s.field() != first.field() || s.ambient() != first.ambient())
        throw UsageError("scene points disagree on field or size");
    }
    scene.space = MetricSpace::grassmann(first.field(), first.ambient() / 2);
  } else {
    throw UsageError("unknown metric: " + metric);
  }

  scene.labels = string_list(need(j, "labels", "scene"), "scene labels");
  scene.chart = string_list(need(j, "chart", "scene"), "scene chart");
  scene.resolution = j.contains("resolution") ? need_number(j, "resolution", "scene") : 0.0;
  if (j.contains("sequences")) {
    const Json& seqs = j.at("sequences");
    if (!seqs.is_array()) throw UsageError("scene field \"sequences\" must be an array");
    for (const auto& s : seqs) scene.sequences.push_back(string_list(s, "scene sequence"));
  }
  return finalize_scene(std::move(scene));
}

Json scene_to_json(const QuotientScene& s) {
  if (!s.space) throw UsageError("scene has no metric space");
  Json out;
  out["metric"] =
      s.space->kind == MetricSpace::Kind::Euclidean ? "euclidean" : "grassmann-gap";
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(point_to_json(p));
  out["points"] = std::move(pts);
  out["labels"] = s.labels;
  out["chart"] = s.chart;
  out["resolution"] = s.resolution;
  out["sequences"] = s.sequences;
  return out;
}

Json members_to_json(const std::vector<QuotientMember>& members) {
  Json out = Json::array();
  for (const auto& m : members) {
    Json jm;
    jm["labels"] = m.labels;
    jm["set"] = sample_to_json(m.set);
    out.push_back(std::move(jm));
  }
  return out;
}

}  // namespace hinges
