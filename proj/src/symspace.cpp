#include "hinges/symspace.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <sstream>

namespace hinges {

namespace {

constexpr double kPdFloor = 1e-8;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

std::string fmt_list(const RVec& v) {
  std::ostringstream os;
  os.precision(3);
  for (int i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  return os.str();
}

void require_invertible(const RMat& g) {
  if (g.rows() != g.cols()) throw UsageError("matrix must be square");
  if (g.rows() == 0) throw UsageError("matrix must be nonempty");
  Eigen::JacobiSVD<RMat> svd(g);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-12 * sv(0))
    throw DomainError("matrix is singular at the working tolerance");
}

}  // namespace

RMat SymplecticAmbient::form() const {
  RMat j = RMat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = RMat::Identity(n, n);
  j.bottomLeftCorner(n, n) = -RMat::Identity(n, n);
  return j;
}

double lagrangian_residual(const Subspace& v, const SymplecticAmbient& amb) {
  if (v.field() != Field::Real) throw DomainError("real field required");
  if (v.ambient() != 2 * amb.n)
    throw DomainError("subspace does not live in the symplectic ambient space");
  if (v.dim() == 0) return 0.0;
  const RMat f = v.frame().real();
  return (f.transpose() * amb.form() * f).cwiseAbs().maxCoeff();
}

bool is_lagrangian(const Subspace& v, const SymplecticAmbient& amb, double tol) {
  return v.dim() == amb.n && lagrangian_residual(v, amb) <= tol;
}

RMat congruence_act(const RMat& g, const RMat& s) {
  require_invertible(g);
  if (s.rows() != s.cols() || s.rows() != g.rows())
    throw UsageError("matrix sizes do not match");
  return g.transpose() * s * g;
}

LinearRelation congruence_act_relation(const RMat& g, const LinearRelation& v, double rank_tol) {
  if (v.field() != Field::Real) throw DomainError("real field required");
  require_invertible(g);
  const int n = g.rows();
  if (v.space().ambient() != 2 * n) throw UsageError("matrix sizes do not match");

  RMat t = RMat::Zero(2 * n, 2 * n);
  t.topLeftCorner(n, n) = g.partialPivLu().inverse();
  t.bottomRightCorner(n, n) = g.transpose();
  const Mat moved = t.cast<cplx>() * v.space().frame();
  return LinearRelation::from_subspace(Subspace::span(Field::Real, 2 * n, moved, rank_tol),
                                       rank_tol);
}

PairingSummary pairing_of(const LinearRelation& v, double rank_tol) {
  if (v.field() != Field::Real) throw DomainError("real field required");
  const InducedOperator op = induced_operator(v, rank_tol);
  PairingSummary out;
  const RMat m = (op.dom_basis.transpose() * op.partners).real();
  out.skew_residual = m.size() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
  out.matrix = 0.5 * (m + m.transpose());
  if (out.matrix.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<RMat> es(out.matrix);
    out.eigenvalues = es.eigenvalues();
  }
  return out;
}

PDHingeReport validate_pd_hinge(const Hinge& h, double tol) {
  if (h.field != Field::Real) throw DomainError("real field required");
  PDHingeReport out;
  out.report = validate_hinge(h, tol);
  if (!out.report.checks.empty() && out.report.checks.front().axiom == "shape" &&
      !out.report.checks.front().pass)
    return out;

  const SymplecticAmbient amb{h.n};
  std::vector<std::pair<std::string, const LinearRelation*>> chain;
  chain.emplace_back("Q_0", &h.q[0]);
  for (int j = 1; j <= h.k(); ++j) {
    chain.emplace_back("P_" + std::to_string(j), &h.p[j - 1]);
    chain.emplace_back("Q_" + std::to_string(j), &h.q[j]);
  }

  AxiomCheck lag{"lagrangian", true, 0.0, {}};
  for (const auto& [name, rel] : chain) {
    const double r = lagrangian_residual(rel->space(), amb);
    out.lagrangian_residuals.push_back(r);
    lag.worst_gap = std::max(lag.worst_gap, r);
    if (!(rel->space().dim() == h.n && r <= tol)) {
      lag.pass = false;
      lag.issues.push_back(name + " is not lagrangian (residual " + fmt(r) + ")");
    }
  }

  AxiomCheck pos{"positivity", true, 0.0, {}};
  for (int j = 1; j <= h.k(); ++j) {
    const PairingSummary ps = pairing_of(h.p[j - 1]);
    out.block_eigenvalues.push_back(ps.eigenvalues);
    if (ps.eigenvalues.size() == 0) {
      pos.pass = false;
      pos.issues.push_back("P_" + std::to_string(j) + " has an empty pairing block");
      continue;
    }
    const double lo = ps.eigenvalues(0);
    const double hi = ps.eigenvalues(ps.eigenvalues.size() - 1);
    const double deficiency = std::max(0.0, kPdFloor * hi - lo);
    pos.worst_gap = std::max(pos.worst_gap, deficiency);
    if (!(hi > 0.0 && lo >= kPdFloor * hi)) {
      pos.pass = false;
      pos.issues.push_back("pairing of P_" + std::to_string(j) +
                           " is not positive definite (eigenvalues " + fmt_list(ps.eigenvalues) +
                           ")");
    }
  }

  out.report.pass = out.report.pass && lag.pass && pos.pass;
  out.report.checks.push_back(std::move(lag));
  out.report.checks.push_back(std::move(pos));
  return out;
}

Hinge pd_boundary_hinge(const SymmetricFamily& family, const std::vector<double>& probes,
                        double tol, double rank_tol) {
  if (!family) throw UsageError("family is empty");
  for (double t : probes) {
    const RMat s = family(t);
    if (s.rows() != s.cols() || s.rows() == 0)
      throw UsageError("family must produce square matrices");
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
      throw DomainError("family is not symmetric at a probe");
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (s + s.transpose()));
    if (es.eigenvalues()(0) <= 0.0)
      throw DomainError("family is not positive definite at a probe");
  }

  MatrixFamily graphs = [&family](double t) { return family(t).cast<cplx>().eval(); };
  Hinge h = hinge_limit(Field::Real, graphs, probes, tol, rank_tol);
  // tol only budgets settling between the probes; the result's internal
  // identities are construction-exact, so they are held to kGapTol.
  const PDHingeReport rep = validate_pd_hinge(h, kGapTol);
  if (!rep.pass())
    throw DomainError("limit is not a positive definite hinge: " + rep.report.summary());
  return h;
}

}  // namespace hinges
