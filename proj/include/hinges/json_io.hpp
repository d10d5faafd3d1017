#pragma once

#include "hinges/quotient.hpp"
#include "hinges/symspace.hpp"

#include <nlohmann/json.hpp>

namespace hinges {

using Json = nlohmann::json;

Field field_from_name(const std::string& name);

// {"rows": r, "cols": c, "re": [[...]], "im": [[...]]}, "im" omitted for real.
Json matrix_to_json(Field field, const Mat& m);
Mat matrix_from_json(const Json& j);

// {"n": n, "field": "...", "frame": matrix}; the frame spans the relation.
Json relation_to_json(const LinearRelation& v);
LinearRelation relation_from_json(const Json& j, double rank_tol = kRankTol);

Json subspace_to_json(const Subspace& v);
Subspace subspace_from_json(const Json& j, double rank_tol = kRankTol);

// {"space": id, "resolution": r, "points": [...]}; euclidean points are number
// arrays, grassmannian points are relation objects.
Json sample_to_json(const ClosedSetSample& s);
ClosedSetSample sample_from_json(const Json& j, double rank_tol = kRankTol);

// {"n": n, "field": "...", "k": k, "P": [...], "Q": [...]}; parsing does not
// validate the axioms, so reports can be produced for broken hinges.
Json hinge_to_json(const Hinge& h);
Hinge hinge_from_json(const Json& j, double rank_tol = kRankTol);

Json report_to_json(const HingeReport& r);
Json pd_report_to_json(const PDHingeReport& r);

// {"points": [...], "labels": [...], "chart": [...], "metric": "euclidean" |
// "grassmann-gap", "resolution": r, "sequences": [[...]]}; the result comes
// back finalized.
QuotientScene scene_from_json(const Json& j, double rank_tol = kRankTol);
Json scene_to_json(const QuotientScene& s);

Json members_to_json(const std::vector<QuotientMember>& members);

}  // namespace hinges
