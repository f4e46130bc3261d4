#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "pfq/classifier.hpp"

namespace pfq {

using Json = nlohmann::json;

Json tower_spec_json(const FieldTower& tw);
std::unique_ptr<FieldTower> tower_from_json(const Json& j);

Json elt_json(const FieldTower& tw, Elt e);
Json p1_json(const P1& p);
Json poly_json(const Poly& p);          // coefficient strings, lowest first
Json shape_json(const QuadShape& s);    // full triple [a0,a1,a2]
Json ratfn_json(const RatFn& f);

// "e0,e1,e2,e3" with the tower's element syntax; error ParseError
CoeffVec parse_coeff_vec(const FieldTower& tw, const std::string& s);

Json witness_json(const FieldTower& tw, const EquivWitness& w);
Json label_json(const FieldTower& tw, const ClassLabel& l);
Json verdict_json(const FieldTower& tw, const Verdict& v);

}  // namespace pfq
