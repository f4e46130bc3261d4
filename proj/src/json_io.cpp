#include "pfq/json_io.hpp"

#include <sstream>

namespace pfq {

Json tower_spec_json(const FieldTower& tw) {
  Json j;
  j["p"] = tw.p();
  j["k"] = tw.k();
  j["ell"] = tw.ell();
  j["modulus_q"] = tw.modulus_q();
  j["modulus_q2"] = Json::array();
  for (uint32_t c : tw.modulus_q2()) {
    std::vector<uint32_t> digits;
    uint32_t x = c;
    for (uint32_t i = 0; i < tw.k(); ++i) {
      digits.push_back(x % tw.p());
      x /= tw.p();
    }
    j["modulus_q2"].push_back(digits);
  }
  return j;
}

std::unique_ptr<FieldTower> tower_from_json(const Json& j) {
  if (!j.contains("p") || !j.contains("k") || !j.contains("ell"))
    fail("ParseError", "field spec needs p, k, ell");
  uint32_t p = j["p"], k = j["k"], ell = j["ell"];
  if (!j.contains("modulus_q") || !j.contains("modulus_q2"))
    return std::make_unique<FieldTower>(p, k, ell);
  std::vector<uint32_t> mq = j["modulus_q"].get<std::vector<uint32_t>>();
  std::vector<uint32_t> mq2;
  for (const auto& digits : j["modulus_q2"]) {
    uint32_t v = 0, m = 1;
    for (uint32_t d : digits.get<std::vector<uint32_t>>()) {
      v += d * m;
      m *= p;
    }
    mq2.push_back(v);
  }
  return std::make_unique<FieldTower>(p, k, ell, mq, mq2);
}

Json elt_json(const FieldTower& tw, Elt e) { return tw.to_string(e); }

Json p1_json(const P1& p) { return to_string(p); }

Json poly_json(const Poly& p) {
  Json a = Json::array();
  for (const Elt& e : p.coeffs()) a.push_back(p.tower().to_string(e));
  return a;
}

Json shape_json(const QuadShape& s) {
  const FieldTower& tw = *s.a1.tw;
  return Json::array({tw.to_string(s.a0), tw.to_string(s.a1), tw.to_string(s.a2)});
}

Json ratfn_json(const RatFn& f) {
  Json j;
  j["num"] = poly_json(f.num());
  j["den"] = poly_json(f.den());
  return j;
}

CoeffVec parse_coeff_vec(const FieldTower& tw, const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4)
    fail("ParseError", "expected four comma-separated elements");
  return CoeffVec{tw.parse(parts[0]), tw.parse(parts[1]), tw.parse(parts[2]),
                  tw.parse(parts[3])};
}

Json witness_json(const FieldTower& tw, const EquivWitness& w) {
  Json j;
  j["kind"] = w.biprojective ? "biprojective" : "univariate";
  auto semilinear = [&](const SemilinearMap& m) {
    return Json{{"s", tw.to_string(m.s)}, {"t", tw.to_string(m.t)}};
  };
  if (w.biprojective) {
    j["L1"] = {{"u", tw.to_string(w.l1_bi.u)}, {"v", tw.to_string(w.l1_bi.v)}};
    j["L2"] = {{"row0", semilinear(w.l2_bi.row0)},
               {"row1", semilinear(w.l2_bi.row1)}};
    Json a = Json::array(), b = Json::array();
    for (int i = 0; i < 4; ++i) {
      a.push_back(tw.to_string(w.biproj_a[i]));
      b.push_back(tw.to_string(w.biproj_b[i]));
    }
    j["canonical"] = {{"first", a}, {"second", b}};
  } else {
    j["L1"] = semilinear(w.l1_uni);
    j["L2"] = semilinear(w.l2_uni);
    j["canonical"] = Json::array({tw.to_string(w.c_target.c0),
                                  tw.to_string(w.c_target.c1),
                                  tw.to_string(w.c_target.c2),
                                  tw.to_string(w.c_target.c3)});
  }
  return j;
}

Json label_json(const FieldTower& tw, const ClassLabel& l) {
  Json j;
  j["tag"] = class_tag_name(l.tag);
  if (l.epsilon) j["epsilon"] = tw.to_string(*l.epsilon);
  if (l.epsilon_is_square)
    j["epsilon_square_class"] = *l.epsilon_is_square ? "square" : "nonsquare";
  return j;
}

Json verdict_json(const FieldTower& tw, const Verdict& v) {
  Json j;
  j["planar"] = v.planar;
  j["rule"] = v.rule;
  if (v.label) j["class"] = label_json(tw, *v.label);
  if (v.tilde) {
    Json t;
    t["a"] = Json::array({tw.to_string(v.tilde->a[0]),
                          tw.to_string(v.tilde->a[1]),
                          tw.to_string(v.tilde->a[2])});
    t["e"] = tw.to_string(v.tilde->e_tilde);
    t["theta"] = tw.to_string(v.tilde->theta_tilde);
    t["delta"] = tw.to_string(v.tilde->delta_tilde);
    j["tilde"] = t;
    if (v.planar) j["class"] = {{"tag", "TildeReduced"}, {"equivalent_to", "X^2"}};
    else j["class"] = {{"tag", "TildeReduced"}};
  }
  return j;
}

}  // namespace pfq
