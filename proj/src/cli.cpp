#include "pfq/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pfq/census.hpp"
#include "pfq/charsum.hpp"
#include "pfq/json_io.hpp"

namespace pfq {

namespace {

bool usage_error(const std::string& code) {
  static const std::set<std::string> usage = {
      "ParseError",        "AllZeroCoefficients",
      "BadParameters",     "NonPrime",
      "EvenCharacteristic", "EpsilonConstraintViolated",
      "ZetaInBaseField",   "KDividesL",
      "KDoesNotDivideL",   "EpsilonInMu",
      "XiInBaseField",     "TOutOfRange",
      "BudgetExceeded",    "GammaNotInMu",
      "DeltaInBaseField",  "DegenerateParameters",
      "ZeroInput",         "NotInBaseField",
      "ConstantG",         "BothUVZero",
      "ZeroInvariantPolynomial", "PreconditionViolated",
      "ConstantFunction",  "NonSeparable",
      "ZeroPolynomial",    "BothZero",
      "ShapeViolation"};
  return usage.count(code) > 0;
}

struct GlobalArgs {
  uint32_t p = 0, k = 0, ell = 0;
  std::string field_file;
  uint64_t seed = 0;
  uint32_t workers = 1;
  uint64_t budget = 2'000'000'000ull;
};

std::unique_ptr<FieldTower> make_tower_from(const GlobalArgs& g) {
  if (!g.field_file.empty()) {
    std::ifstream in(g.field_file);
    if (!in) fail("ParseError", "cannot open field spec " + g.field_file);
    Json j;
    in >> j;
    return tower_from_json(j);
  }
  if (g.p == 0) fail("ParseError", "need --p/--k/--ell or --field");
  return std::make_unique<FieldTower>(g.p, g.k ? g.k : 1, g.ell ? g.ell : 1,
                                      g.seed);
}

Json classify_json(const FieldTower& tw, const CoeffVec& c, bool witness) {
  Json j;
  j["c"] = Json::array({tw.to_string(c.c0), tw.to_string(c.c1),
                        tw.to_string(c.c2), tw.to_string(c.c3)});
  CoarseCase cc = coarse_case(c);
  j["coarse"] = coarse_case_name(cc);
  if (cc == CoarseCase::MonomialEquiv || cc == CoarseCase::BranchOneQ) {
    Decomposition d = canonical_decomposition(c);
    j["family"] = g_family_name(d.family);
    j["class"] = label_json(tw, d.label);
    j["epsilon_square_class_invariant"] =
        (tw.k() / tw.delta()) % 2 == 1;  // open for even k/delta
    if (witness) j["witness"] = witness_json(tw, d.witness);
  } else {
    j["class"] = {{"tag", cc == CoarseCase::ConstantG ? "ConstantG"
                                                      : "ARootInMu"}};
  }
  Verdict v = planar_verdict(c);
  j["verdict"] = verdict_json(tw, v);
  return j;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"planar quadrinomial classifier over F_{q^2}"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs g;
  app.add_option("--p", g.p, "characteristic (odd prime)");
  app.add_option("--k", g.k, "extension degree of F_q over F_p");
  app.add_option("--ell", g.ell, "exponent of Q = p^ell");
  app.add_option("--field", g.field_file, "field spec JSON file");
  app.add_option("--seed", g.seed, "deterministic seed");
  app.add_option("--workers", g.workers, "worker threads");
  app.add_option("--budget", g.budget, "work budget for census");

  std::string c_str, tag_str, eps_str, xi_str, out_path = "-";
  bool witness = false, oracle_only = false, both = false, planar_flag = false;
  bool exhaustive = false, embed = false;
  uint64_t samples = 0;
  double cross = 0.0;
  std::vector<std::string> fields;
  std::string inject;

  auto* classify = app.add_subcommand("classify", "classify one c");
  classify->add_option("--c", c_str, "four comma-separated elements")
      ->required();
  classify->add_flag("--witness", witness, "include L1, L2 and the canonical form");

  auto* planar = app.add_subcommand("planar", "planarity verdict for one c");
  planar->add_option("--c", c_str)->required();
  planar->add_flag("--oracle-only", oracle_only, "brute force only");
  planar->add_flag("--both", both, "classifier and brute force, cross-checked");

  auto* invariants_cmd = app.add_subcommand("invariants", "invariant pack");
  invariants_cmd->add_option("--c", c_str)->required();

  auto* geometry_cmd = app.add_subcommand("geometry", "ramification report");
  geometry_cmd->add_option("--c", c_str)->required();

  auto* family_cmd = app.add_subcommand("family", "canonical family table");
  family_cmd->add_option("--tag", tag_str, "P0|F0|F1|P1|P2|P3|F2|X2")
      ->required();
  family_cmd->add_option("--epsilon", eps_str, "epsilon parameter");
  family_cmd->add_flag("--planar", planar_flag, "brute-force planarity");
  family_cmd->add_flag("--embed", embed,
                       "embed a biprojective family through X = x + u y");

  auto* census_cmd = app.add_subcommand("census", "bulk classification");
  census_cmd->add_flag("--exhaustive", exhaustive, "all nonzero c");
  census_cmd->add_option("--samples", samples, "number of sampled c");
  census_cmd->add_option("--cross-check", cross,
                         "fraction brute-force cross-checked");
  census_cmd->add_option("--out", out_path, "CSV path ('-' for stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "module invariant suites");
  verify_cmd->add_option("--fields", fields, "fields as p,k,ell triples");
  verify_cmd->add_option("--inject-fault", inject,
                         "negative control (e4-sign)");

  auto* charsum_cmd = app.add_subcommand("charsum", "character-sum certificates");
  charsum_cmd->require_subcommand(1);
  auto* appa = charsum_cmd->add_subcommand("appendix-a", "P3 certificate");
  appa->add_option("--epsilon", eps_str)->required();
  auto* appb = charsum_cmd->add_subcommand("appendix-b", "f2 certificate");
  appb->add_option("--epsilon", eps_str)->required();
  appb->add_option("--xi", xi_str, "element outside F_q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (classify->parsed()) {
      auto tw = make_tower_from(g);
      Json j = classify_json(*tw, parse_coeff_vec(*tw, c_str), witness);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (planar->parsed()) {
      auto tw = make_tower_from(g);
      CoeffVec c = parse_coeff_vec(*tw, c_str);
      Json j;
      j["c"] = Json::array({tw->to_string(c.c0), tw->to_string(c.c1),
                            tw->to_string(c.c2), tw->to_string(c.c3)});
      int rc = 0;
      if (!oracle_only) j["classifier"] = verdict_json(*tw, planar_verdict(c));
      if (oracle_only || both) {
        BruteResult br = is_planar_bruteforce(quadrinomial_table(c), g.workers);
        Json b;
        b["planar"] = br.planar;
        if (br.witness) {
          b["witness"] = {{"a", tw->to_string(tw->elt(br.witness->a))},
                          {"b", tw->to_string(tw->elt(br.witness->b))},
                          {"x1", tw->to_string(tw->elt(br.witness->x1))},
                          {"x2", tw->to_string(tw->elt(br.witness->x2))}};
        }
        j["brute"] = b;
        if (both) {
          bool agree = j["classifier"]["planar"] == br.planar;
          j["agree"] = agree;
          if (!agree) rc = 1;
        }
      }
      std::cout << j.dump(2) << "\n";
      return rc;
    }
    if (invariants_cmd->parsed()) {
      auto tw = make_tower_from(g);
      CoeffVec c = parse_coeff_vec(*tw, c_str);
      InvariantPack iv = invariants(c);
      IdentityReport rep = check_identities(c);
      QuadData qd = build_quad(c);
      Json j;
      j["e1"] = tw->to_string(iv.e1);
      j["e2"] = tw->to_string(iv.e2);
      j["e3"] = tw->to_string(iv.e3);
      j["theta2"] = tw->to_string(iv.theta2);
      j["theta3"] = tw->to_string(iv.theta3);
      j["theta1_sq"] = tw->to_string(iv.theta1_sq);
      j["U"] = shape_json(iv.U);
      j["V"] = shape_json(iv.V);
      j["W"] = shape_json(iv.W);
      j["A"] = poly_json(qd.A);
      j["B"] = poly_json(qd.B);
      j["C"] = poly_json(qd.C);
      j["deg_g"] = qd.deg_g;
      j["identities"] = {{"E1", rep.e1}, {"E2", rep.e2}, {"E3", rep.e3},
                         {"E4", rep.e4}};
      std::cout << j.dump(2) << "\n";
      return rep.all() ? 0 : 1;
    }
    if (geometry_cmd->parsed()) {
      auto tw = make_tower_from(g);
      CoeffVec c = parse_coeff_vec(*tw, c_str);
      RamReport rep = ram_report(c);
      Json j;
      auto pts = [&](const std::vector<P1>& v) {
        Json a = Json::array();
        for (auto& pt : v) a.push_back(to_string(pt));
        return a;
      };
      j["g"] = ratfn_json(build_quad(c).g);
      j["gamma"] = pts(rep.gamma);
      j["lambda"] = pts(rep.lambda);
      j["sigma"] = pts(rep.sigma);
      j["branches"] = Json::array();
      for (auto& br : rep.branches)
        j["branches"].push_back(
            {{"point", to_string(br.point)}, {"multiset", br.multiset}});
      j["hurwitz"] = {{"lhs", rep.hurwitz.lhs},
                      {"rhs", rep.hurwitz.rhs},
                      {"tame", rep.hurwitz.tame},
                      {"holds", rep.hurwitz.holds}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (family_cmd->parsed()) {
      auto tw = make_tower_from(g);
      FamilyTag tag;
      if (tag_str == "P0") tag = FamilyTag::P0;
      else if (tag_str == "F0") tag = FamilyTag::F0;
      else if (tag_str == "F1") tag = FamilyTag::F1;
      else if (tag_str == "P1") tag = FamilyTag::P1;
      else if (tag_str == "P2") tag = FamilyTag::P2;
      else if (tag_str == "P3") tag = FamilyTag::P3;
      else if (tag_str == "F2") tag = FamilyTag::F2;
      else if (tag_str == "X2") tag = FamilyTag::X2;
      else fail("ParseError", "unknown family tag " + tag_str);
      std::optional<Elt> eps;
      if (!eps_str.empty()) eps = tw->parse(eps_str);
      FnTable t = make_family(tag, eps, *tw);
      Json j;
      j["tag"] = family_tag_name(tag);
      if (eps) j["epsilon"] = tw->to_string(*eps);
      j["kind"] = t.kind == FnTable::Univariate ? "univariate" : "biprojective";
      if (embed && t.kind == FnTable::Biprojective) {
        t = embed_biprojective(t, tw->gen());
        j["kind"] = "univariate";
        j["embedded_through"] = tw->to_string(tw->gen());
      }
      if (planar_flag) j["planar"] = is_planar_bruteforce(t, g.workers).planar;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (census_cmd->parsed()) {
      auto tw = make_tower_from(g);
      CensusOptions opt;
      opt.exhaustive = exhaustive;
      opt.samples = samples;
      opt.cross_check = cross;
      opt.seed = g.seed;
      opt.workers = g.workers;
      opt.budget = g.budget;
      std::ofstream fout;
      std::ostream* os = nullptr;
      if (out_path == "-") {
        os = &std::cout;
      } else if (!out_path.empty()) {
        fout.open(out_path);
        if (!fout) fail("ParseError", "cannot open " + out_path);
        os = &fout;
      }
      CensusSummary sum = run_census(*tw, opt, os);
      Json j;
      j["rows"] = sum.rows;
      j["cross_checked"] = sum.cross_checked;
      j["disagreements"] = sum.disagreements;
      j["class_counts"] = sum.class_counts;
      std::cout << j.dump(2) << "\n";
      return sum.disagreements == 0 ? 0 : 1;
    }
    if (verify_cmd->parsed()) {
      VerifyOptions opt;
      opt.seed = g.seed ? g.seed : 1;
      if (!inject.empty()) {
        if (inject != "e4-sign") fail("ParseError", "unknown fault " + inject);
        opt.inject_e4_fault = true;
      }
      if (!fields.empty()) {
        opt.fields.clear();
        for (auto& f : fields) {
          std::array<uint32_t, 3> t{};
          if (sscanf(f.c_str(), "%u,%u,%u", &t[0], &t[1], &t[2]) != 3)
            fail("ParseError", "fields must be p,k,ell triples");
          opt.fields.push_back(t);
        }
      }
      auto suites = run_verify(opt);
      bool ok = true;
      for (auto& s : suites) {
        std::cout << (s.ok() ? "ok   " : "FAIL ") << s.name << " ("
                  << s.checks << " checks)\n";
        for (auto& f : s.failures) std::cout << "     " << f << "\n";
        ok = ok && s.ok();
      }
      return ok ? 0 : 1;
    }
    if (charsum_cmd->parsed()) {
      auto tw = make_tower_from(g);
      Elt eps = tw->parse(eps_str);
      AppendixSum r{};
      if (appa->parsed()) {
        r = appendix_a(*tw, eps);
      } else if (appb->parsed()) {
        Elt xi = xi_str.empty() ? tw->gen() : tw->parse(xi_str);
        r = appendix_b(*tw, eps, xi);
      }
      Json j;
      j["sum"] = r.value;
      j["bound"] = r.lower_bound;
      j["positive"] = r.positive;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    Json j;
    j["error"] = e.code;
    j["message"] = e.what();
    std::cerr << j.dump(2) << "\n";
    return usage_error(e.code) ? 2 : 1;
  }
  return 2;
}

}  // namespace pfq
