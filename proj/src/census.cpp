#include "pfq/census.hpp"

#include <cmath>
#include <future>
#include <numeric>

#include "pfq/oracle.hpp"

namespace pfq {

namespace {

uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct RowOut {
  std::string csv;
  std::string cls;
  bool cross_checked = false;
  bool disagreement = false;
};

}  // namespace

CoeffVec random_coeff_vec(const FieldTower& tw, std::uint64_t& state) {
  while (true) {
    std::array<Elt, 4> c;
    for (auto& e : c) e = tw.elt(splitmix64(state) % tw.q2());
    CoeffVec cv{c[0], c[1], c[2], c[3]};
    if (!cv.all_zero()) return cv;
  }
}

CensusSummary run_census(const FieldTower& tw, const CensusOptions& opt,
                         std::ostream* csv) {
  uint64_t q2 = tw.q2();
  double total_d = opt.exhaustive
                       ? std::pow(double(q2), 4.0) - 1.0
                       : double(opt.samples);
  if (total_d <= 0) fail("BadParameters", "need --samples or --exhaustive");
  double est = total_d * double(q2) +
               total_d * std::max(opt.cross_check, 0.0) * double(q2) *
                   double(q2);
  if (est > double(opt.budget))
    fail("BudgetExceeded",
         "estimated work " + std::to_string(uint64_t(est)) +
             " exceeds budget " + std::to_string(opt.budget));
  uint64_t total = uint64_t(total_d);

  std::vector<CoeffVec> sampled;
  if (!opt.exhaustive) {
    uint64_t st = opt.seed;
    sampled.reserve(total);
    for (uint64_t i = 0; i < total; ++i)
      sampled.push_back(random_coeff_vec(tw, st));
  }
  auto row_c = [&](uint64_t idx) -> CoeffVec {
    if (!opt.exhaustive) return sampled[idx];
    uint64_t v = idx + 1;  // skip the zero vector
    std::array<Elt, 4> c;
    for (int i = 3; i >= 0; --i) {
      c[size_t(i)] = tw.elt(v % q2);
      v /= q2;
    }
    return CoeffVec{c[0], c[1], c[2], c[3]};
  };

  auto process = [&](uint64_t idx) -> RowOut {
    CoeffVec c = row_c(idx);
    CoarseCase cc = coarse_case(c);
    std::string family, cls, eps, epssq;
    if (cc == CoarseCase::MonomialEquiv || cc == CoarseCase::BranchOneQ) {
      Decomposition d = canonical_decomposition(c);
      family = g_family_name(d.family);
      cls = class_tag_name(d.label.tag);
      if (d.label.epsilon) eps = tw.to_string(*d.label.epsilon);
      if (d.label.epsilon_is_square)
        epssq = *d.label.epsilon_is_square ? "square" : "nonsquare";
    } else {
      cls = coarse_case_name(cc);
    }
    Verdict v = planar_verdict(c);
    RowOut out;
    out.cls = cls;
    uint64_t st = opt.seed ^ (0x517cc1b727220a95ull + idx * 2654435761ull);
    bool checked = v.planar ||
                   (opt.cross_check > 0.0 &&
                    double(splitmix64(st) >> 11) * 0x1.0p-53 < opt.cross_check);
    std::string brute_s, agree_s;
    if (checked) {
      bool brute = is_planar_bruteforce(quadrinomial_table(c)).planar;
      out.cross_checked = true;
      out.disagreement = (brute != v.planar);
      brute_s = brute ? "planar" : "nonplanar";
      agree_s = out.disagreement ? "false" : "true";
    }
    out.csv = tw.to_string(c.c0) + "," + tw.to_string(c.c1) + "," +
              tw.to_string(c.c2) + "," + tw.to_string(c.c3) + "," +
              coarse_case_name(cc) + "," + family + "," + cls + "," + eps +
              "," + epssq + "," + (v.planar ? "planar" : "nonplanar") + "," +
              brute_s + "," + agree_s;
    return out;
  };

  CensusSummary sum;
  if (csv)
    *csv << "c0,c1,c2,c3,coarse,family,class,epsilon,epsilon_square_class,"
            "verdict_classifier,verdict_brute,agree\n";
  auto absorb = [&](const RowOut& r) {
    ++sum.rows;
    ++sum.class_counts[r.cls];
    if (r.cross_checked) ++sum.cross_checked;
    if (r.disagreement) ++sum.disagreements;
    if (csv) *csv << r.csv << "\n";
  };

  uint32_t workers = std::max<uint32_t>(1, opt.workers);
  if (workers == 1) {
    for (uint64_t i = 0; i < total; ++i) absorb(process(i));
    return sum;
  }
  uint64_t chunk = std::max<uint64_t>(1, total / (uint64_t(workers) * 8));
  std::vector<std::pair<uint64_t, std::future<std::vector<RowOut>>>> pending;
  uint64_t next_write = 0;
  std::map<uint64_t, std::vector<RowOut>> done;
  for (uint64_t start = 0; start < total; start += chunk) {
    uint64_t end = std::min(total, start + chunk);
    pending.emplace_back(start, std::async(std::launch::async, [&, start, end] {
                           std::vector<RowOut> rows;
                           rows.reserve(end - start);
                           for (uint64_t i = start; i < end; ++i)
                             rows.push_back(process(i));
                           return rows;
                         }));
    if (pending.size() >= workers) {
      auto& [s, fut] = pending.front();
      done[s] = fut.get();
      pending.erase(pending.begin());
      while (done.count(next_write)) {
        for (auto& r : done[next_write]) absorb(r);
        uint64_t sz = done[next_write].size();
        done.erase(next_write);
        next_write += sz;
      }
    }
  }
  for (auto& [s, fut] : pending) done[s] = fut.get();
  while (done.count(next_write)) {
    for (auto& r : done[next_write]) absorb(r);
    uint64_t sz = done[next_write].size();
    done.erase(next_write);
    next_write += sz;
  }
  return sum;
}

// ---------------------------------------------------------------------------

namespace {

void suite_check(SuiteResult& s, bool ok, const std::string& what) {
  ++s.checks;
  if (!ok) s.failures.push_back(what);
}

template <typename F>
void suite_guard(SuiteResult& s, const std::string& what, F&& body) {
  ++s.checks;
  try {
    body();
  } catch (const Error& e) {
    s.failures.push_back(what + ": " + e.what());
  }
}

}  // namespace

std::vector<SuiteResult> run_verify(const VerifyOptions& opt) {
  std::vector<SuiteResult> out;

  {
    SuiteResult s{"gcd-closed-forms", 0, {}};
    for (uint32_t p : {3u, 5u, 7u})
      for (uint32_t k = 1; k <= 6; ++k)
        for (uint32_t l = 1; l <= 6; ++l)
          suite_guard(s, "gcd(" + std::to_string(p) + "," + std::to_string(k) +
                             "," + std::to_string(l) + ")",
                      [&] { gcd_power_forms(p, k, l); });
    out.push_back(std::move(s));
  }

  for (auto [p, k, l] : opt.fields) {
    FieldTower tw(p, k, l);
    std::string at = "@" + std::to_string(p) + "," + std::to_string(k) + "," +
                     std::to_string(l);
    uint64_t st = opt.seed;

    SuiteResult ids{"identities" + at, 0, {}};
    for (uint64_t i = 0; i < opt.identity_samples; ++i) {
      CoeffVec c = random_coeff_vec(tw, st);
      IdentityReport rep = check_identities(c);
      if (opt.inject_e4_fault) rep.e4 = !rep.e4;
      std::string tag = tw.to_string(c.c0) + "," + tw.to_string(c.c1) + "," +
                        tw.to_string(c.c2) + "," + tw.to_string(c.c3);
      suite_check(ids, rep.e1, "E1 failed at c=" + tag);
      suite_check(ids, rep.e2, "E2 failed at c=" + tag);
      suite_check(ids, rep.e3, "E3 failed at c=" + tag);
      suite_check(ids, rep.e4, "E4 failed at c=" + tag);
    }
    out.push_back(std::move(ids));

    SuiteResult geo{"geometry" + at, 0, {}};
    for (uint64_t i = 0; i < opt.geometry_samples; ++i) {
      CoeffVec c = random_coeff_vec(tw, st);
      InvariantPack iv = invariants(c);
      if (iv.u_zero() || iv.v_zero() || iv.w_zero()) continue;
      suite_guard(geo, "ram_report", [&] { ram_report(c); });
    }
    out.push_back(std::move(geo));

    SuiteResult verd{"verdict-vs-brute" + at, 0, {}};
    for (uint64_t i = 0; i < opt.verdict_samples; ++i) {
      CoeffVec c = random_coeff_vec(tw, st);
      Verdict v = planar_verdict(c);
      bool brute = is_planar_bruteforce(quadrinomial_table(c)).planar;
      suite_check(verd, v.planar == brute,
                  "verdict disagrees with brute force at c=" +
                      tw.to_string(c.c0) + "," + tw.to_string(c.c1) + "," +
                      tw.to_string(c.c2) + "," + tw.to_string(c.c3));
    }
    out.push_back(std::move(verd));

    SuiteResult doeq{"do-planarity-equivalence" + at, 0, {}};
    for (uint64_t i = 0; i < opt.verdict_samples / 2 + 1; ++i) {
      CoeffVec c = random_coeff_vec(tw, st);
      suite_check(doeq, do_planarity_equivalence(quadrinomial_table(c)).agree,
                  "two-to-one equivalence failed");
    }
    out.push_back(std::move(doeq));
  }

  {
    SuiteResult s{"parity-closed-forms", 0, {}};
    for (uint32_t p : {3u, 5u})
      for (uint32_t k = 1; k <= 3; ++k)
        for (uint32_t l = 1; l <= 4; ++l) {
          uint64_t q = 1;
          for (uint32_t i = 0; i < k; ++i) q *= p;
          if (q * q > 729) continue;
          FieldTower tw(p, k, l);
          uint32_t d = std::gcd(k, l);
          bool f0 = is_planar_bruteforce(
                        make_family(FamilyTag::F0, std::nullopt, tw))
                        .planar;
          bool f0_gcd = std::gcd(tw.Q() + 1, tw.q2() - 1) == 2;
          bool f0_parity = (l / d) % 2 == 0;
          suite_check(s, f0 == f0_gcd && f0 == f0_parity,
                      "X^{Q+1} parity form at " + std::to_string(p) + "," +
                          std::to_string(k) + "," + std::to_string(l));
          bool f1 = is_planar_bruteforce(
                        make_family(FamilyTag::F1, std::nullopt, tw))
                        .planar;
          bool f1_gcd = std::gcd(tw.Q() + tw.q(), tw.q2() - 1) == 2;
          bool f1_parity = ((k / d) % 2 == 1) && ((l / d) % 2 == 1);
          suite_check(s, f1 == f1_gcd && f1 == f1_parity,
                      "X^{Q+q} parity form at " + std::to_string(p) + "," +
                          std::to_string(k) + "," + std::to_string(l));
        }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace pfq
