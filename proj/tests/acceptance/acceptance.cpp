// Acceptance suite: one pass/fail line per criterion.
//
//   acceptance [--criterion N] [--calibrate]
//
// --calibrate prints the observed regression quantities (remainder maxima,
// displacement suprema) in a form ready to freeze into kFrozen* below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "../helpers.hpp"
#include "brs/cutproject.hpp"
#include "brs/dynamics.hpp"
#include "brs/errors.hpp"
#include "brs/random.hpp"
#include "brs/serialize.hpp"
#include "parallel_for.hpp"

using namespace brs;
using namespace brstest;

namespace {

constexpr std::uint64_t kFamilySeed = 7777;
constexpr mpfr_prec_t kPrec = 256;

// Frozen regression values, observed once and pinned.  Remainder maxima for
// the 20 seeded random regions of criterion 1 (max |remainder| over
// N <= 10^6, orbit of 0), indexed by construction order.
constexpr double kFrozenRemainderMax[20] = {
    1.19174458653082,  1.0362614578623,   3.54697872781999, 2.10122638414227,
    1.93455391204577,  1.8634170596758,   1.27363534581672, 2.28553020853021,
    1.78722770362873,  4.58715071261728,  2.03483433713815, 1.62455673641098,
    2.09601899106057,  2.04629177041602,  1.26488561246188, 3.69471484663656,
    1.06013696435987,  2.33938608429264,  4.25198077953047, 2.84101848913077,
};

// Golden d=1 BD map: sup displacement over 10^5 returns, and over the
// doubled window.  The true supremum 1 is approached along record indices
// (Fibonacci numbers) with geometrically decaying increments, so any window
// doubling crosses a record and the finite sup strictly increases by a
// vanishing amount; kSupCreepBound caps that creep, far below the O(1)
// growth a non-BD control shows.
constexpr double kFrozenGoldenSup = 0.999990355124322;
constexpr double kFrozenGoldenSupDoubled = 0.999996315985308;
constexpr double kSupCreepBound = 1e-4;

// d=2, k=3 BD map: max column displacement supremum and max/min column ratio
// over tails in [-50, 50], n_1 in [-10^4, 10^4].
constexpr double kFrozenColumnSupMax = 1.68297397068633;
constexpr double kFrozenColumnSupRatio = 3.30209861616916;

bool g_calibrate = false;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string failures;

  void fail(const std::string& why) {
    pass = false;
    if (!failures.empty()) failures += "; ";
    failures += why;
  }
};

// The 20 randomized constructions of criterion 1, shared by criteria 4 and 6.
struct FamilyMember {
  RotationContext ctx;
  SpecialBasis basis;
  RegionGeometry geom;
};

const std::vector<FamilyMember>& family() {
  static std::vector<FamilyMember> cached = [] {
    std::vector<FamilyMember> out;
    RandomSource rng(kFamilySeed);
    for (int i = 0; i < 20; ++i) {
      std::size_t s = 1 + i % 3;
      std::vector<std::string> alpha;
      for (std::size_t c = 0; c < s; ++c) alpha.push_back(rng.next_decimal_string(45));
      std::vector<std::size_t> js;
      for (int k = 0; k < 10; ++k) js.push_back(rng.next_below(s));
      RotationContext ctx(alpha, kPrec);
      SpecialBasis basis = construct_basis(ctx, js);
      RegionGeometry geom = geometry(basis);
      out.push_back(FamilyMember{std::move(ctx), std::move(basis), std::move(geom)});
    }
    return out;
  }();
  return cached;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool near(const Real& value, double frozen, double abs_tol = 1e-9) {
  return std::abs(value.to_double() - frozen) <= abs_tol;
}

// --- criterion 1: construction validity --------------------------------

Outcome criterion1() {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  const auto& fam = family();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& m = fam[i];
    ConditionReport rep = check_conditions(m.basis);
    if (!rep.all_pass()) out.fail("region " + std::to_string(i) + " fails conditions");
    if (!(rep.determinant == 1 || rep.determinant == -1))
      out.fail("region " + std::to_string(i) + " determinant not +-1");
    for (std::size_t j = 0; j < m.basis.s(); ++j)
      if (m.basis.v[j].n > 0) out.fail("sign invariant (spanning) violated");
    if (m.basis.v[m.basis.s()].n < 1) out.fail("sign invariant (return) violated");
  }
  double dt = seconds_since(t0);
  if (dt >= 10.0) out.fail("runtime " + std::to_string(dt) + " s exceeds 10 s");
  out.detail = "20 randomized constructions, s in {1,2,3}, 10 steps each (" +
               std::to_string(dt).substr(0, 4) + " s)";
  return out;
}

// --- criterion 2: golden regression -------------------------------------

Outcome criterion2() {
  Outcome out;
  RotationContext ctx = golden_ctx(kPrec);
  SpecialBasis basis = construct_basis(ctx, {0});
  if (!(basis.v[0] == lv({1}, -1) && basis.v[1] == lv({-1}, 2)))
    out.fail("vectors differ from [[1,-1],[-1,2]]");

  RegionGeometry g = geometry(basis);
  Real tol100 = Real::two_pow(-100, kPrec);
  Real vol_ref = Real::from_decimal(
      "0.38196601125010515179541316563436188227969082019424", kPrec);
  if (!((g.volume() - vol_ref).abs() < tol100)) out.fail("volume regression");

  ReturnSequence seq = naive_returns(g, RVector{Real(kPrec)}, 5);
  const long expect[] = {0, 2, 5, 7, 10, 13};
  for (int k = 0; k <= 5; ++k)
    if (seq.entries[k].ell != expect[k]) out.fail("return times differ");

  if (!((g.t()[0] - ctx.alpha()[0]).abs() < tol100))
    out.fail("induced t does not reproduce alpha");
  out.detail = "vectors, volume, return times 2,5,7,10,13, t = alpha";
  return out;
}

// --- criterion 3: oracle equivalence -------------------------------------

Outcome criterion3() {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* name;
    RegionGeometry geom;
  };
  std::vector<Case> cases;
  cases.push_back({"golden", geometry(construct_basis(golden_ctx(kPrec), {0}))});
  cases.push_back({"s2", geometry(construct_basis(s2_ctx(kPrec), {0}))});
  for (auto& c : cases) {
    ReturnSequence naive = naive_returns(c.geom, RVector(c.geom.s(), Real(kPrec)), 10000);
    ReturnSequence renor = renormalized_returns(c.geom, 10000);
    if (naive.entries.size() != renor.entries.size()) {
      out.fail(std::string(c.name) + ": entry counts differ");
      continue;
    }
    for (std::size_t i = 0; i < naive.entries.size(); ++i) {
      if (!(naive.entries[i].ell == renor.entries[i].ell)) {
        out.fail(std::string(c.name) + ": ell differs at k=" + std::to_string(i));
        break;
      }
    }
  }
  double dt = seconds_since(t0);
  if (dt >= 30.0) out.fail("runtime exceeds 30 s");
  out.detail = "naive vs renormalized, 10^4 returns, golden and s=2 regions (" +
               std::to_string(dt).substr(0, 4) + " s)";
  return out;
}

// --- criterion 4: boundedness witness ------------------------------------

struct SplitMax {
  Real lo, hi;
};

SplitMax split_remainder_max(const std::vector<Int>& visits, const Real& vol,
                             long long split, long long n_max) {
  SplitMax sm{Real(kPrec), Real(kPrec)};
  auto consider = [&](long long cnt, long long n) {
    if (n < 0 || n > n_max) return;
    Real r = (Real::from_long(cnt, kPrec) - Real::from_long(n, kPrec) * vol).abs();
    Real& slot = (n <= split) ? sm.lo : sm.hi;
    if (r > slot) slot = std::move(r);
  };
  long long cnt = 0;
  long long cnt_split = 0, cnt_split1 = 0;
  for (const Int& v : visits) {
    long long n = v.get_si();
    if (n >= n_max) break;
    if (n < split) ++cnt_split;
    if (n < split + 1) ++cnt_split1;
    consider(cnt, n);
    ++cnt;
    consider(cnt, n + 1);
  }
  consider(cnt, n_max);
  consider(cnt_split, split);
  consider(cnt_split1, split + 1);
  return sm;
}

Outcome criterion4() {
  Outcome out;
  const auto& fam = family();
  std::vector<double> totals(fam.size(), 0.0);
  std::vector<std::string> errors(fam.size());
  acceptance::parallel_for(fam.size(), [&](std::size_t i) {
    const auto& m = fam[i];
    std::vector<Int> visits = renormalized_visit_times(m.geom, 1000000);
    SplitMax sm = split_remainder_max(visits, m.geom.volume(), 10000, 1000000);

    // Cross-check the short range against the naive scan.
    RemainderTrace naive = remainder_trace(m.geom, RVector(m.geom.s(), Real(kPrec)), 10000, 10000);
    if ((naive.max_abs - sm.lo).abs() >= m.geom.tol()) {
      errors[i] = "telescoping cross-check failed";
      return;
    }
    if (sm.hi > sm.lo + sm.lo) {
      errors[i] = "late remainder max exceeds twice the early max";
      return;
    }
    Real total = (sm.hi > sm.lo) ? sm.hi : sm.lo;
    totals[i] = total.to_double();
  });
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (!errors[i].empty()) out.fail("region " + std::to_string(i) + ": " + errors[i]);
    if (g_calibrate) {
      std::printf("  calibrate remainder_max[%2zu] = %.15g   (volume %.6g)\n", i, totals[i],
                  family()[i].geom.volume().to_double());
    } else if (std::abs(totals[i] - kFrozenRemainderMax[i]) > 1e-9) {
      out.fail("region " + std::to_string(i) + " max " + std::to_string(totals[i]) +
               " departs from frozen " + std::to_string(kFrozenRemainderMax[i]));
    }
  }
  out.detail = "remainder maxima over N <= 10^6 bounded and frozen for 20 regions";
  return out;
}

// --- criterion 5: unboundedness control ----------------------------------

Outcome criterion5() {
  Outcome out;
  RotationContext ctx = golden_ctx(kPrec);
  RegionGeometry half = RegionGeometry::box(ctx, RVector{Real::from_decimal("0.5", kPrec)});
  RVector zero{Real(kPrec)};
  Real lo = remainder_trace(half, zero, 10000, 10000).max_abs;
  Real hi = remainder_trace(half, zero, 1000000, 1000000).max_abs;
  if (!(hi > lo)) out.fail("control interval remainder did not grow");
  out.detail = "interval [0,1/2), golden alpha: max over N <= 10^6 (" +
               hi.to_string(6) + ") > max over N <= 10^4 (" + lo.to_string(6) + ")";
  return out;
}

// --- criterion 6: Rauzy verification -------------------------------------

Outcome criterion6() {
  Outcome out;
  std::vector<const RegionGeometry*> regions;
  for (const auto& m : family()) regions.push_back(&m.geom);
  RegionGeometry golden = geometry(construct_basis(golden_ctx(kPrec), {0}));
  RegionGeometry s2 = geometry(construct_basis(s2_ctx(kPrec), {0}));
  regions.push_back(&golden);
  regions.push_back(&s2);

  for (std::size_t i = 0; i < regions.size(); ++i) {
    RauzyReport rep = verify_rauzy(*regions[i], 10000, kFamilySeed);
    if (!rep.all_pass()) {
      std::string why;
      for (const auto& e : rep.entries)
        if (!e.pass) why += e.condition + " " + e.witness + " ";
      out.fail("region " + std::to_string(i) + ": " + why);
    }
    for (const auto& e : rep.entries)
      if (e.condition == "R2" && !(e.max_residual < regions[i]->tol()))
        out.fail("region " + std::to_string(i) + ": residual above tolerance");
  }
  out.detail = "R1 and R2 at 10^4 seeded samples on 22 regions, residuals < 2^-128";
  return out;
}

// --- criterion 7: hyperplane uniqueness ----------------------------------

Outcome criterion7() {
  Outcome out;
  struct Case {
    const char* name;
    SpecialBasis basis;
  };
  std::vector<Case> cases;
  cases.push_back({"golden", construct_basis(golden_ctx(kPrec), {0})});
  cases.push_back({"s2", construct_basis(s2_ctx(kPrec), {0})});
  for (const auto& c : cases) {
    // hyperplane_points certifies one point per level by enumeration and
    // exact agreement with the return recursion; it throws otherwise.
    std::vector<LatticeVector> pts = hyperplane_points(c.basis, -1000, 1000);
    if (pts.size() != 2001) out.fail(std::string(c.name) + ": wrong count");
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (!(pts[i].n > pts[i - 1].n)) out.fail(std::string(c.name) + ": last coords not increasing");
    ReturnSequence seq = renormalized_returns(geometry(c.basis), 1000);
    for (long k = 0; k <= 1000; ++k)
      if (!(pts[static_cast<std::size_t>(1000 + k)].n == seq.entries[k].ell))
        out.fail(std::string(c.name) + ": level k return time mismatch");
  }
  out.detail = "exactly one lattice point per hyperplane, k in [-10^3, 10^3], both regions";
  return out;
}

// --- criterion 8: BD map --------------------------------------------------

Outcome criterion8() {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();

  // d=1, k=2 golden: the window holding the first 10^5 returns.
  {
    Scheme scheme(2, 1, {{golden_decimal()}}, kPrec);
    RegionGeometry region = geometry(construct_basis(scheme.rotation(), {0}));
    Int ell_n = renormalized_returns(region, 100000).entries.back().ell;
    SectionedScheme ss(scheme, region, RVector{Real(kPrec)});

    BdPairing w1 = bd_pairing(ss, {}, IntRange{Int(0), ell_n}, false);
    BdPairing w2 = bd_pairing(ss, {}, IntRange{Int(0), ell_n * 2}, false);
    if (g_calibrate) {
      std::printf("  calibrate golden_sup = %.15g  doubled = %.15g\n",
                  w1.sup_displacement.to_double(), w2.sup_displacement.to_double());
    } else {
      if (!near(w1.sup_displacement, kFrozenGoldenSup))
        out.fail("golden sup departs from frozen value");
      if (!near(w2.sup_displacement, kFrozenGoldenSupDoubled))
        out.fail("doubled-window sup departs from frozen value");
    }
    Real creep = w2.sup_displacement - w1.sup_displacement;
    if (creep.to_double() > kSupCreepBound)
      out.fail("sup displacement grew materially when the window doubled");
  }

  // d=2, k=3: column suprema bounded by one constant across tails.
  {
    Scheme scheme(3, 2, {{sqrt2m1_decimal()}, {sqrt3m1_decimal()}}, kPrec);
    RegionGeometry region = geometry(construct_basis(scheme.rotation(), {0}));
    SectionedScheme ss(scheme, region, RVector{Real(kPrec)});
    BdPairing pr = bd_pairing(ss, {IntRange{Int(-50), Int(50)}},
                              IntRange{Int(-10000), Int(10000)}, false);
    Real sup_max(kPrec), sup_min(kPrec);
    bool first = true;
    for (const auto& col : pr.columns) {
      if (first || col.sup_displacement > sup_max) sup_max = col.sup_displacement;
      if (first || col.sup_displacement < sup_min) sup_min = col.sup_displacement;
      first = false;
    }
    Real ratio = sup_max / sup_min;
    if (g_calibrate)
      std::printf("  calibrate column_sup_max = %.15g  column_sup_ratio = %.15g\n",
                  sup_max.to_double(), ratio.to_double());
    else {
      if (!near(sup_max, kFrozenColumnSupMax)) out.fail("column sup max departs from frozen");
      if (!near(ratio, kFrozenColumnSupRatio)) out.fail("column sup ratio departs from frozen");
    }
  }

  double dt = seconds_since(t0);
  if (dt >= 120.0) out.fail("runtime exceeds 2 min");
  out.detail = "golden window sup frozen and stable; 101 columns share one bound (" +
               std::to_string(dt).substr(0, 5) + " s)";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    if (std::strcmp(argv[i], "--calibrate") == 0) g_calibrate = true;
  }

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "construction validity", criterion1},
      {2, "golden regression", criterion2},
      {3, "oracle equivalence", criterion3},
      {4, "boundedness witness", criterion4},
      {5, "unboundedness control", criterion5},
      {6, "Rauzy verification", criterion6},
      {7, "hyperplane uniqueness", criterion7},
      {8, "BD map", criterion8},
  };

  bool all_pass = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.failures = std::string("exception: ") + e.what();
    }
    double dt = seconds_since(t0);
    std::string tail = out.detail;
    if (!out.failures.empty()) tail += " -- " + out.failures;
    std::printf("criterion-%d %s (%.2f s) %s%s%s\n", c.id, out.pass ? "PASS" : "FAIL", dt,
                c.name, tail.empty() ? "" : ": ", tail.c_str());
    std::fflush(stdout);
    if (!out.pass) all_pass = false;
  }
  return all_pass ? 0 : 1;
}
