#include <gtest/gtest.h>

#include "homascend/pidmodel.hpp"
#include "oracles.hpp"

using namespace homascend;

namespace {

PIDModule tors(std::vector<int> e) { return PIDModule::make(0, std::move(e)); }

}  // namespace

TEST(PidModule, NormalFormAndPrinting) {
  PIDModule m = PIDModule::make(1, {3, 1, 2});
  EXPECT_EQ(m.exponents, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(m.to_string(), "R + R/(x) + R/(x^2) + R/(x^3)");
  EXPECT_EQ(PIDModule::make(0, {}).to_string(), "0");
  EXPECT_EQ(PIDModule::make(2, {}, Side::OverS).to_string(), "S^2");
  EXPECT_ANY_THROW(PIDModule::make(0, {0}));
  EXPECT_EQ(direct_sum(tors({1}), PIDModule::make(1, {2})), PIDModule::make(1, {1, 2}));
}

TEST(PidModule, ClassifyPresentation) {
  Field q = Field::rationals();
  PolyRing r(q);
  PIDPresentation p{2, PolyMat(q, 2, 2)};
  p.relations.at(0, 0) = r.x();
  p.relations.at(0, 1) = r.monomial(2, q.one());
  p.relations.at(1, 0) = r.monomial(2, q.one());
  p.relations.at(1, 1) = r.monomial(3, q.one());
  EXPECT_EQ(classify(p), PIDModule::make(1, {1}));

  // 1 + x is a unit of the local ring
  PIDPresentation u{1, PolyMat(q, 1, 1)};
  u.relations.at(0, 0) = r.add(r.one(), r.x());
  EXPECT_TRUE(classify(u).is_zero());
}

TEST(PidExt, ResidueIntoRing) {
  PIDModule k = tors({1}), r = PIDModule::make(1, {});
  EXPECT_TRUE(ext_pid(k, r, 0).module.is_zero());
  EXPECT_EQ(ext_pid(k, r, 1).module, tors({1}));
  EXPECT_TRUE(ext_pid(k, r, 2).module.is_zero());
  EXPECT_FALSE(ext_pid(k, r, 2).note.empty());
}

TEST(PidExt, CyclicPairs) {
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      EXPECT_EQ(ext_pid(tors({a}), tors({b}), 0).module, tors({std::min(a, b)}));
      EXPECT_EQ(ext_pid(tors({a}), tors({b}), 1).module, tors({std::min(a, b)}));
    }
  EXPECT_EQ(ext_pid(PIDModule::make(1, {}), PIDModule::make(1, {}), 0).module, PIDModule::make(1, {}));
  EXPECT_TRUE(ext_pid(PIDModule::make(1, {}), tors({2}), 1).module.is_zero());
}

// Brute force over GF(2): every block extension of k[x]/x^b by k[x]/x^a,
// grouped by the order of its class.
TEST(PidProp32, MiddlesMatchNilpotentCensus) {
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; a + b <= 6; ++b) {
      oracle::ExtensionCensus census = oracle::nilpotent_extensions(a, b);
      for (std::size_t c = 0; c <= census.length; ++c) {
        SCOPED_TRACE("a=" + std::to_string(a) + " b=" + std::to_string(b) + " c=" + std::to_string(c));
        Prop32PidReport r = prop32_case1_pid(tors({a}), tors({b}), static_cast<int>(c));
        EXPECT_EQ(r.ext1_length, census.length);
        ASSERT_EQ(census.middles[c].size(), 1u);
        EXPECT_EQ(r.middle_r.exponents, census.middles[c][0]);
        EXPECT_EQ(r.middle_r.free_rank, 0u);
        EXPECT_TRUE(r.extended);
      }
    }
}

TEST(PidProp32, FreeSubmodule) {
  Prop32PidReport r = prop32_case1_pid(PIDModule::make(1, {}), tors({1}), 1);
  EXPECT_EQ(r.middle_r, PIDModule::make(1, {1}));
  Prop32PidReport g = prop32_case1_pid(PIDModule::make(1, {}), tors({2}), 0);
  EXPECT_EQ(g.middle_r, PIDModule::make(1, {}));
}

TEST(PidAscent, CompletionDecisionsAgree) {
  oracle::Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> e;
    for (std::size_t j = 0, n = rng() % 4; j < n; ++j) e.push_back(1 + static_cast<int>(rng() % 5));
    PIDModule m = PIDModule::make(rng() % 3, e);
    PidAscentReport a = completion_ascent(m);
    EXPECT_EQ(a.compatible, m.is_torsion());
    EXPECT_EQ(a.compatible, thm113_decision(m).decision);
    EXPECT_EQ(a.ext_provenance, "asserted-by-theorem");
    EXPECT_EQ(a.base_changed, base_change_pid(m));
  }
}

TEST(PidAscent, ExtendRoundTrip) {
  PIDModule n = PIDModule::make(2, {1, 3}, Side::OverS);
  PIDModule m = extend_pid(n);
  EXPECT_EQ(m.side, Side::OverR);
  EXPECT_EQ(base_change_pid(m), n);
  EXPECT_THROW(extend_pid(PIDModule::make(1, {})), std::invalid_argument);
}

TEST(PidVmax, FreeLineInCompletion) {
  Field q = Field::rationals();
  PolyRing r(q);
  VmaxPidReport v = vmax_pid(q, PIDModule::make(1, {}, Side::OverS), {PidElement{{r.one()}, {}}});
  EXPECT_TRUE(v.v.is_zero());
  EXPECT_EQ(v.k_dim, 0u);
}

TEST(PidVmax, MixedModuleKeepsTorsion) {
  Field q = Field::rationals();
  PolyRing r(q);
  PIDModule n = PIDModule::make(1, {2}, Side::OverS);
  VmaxPidReport v = vmax_pid(q, n, {PidElement{{r.one()}, {r.zero()}}, PidElement{{r.zero()}, {r.one()}}});
  EXPECT_EQ(v.v, PIDModule::make(0, {2}, Side::OverS));
  EXPECT_EQ(v.k_dim, 2u);
}

TEST(PidGallery, ResidueExtIntoRing) {
  Facts f = gallery_2_10();
  EXPECT_EQ(std::get<std::string>(*f.get("ext0")), "0");
  EXPECT_EQ(std::get<std::string>(*f.get("ext1")), "R/(x)");
  EXPECT_EQ(std::get<std::string>(*f.get("ext2")), "0");
}
