#include <gtest/gtest.h>

#include "homascend/ascent.hpp"
#include "oracles.hpp"

using namespace homascend;

namespace {

Algebra truncated_x(const Field& f, int n) { return LocalAlgebra::from_presentation(f, {"x"}, {}, n); }

std::int64_t fact_int(const Facts& f, const std::string& k) { return std::get<std::int64_t>(*f.get(k)); }
std::string fact_str(const Facts& f, const std::string& k) { return std::get<std::string>(*f.get(k)); }
std::vector<std::int64_t> fact_vec(const Facts& f, const std::string& k) {
  return std::get<std::vector<std::int64_t>>(*f.get(k));
}

Mat random_vectors(const Field& f, std::size_t dim, std::size_t count, oracle::Rng& rng) {
  Mat m(f, dim, count);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < count; ++j) m.at(i, j) = oracle::small(f, rng, 1);
  return m;
}

}  // namespace

TEST(Ascent, QuarticOntoQuadraticFreeModule) {
  Field q = Field::rationals();
  AlgebraMap pi = AlgebraMap::by_names(truncated_x(q, 4), truncated_x(q, 2));
  AscentReport r = ascent_conditions(pi, FModule::free(pi.source(), 1), 3);
  ASSERT_TRUE(r.compatible.has_value());
  EXPECT_FALSE(*r.compatible);
  EXPECT_FALSE(r.iota_bijective);
  EXPECT_FALSE(r.epsilon_bijective);

  FModule quot = FModule::cyclic(pi.source(), {pi.source()->mul(*pi.source()->named_element("x"),
                                                                *pi.source()->named_element("x"))});
  AscentReport t = compatibility_report(pi, quot, 3);
  EXPECT_TRUE(*t.compatible);
  EXPECT_TRUE(t.iota_bijective);
  EXPECT_TRUE(t.epsilon_bijective);
  ASSERT_TRUE(t.structure.has_value());
  EXPECT_TRUE(is_isomorphic(restrict(pi, *t.structure), quot).isomorphic);
}

// For a surjection R -> R/I a compatible structure exists iff I M = 0.
TEST(Ascent, SurjectionConditionsMatchAnnihilatorOracle) {
  Field f3 = Field::prime(3), q = Field::rationals();
  std::vector<AlgebraMap> maps{
      AlgebraMap::by_names(truncated_x(f3, 4), truncated_x(f3, 2)),
      AlgebraMap::by_names(LocalAlgebra::from_presentation(q, {"X", "Y"}, {}, 3),
                           LocalAlgebra::from_presentation(q, {"X", "Y"}, {}, 2))};
  oracle::Rng rng(21);
  for (const auto& pi : maps)
    for (int t = 0; t < 8; ++t) {
      FModule m = oracle::random_module(pi.source(), rng, 5);
      const bool expect = oracle::killed_by_kernel(pi, m);
      AscentReport r = compatibility_report(pi, m, 2);
      EXPECT_EQ(*r.compatible, expect);
      EXPECT_EQ(r.iota_bijective, expect);
      EXPECT_EQ(r.epsilon_bijective, expect);
    }
}

TEST(Ascent, NonDaggerRejected) {
  Field q = Field::rationals();
  Field qi = Field::extension(q, {q.one(), q.zero(), q.one()}, "i");
  auto [s, phi] = algebra_tensor_extension(qi, truncated_x(q, 2));
  EXPECT_THROW(compatibility_report(phi, FModule::residue(phi.source()), 2), InvariantError);
  EXPECT_THROW(require_dagger(phi), InvariantError);
}

TEST(Ascent, VmaxMatchesSaturationOracle) {
  Field q = Field::rationals();
  AlgebraMap pi = AlgebraMap::by_names(LocalAlgebra::from_presentation(q, {"X", "Y"}, {}, 3),
                                       LocalAlgebra::from_presentation(q, {"X", "Y"}, {}, 2));
  oracle::Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    FModule n = oracle::random_module(pi.target(), rng, 6);
    FModule rn = restrict(pi, n);
    Mat m = rn.generated(random_vectors(q, n.dim(), 1 + rng() % 2, rng));
    VmaxReport r = vmax(pi, n, m);
    EXPECT_TRUE(r.agree);
    EXPECT_TRUE(subspace_equal(r.v(), oracle::saturation(pi, n, m)));
    EXPECT_TRUE(subspace_contains(m, r.v()));
  }
}

TEST(Ascent, RetractSearch) {
  Field f2 = Field::prime(2);
  Algebra k = LocalAlgebra::from_presentation(f2, {}, {}, 1);
  Algebra d = truncated_x(f2, 2);
  AlgebraMap incl(k, d, Mat::column(f2, d->unit()));
  RetractResult r = ring_retract(incl);
  EXPECT_EQ(r.verdict, Verdict::Found);
  ASSERT_TRUE(r.psi.has_value());
  EXPECT_EQ(compose(*r.psi, incl).matrix(), Mat::identity(f2, 1));

  FModule structure = structure_from_retract(incl, *r.psi);
  AlgebraMap back = retract_from_structure(incl, structure);
  EXPECT_EQ(back.matrix(), r.psi->matrix());

  AlgebraMap pi = AlgebraMap::by_names(truncated_x(f2, 3), d);
  EXPECT_EQ(ring_retract(pi).verdict, Verdict::None);
}

TEST(Ascent, CompatibleStructureSearchOverFiniteField) {
  Field f2 = Field::prime(2);
  Algebra r = LocalAlgebra::from_presentation(f2, {"y"}, {}, 2);
  Algebra s = truncated_x(f2, 4);
  AlgebraMap phi = AlgebraMap::from_images(r, s, {{*r->named_element("y"), s->mul(*s->named_element("x"), *s->named_element("x"))}});
  // the residue field is an S-module through S -> k
  CompatibleStructure c = find_compatible_structure(phi, FModule::residue(r));
  ASSERT_TRUE(c.exists.has_value());
  EXPECT_TRUE(*c.exists);
}

TEST(Ascent, Prop110OnIdentity) {
  Algebra a = truncated_x(Field::rationals(), 3);
  Prop110Report r = prop110_check(AlgebraMap::identity(a));
  EXPECT_TRUE(r.flat);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_TRUE(r.bijective);
  EXPECT_TRUE(r.retraction.has_value());
  EXPECT_TRUE(thm19_check(AlgebraMap::identity(a), FModule::free(a, 1)));
}

TEST(Ascent, HomFromSModulesSeesOnlyV) {
  Field q = Field::rationals();
  AlgebraMap pi = AlgebraMap::by_names(truncated_x(q, 4), truncated_x(q, 2));
  FModule n = FModule::free(pi.target(), 2);
  oracle::Rng rng(2);
  for (int t = 0; t < 4; ++t) {
    Mat m = restrict(pi, n).generated(random_vectors(q, n.dim(), 1, rng));
    Prop16Report r = prop16_check(pi, FModule::residue(pi.target()), n, m);
    EXPECT_TRUE(r.equal);
  }
}

TEST(Gallery, FieldExtension) {
  Facts f = gallery_2_8(5);
  EXPECT_TRUE(f.get_bool("flat"));
  EXPECT_FALSE(f.get_bool("residue-iso"));
  auto ext = fact_vec(f, "ext-dims");
  ASSERT_EQ(ext.size(), 6u);
  for (std::size_t i = 1; i < 6; ++i) EXPECT_EQ(ext[i], 0);
  EXPECT_FALSE(f.get_bool("compatible-structure"));
  EXPECT_EQ(fact_str(f, "retract"), "none");
}

TEST(Gallery, TruncatedFrobenius) {
  Facts f = gallery_2_9(2, 2, 5);
  EXPECT_EQ(fact_int(f, "free-rank"), 2);
  auto ext = fact_vec(f, "ext-dims");
  for (std::size_t i = 1; i < ext.size(); ++i) EXPECT_EQ(ext[i], 0);
  EXPECT_EQ(fact_str(f, "retract"), "none");
  EXPECT_EQ(fact_str(f, "retract-method"), "exhaustive search");
}

TEST(Gallery, ResidueOfTruncatedLine) {
  for (int n = 2; n <= 4; ++n) {
    Facts f = gallery_2_11(n, 5);
    EXPECT_EQ(fact_vec(f, "ext-dims"), (std::vector<std::int64_t>{1, 0, 0, 0, 0, 0})) << "n = " << n;
    EXPECT_EQ(fact_str(f, "retract"), "none");
  }
}
