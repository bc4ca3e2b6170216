#include <gtest/gtest.h>

#include <numeric>

#include "homascend/extended.hpp"
#include "oracles.hpp"

using namespace homascend;

namespace {

const Example37& ex37() {
  static const Example37 ex = example37();
  return ex;
}

FiniteExtension frobenius_gf2() {
  Field f2 = Field::prime(2);
  Algebra r = LocalAlgebra::from_presentation(f2, {"y"}, {}, 2);
  Algebra s = LocalAlgebra::from_presentation(f2, {"x"}, {}, 4);
  Vec x = *s->named_element("x");
  return FiniteExtension::make(AlgebraMap::from_images(r, s, {{*r->named_element("y"), s->mul(x, x)}}));
}

Mat random_permutation(const Field& f, std::size_t n, oracle::Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(p[i], i) = f.one();
  return m;
}

std::multiset<std::vector<std::size_t>> class_signature(const KrsClasses& k) {
  std::multiset<std::vector<std::size_t>> out;
  for (const auto& c : k.classes) {
    auto fp = fingerprint(c.rep);
    fp.push_back(c.count);
    out.insert(fp);
  }
  return out;
}

}  // namespace

TEST(Example37, ExtendedExactlyForRationalSlopes) {
  const Example37& ex = ex37();
  EXPECT_EQ(ex.e.rank, 2u);
  struct Row {
    Elem c;
    bool extended;
  };
  std::vector<Row> rows{{ex.gaussian(0, 0), true},
                        {ex.gaussian(1, 0), true},
                        {ex.gaussian(-2, 0), true},
                        {ex.gaussian(0, 1), false},
                        {ex.gaussian(1, 1), false}};
  for (const auto& row : rows) {
    SCOPED_TRACE(ex.ext.to_string(row.c));
    FModule n = example37_module(ex, row.c);
    ExtendedResult r = is_extended(ex.e, n);
    EXPECT_EQ(r.extended(), row.extended);
    EXPECT_TRUE(r.certified);
    EXPECT_EQ(matrix_equiv_1x1(ex, row.c).equivalent, row.extended);
    if (r.witness) EXPECT_NO_THROW(verify_witness(ex.e, n, *r.witness));
  }
}

TEST(Example37, GridOracleOnTwoSlopes) {
  const Example37& ex = ex37();
  const std::vector<long> grid{-2, -1, 0, 1, 2};
  EXPECT_TRUE(oracle::ex37_grid_search(ex, example37_module(ex, ex.gaussian(-2, 0)), grid).has_value());
  EXPECT_FALSE(oracle::ex37_grid_search(ex, example37_module(ex, ex.gaussian(0, 1)), grid).has_value());
}

TEST(Example37, MatrixEquivalenceWitness) {
  const Example37& ex = ex37();
  MatrixEquiv m = matrix_equiv_1x1(ex, ex.gaussian(1, 0));
  ASSERT_TRUE(m.equivalent);
  ASSERT_TRUE(m.u && m.r && m.s && m.t);
  const Algebra& s = ex.s;
  // r, s, t are scalars of the base field
  Vec inner = s->add(s->from_scalar(*m.r), s->add(s->scale(*s->named_element("X"), *m.s),
                                                  s->scale(*s->named_element("Y"), *m.t)));
  Vec lhs = s->mul(*m.u, inner);
  Vec rhs = s->add(*s->named_element("X"), s->mul(ex.scalar(ex.gaussian(1, 0)), *s->named_element("Y")));
  EXPECT_TRUE(vec_equal(s->field(), lhs, rhs));
}

TEST(Separability, GaussianIdempotent) {
  const Example37& ex = ex37();
  auto sep = separability_idempotent(ex.e);
  ASSERT_TRUE(sep.has_value());
  EXPECT_TRUE(sep->unique);
  TensorSquare t(ex.e);
  const Field& k = ex.base;
  EXPECT_TRUE(vec_equal(k, t.mul(sep->e, sep->e), sep->e));
  EXPECT_EQ(t.mu() * Mat::column(k, sep->e), Mat::column(k, ex.s->unit()));
  EXPECT_TRUE((t.commutator(ex.scalar(ex.gaussian(0, 1))) * Mat::column(k, sep->e)).is_zero());
}

TEST(Separability, SummandOfExtended) {
  const Example37& ex = ex37();
  FModule n = example37_module(ex, ex.gaussian(0, 1));
  SummandWitness w = summand_of_extended(ex.e, n);
  EXPECT_EQ(w.pi * w.j, Mat::identity(ex.base, n.dim()));
  EXPECT_TRUE(is_homomorphism(n, w.tensor.module, w.j));
  EXPECT_TRUE(is_homomorphism(w.tensor.module, n, w.pi));
}

TEST(Separability, FrobeniusHasNoIdempotent) {
  FiniteExtension e = frobenius_gf2();
  EXPECT_FALSE(separability_idempotent(e).has_value());
  EXPECT_THROW(summand_of_extended(e, FModule::residue(e.target())), std::invalid_argument);
}

TEST(Extended, RestrictionOfBaseChangeIsPower) {
  oracle::Rng rng(17);
  for (const FiniteExtension& e : {ex37().e, frobenius_gf2()})
    for (int t = 0; t < 3; ++t) {
      FModule m = oracle::random_module(e.source(), rng, 3);
      FModule sm = base_change(e.phi, m).module;
      EXPECT_TRUE(is_isomorphic(restrict(e.phi, sm), power(m, e.rank)).isomorphic);
      EXPECT_TRUE(is_extended(e, sm).extended());
    }
}

TEST(Extended, TwoOfThreeRecoversErased) {
  const FiniteExtension& e = ex37().e;
  oracle::Rng rng(23);
  for (int t = 0; t < 3; ++t) {
    FModule m1 = oracle::random_module(e.source(), rng, 3), m2 = oracle::random_module(e.source(), rng, 3);
    FModule n1 = base_change(e.phi, m1).module, n2 = base_change(e.phi, m2).module;
    auto w1 = is_extended(e, n1).witness, w2 = is_extended(e, n2).witness;
    auto w12 = is_extended(e, direct_sum(n1, n2)).witness;
    ASSERT_TRUE(w1 && w2 && w12);
    TwoOfThree a = two_of_three_sum(e, n1, n2, std::nullopt, w2, w12);
    EXPECT_EQ(a.derived, 0);
    EXPECT_TRUE(is_isomorphic(a.witness.m, m1).isomorphic);
    TwoOfThree b = two_of_three_sum(e, n1, n2, w1, std::nullopt, w12);
    EXPECT_EQ(b.derived, 1);
    EXPECT_TRUE(is_isomorphic(b.witness.m, m2).isomorphic);
    TwoOfThree c = two_of_three_sum(e, n1, n2, w1, w2, std::nullopt);
    EXPECT_EQ(c.derived, 2);
    EXPECT_TRUE(is_isomorphic(c.witness.m, direct_sum(m1, m2)).isomorphic);
  }
}

TEST(Extended, SumWithNonExtendedIsNotExtended) {
  const Example37& ex = ex37();
  FModule n = direct_sum(FModule::free(ex.s, 1), example37_module(ex, ex.gaussian(0, 1)));
  EXPECT_FALSE(is_extended(ex.e, n).extended());
}

TEST(Krs, ClassesInvariantUnderPermutation) {
  const Example37& ex = ex37();
  oracle::Rng rng(29);
  for (int t = 0; t < 2; ++t) {
    FModule m = direct_sum(oracle::random_module(ex.r, rng, 3), oracle::random_module(ex.r, rng, 3));
    auto sig = class_signature(krs_classes(m));
    for (int p = 0; p < 3; ++p)
      EXPECT_EQ(class_signature(krs_classes(change_basis(m, random_permutation(ex.base, m.dim(), rng)))), sig);
  }
}

TEST(Krs, SummandRelation) {
  const Example37& ex = ex37();
  FModule k = FModule::residue(ex.r), a = FModule::free(ex.r, 1);
  EXPECT_TRUE(is_summand(k, direct_sum(a, k)));
  EXPECT_FALSE(is_summand(power(k, 2), direct_sum(a, k)));
}

TEST(Guralnick, LevelsDetectSummands) {
  Field q = Field::rationals();
  Algebra r = LocalAlgebra::from_presentation(q, {"x"}, {}, 3);
  FModule k = FModule::residue(r), a = FModule::free(r, 1);
  LevelReport yes = guralnick_levels(k, direct_sum(a, k), 3);
  EXPECT_TRUE(yes.divides);
  for (bool l : yes.levels) EXPECT_TRUE(l);
  LevelReport no = guralnick_levels(k, a, 3);
  EXPECT_FALSE(no.divides);
  EXPECT_TRUE(no.levels.front());  // A/mA = k
  EXPECT_FALSE(no.levels.back());
}

TEST(Prop32Finite, KernelsAndCokernelsDescend) {
  const FiniteExtension& e = ex37().e;
  oracle::Rng rng(31);
  for (int t = 0; t < 3; ++t) {
    FModule m = oracle::random_module(e.source(), rng, 3), m2 = oracle::random_module(e.source(), rng, 3);
    HomSpace h = hom_space(m, m2);
    if (h.dim() == 0) continue;
    std::vector<Elem> c;
    for (std::size_t i = 0; i < h.dim(); ++i) c.push_back(oracle::small(e.source()->field(), rng));
    Prop32Data d;
    d.m = m;
    d.m1 = m;
    d.m2 = m2;
    d.f = h.combine(c);
    Prop32Report k = prop32_finite(e, 2, d);
    EXPECT_TRUE(k.extended);
    ASSERT_TRUE(k.third_r.has_value());
    EXPECT_TRUE(is_isomorphic(base_change(e.phi, *k.third_r).module, k.third_s).isomorphic);

    d.m1 = m;
    d.m = m2;
    Prop32Report ck = prop32_finite(e, 3, d);
    EXPECT_TRUE(ck.extended);
  }
}

TEST(Prop32Finite, ExtensionClassesOfResidues) {
  const FiniteExtension& e = ex37().e;
  Prop32Data d;
  d.m1 = FModule::residue(e.source());
  d.m2 = d.m1;
  const std::size_t n = prop32_ext_dim(e, d.m1, d.m2);
  ASSERT_EQ(n, 4u);
  for (std::size_t j = 0; j < n; ++j) {
    d.xi.assign(n, e.source()->field().zero());
    d.xi[j] = e.source()->field().one();
    Prop32Report r = prop32_finite(e, 1, d);
    EXPECT_EQ(r.ext_r_dim, 2u);
    EXPECT_EQ(r.ext_s_dim, 4u);
    EXPECT_TRUE(r.beta_iso);
    EXPECT_TRUE(r.extended);
    EXPECT_EQ(r.third_s.dim(), 4u);
  }
}
