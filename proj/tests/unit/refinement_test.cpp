#include <gtest/gtest.h>

#include <random>
#include <set>

#include "coxvis/decomposition.hpp"
#include "coxvis/errors.hpp"
#include "coxvis/refinement.hpp"
#include "random_systems.hpp"
#include "reflection_oracle.hpp"

using namespace coxvis;

namespace {

Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

// Products of at most `radius` of the given words and their inverses, as
// matrix keys.
std::set<oracle::Representation::Key> word_ball(const oracle::Representation& rep, const std::vector<Word>& words,
                                                std::size_t radius) {
  std::vector<std::vector<double>> steps;
  for (const Word& w : words) {
    steps.push_back(rep.evaluate(w));
    steps.push_back(rep.evaluate(reversed(w)));
  }
  std::set<oracle::Representation::Key> seen{oracle::Representation::key(rep.identity())};
  std::vector<std::vector<double>> frontier{rep.identity()};
  for (std::size_t r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<std::vector<double>> next;
    for (const auto& m : frontier)
      for (const auto& s : steps) {
        auto p = rep.product(m, s);
        if (seen.insert(oracle::Representation::key(p)).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return seen;
}

// Every certificate checked in the reflection representation: for each tree
// vertex g·Λ(V) and each generator s claimed to fix it, g⁻¹sg is a product of
// at most `radius` generating words of V.
void expect_certificates_hold(const CoxeterSystem& sys, const AbstractSplitting& split, const RefinementOutcome& r) {
  const oracle::Representation rep(sys);
  for (const TreeVertexRecord& t : r.tree) {
    const auto v = std::find_if(split.vertices.begin(), split.vertices.end(),
                                [&](const auto& x) { return x.id == t.splitting_vertex; });
    ASSERT_NE(v, split.vertices.end());
    const auto ball = word_ball(rep, v->words, r.radius);
    const Word& g = t.coset_rep.word();
    for (GenIndex s : t.stabilizer.members()) {
      Word conj = reversed(g);
      conj.push_back(s);
      conj.insert(conj.end(), g.begin(), g.end());
      EXPECT_TRUE(ball.count(oracle::Representation::key(rep.evaluate(conj))))
          << sys.name(s) << " at " << format_word(sys, g) << " " << t.splitting_vertex;
    }
  }
  for (GenIndex s = 0; s < sys.rank(); ++s) {
    ASSERT_TRUE(r.generator_certificates[s]);
    EXPECT_TRUE(r.tree[*r.generator_certificates[s]].stabilizer.contains(s));
  }
}

struct SplitPath5 : ::testing::Test {
  CoxeterSystem sys = fixtures::load_system("path5.cox");
  WordEngine engine{sys};
  AbstractSplitting split = parse_splitting(sys, fixtures::read_data("path5.split"));
  VisualGoG expected = canonicalize(parse_gog(sys, fixtures::read_data("path4.gog")));
};

}  // namespace

TEST_F(SplitPath5, ParseAndEmit) {
  ASSERT_EQ(split.vertices.size(), 2u);
  EXPECT_EQ(split.vertices[0].words.back(), (Word{2, 4, 2}));
  EXPECT_EQ(emit_splitting(sys, split),
            "vertex A words s1, s2, s4, s3 s5 s3\nvertex B words s2, s3, s4\nedge C A B words s2, s4\n");
  const AbstractSplitting again = parse_splitting(sys, emit_splitting(sys, split));
  EXPECT_EQ(emit_splitting(sys, again), emit_splitting(sys, split));
  EXPECT_NO_THROW(check_splitting(split));
}

TEST_F(SplitPath5, ParseErrors) {
  EXPECT_THROW(parse_splitting(sys, "vertex A words s9\n"), ParseError);
  EXPECT_THROW(parse_splitting(sys, "vertex A words\n"), ParseError);
  EXPECT_THROW(parse_splitting(sys, "vertex A s1\n"), ParseError);
  EXPECT_THROW(parse_splitting(sys, "vertex A words s1, , s2\n"), ParseError);
  EXPECT_THROW(parse_splitting(sys, "edge C A words s1\n"), ParseError);
  try {
    parse_splitting(sys, "# c\nvertex A words s1\nfoo\n");
    ADD_FAILURE() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST_F(SplitPath5, StructureErrors) {
  EXPECT_THROW(check_splitting(AbstractSplitting{}), DomainError);
  AbstractSplitting dup = split;
  dup.vertices[1].id = "A";
  EXPECT_THROW(check_splitting(dup), DomainError);
  AbstractSplitting dangling = split;
  dangling.edges[0].to = "Z";
  EXPECT_THROW(check_splitting(dangling), DomainError);
  AbstractSplitting apart = split;
  apart.edges.clear();
  EXPECT_THROW(check_splitting(apart), DomainError);
  AbstractSplitting loop = split;
  loop.edges.push_back({"D", "B", "A", {{1}}});
  EXPECT_THROW(check_splitting(loop), DomainError);
}

TEST_F(SplitPath5, RefinesToVisualPath) {
  for (std::size_t radius : {2u, 4u}) {
    const RefinementOutcome r = refine_to_visual(engine, split, radius);
    ASSERT_EQ(r.status, RefinementStatus::Refined) << r.reason;
    ASSERT_TRUE(r.decomposition);
    EXPECT_TRUE(validate_visual(sys, *r.decomposition).valid);
    EXPECT_EQ(describe_path(sys, *r.decomposition), "{s1,s2,s4} *{s2,s4} {s2,s3,s4} *{s2,s4} {s2,s4,s5}");
    // s5 is only fixed away from the identity transversal.
    const TreeVertexRecord& t = r.tree[*r.generator_certificates[4]];
    EXPECT_EQ(format_word(sys, t.coset_rep.word()), "s3");
    EXPECT_EQ(t.splitting_vertex, "A");
    expect_certificates_hold(sys, split, r);
  }
}

TEST_F(SplitPath5, RadiusZeroIsInconclusive) {
  const RefinementOutcome r = refine_to_visual(engine, split, 0);
  EXPECT_EQ(r.status, RefinementStatus::Inconclusive);
  EXPECT_FALSE(r.decomposition);
  EXPECT_FALSE(r.reason.empty());
}

TEST_F(SplitPath5, DunwoodyTreeWithConjugatedFactor) {
  AbstractSplitting dun = splitting_from_visual(sys, expected);
  auto& last = dun.vertices.back();
  ASSERT_EQ(last.words, (std::vector<Word>{{3}, {4}}));
  last.words = {{3}, {2, 4, 2}};
  check_splitting(dun);
  const RefinementOutcome r = refine_to_visual(engine, dun, 3);
  ASSERT_EQ(r.status, RefinementStatus::Refined) << r.reason;
  EXPECT_EQ(*r.decomposition, expected);
  expect_certificates_hold(sys, dun, r);
}

TEST(Refinement, FreeProductExample) {
  const CoxeterSystem sys = fixtures::load_system("free4.cox");
  const WordEngine engine(sys);
  const AbstractSplitting split = parse_splitting(sys, fixtures::read_data("free4.split"));
  const VisualGoG expected = canonicalize(split_over(sys, {}));
  for (std::size_t radius : {6u, 8u}) {
    const RefinementOutcome r = refine_to_visual(engine, split, radius);
    ASSERT_EQ(r.status, RefinementStatus::Refined) << r.reason;
    GeneratorSubset seen;
    for (const auto& v : r.decomposition->vertices) {
      EXPECT_EQ(v.label.size(), 1u);
      seen |= v.label;
    }
    EXPECT_EQ(seen, sys.all());
    for (const auto& e : r.decomposition->edges) EXPECT_TRUE(e.label.empty());
    EXPECT_TRUE(validate_visual(sys, *r.decomposition).valid);
    expect_certificates_hold(sys, split, r);
  }
  EXPECT_EQ(refine_to_visual(engine, split, 0).status, RefinementStatus::Inconclusive);
}

// A visual splitting written as an abstract one refines to itself.
TEST(Refinement, VisualSplittingsAreFixedPoints) {
  std::mt19937_64 rng(97);
  for (int i = 0; i < 60; ++i) {
    const CoxeterSystem sys = fixtures::random_system(rng, 3 + i % 4, {2, 3, kInfiniteOrder});
    const VisualGoG g = visual_dunwoody(sys);
    const WordEngine engine(sys);
    const AbstractSplitting split = splitting_from_visual(sys, g);
    const RefinementOutcome r = refine_to_visual(engine, split, 1);
    ASSERT_EQ(r.status, RefinementStatus::Refined) << emit_system(sys) << r.reason;
    EXPECT_EQ(*r.decomposition, canonicalize(g)) << emit_system(sys);
    expect_certificates_hold(sys, split, r);
  }
}
