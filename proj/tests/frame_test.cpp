#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "oracles.hpp"

namespace cik {
namespace {

using testing::Rng;
using Kind = BasisViolation::Kind;

struct Uv {
  std::shared_ptr<const WorldTable> t = WorldTable::make({"u", "v"});
  WorldSet s(const char* text) const { return t->parse_set(text); }
};

struct Xyz {
  std::shared_ptr<const WorldTable> t = WorldTable::make({"x", "y", "z"});
  WorldSet s(const char* text) const { return t->parse_set(text); }
  EvidenceBasis chain() const { return EvidenceBasis::make({t->full_set(), s("y,z"), s("z")}, t->full_set()); }
};

TEST(WorldSet, AlgebraAndFormatting) {
  Xyz w;
  const WorldSet a = w.s("x,y"), b = w.s("y,z");
  EXPECT_EQ(a | b, w.t->full_set());
  EXPECT_EQ(a & b, w.s("y"));
  EXPECT_EQ(a - b, w.s("x"));
  EXPECT_EQ(a.complement(), w.s("z"));
  EXPECT_EQ(w.t->format(a), "{x, y}");
  EXPECT_EQ(w.t->parse_set("{}"), w.t->empty_set());
  EXPECT_EQ(w.t->parse_set(" z , x "), w.s("x,z"));
}

TEST(WorldSet, MixingUniversesIsRejected) {
  Xyz a, b;
  EXPECT_THROW((void)(a.s("x") | b.s("x")), DomainError);
}

TEST(WorldTable, RejectsBadNames) {
  EXPECT_THROW(WorldTable::make({}), InputError);
  EXPECT_THROW(WorldTable::make({"x", "x"}), InputError);
  EXPECT_THROW(WorldTable::make({""}), InputError);
  Xyz w;
  EXPECT_THROW(w.t->parse_set("x,q"), InputError);
}

TEST(ValidateBasis, ChainIsValid) {
  Uv w;
  std::vector<WorldSet> e{w.s("u"), w.s("u,v")};
  EXPECT_TRUE(validate_basis(e, w.t->full_set()).valid());
}

TEST(ValidateBasis, UncoveredWorld) {
  Uv w;
  std::vector<WorldSet> e{w.s("u")};
  auto r = validate_basis(e, w.t->full_set());
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, Kind::Uncovered);
  EXPECT_EQ(r.violations[0].world, w.t->index_of("v"));
}

TEST(ValidateBasis, DirectednessFailureNamesWorldAndPair) {
  Xyz w;
  std::vector<WorldSet> e{w.s("x,y"), w.s("y,z"), w.s("x,z")};
  auto r = validate_basis(e, w.t->full_set());
  ASSERT_FALSE(r.valid());
  bool found = false;
  for (const auto& v : r.violations) {
    EXPECT_EQ(v.kind, Kind::NotDirected);
    if (v.world == w.t->index_of("x")) {
      const std::set<std::size_t> pair{v.first, v.second};
      EXPECT_EQ(pair, (std::set<std::size_t>{0, 2}));
      found = true;
      EXPECT_NE(describe(v, e, *w.t).find("x"), std::string::npos);
    }
  }
  EXPECT_TRUE(found);
  // One failing pair per world.
  EXPECT_EQ(r.violations.size(), 3u);
}

TEST(ValidateBasis, StructuralViolations) {
  Xyz w;
  std::vector<WorldSet> e{w.t->full_set(), w.t->empty_set(), w.t->full_set()};
  auto r = validate_basis(e, w.t->full_set());
  std::set<Kind> kinds;
  for (const auto& v : r.violations) kinds.insert(v.kind);
  EXPECT_TRUE(kinds.count(Kind::EmptyElement));
  EXPECT_TRUE(kinds.count(Kind::DuplicateElement));
  EXPECT_THROW(EvidenceBasis::make(e, w.t->full_set()), DomainError);
}

// Brute force over all triples, for every family on three worlds.
TEST(ValidateBasis, AgreesWithTripleScan) {
  Xyz w;
  const auto u = w.t->universe();
  for (std::uint64_t pick = 1; pick < 128; ++pick) {
    std::vector<WorldSet> fam;
    for (std::uint64_t m = 1; m < 8; ++m) {
      if ((pick >> (m - 1)) & 1U) fam.push_back(WorldSet::from_bits(u, m));
    }
    bool ok = true;
    for (std::size_t x = 0; x < 3; ++x) {
      bool covered = false;
      for (const auto& a : fam) {
        covered = covered || a.contains(x);
        for (const auto& b : fam) {
          if (!a.contains(x) || !b.contains(x)) continue;
          bool below = false;
          for (const auto& c : fam) below = below || (c.contains(x) && c.subset_of(a & b));
          ok = ok && below;
        }
      }
      ok = ok && covered;
    }
    EXPECT_EQ(validate_basis(fam, w.t->full_set()).valid(), ok) << pick;
  }
}

TEST(Topology, Sierpinski) {
  Uv w;
  auto t = generate_topology(EvidenceBasis::make({w.s("u"), w.s("u,v")}, w.t->full_set()));
  std::vector<WorldSet> expect{w.t->empty_set(), w.s("u"), w.s("u,v")};
  EXPECT_EQ(std::vector<WorldSet>(t.opens().begin(), t.opens().end()), expect);
  EXPECT_EQ(open_hull(t, w.s("v")), w.s("u,v"));
  EXPECT_EQ(open_hull(t, w.t->empty_set()), w.t->empty_set());
}

TEST(Topology, Indiscrete) {
  Uv w;
  auto t = generate_topology(EvidenceBasis::make({w.t->full_set()}, w.t->full_set()));
  EXPECT_EQ(t.opens().size(), 2u);
}

TEST(Topology, ChainOpensAndHull) {
  Xyz w;
  auto t = generate_topology(w.chain());
  std::vector<WorldSet> expect{w.t->empty_set(), w.s("z"), w.s("y,z"), w.t->full_set()};
  EXPECT_EQ(std::vector<WorldSet>(t.opens().begin(), t.opens().end()), expect);
  EXPECT_EQ(open_hull(t, w.s("y")), w.s("y,z"));
}

TEST(Topology, RandomBasesMatchUnionClosureAndAreTopologies) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto t = testing::world_table(testing::uniform(rng, 1, 6));
    auto basis = testing::random_basis(rng, *t);
    auto topo = generate_topology(basis);
    std::set<WorldSet::Bits> got;
    for (const auto& o : topo.opens()) got.insert(o.bits());
    const auto expect = testing::oracle::union_closure(testing::oracle::masks(basis.elements()), t->size());
    EXPECT_EQ(got, std::set<WorldSet::Bits>(expect.begin(), expect.end()));
    EXPECT_TRUE(got.count(0));
    EXPECT_TRUE(got.count(t->full_set().bits()));
    for (auto a : got) {
      for (auto b : got) {
        EXPECT_TRUE(got.count(a | b));
        EXPECT_TRUE(got.count(a & b));
      }
    }
    // Idempotent under re-closure: the opens, used as a basis, give themselves back.
    std::vector<WorldSet> nonempty;
    for (const auto& o : topo.opens()) {
      if (!o.empty()) nonempty.push_back(o);
    }
    auto again = generate_topology(EvidenceBasis::make(nonempty, t->full_set()));
    EXPECT_TRUE(std::equal(again.opens().begin(), again.opens().end(), topo.opens().begin(), topo.opens().end()));
    // Hull is the least open superset.
    for (const auto& s : testing::all_subsets(*t)) {
      const WorldSet h = open_hull(topo, s);
      EXPECT_TRUE(topo.is_open(h));
      EXPECT_TRUE(s.subset_of(h));
      for (const auto& o : topo.opens()) {
        if (s.subset_of(o)) EXPECT_TRUE(h.subset_of(o));
      }
    }
  }
}

TEST(Evidence, AtWorld) {
  Xyz w;
  auto b = w.chain();
  EXPECT_EQ(evidence_at(b, 2), (std::vector<WorldSet>{w.t->full_set(), w.s("y,z"), w.s("z")}));
  EXPECT_EQ(minimal_evidence_at(b, 2), std::vector<WorldSet>{w.s("z")});
  EXPECT_EQ(evidence_at(b, 0), std::vector<WorldSet>{w.t->full_set()});
  EXPECT_EQ(minimal_evidence_at(b, 0), std::vector<WorldSet>{w.t->full_set()});
  Uv s;
  auto sb = EvidenceBasis::make({s.s("u"), s.s("u,v")}, s.t->full_set());
  EXPECT_EQ(minimal_evidence_at(sb, 0), std::vector<WorldSet>{s.s("u")});
  EXPECT_THROW(evidence_at(b, 7), InputError);
}

TEST(Evidence, MinimalIsSingletonOnRandomBases) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto t = testing::world_table(testing::uniform(rng, 1, 6));
    auto b = testing::random_basis(rng, *t);
    for (std::size_t x = 0; x < t->size(); ++x) {
      auto m = minimal_evidence_at(b, x);
      ASSERT_EQ(m.size(), 1u);
      for (const auto& e : evidence_at(b, x)) EXPECT_TRUE(m[0].subset_of(e));
    }
  }
}

TEST(Subspace, Examples) {
  Xyz w;
  auto b = w.chain();
  auto sub = subspace_basis(b, w.s("y,z"));
  EXPECT_EQ(std::vector<WorldSet>(sub.elements().begin(), sub.elements().end()),
            (std::vector<WorldSet>{w.s("y,z"), w.s("z")}));
  EXPECT_EQ(sub.space(), w.s("y,z"));
  Uv s;
  auto sb = EvidenceBasis::make({s.s("u"), s.s("u,v")}, s.t->full_set());
  EXPECT_EQ(subspace_basis(sb, s.s("u,v")).size(), 2u);
  EXPECT_EQ(subspace_basis(sb, s.s("u")).size(), 1u);
  EXPECT_THROW(subspace_basis(b, w.s("x,y")), DomainError);
}

TEST(Subspace, GeneratesTraceTopology) {
  Rng rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    auto t = testing::world_table(testing::uniform(rng, 1, 5));
    auto b = testing::random_basis(rng, *t);
    auto topo = generate_topology(b);
    for (const auto& e : b.elements()) {
      auto sub = generate_topology(subspace_basis(b, e));
      std::set<WorldSet::Bits> got, expect;
      for (const auto& o : sub.opens()) got.insert(o.bits());
      for (const auto& o : topo.opens()) expect.insert((o & e).bits());
      EXPECT_EQ(got, expect);
    }
  }
}

TEST(Frame, Construction) {
  auto t = WorldTable::make({"x", "y"});
  auto b = EvidenceBasis::make({t->full_set()}, t->full_set());
  EXPECT_THROW(Frame::make(t, {}), InputError);
  EXPECT_THROW(Frame::make(t, {{"a", b, 0}, {"a", b, 1}}), InputError);
  EXPECT_THROW(Frame::make(t, {{"", b, 0}}), InputError);
  auto other = WorldTable::make({"x", "y"});
  EXPECT_THROW(Frame::make(other, {{"a", b, 0}}), DomainError);
  auto f = Frame::make(t, {{"a", b, 0}, {"b", b, 2}});
  EXPECT_EQ(f.agent_index("b"), 1u);
  EXPECT_THROW(f.agent_index("c"), InputError);
  auto g = f.with_tolerances({3, 1});
  EXPECT_EQ(g.agent(0).tolerance, 3u);
  EXPECT_EQ(g.agent("b").tolerance, 1u);
  EXPECT_THROW(f.with_tolerances({1}), DomainError);
}

}  // namespace
}  // namespace cik
