#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fk/errors.hpp"
#include "fk/linkpat.hpp"
#include "oracles.hpp"

using namespace fk;

namespace {
LinkPattern P(const char* s) { return parse_pattern(s); }
}  // namespace

TEST_CASE("enumeration sizes follow the Catalan recurrence") {
  for (int n = 1; n <= 7; ++n) {
    CHECK(enumerate_patterns(n).size() == oracle::catalan(n));
    CHECK(catalan(n) == oracle::catalan(n));
  }
  CHECK(enumerate_patterns(1) == std::vector<LinkPattern>{P("1-2")});
  CHECK(enumerate_patterns(3).size() == 5);
  CHECK(enumerate_patterns(5).size() == 42);
}

TEST_CASE("enumeration matches brute-force planar matchings and is sorted") {
  for (int n = 1; n <= 6; ++n) {
    const auto pats = enumerate_patterns(n);
    std::set<std::vector<std::array<int, 2>>> brute;
    for (auto& m : oracle::planar_matchings(n)) brute.insert(m);
    std::set<std::vector<std::array<int, 2>>> ours;
    for (const auto& p : pats) ours.insert(p.links());
    CHECK(ours == brute);
    CHECK(std::is_sorted(pats.begin(), pats.end()));
    for (std::size_t i = 0; i < pats.size(); ++i) CHECK(pattern_index(pats[i]) == static_cast<int>(i));
  }
}

TEST_CASE("canonical order is lexicographic in the right endpoints") {
  const auto pats = enumerate_patterns(4);
  for (std::size_t i = 1; i < pats.size(); ++i) {
    std::vector<int> b0, b1;
    for (auto l : pats[i - 1].links()) b0.push_back(l[1]);
    for (auto l : pats[i].links()) b1.push_back(l[1]);
    CHECK(std::lexicographical_compare(b0.begin(), b0.end(), b1.begin(), b1.end()));
  }
}

TEST_CASE("N = 0 and the cap") {
  const auto e = enumerate_patterns(0);
  REQUIRE(e.size() == 1);
  CHECK(e[0].n() == 0);
  CHECK_THROWS_AS(enumerate_patterns(kMaxLinks + 1), CapacityError);
}

TEST_CASE("pattern validation") {
  CHECK_THROWS_AS(P("1-3,2-4"), ValidationError);
  CHECK_THROWS_AS(P("1-2,2-3"), ValidationError);
  CHECK_THROWS_AS(P("1-2,3-5"), ValidationError);
  CHECK_THROWS_AS(P("1-x"), ValidationError);
  CHECK_THROWS_AS(P(""), ValidationError);
  CHECK(P(" 3 - 4 , 1-2 ") == LinkPattern::unnested(2));
  CHECK(P("4-1,3-2") == LinkPattern::rainbow(2));
  CHECK(P("1-2,3-4").to_string() == "1-2,3-4");
  CHECK(P("1-4,2-3").to_nested() == "(1(23)4)");
  CHECK(P("1-2,3-4").to_nested() == "(12)(34)");
}

TEST_CASE("loop counts") {
  CHECK(loop_count(P("1-2"), P("1-2")) == 1);
  CHECK(loop_count(P("1-2,3-4"), P("1-4,2-3")) == 1);
  CHECK_THROWS_AS(loop_count(P("1-2"), P("1-2,3-4")), DimensionError);
  std::multiset<int> ms;
  for (const auto& a : enumerate_patterns(3)) ms.insert(loop_count(a, P("1-6,2-5,3-4")));
  CHECK(ms == std::multiset<int>{1, 1, 2, 2, 3});
}

TEST_CASE("loop counts agree with the component oracle, are symmetric, and L(a,a) = N") {
  for (int n = 1; n <= 5; ++n) {
    const auto pats = enumerate_patterns(n);
    for (const auto& a : pats) {
      CHECK(loop_count(a, a) == n);
      for (const auto& b : pats) {
        const int l = loop_count(a, b);
        CHECK(l == oracle::loops(a, b));
        CHECK(l == loop_count(b, a));
        CHECK(l >= 1);
        CHECK(l <= n);
      }
    }
  }
  for (const auto& a : enumerate_patterns(6)) CHECK(loop_count(a, a) == 6);
}

TEST_CASE("loop_through returns the component of the point") {
  const auto a = P("1-2,3-6,4-5"), b = P("1-6,2-5,3-4");
  for (int i = 1; i <= 6; ++i) {
    auto pts = loop_through(a, b, i);
    CHECK(std::find(pts.begin(), pts.end(), i) != pts.end());
    for (int j : pts) {
      auto other = loop_through(a, b, j);
      std::sort(pts.begin(), pts.end());
      std::sort(other.begin(), other.end());
      CHECK(pts == other);
    }
  }
}

TEST_CASE("meander matrices") {
  const auto m1 = meander_matrix(1, 2.0);
  CHECK(m1(0, 0) == doctest::Approx(std::sqrt(2.0)));
  const auto m2 = meander_matrix(2, 2.0);
  CHECK(m2(0, 0) == doctest::Approx(2.0));
  CHECK(m2(1, 1) == doctest::Approx(2.0));
  CHECK(m2(0, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(m2(1, 0) == doctest::Approx(std::sqrt(2.0)));
  for (double q : {0.5, 2.0, 3.0}) {
    const auto M = meander_matrix(4, q);
    const auto pats = enumerate_patterns(4);
    CHECK((M - M.transpose()).norm() == 0.0);
    for (int i = 0; i < M.rows(); ++i)
      for (int j = 0; j < M.cols(); ++j) {
        CHECK(M(i, j) > 0);
        CHECK(M(i, j) == doctest::Approx(std::pow(std::sqrt(q), oracle::loops(pats[i], pats[j]))));
      }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(meander_matrix(3, 2.0));
  CHECK(lu.rank() == 4);
  CHECK_THROWS_AS(meander_matrix(2, 0.0), PreconditionError);
}

TEST_CASE("remove_link and tie") {
  CHECK(remove_link(P("1-2,3-4"), 1) == P("1-2"));
  CHECK(remove_link(P("1-4,2-3"), 2) == P("1-2"));
  CHECK(remove_link(P("1-6,2-5,3-4"), 3) == P("1-4,2-3"));
  CHECK_THROWS_AS(remove_link(P("1-2,3-4"), 2), PreconditionError);
  CHECK(tie(P("1-2,3-4"), 1) == P("1-2,3-4"));
  CHECK(tie(P("1-2,3-4"), 2) == P("1-4,2-3"));
  CHECK(tie(P("1-4,2-3"), 1) == P("1-2,3-4"));
  for (const auto& b : enumerate_patterns(4))
    for (int j = 1; j < 8; ++j) CHECK(tie(b, j).has_link(j, j + 1));
}

TEST_CASE("neighbour link reduction of loop counts") {
  for (int n = 2; n <= 5; ++n)
    for (const auto& b : enumerate_patterns(n))
      for (int j = 1; j < 2 * n; ++j) {
        if (!b.has_link(j, j + 1)) continue;
        for (const auto& a : enumerate_patterns(n)) {
          if (!a.has_link(j, j + 1)) continue;
          CHECK(loop_count(a, b) == loop_count(remove_link(a, j), remove_link(b, j)) + 1);
        }
      }
}

TEST_CASE("meander entries against the unnested pattern factor over concatenations") {
  // alpha = alpha1 (on 1..2k) followed by alpha2 (shifted by 2k).
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k < n; ++k)
      for (const auto& a1 : enumerate_patterns(k))
        for (const auto& a2 : enumerate_patterns(n - k)) {
          std::vector<std::array<int, 2>> links = a1.links();
          for (auto l : a2.links()) links.push_back({l[0] + 2 * k, l[1] + 2 * k});
          const auto a = LinkPattern::from_pairs(links);
          const double lhs = std::pow(std::sqrt(2.0), loop_count(a1, LinkPattern::unnested(k))) *
                             std::pow(std::sqrt(2.0), loop_count(a2, LinkPattern::unnested(n - k)));
          const double rhs = std::pow(std::sqrt(2.0), loop_count(a, LinkPattern::unnested(n)));
          CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
        }
}

TEST_CASE("partition bijection") {
  CHECK(partition_to_pattern(NonCrossingPartition::make(1, {{1}})) == P("1-2"));
  for (int n = 1; n <= 5; ++n)
    CHECK(partition_to_pattern(NonCrossingPartition::singletons(n)) == LinkPattern::unnested(n));
  CHECK(partition_to_pattern(NonCrossingPartition::make(2, {{1, 2}})) == P("1-4,2-3"));
  // The one-block partition for N = 3 is {1,6},{2,3},{4,5}.
  CHECK(partition_to_pattern(NonCrossingPartition::one_block(3)) == P("1-6,2-3,4-5"));
  CHECK_THROWS_AS(NonCrossingPartition::make(4, {{1, 3}, {2, 4}}), ValidationError);
  for (int n = 1; n <= 6; ++n) {
    std::set<std::vector<std::array<int, 2>>> seen;
    for (const auto& b : enumerate_patterns(n)) {
      const auto pi = pattern_to_partition(b);
      CHECK(partition_to_pattern(pi) == b);
      CHECK(pattern_to_partition(partition_to_pattern(pi)) == pi);
      seen.insert(partition_to_pattern(pi).links());
    }
    CHECK(seen.size() == catalan(n));
  }
}

TEST_CASE("join_blocks counts blocks of the common coarsening") {
  const auto s = NonCrossingPartition::singletons(3), o = NonCrossingPartition::one_block(3);
  CHECK(join_blocks(s, s) == 3);
  CHECK(join_blocks(s, o) == 1);
  CHECK(join_blocks(NonCrossingPartition::make(3, {{1, 2}, {3}}), NonCrossingPartition::make(3, {{1}, {2, 3}})) == 1);
  for (int n = 1; n <= 5; ++n)
    for (const auto& a : enumerate_patterns(n))
      for (const auto& b : enumerate_patterns(n)) {
        const auto ta = pattern_to_partition(a), tb = pattern_to_partition(b);
        std::vector<int> par(n + 1);
        std::iota(par.begin(), par.end(), 0);
        auto find = [&](int v) {
          while (par[v] != v) v = par[v];
          return v;
        };
        for (const auto* t : {&ta, &tb})
          for (const auto& blk : t->blocks)
            for (int e : blk) par[find(e)] = find(blk[0]);
        int comps = 0;
        for (int v = 1; v <= n; ++v) comps += find(v) == v;
        CHECK(join_blocks(ta, tb) == comps);
      }
}
