// Unit tests for coherent families, coherence checking and the
// letter-multiplicity diagnostic.
#include <catch2/catch_amalgamated.hpp>

#include "graphends/invlimit.hpp"
#include "graphends/serialize.hpp"

using namespace graphends;

namespace {

std::string level_word(const CoherentFamily& fam, int n) {
  return word_to_json(fam.levels.at(n)).dump();
}

// The square loop traversed twice.
LoopSpec double_square() {
  LoopSpec loop = builtin_loop("square");
  LoopSpec twice{"square2", loop.segments};
  twice.segments.insert(twice.segments.end(), loop.segments.begin(), loop.segments.end());
  return twice;
}

}  // namespace

TEST_CASE("psi of the square loop is eventually a constant single letter") {
  const auto fam = psi_family(builtin_loop("square"), build_family("ladder"), 6);
  CHECK(level_word(fam, 1) == "[1]");
  CHECK(level_word(fam, 2) == "[-1,2]");
  for (int n = 3; n <= 6; ++n) CHECK(level_word(fam, n) == "[-1]");
  CHECK(check_coherence(fam).pass);
}

TEST_CASE("psi of the roundtrip loop grows in length") {
  const auto fam = psi_family(builtin_loop("roundtrip"), build_family("ladder"), 6);
  for (int n = 1; n <= 6; ++n) CHECK_FALSE(fam.levels.at(n).empty());
  for (int n = 2; n < 6; ++n) CHECK(fam.levels.at(n + 1).size() > fam.levels.at(n).size());
  CHECK(check_coherence(fam).pass);
}

TEST_CASE("a loop out and back along the same ray is trivial at every level") {
  // The motivating nullhomotopic loop: down the bottom edge and back the
  // same way. Its trace cancels at every level.
  const LoopSpec loop{"bottom_echo", {RayOut{"bottom", 0}, RayBack{"bottom", 0}}};
  const auto fam = psi_family(loop, build_family("ladder"), 6);
  for (int n = 1; n <= 6; ++n) CHECK(fam.levels.at(n).empty());
}

TEST_CASE("psi of the trivial loop is the empty family and coherent") {
  const auto fam = psi_family(builtin_loop("trivial"), build_family("ladder"), 6);
  for (int n = 1; n <= 6; ++n) CHECK(fam.levels.at(n).empty());
  CHECK(check_coherence(fam).pass);
}

TEST_CASE("coherence fails at (3,2) for a crafted corruption") {
  // Replace the level-2 word by a different generator whose level-1 image
  // happens to agree, so (2,1) and (3,1) pass and (3,2) is the first pair
  // scanned that fails.
  auto fam = psi_family(builtin_loop("square"), build_family("ladder"), 3);
  fam.levels.at(2) = ReducedWord::from_letters(2, {{1, 1}});
  const auto report = check_coherence(fam);
  REQUIRE_FALSE(report.pass);
  CHECK(report.first_failure == std::make_pair(3, 2));
}

TEST_CASE("coherence of all built-in loops at depth 8 across all 28 pairs") {
  const auto ladder = build_family("ladder");
  for (const std::string& name : builtin_loop_names()) {
    const auto fam = psi_family(builtin_loop(name), ladder, 8);
    int pairs = 0;
    for (int m = 2; m <= 8; ++m)
      for (int n = 1; n < m; ++n) {
        CHECK(equal(apply_hom(fam.homs.at({m, n}), fam.levels.at(m)), fam.levels.at(n)));
        ++pairs;
      }
    CHECK(pairs == 28);
  }
}

TEST_CASE("letter multiplicities of the built-in loops") {
  const auto ladder = build_family("ladder");

  // roundtrip: every persistent top-edge lineage appears exactly once from
  // its first level onward.
  const auto round = letter_multiplicity(psi_family(builtin_loop("roundtrip"), ladder, 6));
  bool saw_top = false;
  for (const auto& m : round) {
    CHECK(m.stabilized);
    if (m.edge.rfind("T:", 0) == 0) {
      saw_top = true;
      for (int c : m.counts) CHECK(c == 1);
    }
  }
  CHECK(saw_top);

  // square traversed twice: constant multiplicity 2.
  const auto twice = letter_multiplicity(psi_family(double_square(), ladder, 6));
  for (const auto& m : twice) {
    if (m.edge == "T:0") {
      REQUIRE(m.first_level == 2);
      for (int c : m.counts) CHECK(c == 2);
    }
    CHECK(m.stabilized);
  }

  // figure4: the T:0 lineage carries one occurrence of each sign.
  const auto fig = letter_multiplicity(psi_family(builtin_loop("figure4"), ladder, 6));
  bool saw_t0 = false;
  for (const auto& m : fig) {
    CHECK(m.stabilized);
    if (m.edge == "T:0") {
      saw_t0 = true;
      for (int c : m.counts) CHECK(c == 2);
    }
  }
  CHECK(saw_t0);
}

TEST_CASE("a fabricated growing family is reported unstabilized") {
  CoherentFamily fam;
  fam.loop = "fabricated";
  fam.max_level = 4;
  for (int n = 1; n <= 4; ++n) {
    std::vector<Letter> letters(static_cast<std::size_t>(n), Letter{0, 1});
    fam.levels.emplace(n, ReducedWord::from_letters(1, letters));
    fam.chords_by_level[n] = {"X"};
  }
  const auto ms = letter_multiplicity(fam);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].edge == "X");
  CHECK(ms[0].counts == std::vector<int>{1, 2, 3, 4});
  CHECK_FALSE(ms[0].stabilized);
}

TEST_CASE("psi is a homomorphism level by level") {
  const auto ladder = build_family("ladder");
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"square", "roundtrip"}, {"square", "square"}, {"roundtrip", "figure4"}};
  for (const auto& [a, b] : pairs) {
    LoopSpec joined{a + "." + b, builtin_loop(a).segments};
    const LoopSpec lb = builtin_loop(b);
    joined.segments.insert(joined.segments.end(), lb.segments.begin(), lb.segments.end());

    const auto fa = psi_family(builtin_loop(a), ladder, 5);
    const auto fb = psi_family(builtin_loop(b), ladder, 5);
    const auto fj = psi_family(joined, ladder, 5);
    const auto combined = concat_families(fa, fb);
    for (int n = 1; n <= 5; ++n) {
      INFO("loops " << a << "." << b << " level " << n);
      CHECK(equal(fj.levels.at(n), combined.levels.at(n)));
    }
  }
}

TEST_CASE("the four built-in loops are pairwise distinguishable by level 6") {
  const auto ladder = build_family("ladder");
  std::vector<CoherentFamily> fams;
  for (const std::string& name : builtin_loop_names())
    fams.push_back(psi_family(builtin_loop(name), ladder, 6));
  for (std::size_t i = 0; i < fams.size(); ++i) {
    for (std::size_t j = i + 1; j < fams.size(); ++j) {
      bool distinct = false;
      for (int n = 1; n <= 6 && !distinct; ++n)
        distinct = !equal(fams[i].levels.at(n), fams[j].levels.at(n));
      INFO(fams[i].loop << " vs " << fams[j].loop);
      CHECK(distinct);
    }
  }
}

TEST_CASE("psi rejects bad depth") {
  CHECK_THROWS_AS(psi_family(builtin_loop("trivial"), build_family("ladder"), 0), InvalidArgument);
}
