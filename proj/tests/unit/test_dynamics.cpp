#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "sandpile/dynamics.hpp"
#include "sandpile/explorer.hpp"

using namespace sandpile;
using testutil::cfg;

TEST_CASE("local rule guards") {
  CHECK(can_fire_left(cfg("_5"), 0));
  CHECK_FALSE(can_fire_left(cfg("1,_2,1"), 0));
  CHECK(can_fire_left(cfg("2,_2"), -1));

  CHECK(can_fire_right(cfg("_5"), 0));
  CHECK_FALSE(can_fire_right(cfg("1,_2,1"), 0));
  CHECK(can_fire_right(cfg("_2,2"), 1));

  SUBCASE("guards are mirror images") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
      const Configuration c = testutil::random_config(rng);
      const Configuration m = testutil::mirrored(c);
      for (Column col = c.begin_col() - 1; col <= c.end_col(); ++col)
        CHECK(can_fire_right(c, col) == can_fire_left(m, -col));
    }
  }
}

TEST_CASE("sspm_successors lists every single-rule application") {
  SUBCASE("the initial stack branches both ways") {
    const auto moves = sspm_successors(cfg("_5"));
    REQUIRE(moves.size() == 2);
    CHECK(moves[0].target == cfg("1,_4"));
    CHECK(moves[0].rule == Rule::Left);
    CHECK(moves[0].column == 0);
    CHECK(moves[1].target == cfg("_4,1"));
    CHECK(moves[1].rule == Rule::Right);
    CHECK(moves[1].column == 0);
  }
  SUBCASE("a grain may fall right off the peak") {
    const auto moves = sspm_successors(cfg("_3,1,1"));
    bool found = false;
    for (const auto& mv : moves)
      found = found || (mv.target == cfg("_2,2,1") && mv.rule == Rule::Right && mv.column == 0);
    CHECK(found);
  }
  SUBCASE("fixed points have no successors") {
    CHECK(sspm_successors(cfg("1,_1,1")).empty());
    CHECK(sspm_successors(Configuration{}).empty());
  }
  SUBCASE("every move conserves grains") {
    for (const auto& mv : sspm_successors(cfg("2,_3,1")))
      CHECK(mv.target.grain_sum() == 6);
  }
}

TEST_CASE("choice_column finds the unique both-rule column") {
  CHECK(choice_column(cfg("_5")) == 0);
  CHECK_FALSE(choice_column(cfg("1,_2,1")).has_value());
  CHECK(choice_column(cfg("1,_3")) == 0);
  // two separated stacks admit two choice columns; reachable states never do
  CHECK_THROWS_AS(choice_column(cfg("3,0,_3")), MultipleChoiceColumns);
}

TEST_CASE("psspm_step fires every applicable column at once") {
  CHECK(psspm_step(cfg("_5"), Rule::Left) == cfg("1,_4"));
  CHECK(psspm_step(cfg("_5"), Rule::Right) == cfg("_4,1"));

  SUBCASE("forced moves ignore the choice") {
    CHECK(psspm_step(cfg("2,_2"), Rule::Left) == cfg("1,1,_1,1"));
    CHECK(psspm_step(cfg("2,_2"), Rule::Right) == cfg("1,1,_1,1"));
  }
  SUBCASE("fixed points step to themselves") {
    CHECK(psspm_step(cfg("1,1,_2,1"), Rule::Left) == cfg("1,1,_2,1"));
    CHECK(psspm_step(Configuration{}, Rule::Right) == Configuration{});
  }
  SUBCASE("stepping is mirror-symmetric") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
      const Configuration c = testutil::random_config(rng);
      CHECK(testutil::mirrored(psspm_step(c, Rule::Left)) ==
            psspm_step(testutil::mirrored(c), Rule::Right));
    }
  }
  SUBCASE("non-unimodal inputs follow the firing plan verbatim") {
    // two separate stacks, each a choice column; both take the same choice
    CHECK(psspm_step(cfg("3,0,_3"), Rule::Left) == cfg("1,2,1,_2"));
    CHECK(psspm_step(cfg("3,0,_3"), Rule::Right) == cfg("2,1,_2,1"));
  }
}

TEST_CASE("firing plans fire each guarded column exactly once") {
  for (Height n = 0; n <= 9; ++n) {
    const TransitionDiagram d = bfs_reachable(n, ModelKind::Psspm);
    for (const Configuration& c : d.nodes) {
      for (Rule choice : {Rule::Left, Rule::Right}) {
        const FiringPlan plan = firing_plan(c, choice);
        for (Column col : plan.fires_left) CHECK(can_fire_left(c, col));
        for (Column col : plan.fires_right) CHECK(can_fire_right(c, col));
        for (Column col : plan.fires_left)
          for (Column other : plan.fires_right) CHECK(col != other);
      }
    }
  }
}

TEST_CASE("preferred steps follow the labeled edges of the diagram") {
  CHECK(step_left(cfg("_5")) == cfg("1,_4"));
  CHECK(step_right(cfg("1,_3")) == cfg("1,_2,1"));
  CHECK(step_left(cfg("1,1,_2,1")) == cfg("1,1,_2,1"));

  for (Height n = 0; n <= 8; ++n) {
    const TransitionDiagram d = bfs_reachable(n, ModelKind::Psspm);
    for (std::uint32_t id = 0; id < d.nodes.size(); ++id) {
      CHECK(step_left(d.nodes[id]) == testutil::edge_step(d, id, Rule::Left));
      CHECK(step_right(d.nodes[id]) == testutil::edge_step(d, id, Rule::Right));
    }
  }
}

TEST_CASE("apply_word composes preferred steps left to right") {
  CHECK(apply_word(cfg("_5"), Word::repeated(Rule::Left, 25)) == cfg("1,1,_2,1"));
  CHECK(apply_word(cfg("_5"), Word::repeated(Rule::Right, 25)) == cfg("1,_2,1,1"));
  CHECK(apply_word(cfg("_5"), Word{}) == cfg("_5"));
  CHECK(apply_word(cfg("_5"), Word::parse("LL")) == cfg("2,_3"));
  CHECK(apply_uniform_word(cfg("_5"), Rule::Left, 25) == cfg("1,1,_2,1"));
}

TEST_CASE("word parsing") {
  CHECK(Word::parse("LRL").str() == "LRL");
  CHECK(Word::parse("").size() == 0);
  CHECK(Word::repeated(Rule::Right, 3).str() == "RRR");
  CHECK_THROWS_AS(Word::parse("LxR"), ParseError);
}

TEST_CASE("is_fixed and is_unimodal") {
  CHECK(is_fixed(cfg("1,1,_2,1")));
  CHECK(is_fixed(cfg("1,_1,2,1")));
  CHECK_FALSE(is_fixed(cfg("_5")));
  CHECK(is_fixed(Configuration{}));
  CHECK_FALSE(is_fixed(cfg("_2")));  // lone column of two fires either way

  CHECK(is_unimodal(cfg("1,4,_3,2,1")));
  CHECK_FALSE(is_unimodal(cfg("1,_2,1,2")));
  CHECK(is_unimodal(Configuration{}));
  CHECK(is_unimodal(cfg("_5")));
}

TEST_CASE("reachable states stay unimodal, conserve grains, choice is unique") {
  for (Height n = 0; n <= 10; ++n) {
    const TransitionDiagram d = bfs_reachable(n, ModelKind::Psspm);
    for (const Configuration& c : d.nodes) {
      CHECK(is_unimodal(c));
      CHECK(c.grain_sum() == n);
      CHECK_NOTHROW((void)choice_column(c));
    }
  }
}

TEST_CASE("any word of length n^2 reaches a fixed point") {
  std::mt19937_64 rng(31);
  std::bernoulli_distribution coin(0.5);
  for (Height n = 0; n <= 8; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      Word w;
      for (Height k = 0; k < n * n; ++k)
        w.letters.push_back(coin(rng) ? Rule::Left : Rule::Right);
      CHECK(is_fixed(apply_word(Configuration::single(n), w)));
    }
  }
}

TEST_CASE("running the same word after both branches stays weakly close") {
  std::mt19937_64 rng(37);
  std::bernoulli_distribution coin(0.5);
  for (Height n = 1; n <= 8; ++n) {
    const TransitionDiagram d = bfs_reachable(n, ModelKind::Psspm);
    std::uniform_int_distribution<std::size_t> pick(0, d.nodes.size() - 1);
    std::uniform_int_distribution<Height> len(0, n * n);
    for (int trial = 0; trial < 50; ++trial) {
      const Configuration& a = d.nodes[pick(rng)];
      Word w;
      const Height k = len(rng);
      for (Height j = 0; j < k; ++j) w.letters.push_back(coin(rng) ? Rule::Left : Rule::Right);
      CHECK(is_weakly_close(apply_word(step_right(a), w), apply_word(step_left(a), w)));
    }
  }
}

TEST_CASE("trace invariant: a persistently highest column keeps its neighbor bound") {
  // checked literally along every root-to-sink path (about 1700 paths at n=15)
  for (Height n = 0; n <= 15; ++n) {
    const TransitionDiagram d = bfs_reachable(n, ModelKind::Psspm);
    testutil::for_each_path(d, [&](std::span<const std::uint32_t> path) {
      Column lo = 0, hi = 0;
      for (std::uint32_t id : path) {
        lo = std::min(lo, d.nodes[id].begin_col() - 1);
        hi = std::max(hi, d.nodes[id].end_col() + 1);
      }
      for (Column i = lo; i < hi; ++i) {
        bool right_held = false, left_held = false, in_run = false;
        for (std::uint32_t id : path) {
          const Configuration& c = d.nodes[id];
          const bool is_max =
              !c.empty() && c.at(i) == *std::max_element(c.heights().begin(), c.heights().end());
          if (!is_max) {
            in_run = right_held = left_held = false;
            continue;
          }
          const bool right_ok = c.at(i) <= c.at(i + 1) + 2;
          const bool left_ok = c.at(i - 1) + 2 >= c.at(i);
          if (in_run && right_held) CHECK(right_ok);
          if (in_run && left_held) CHECK(left_ok);
          right_held = right_held || right_ok;
          left_held = left_held || left_ok;
          in_run = true;
        }
      }
    });
  }
}
