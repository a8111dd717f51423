#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "dustlab/ifs.hpp"

using namespace dustlab;

TEST_CASE("build_cantor_dust substitutes r into the four corner maps") {
  const SelfSimilarSystem s = build_cantor_dust(4.0);
  REQUIRE(s.maps().size() == 4);
  const std::array<Vec2, 4> t{{{0, 0}, {0.75, 0}, {0.75, 0.75}, {0, 0.75}}};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(s.maps()[k].ratio() == 0.25);
    CHECK(s.maps()[k].translation() == t[k]);
  }
  CHECK(s.satisfies_osc());

  const SelfSimilarSystem s73 = build_cantor_dust(7.0 / 3.0);
  CHECK(s73.maps()[1].ratio() == doctest::Approx(3.0 / 7.0));
  CHECK(s73.maps()[1].translation().x == doctest::Approx(4.0 / 7.0));
  CHECK(s73.maps()[1].translation().y == 0.0);

  CHECK_THROWS_AS(build_cantor_dust(2.0), DomainError);
  CHECK_THROWS_AS(build_cantor_dust(1.5), DomainError);
}

TEST_CASE("open set condition holds for r > 2 and fails when images touch") {
  for (double r : {2.001, 2.5, 3.0, 10.0, 1000.0}) CHECK(build_cantor_dust(r).satisfies_osc());
  // r = 2: the four half-size squares touch along edges.
  std::vector<Similarity> maps{Similarity(0.5, {0, 0}), Similarity(0.5, {0.5, 0}), Similarity(0.5, {0.5, 0.5}),
                               Similarity(0.5, {0, 0.5})};
  CHECK_FALSE(SelfSimilarSystem(maps, Rect{{0, 0}, {1, 1}}).satisfies_osc());
  std::vector<Similarity> overlapping{Similarity(0.6, {0, 0}), Similarity(0.6, {0.4, 0})};
  CHECK_FALSE(SelfSimilarSystem(overlapping, Rect{{0, 0}, {1, 1}}).satisfies_osc());
}

TEST_CASE("similarities scale distances by their ratio") {
  const Similarity m(0.3, {0.2, -0.1});
  const Vec2 a{0.1, 0.7}, b{-2.0, 0.4};
  const Vec2 ma = m.apply(a), mb = m.apply(b);
  CHECK(std::hypot(ma.x - mb.x, ma.y - mb.y) == doctest::Approx(0.3 * std::hypot(a.x - b.x, a.y - b.y)));
  CHECK_THROWS_AS(Similarity(1.0, {0, 0}), DomainError);
  CHECK_THROWS_AS(Similarity(0.0, {0, 0}), DomainError);
}

TEST_CASE("minkowski_dimension") {
  CHECK(minkowski_dimension(4.0) == 1.0);
  CHECK(minkowski_dimension(16.0) == doctest::Approx(0.5).epsilon(1e-15));
  // ln4/ln5 from a 40-digit evaluation.
  CHECK(minkowski_dimension(5.0) == doctest::Approx(0.86135311614678610134).epsilon(1e-15));
  CHECK_THROWS_AS(minkowski_dimension(2.0), DomainError);
  double prev = minkowski_dimension(2.0001);
  for (double r = 2.01; r < 200.0; r *= 1.1) {
    const double d = minkowski_dimension(r);
    CHECK(d < prev);
    CHECK(d > 0.0);
    CHECK(d < 2.0);
    prev = d;
  }
  CHECK(CantorDustParams(4.0).dimension() == 1.0);
}

TEST_CASE("construction_step geometry") {
  const SelfSimilarSystem s5 = build_cantor_dust(5.0);
  const auto level0 = construction_step(s5, 0);
  REQUIRE(level0.size() == 1);
  CHECK(level0[0].side == 1.0);

  const auto level1 = construction_step(s5, 1);
  REQUIRE(level1.size() == 4);
  const std::array<Vec2, 4> corners{{{0, 0}, {0.8, 0}, {0.8, 0.8}, {0, 0.8}}};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(level1[k].side == doctest::Approx(0.2));
    CHECK(level1[k].corner.x == doctest::Approx(corners[k].x));
    CHECK(level1[k].corner.y == doctest::Approx(corners[k].y));
  }

  const SelfSimilarSystem s3 = build_cantor_dust(3.0);
  const auto level3 = construction_step(s3, 3);
  REQUIRE(level3.size() == 64);
  for (const auto& sq : level3) {
    CHECK(sq.side == doctest::Approx(1.0 / 27.0));
    CHECK(sq.corner.x >= 0.0);
    CHECK(sq.corner.y >= 0.0);
    CHECK(sq.corner.x + sq.side <= 1.0 + 1e-15);
    CHECK(sq.corner.y + sq.side <= 1.0 + 1e-15);
  }
  // Pairwise disjoint.
  for (std::size_t i = 0; i < level3.size(); ++i)
    for (std::size_t j = i + 1; j < level3.size(); ++j) {
      const Rect a = level3[i].rect(), b = level3[j].rect();
      CHECK((a.hi.x < b.lo.x || b.hi.x < a.lo.x || a.hi.y < b.lo.y || b.hi.y < a.lo.y));
    }

  CHECK_THROWS_AS(construction_step(s3, 13), ResourceError);
  CHECK_THROWS_AS(construction_step(s3, 3, 63), ResourceError);
  CHECK_THROWS_AS(construction_step(s3, -1), DomainError);
}

TEST_CASE("word images are exactly the construction squares, in lexicographic order") {
  const SelfSimilarSystem s = build_cantor_dust(3.7);
  const int n = 4;
  const auto squares = construction_step(s, n);
  std::size_t index = 0;
  Word w;
  w.letters.assign(n, 1);
  // Enumerate words lexicographically with an odometer.
  while (true) {
    const Square sq = word_square(s, w);
    CHECK(sq.corner.x == doctest::Approx(squares[index].corner.x).epsilon(1e-14));
    CHECK(sq.corner.y == doctest::Approx(squares[index].corner.y).epsilon(1e-14));
    CHECK(sq.side == doctest::Approx(std::pow(3.7, -n)).epsilon(1e-14));
    ++index;
    int pos = n - 1;
    while (pos >= 0 && w.letters[pos] == 4) w.letters[pos--] = 1;
    if (pos < 0) break;
    ++w.letters[pos];
  }
  CHECK(index == squares.size());
  CHECK(word_square(s, Word{}).side == 1.0);
}

TEST_CASE("square corners lie in deeper construction steps") {
  // Corners of level-n squares are images of the fixed points of the maps,
  // so every deeper level has a square touching each of them.
  const SelfSimilarSystem s = build_cantor_dust(3.0);
  const auto coarse = construction_step(s, 2);
  const auto fine = construction_step(s, 5);
  for (const auto& sq : coarse) {
    for (Vec2 c : {sq.corner, Vec2{sq.corner.x + sq.side, sq.corner.y}, Vec2{sq.corner.x, sq.corner.y + sq.side},
                   Vec2{sq.corner.x + sq.side, sq.corner.y + sq.side}}) {
      double best = 1e9;
      for (const auto& f : fine) {
        const double dx = std::max({f.corner.x - c.x, 0.0, c.x - f.corner.x - f.side});
        const double dy = std::max({f.corner.y - c.y, 0.0, c.y - f.corner.y - f.side});
        best = std::min(best, std::hypot(dx, dy));
      }
      CHECK(best < 1e-14);
    }
  }
}

TEST_CASE("lattice_base") {
  const std::vector<double> equal(4, 1.0 / 3.0);
  REQUIRE(lattice_base(equal).has_value());
  CHECK(*lattice_base(equal) == doctest::Approx(3.0).epsilon(1e-12));

  const std::vector<double> half_quarter{0.5, 0.25};
  REQUIRE(lattice_base(half_quarter).has_value());
  CHECK(*lattice_base(half_quarter) == doctest::Approx(2.0).epsilon(1e-12));

  const std::vector<double> quarter_eighth{0.25, 0.125};
  REQUIRE(lattice_base(quarter_eighth).has_value());
  CHECK(*lattice_base(quarter_eighth) == doctest::Approx(2.0).epsilon(1e-12));

  // ln 2 / ln 3 is irrational; no convergent with denominator <= 10^6 matches.
  const std::vector<double> incommensurable{0.5, 1.0 / 3.0};
  CHECK_FALSE(lattice_base(incommensurable).has_value());

  for (double r : {2.5, 3.0, 7.0, 30.0}) {
    const std::vector<double> dust(4, 1.0 / r);
    CHECK(*lattice_base(dust) == doctest::Approx(r).epsilon(1e-12));
  }
  const std::vector<double> bad{0.5, 1.5};
  CHECK_THROWS_AS(lattice_base(bad), DomainError);
}

TEST_CASE("CantorDustParams side enclosures") {
  const CantorDustParams p(3.0);
  for (int n = 0; n <= 20; ++n) CHECK(p.side(n).contains(std::pow(3.0, -n)));
  CHECK(p.offset(0).contains(2.0 / 3.0));
  CHECK_THROWS_AS(CantorDustParams(2.0), DomainError);
}
