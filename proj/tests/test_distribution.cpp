#include <doctest.h>

#include <functional>
#include <vector>

#include "specamb/distribution.hpp"
#include "specamb/sampling.hpp"

using namespace specamb;

namespace {

Joint2<double> uniform2x2() {
  return Joint2<double>({"x1", "x2"}, {"y1", "y2"},
                        {{0.25, 0.25}, {0.25, 0.25}});
}

Joint2<Rational> uniform2x2_exact() {
  const Rational q(1, 4);
  return Joint2<Rational>({"x1", "x2"}, {"y1", "y2"}, {{q, q}, {q, q}});
}

// The worked-example grid: p(y1) = 3/8, p(x1) = 1/2.
Joint2<Rational> worked_grid() {
  return Joint2<Rational>({"x1", "x2"}, {"y1", "y2"},
                          {{Rational(1, 4), Rational(1, 4)},
                           {Rational(1, 8), Rational(3, 8)}});
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("joint construction validates input") {
  CHECK_NOTHROW(uniform2x2());

  CHECK(code_of([] {
          Joint2<double>({"x1", "x2"}, {"y1", "y2"},
                         {{0.25, 0.25}, {0.25, 0.26}});
        }) == Errc::MassSumNotOne);

  CHECK(code_of([] {
          Joint2<double>({"x1", "x2"}, {"y1", "y2"}, {{0.25, -0.25}, {0.5, 0.5}});
        }) == Errc::NegativeMass);

  CHECK(code_of([] {
          Joint2<double>({"x1", "x1"}, {"y1", "y2"}, {{0.25, 0.25}, {0.25, 0.25}});
        }) == Errc::DuplicateLabel);

  CHECK(code_of([] {
          Joint2<double>({"x1", "x2"}, {"y1", "y2"}, {{0.5, 0.5}});
        }) == Errc::DimensionMismatch);

  // exact backend rejects any deviation from total mass 1
  CHECK(code_of([] {
          Joint2<Rational>({"x1", "x2"}, {"y1"},
                           {{Rational(1, 2)}, {Rational(1, 3)}});
        }) == Errc::MassSumNotOne);
}

TEST_CASE("marginals are row and column sums") {
  const auto u = uniform2x2();
  const auto mx = marginal(u, Axis::X);
  const auto my = marginal(u, Axis::Y);
  CHECK(mx.mass(0) == doctest::Approx(0.5));
  CHECK(mx.mass(1) == doctest::Approx(0.5));
  CHECK(my.mass(0) == doctest::Approx(0.5));

  const auto w = worked_grid();
  CHECK(marginal(w, Axis::Y).mass_of("y1") == Rational(3, 8));
  CHECK(marginal(w, Axis::X).mass_of("x1") == Rational(1, 2));

  const Joint2<Rational> g({"x1", "x2"}, {"y1", "y2"},
                           {{Rational(1, 4), Rational(1, 4)},
                            {Rational(1, 2), Rational(0)}});
  CHECK(marginal(g, Axis::X).mass_of("x1") == Rational(1, 2));
  CHECK(marginal(g, Axis::X).mass_of("x2") == Rational(1, 2));
}

TEST_CASE("conditioning renormalises a column") {
  const auto u = uniform2x2();
  const auto post = condition(u, "y1");
  CHECK(post.mass(0) == doctest::Approx(0.5));
  CHECK(post.mass(1) == doctest::Approx(0.5));

  const auto w = worked_grid();
  CHECK(condition(w, "y1").mass_of("x1") == Rational(2, 3));

  const Joint2<double> zero_col({"x1", "x2"}, {"y1", "y2"}, {{0.0, 0.5}, {0.0, 0.5}});
  CHECK(code_of([&] { condition(zero_col, "y1"); }) == Errc::ZeroConditioningEvent);
  CHECK(code_of([&] { condition(zero_col, "nope"); }) == Errc::UnknownLabel);
}

TEST_CASE("exclusion split and classification") {
  const auto u = uniform2x2_exact();
  const auto s = exclusion_split(u, "x1", "y1");
  CHECK(s.informative == Rational(1, 4));
  CHECK(s.misinformative == Rational(1, 4));
  CHECK(s.kind == ExclusionKind::Mixed);

  // worked-example X-Z grid: exclusion confined to the complement of x1
  const Joint2<Rational> xz({"x1", "x2"}, {"z1", "z2"},
                            {{Rational(1, 2), Rational(0)},
                             {Rational(1, 4), Rational(1, 4)}});
  const auto si = exclusion_split(xz, "x1", "z1");
  CHECK(si.informative == Rational(1, 4));
  CHECK(si.misinformative == Rational(0));
  CHECK(si.kind == ExclusionKind::PurelyInformative);

  const Joint2<Rational> mis({"x1", "x2"}, {"y1", "y2"},
                             {{Rational(1, 4), Rational(1, 4)},
                              {Rational(1, 2), Rational(0)}});
  const auto sm = exclusion_split(mis, "x1", "y1");
  CHECK(sm.informative == Rational(0));
  CHECK(sm.misinformative == Rational(1, 4));
  CHECK(sm.kind == ExclusionKind::PurelyMisinformative);

  CHECK(code_of([&] { exclusion_split(mis, "x9", "y1"); }) == Errc::UnknownLabel);

  // sure source event excludes nothing
  const Joint2<Rational> sure({"x1", "x2"}, {"y1", "y2"},
                              {{Rational(1, 2), Rational(0)},
                               {Rational(1, 2), Rational(0)}});
  CHECK(exclusion_split(sure, "x1", "y1").kind == ExclusionKind::Null);
}

TEST_CASE("prob over partial assignments") {
  const Joint3<Rational> u = random_joint3<Rational>(2, 2, 2, 7, 4);

  // one slot set equals the marginal
  Rational p_x1 = prob(u, Assignment{EventSel{"x1"}, {}, {}});
  Rational by_hand(0);
  for (std::size_t jj = 0; jj < 2; ++jj) {
    for (std::size_t k = 0; k < 2; ++k) by_hand += u.mass(0, jj, k);
  }
  CHECK(p_x1 == by_hand);

  // full assignment equals the stored cell
  CHECK(prob(u, Assignment{EventSel{"x1"}, EventSel{"y2"}, EventSel{"z1"}}) ==
        u.mass(0, 1, 0));

  // complement selects every other label
  const std::vector<Rational> eighth(8, Rational(1, 8));
  const Joint3<Rational> uu({"x1", "x2"}, {"y1", "y2"}, {"z1", "z2"}, eighth);
  CHECK(prob(uu, Assignment{{}, EventSel{"y1"}, EventSel{"z1", true}}) ==
        Rational(1, 4));

  CHECK(code_of([&] { prob(uu, Assignment{}); }) == Errc::InvalidArgument);
  CHECK(code_of([&] {
          prob(uu, Assignment{EventSel{"bogus"}, {}, {}});
        }) == Errc::UnknownLabel);
}

TEST_CASE("exclusions plus retained source mass account for everything") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto j = random_joint2<Rational>(3, 3, seed, 4);
    for (const auto& x : j.x_labels()) {
      for (const auto& y : j.y_labels()) {
        const auto s = exclusion_split(j, x, y);
        CHECK(s.informative + s.misinformative + j.y_mass(j.y_index(y)) ==
              Rational(1));
      }
    }
    const auto jf = random_joint2<double>(3, 3, seed);
    for (const auto& x : jf.x_labels()) {
      for (const auto& y : jf.y_labels()) {
        const auto s = exclusion_split(jf, x, y);
        CHECK(s.informative + s.misinformative + jf.y_mass(jf.y_index(y)) ==
              doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("conditioning then rescaling recovers the column") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto j = random_joint2<Rational>(4, 2, seed, 5);
    for (const auto& y : j.y_labels()) {
      const std::size_t yj = j.y_index(y);
      const Rational p_y = j.y_mass(yj);
      if (p_y == 0) continue;
      const auto post = condition(j, y);
      for (std::size_t i = 0; i < j.x_size(); ++i) {
        CHECK(post.mass(i) * p_y == j.mass(i, yj));
      }
    }

    const auto jf = random_joint2<double>(4, 2, seed);
    for (const auto& y : jf.y_labels()) {
      const std::size_t yj = jf.y_index(y);
      const double p_y = jf.y_mass(yj);
      if (p_y == 0.0) continue;
      const auto post = condition(jf, y);
      for (std::size_t i = 0; i < jf.x_size(); ++i) {
        CHECK(post.mass(i) * p_y == doctest::Approx(jf.mass(i, yj)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("embedding into three variables preserves the target marginal") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto j = random_joint2<Rational>(3, 2, seed, 6);
    const auto j3 = embed_as_joint3(j);
    CHECK(j3.z_size() == 1);
    const auto direct = marginal(j, Axis::X);
    for (std::size_t i = 0; i < j.x_size(); ++i) {
      CHECK(prob(j3, Assignment{EventSel{j.x_labels()[i]}, {}, {}}) ==
            direct.mass(i));
    }
  }
}

TEST_CASE("pair transforms agree with direct sums") {
  const auto j = random_joint3<Rational>(2, 3, 2, 99, 5);
  const auto xy = marginal_pair(j, Var::X, Var::Y);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t jj = 0; jj < 3; ++jj) {
      Rational s(0);
      for (std::size_t k = 0; k < 2; ++k) s += j.mass(i, jj, k);
      CHECK(xy.mass(i, jj) == s);
    }
  }

  const auto zy = marginal_pair(j, Var::Z, Var::Y);
  CHECK(zy.x_labels() == j.z_labels());
  CHECK(zy.y_labels() == j.y_labels());

  const auto fused = fuse_sources(j);
  CHECK(fused.y_size() == 6);
  CHECK(fused.mass(1, 2) == j.mass(1, 1, 0));  // column y2,z1

  const auto fused_t = fuse_targets(j);
  CHECK(fused_t.x_size() == 4);
  CHECK(fused_t.mass(3, 1) == j.mass(1, 1, 1));  // row x2,z2

  // conditioning a pair matches prob ratios
  const Rational p_z1 = prob(j, Assignment{{}, {}, EventSel{"z1"}});
  REQUIRE(p_z1 > 0);
  const auto cond = condition_pair(j, Var::X, Var::Y, "z1");
  CHECK(cond.mass(1, 2) == j.mass(1, 2, 0) / p_z1);
}
