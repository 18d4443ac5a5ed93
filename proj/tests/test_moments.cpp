#include <catch2/catch_amalgamated.hpp>

#include "momentlab/measure.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/multimoments.hpp"
#include "momentlab/psd.hpp"
#include "momentlab/rng.hpp"

#include "oracles.hpp"

using namespace momentlab;

namespace {

Measure<Rational> random_measure(Rng& rng, const Rational& lo, const Rational& hi,
                                 int max_atoms = 4) {
  const int count = static_cast<int>(rng.next_int(1, max_atoms));
  std::vector<Atom<Rational>> atoms;
  for (int i = 0; i < count; ++i) {
    const Rational t = rng.next_unit_rational();
    atoms.push_back({lo + t * (hi - lo), rng.next_unit_rational()});
  }
  return Measure<Rational>(std::move(atoms));
}

Measure<Rational> scaled_sum(const Rational& a, const Measure<Rational>& mu,
                             const Rational& b, const Measure<Rational>& nu) {
  std::vector<Atom<Rational>> atoms;
  for (const auto& atom : mu.atoms()) atoms.push_back({atom.position, a * atom.weight});
  for (const auto& atom : nu.atoms()) atoms.push_back({atom.position, b * atom.weight});
  return Measure<Rational>(std::move(atoms));
}

}  // namespace

TEST_CASE("measure construction", "[measure]") {
  CHECK_THROWS_AS(Measure<Rational>({{Rational(0), Rational(-1)}}), validity_error);
  // duplicates merge exactly
  const Measure<Rational> m({{Rational(1), Rational(1)}, {Rational(1), Rational(2)}});
  REQUIRE(m.size() == 1);
  CHECK(m.atoms()[0].weight == Rational(3));
  CHECK(m.total_mass() == Rational(3));
  // float-mode construction merges within 1e-12
  const Measure<double> f({{0.5, 1.0}, {0.5 + 1e-13, 2.0}});
  CHECK(f.size() == 1);
}

TEST_CASE("moments of point masses", "[moments]") {
  SECTION("unit mass at 1") {
    const auto s = moments_of(Measure<Rational>::point_mass(Rational(1)), 4);
    CHECK(s.values == std::vector<Rational>{1, 1, 1, 1, 1});
  }
  SECTION("mass 2 at the origin") {
    const auto s = moments_of(Measure<Rational>::point_mass(Rational(0), Rational(2)), 3);
    CHECK(s.values == std::vector<Rational>{2, 0, 0, 0});
  }
  SECTION("two atoms") {
    const Measure<Rational> mu({{Rational(1), Rational(1)}, {make_rational(1, 2), Rational(1)}});
    const auto s = moments_of(mu, 2);
    CHECK(s.values == std::vector<Rational>{Rational(2), make_rational(3, 2), make_rational(5, 4)});
  }
}

TEST_CASE("hankel_from", "[moments]") {
  MomentSeq<Rational> ones{{1, 1, 1}, std::nullopt};
  CHECK(hankel_from(ones, 2) == Matrix<Rational>::ones(2, 2));

  const Measure<Rational> mu({{Rational(1), Rational(1)}, {make_rational(1, 2), Rational(1)}});
  const auto h = hankel_from(moments_of(mu, 2), 2);
  CHECK(h == Matrix<Rational>::from_rows({{Rational(2), make_rational(3, 2)},
                                          {make_rational(3, 2), make_rational(5, 4)}}));
  CHECK(is_hankel(h));

  MomentSeq<Rational> origin{{2, 0, 0}, std::nullopt};
  CHECK(hankel_from(origin, 2) == Matrix<Rational>::from_rows({{2, 0}, {0, 0}}));

  CHECK_THROWS_AS(hankel_from(ones, 3), truncation_error);
}

TEST_CASE("shift", "[moments]") {
  MomentSeq<Rational> s{{1, 1, 1, 1}, std::nullopt};
  CHECK(shift(s, 1).values == std::vector<Rational>{1, 1, 1});

  MomentSeq<Rational> t{{2, 0, 0, 0}, std::nullopt};
  CHECK(shift(t, 1).values == std::vector<Rational>{0, 0, 0});

  // shifting a point mass multiplies the truncation by the position
  const Rational x = make_rational(2, 3);
  const auto sm = moments_of(Measure<Rational>::point_mass(x), 5);
  const auto shifted = shift(sm, 1);
  for (std::size_t n = 0; n < shifted.values.size(); ++n)
    CHECK(shifted.values[n] == x * sm.values[n]);

  CHECK_THROWS_AS(shift(s, 4), truncation_error);
}

TEST_CASE("truncated support criteria on worked sequences", "[moments]") {
  const Measure<Rational> mu({{Rational(1), Rational(1)}, {make_rational(1, 2), Rational(1)}});
  const auto s = moments_of(mu, 4);
  for (auto set : {SupportSet::kRealLine, SupportSet::kNonNegative,
                   SupportSet::kSymmetricUnit, SupportSet::kUnitInterval})
    CHECK(passes_truncated_criteria(s, set));

  const auto neg = moments_of(Measure<Rational>::point_mass(Rational(-1)), 4);
  CHECK(passes_truncated_criteria(neg, SupportSet::kRealLine));
  CHECK(passes_truncated_criteria(neg, SupportSet::kSymmetricUnit));
  CHECK_FALSE(passes_truncated_criteria(neg, SupportSet::kNonNegative));

  // H = [[1,2],[2,5]] is PSD but s_2 > s_0 rules out [-1,1]
  MomentSeq<Rational> wide{{1, 2, 5}, std::nullopt};
  CHECK(passes_truncated_criteria(wide, SupportSet::kRealLine));
  CHECK_FALSE(passes_truncated_criteria(wide, SupportSet::kSymmetricUnit));

  MomentSeq<Rational> tiny{{1, 1}, std::nullopt};
  CHECK_THROWS_AS(passes_truncated_criteria(tiny, SupportSet::kRealLine), truncation_error);
}

TEST_CASE("support criteria on random measures", "[moments][property]") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto mu = random_measure(rng, Rational(0), Rational(1));
    const auto s = moments_of(mu, 6);
    for (auto set : {SupportSet::kRealLine, SupportSet::kNonNegative,
                     SupportSet::kSymmetricUnit, SupportSet::kUnitInterval})
      CHECK(passes_truncated_criteria(s, set));

    // reflection preserves the symmetric verdicts and flips [0,inf)
    const auto rs = moments_of(mu.reflected(), 6);
    CHECK(passes_truncated_criteria(rs, SupportSet::kRealLine));
    CHECK(passes_truncated_criteria(rs, SupportSet::kSymmetricUnit));
    bool positive_mass_off_origin = false;
    for (const auto& atom : mu.atoms())
      if (atom.position > 0 && atom.weight > 0) positive_mass_off_origin = true;
    if (positive_mass_off_origin)
      CHECK_FALSE(passes_truncated_criteria(rs, SupportSet::kNonNegative));

    // reflect() on the sequence agrees with reflecting the measure
    CHECK(reflect(s).values == rs.values);
  }
}

TEST_CASE("moment matrices of arbitrary measures are PSD", "[moments][property]") {
  Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const auto mu = random_measure(rng, Rational(-2), Rational(2));
    const auto h = hankel_from(moments_of(mu, 6), 4);
    CHECK(is_psd(h));
  }
}

TEST_CASE("moments are linear in the measure", "[moments][property]") {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto mu = random_measure(rng, Rational(-1), Rational(1));
    const auto nu = random_measure(rng, Rational(-1), Rational(1));
    const Rational a = rng.next_unit_rational();
    const Rational b = rng.next_unit_rational();
    const auto lhs = moments_of(scaled_sum(a, mu, b, nu), 5);
    const auto s_mu = moments_of(mu, 5);
    const auto s_nu = moments_of(nu, 5);
    for (std::size_t n = 0; n <= 5; ++n)
      CHECK(lhs.values[n] == a * s_mu.values[n] + b * s_nu.values[n]);
  }
}

TEST_CASE("rank-one Hankel vectors", "[moments]") {
  CHECK(is_rank_one_hankel(std::vector<Rational>{Rational(1), make_rational(1, 2), make_rational(1, 4)}));
  CHECK(is_rank_one_hankel(std::vector<Rational>{Rational(0), Rational(0), Rational(5)}));
  CHECK_FALSE(is_rank_one_hankel(std::vector<Rational>{Rational(1), Rational(2), Rational(5)}));
  CHECK(is_rank_one_hankel(std::vector<Rational>{Rational(1), Rational(0), Rational(0)}));
  CHECK_FALSE(is_rank_one_hankel(std::vector<Rational>{Rational(1), Rational(0), Rational(0), Rational(5)}));
}

TEST_CASE("rank-one test matches the anti-diagonal scan", "[moments][property]") {
  Rng rng(24);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.next_int(1, 6));
    std::vector<Rational> u(n);
    const int kind = static_cast<int>(rng.next_int(0, 2));
    if (kind == 0) {
      for (auto& v : u) v = rng.next_rational(-4, 4, 6);
    } else if (kind == 1) {
      // crafted geometric progression
      const Rational u0 = rng.next_rational(1, 5, 4);
      const Rational r = rng.next_rational(-3, 3, 4);
      Rational cur = u0;
      for (auto& v : u) {
        v = cur;
        cur *= r;
      }
    } else {
      // zeros except the last
      for (auto& v : u) v = Rational(0);
      u.back() = rng.next_rational(-5, 5, 3);
    }
    CHECK(is_rank_one_hankel(u) == oracles::outer_product_is_hankel(u));
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("checkerboard sign patterns", "[moments]") {
  const auto h = hankel_from(moments_of(Measure<Rational>::point_mass(Rational(-1)), 4), 3);
  CHECK(h == Matrix<Rational>::from_rows({{1, -1, 1}, {-1, 1, -1}, {1, -1, 1}}));
  CHECK(is_checkerboard(h));
  CHECK_FALSE(is_checkerboard(Matrix<Rational>::ones(3, 3)));
  CHECK_FALSE(is_checkerboard(Matrix<Rational>::from_rows({{1, -1}, {-1, 0}})));
}

TEST_CASE("multivariable moment kernels", "[multimoments]") {
  SECTION("corner point mass") {
    const auto mu = MultiMeasure<Rational>::point_mass({Rational(1), Rational(1)});
    const auto fam = multi_moments_of(mu, 1);
    // every moment of delta_(1,1) is 1, so localized kernels vanish
    for (const auto& [alpha, value] : fam.values) CHECK(value == Rational(1));
    CHECK(check_multi_psd(fam));
  }
  SECTION("interior product point mass") {
    const auto mu =
        MultiMeasure<Rational>::point_mass({make_rational(1, 2), make_rational(1, 3)});
    auto fam = multi_moments_of(mu, 1);
    CHECK(check_multi_psd(fam));

    // shaving mass off s_(0,0) breaks the base kernel
    fam.values[{0, 0}] -= Rational(1);
    CHECK_FALSE(check_multi_psd(fam));
  }
  SECTION("atoms outside the box only clear the flag") {
    const auto mu = MultiMeasure<Rational>::point_mass({Rational(2), Rational(0)});
    const auto fam = multi_moments_of(mu, 1);
    CHECK_FALSE(fam.support_in_unit_box);
    // the check still runs (and fails: s grows with the degree)
    CHECK_FALSE(check_multi_psd(fam));
  }
}

TEST_CASE("large kernels fall back to the floating check", "[multimoments]") {
  // level 3 in two variables gives 16x16 kernels, past the exact-PSD cap
  const auto mu =
      MultiMeasure<Rational>::point_mass({make_rational(1, 2), make_rational(1, 3)});
  auto fam = multi_moments_of(mu, 3);
  CHECK(check_multi_psd(fam));
  fam.values[{0, 0}] -= Rational(1);
  CHECK_FALSE(check_multi_psd(fam));
}

TEST_CASE("product measures factor their moments", "[multimoments][property]") {
  Rng rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mu1 = random_measure(rng, Rational(-1), Rational(1), 3);
    const auto mu2 = random_measure(rng, Rational(-1), Rational(1), 3);
    std::vector<MultiAtom<Rational>> atoms;
    for (const auto& a : mu1.atoms())
      for (const auto& b : mu2.atoms())
        atoms.push_back({{a.position, b.position}, a.weight * b.weight});
    const MultiMeasure<Rational> product(2, std::move(atoms));
    const auto fam = multi_moments_of(product, 1);
    const auto s1 = moments_of(mu1, fam.order());
    const auto s2 = moments_of(mu2, fam.order());
    for (const auto& [alpha, value] : fam.values)
      CHECK(value == s1.values[alpha[0]] * s2.values[alpha[1]]);
    CHECK(check_multi_psd(fam));
  }
}
