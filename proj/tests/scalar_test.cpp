#include "oracles.hpp"
#include "test_util.hpp"

#include "roth/instance_gen.hpp"
#include "roth/scalar.hpp"

#include <doctest.h>

#include <set>

using namespace roth;
using testing::cx;
using testing::qt;
using testing::re;

namespace {

template <class T> Scalar<T> random_scalar(SplitMix64 &rng, ScalarKind kind) {
  std::array<T, 4> c{T(0), T(0), T(0), T(0)};
  for (std::size_t p = 0; p < arity(kind); ++p) c[p] = T(rng.uniform_int(-9, 9));
  return Scalar<T>(kind, c);
}

double rel_gap(const Scalar<double> &a, const Scalar<double> &b) {
  return std::sqrt((a - b).norm2()) / std::max(1.0, std::sqrt(a.norm2()));
}

} // namespace

TEST_CASE("conj_auto on each kind") {
  CHECK(conj_auto(cx(1.0, 2.0)) == cx(1.0, -2.0));
  CHECK(conj_auto(qt(1.0, 2.0, 3.0, 4.0)) == qt(1.0, 2.0, -3.0, -4.0));
  CHECK(conj_auto(re(5.0)) == re(5.0));
}

TEST_CASE("anti_auto on each kind") {
  CHECK(anti_auto(qt(1.0, 2.0, 3.0, 4.0)) == qt(1.0, -2.0, 3.0, 4.0));
  CHECK(anti_auto(cx(1.0, 2.0)) == cx(1.0, 2.0));
  auto i = qt(0.0, 1.0, 0.0, 0.0);
  auto j = qt(0.0, 0.0, 1.0, 0.0);
  auto k = qt(0.0, 0.0, 0.0, 1.0);
  CHECK(anti_auto(i * j) == k);
  CHECK(anti_auto(j) * anti_auto(i) == k);
}

TEST_CASE("bar is full conjugation") {
  CHECK(bar(qt(1.0, 2.0, 3.0, 4.0)) == qt(1.0, -2.0, -3.0, -4.0));
  CHECK(bar(cx(0.0, 1.0)) == cx(0.0, -1.0));
  auto h = qt(1.0, -2.0, 7.0, 0.5);
  CHECK(bar(bar(h)) == h);
}

TEST_CASE("quaternion products") {
  auto i = qt(0.0, 1.0, 0.0, 0.0);
  auto j = qt(0.0, 0.0, 1.0, 0.0);
  CHECK(i * j == qt(0.0, 0.0, 0.0, 1.0));
  CHECK(j * i == qt(0.0, 0.0, 0.0, -1.0));
  CHECK(qt(1.0, 1.0, 0.0, 0.0) * qt(1.0, 0.0, 1.0, 0.0) == qt(1.0, 1.0, 1.0, 1.0));
}

TEST_CASE("mixing kinds throws") {
  CHECK_THROWS_AS(cx(1.0, 0.0) * re(1.0), KindMismatch);
  CHECK_THROWS_AS(cx(1.0, 0.0) + qt(1.0, 0.0, 0.0, 0.0), KindMismatch);
  CHECK_THROWS(Scalar<double>(ScalarKind::Complex, {1.0, 2.0, 3.0, 0.0}));
  CHECK_THROWS(Scalar<double>(ScalarKind::Real, {std::nan(""), 0.0, 0.0, 0.0}));
}

TEST_CASE("multiplication matches the Hamilton table oracle") {
  SplitMix64 rng(11);
  for (int n = 0; n < 500; ++n) {
    auto a = random_scalar<Rational>(rng, ScalarKind::Quaternion);
    auto b = random_scalar<Rational>(rng, ScalarKind::Quaternion);
    CHECK((a * b).components() == oracle::quat_product(a.components(), b.components()));
  }
}

TEST_CASE("involution laws hold exactly on random pairs") {
  for (auto kind : {ScalarKind::Real, ScalarKind::Complex, ScalarKind::Quaternion}) {
    SplitMix64 rng(7 + static_cast<int>(kind));
    for (int n = 0; n < 1000; ++n) {
      auto a = random_scalar<Rational>(rng, kind);
      auto b = random_scalar<Rational>(rng, kind);
      REQUIRE(conj_auto(a * b) == conj_auto(a) * conj_auto(b));
      REQUIRE(anti_auto(a * b) == anti_auto(b) * anti_auto(a));
      REQUIRE(conj_auto(conj_auto(a)) == a);
      REQUIRE(anti_auto(anti_auto(a)) == a);
      REQUIRE(bar(bar(a)) == a);
    }
  }
}

TEST_CASE("involution laws in floating point") {
  SplitMix64 rng(3);
  for (int n = 0; n < 1000; ++n) {
    Scalar<double> a(ScalarKind::Quaternion, {rng.uniform_real(-5, 5), rng.uniform_real(-5, 5),
                                              rng.uniform_real(-5, 5), rng.uniform_real(-5, 5)});
    Scalar<double> b(ScalarKind::Quaternion, {rng.uniform_real(-5, 5), rng.uniform_real(-5, 5),
                                              rng.uniform_real(-5, 5), rng.uniform_real(-5, 5)});
    CHECK(rel_gap(conj_auto(a * b), conj_auto(a) * conj_auto(b)) <= 1e-14);
    CHECK(rel_gap(anti_auto(a * b), anti_auto(b) * anti_auto(a)) <= 1e-14);
  }
}

TEST_CASE("sigma group is the Klein four-group") {
  using S = SigmaOp;
  CHECK(sigma_compose(S::Conj, S::Dagger) == S::Star);
  CHECK(sigma_compose(S::Star, S::Star) == S::Identity);
  for (auto a : all_sigmas) {
    CHECK(sigma_compose(S::Identity, a) == a);
    CHECK(sigma_compose(a, a) == S::Identity);
    for (auto b : all_sigmas) {
      CHECK(sigma_compose(a, b) == sigma_compose(b, a));
      for (auto c : all_sigmas)
        CHECK(sigma_compose(sigma_compose(a, b), c) == sigma_compose(a, sigma_compose(b, c)));
    }
  }
  // the printed table row by row
  const S table[4][4] = {{S::Identity, S::Conj, S::Dagger, S::Star},
                         {S::Conj, S::Identity, S::Star, S::Dagger},
                         {S::Dagger, S::Star, S::Identity, S::Conj},
                         {S::Star, S::Dagger, S::Conj, S::Identity}};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(sigma_compose(all_sigmas[r], all_sigmas[c]) == table[r][c]);
}

TEST_CASE("sigma_decompose is a bijection onto {1,conj} x {1,dagger}") {
  CHECK(sigma_decompose(SigmaOp::Star) == SigmaSplit{SigmaOp::Conj, SigmaOp::Dagger});
  CHECK(sigma_decompose(SigmaOp::Identity) == SigmaSplit{SigmaOp::Identity, SigmaOp::Identity});
  CHECK(sigma_decompose(SigmaOp::Conj) == SigmaSplit{SigmaOp::Conj, SigmaOp::Identity});
  std::set<std::pair<int, int>> seen;
  for (auto s : all_sigmas) {
    auto [alpha, lambda] = sigma_decompose(s);
    CHECK((alpha == SigmaOp::Identity || alpha == SigmaOp::Conj));
    CHECK((lambda == SigmaOp::Identity || lambda == SigmaOp::Dagger));
    CHECK(sigma_compose(alpha, lambda) == s);
    seen.insert({static_cast<int>(alpha), static_cast<int>(lambda)});
  }
  CHECK(seen.size() == 4);
}

TEST_CASE("numerals parse exactly") {
  CHECK(NumTraits<Rational>::parse("2.5") == Rational(5, 2));
  CHECK(NumTraits<Rational>::parse("-3/4") == Rational(-3, 4));
  CHECK(NumTraits<Rational>::parse("1e-3") == Rational(1, 1000));
  CHECK(NumTraits<Rational>::parse("0.5/2") == Rational(1, 4));
  CHECK(NumTraits<Rational>::parse("0.089") == Rational(89, 1000));
  CHECK(NumTraits<Rational>::parse("-0.0158") == Rational(-158, 10000));
  CHECK(NumTraits<Rational>::parse("0009") == Rational(9));
  CHECK(NumTraits<Rational>::parse("0.0") == Rational(0));
  CHECK(NumTraits<double>::parse("1/4") == 0.25);
  CHECK(NumTraits<Rational>::format(Rational(-7, 3)) == "-7/3");
  CHECK(NumTraits<double>::format(0.1) == "0.10000000000000001");
  CHECK_THROWS(NumTraits<Rational>::parse("1/0"));
  CHECK_THROWS(NumTraits<double>::parse("abc"));
  CHECK_THROWS(NumTraits<double>::parse("1.2.3"));
}
