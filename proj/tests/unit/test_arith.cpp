#include <doctest.h>

#include <random>

#include "darmon/arith.hpp"
#include "darmon/series.hpp"
#include "darmon/linalg.hpp"

using namespace darmon;

TEST_SUITE("arith") {
  TEST_CASE("integer helpers") {
    CHECK(vp(Int(11 * 11 * 11 * 7), Int(11)) == 3);
    CHECK(vp(Rat(5, 121), Int(11)) == -2);
    CHECK(kronecker(Int(2), Int(11)) == -1);
    CHECK(kronecker(Int(3), Int(11)) == 1);
    CHECK(kronecker(Int(-3), Int(2)) == -1);
    CHECK(is_prime(Int(37)));
    CHECK_FALSE(is_prime(Int(91)));
    CHECK(is_fundamental_discriminant(Int(5)));
    CHECK(is_fundamental_discriminant(Int(24)));
    CHECK(is_fundamental_discriminant(Int(-7)));
    CHECK_FALSE(is_fundamental_discriminant(Int(12 * 4)));
    CHECK(inv_mod(Int(3), Int(11)) == 4);
    CHECK(mod(Int(-3), Int(11)) == 8);
    auto f = factor(Int(2 * 2 * 3 * 37));
    REQUIRE(f.size() == 3);
    CHECK(f[0].first == 2);
    CHECK(f[0].second == 2);
  }

  TEST_CASE("rational reconstruction round trip") {
    Int m = ipow(Int(11), 12);
    std::mt19937 rng(3);
    for (int i = 0; i < 50; ++i) {
      long n = static_cast<long>(rng() % 2001) - 1000;
      long d = 1 + static_cast<long>(rng() % 1000);
      Rat x(n, d);
      x.canonicalize();
      if (gcd(x.get_den(), Int(11)) != 1) continue;
      Int r = mod(x.get_num() * inv_mod(x.get_den(), m), m);
      Rat out;
      REQUIRE(rational_reconstruct(r, m, Int(1000), out));
      CHECK(out == x);
    }
  }

  TEST_CASE("Q_p field laws and precision tracking") {
    Int p = 11;
    Padic a = Padic::from_rat(p, Rat(3, 7), 10), b = Padic::from_int(p, Int(22), 10);
    CHECK(b.valuation() == 1);
    CHECK((a * b / b).equals_mod(a, 9));
    CHECK(((a + b) - b).equals_mod(a, 10));
    CHECK((a / b).valuation() == -1);
    CHECK(Padic::from_rat(p, Rat(1, 11), 5).abs_precision() == 5);
    Padic t = teichmuller(p, Int(2), 12);
    CHECK(t.pow(10).equals_mod(Padic::from_int(p, Int(1), 12), 12));
  }

  TEST_CASE("Q_{p^2} arithmetic, Frobenius and norm") {
    Int p = 7;
    auto rnd = [&](std::mt19937& g) {
      return QuadExt::from_coords(p, Rat(static_cast<long>(g() % 1000) + 1), Rat(static_cast<long>(g() % 1000)), 12);
    };
    std::mt19937 g(11);
    for (int i = 0; i < 20; ++i) {
      QuadExt x = rnd(g), y = rnd(g);
      if (x.valuation() > 0 || y.valuation() > 0) continue;
      CHECK((x * y).frobenius().equals_mod(x.frobenius() * y.frobenius(), 11));
      CHECK((x * y).norm().equals_mod(x.norm() * y.norm(), 11));
      CHECK((x / y * y).equals_mod(x, 11));
      CHECK(x.frobenius().frobenius().equals_mod(x, 12));
      CHECK((x + x.frobenius()).in_base());
    }
  }

  TEST_CASE("logarithm and exponential") {
    Int p = 11;
    std::mt19937 g(5);
    for (int i = 0; i < 10; ++i) {
      QuadExt x = QuadExt::from_coords(p, Rat(1 + 11 * static_cast<long>(g() % 50)), Rat(11 * static_cast<long>(g() % 50)), 12);
      QuadExt y = QuadExt::from_coords(p, Rat(1 + 11 * static_cast<long>(g() % 50)), Rat(11 * static_cast<long>(g() % 50)), 12);
      CHECK(padic_log(x * y).equals_mod(padic_log(x) + padic_log(y), 11));
      CHECK(padic_exp(padic_log(x)).equals_mod(x, 11));
    }
    Padic pp = Padic::from_int(p, p, 10);
    CHECK(padic_log_iwasawa(pp).is_zero());
    QuadExt teich = teichmuller(p, Int(3), Int(5), 10);
    CHECK(padic_log_iwasawa(QuadExt::from_padic(Padic::from_int(p, Int(1), 10)) * teich).valuation() >= 10);
  }

  TEST_CASE("square roots in Q_{p^2}") {
    for (long p : {5L, 7L, 11L, 37L})
      for (long d : {2L, 3L, 5L, -7L, 24L}) {
        if (d % p == 0) continue;
        QuadExt r = sqrt_quadext(Int(d), Int(p), 12);
        CHECK((r * r).equals_mod(QuadExt::from_int(Int(p), Int(d), 12), 12));
      }
  }

  TEST_CASE("fixed-modulus ring agrees with QuadExt") {
    auto f = PrimeField::get(Int(5));
    ZqRing R(f, 8);
    Zq x{Int(7), Int(3)}, y{Int(2), Int(9)};
    Zq z = R.mul(x, R.inv(y));
    CHECK(R.mul(z, y).a == R.reduce(x).a);
    CHECK(R.mul(z, y).b == R.reduce(x).b);
  }
}

TEST_SUITE("series") {
  TEST_CASE("eta^24, E4 and 1/j") {
    auto eta = series::eta24(5);
    CHECK(eta == series::Series{1, -24, 252, -1472, 4830});
    auto e4 = series::e4(4);
    CHECK(e4 == series::Series{1, 240, 2160, 6720});
    auto a = series::inverse_j_factor(3);
    CHECK(a == series::Series{1, -744, 356652});
    auto inv = series::inverse(series::Series{1, 3, 5, 7}, 6);
    auto prod = series::mul(inv, series::Series{1, 3, 5, 7}, 6);
    CHECK(prod == series::Series{1, 0, 0, 0, 0, 0});
  }
}

TEST_SUITE("linalg") {
  TEST_CASE("nullspace vectors are annihilated") {
    QMat m = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 1, 1}};
    CHECK(rank(m, 4) == 2);
    QMat ns = nullspace(m, 4);
    CHECK(ns.size() == 2);
    for (const auto& v : ns)
      for (const auto& row : m) {
        Rat s = 0;
        for (size_t k = 0; k < 4; ++k) s += row[k] * v[k];
        CHECK(s == 0);
      }
  }
}
