#include <doctest.h>

#include <set>

#include "darmon/classfield.hpp"

using namespace darmon;

TEST_SUITE("classfield") {
  TEST_CASE("narrow class numbers and units") {
    std::vector<std::pair<long, long>> known = {{5, 1}, {8, 1}, {12, 2}, {13, 1}, {24, 2}, {40, 2}, {60, 4}, {-7, 1},
                                                {-23, 3}, {-20, 2}, {-47, 5}};
    for (auto [D, h] : known) {
      auto d = narrow_class_data(Int(D));
      CHECK_MESSAGE(d.h_plus == h, "D = " << D);
      for (const auto& f : d.forms) {
        CHECK(f.disc() == D);
        CHECK(is_reduced(f));
        CHECK(class_index(d, f) == &f - d.forms.data());
      }
    }
    auto d5 = narrow_class_data(Int(5));
    CHECK(d5.eps_norm == -1);
    CHECK(d5.eps_t * d5.eps_t - 5 * d5.eps_u * d5.eps_u == -4);
  }

  TEST_CASE("composition gives a group law on classes") {
    for (long D : {24L, 40L, 60L, -23L, -47L}) {
      auto d = narrow_class_data(Int(D));
      auto T = composition_table(d);
      size_t h = d.forms.size();
      for (size_t i = 0; i < h; ++i) {
        CHECK(T[0][i] == static_cast<long>(i));
        std::set<long> row(T[i].begin(), T[i].end());
        CHECK(row.size() == h);
        for (size_t j = 0; j < h; ++j) {
          CHECK(T[i][j] == T[j][i]);
          for (size_t k = 0; k < h; ++k) CHECK(T[T[i][j]][k] == T[i][T[j][k]]);
        }
      }
    }
  }

  TEST_CASE("reduction and automorphs preserve the form") {
    QuadForm f{7, 23, 11};
    Mat2 g;
    QuadForm r = reduce_form(f, &g);
    CHECK(f.transform(g) == r);
    CHECK(g.det() == 1);
    auto d = narrow_class_data(Int(24));
    for (const auto& h : d.forms) {
      Mat2 A = automorph(h, d.tp_t, d.tp_u);
      CHECK(A.det() == 1);
      CHECK(h.transform(A) == h);
    }
    Mat2 g2;
    QuadForm m = form_with_divisible_a(d.forms[1], Int(5), &g2);
    CHECK(mod(m.a, Int(5)) == 0);
    CHECK(m.a > 0);
    CHECK(d.forms[1].transform(g2) == m);
    CHECK_THROWS_AS(form_with_divisible_a(d.forms[1], Int(11)), PreconditionError);
  }

  TEST_CASE("optimal embeddings") {
    for (auto [D, N, p] : std::vector<std::tuple<long, long, long>>{{5, 37, 37}, {24, 11, 11}, {8, 11, 11}, {17, 74, 37}}) {
      auto embs = optimal_embeddings(Int(D), N, Int(p), 10);
      CHECK(embs.size() == static_cast<size_t>(narrow_class_data(Int(D)).h_plus));
      for (const auto& e : embs) {
        CHECK(e.eigen_ok);
        CHECK(mod(e.gamma.c, Int(N / p)) == 0);
        CHECK(e.gamma.det() == 1);
        CHECK_FALSE(e.tau.in_base());
      }
    }
    CHECK_THROWS_AS(optimal_embeddings(Int(5), 11, Int(11), 10), PreconditionError);
  }

  TEST_CASE("genus characters") {
    auto d = narrow_class_data(Int(24));
    auto triv = trivial_character(d);
    for (int v : triv.values) CHECK(v == 1);
    auto chi = genus_character(d, Int(-3), Int(-8));
    REQUIRE(chi.values.size() == 2);
    CHECK(chi.values[0] == 1);
    CHECK(chi.values[1] == -1);
    auto T = composition_table(d);
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) CHECK(chi.values[T[i][j]] == chi.values[i] * chi.values[j]);
    CHECK_THROWS_AS(genus_character(d, Int(5), Int(7)), PreconditionError);
  }
}
