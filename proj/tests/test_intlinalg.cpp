#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "catch_amalgamated.hpp"

#include "mixbraid/intlinalg.hpp"
#include "mixbraid/kernel_action.hpp"

using namespace mixbraid;
using boost::multiprecision::cpp_rational;

namespace {

  cpp_rational det(IntMatrix const& M) {
    std::size_t const                      n = M.rows();
    std::vector<std::vector<cpp_rational>> a(n, std::vector<cpp_rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] = cpp_rational(M(i, j));
      }
    }
    cpp_rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && a[p][c] == 0) {
        ++p;
      }
      if (p == n) {
        return 0;
      }
      if (p != c) {
        std::swap(a[p], a[c]);
        d = -d;
      }
      d *= a[c][c];
      for (std::size_t i = c + 1; i < n; ++i) {
        cpp_rational f = a[i][c] / a[c][c];
        for (std::size_t j = c; j < n; ++j) {
          a[i][j] -= f * a[c][j];
        }
      }
    }
    return d;
  }

  bool is_diagonal(IntMatrix const& D) {
    for (std::size_t i = 0; i < D.rows(); ++i) {
      for (std::size_t j = 0; j < D.cols(); ++j) {
        if (i != j && D(i, j) != 0) {
          return false;
        }
      }
    }
    return true;
  }

  void check_smith(IntMatrix const& A) {
    auto s = smith(A);
    REQUIRE(s.U * A * s.V == s.D);
    REQUIRE(abs(det(s.U)) == 1);
    REQUIRE(abs(det(s.V)) == 1);
    REQUIRE(is_diagonal(s.D));
    auto d = s.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
      REQUIRE(d[i] >= 0);
      if (i + 1 < d.size() && d[i] != 0) {
        REQUIRE(d[i + 1] % d[i] == 0);
      }
      if (d[i] == 0 && i + 1 < d.size()) {
        REQUIRE(d[i + 1] == 0);
      }
    }
  }

  ParametricSystem system(IntMatrix A, IntVector b0, IntVector b1, std::vector<int> mod) {
    return {std::move(A), std::move(b0), std::move(b1), std::move(mod)};
  }

  IntVector vec(std::initializer_list<long> xs) {
    IntVector out;
    for (long x : xs) {
      out.emplace_back(x);
    }
    return out;
  }

}  // namespace

TEST_CASE("smith examples", "[intlinalg]") {
  auto I = IntMatrix::identity(3);
  CHECK(smith(I).D == I);
  auto s = smith(IntMatrix{{2, 0}, {0, 3}});
  CHECK(s.D == IntMatrix{{1, 0}, {0, 6}});
  check_smith(IntMatrix{{2, 0}, {0, 3}});
  IntMatrix Z(2, 3);
  CHECK(smith(Z).D == Z);
  CHECK(smith(Z).rank == 0);
  check_smith(IntMatrix(0, 3));
}

TEST_CASE("smith on random matrices", "[intlinalg][property]") {
  std::mt19937_64                    rng(314159);
  std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9), sparse(0, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t const r = dim(rng), c = dim(rng);
    IntMatrix         A(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        // some zeros so that rank deficiency shows up
        A(i, j) = sparse(rng) == 0 ? 0 : entry(rng);
      }
    }
    check_smith(A);
  }
}

TEST_CASE("invariant factors", "[intlinalg]") {
  auto one = invariant_factors(IntMatrix{{2}}, 1);
  CHECK(one.free_rank == 0);
  CHECK(one.torsion == vec({2}));

  auto none = invariant_factors(IntMatrix(0, 4), 4);
  CHECK(none.free_rank == 4);
  CHECK(none.torsion.empty());

  auto p = abelian_invariants(build_punctured(3, 2, 1));
  CHECK(p.free_rank == 3);
  CHECK(p.torsion == vec({2}));

  CHECK_THROWS_AS(invariant_factors(IntMatrix{{1, 2}}, 3), linalg_error);
}

TEST_CASE("solve_integer and lattice_basis", "[intlinalg]") {
  auto sol = solve_integer(IntMatrix{{2, 4}}, vec({6}));
  REQUIRE(sol);
  CHECK(IntMatrix{{2, 4}} * sol->particular == vec({6}));
  REQUIRE(sol->kernel.size() == 1);
  CHECK(IntMatrix{{2, 4}} * sol->kernel[0] == vec({0}));
  CHECK_FALSE(solve_integer(IntMatrix{{2, 4}}, vec({3})));
  CHECK_FALSE(solve_integer(IntMatrix{{1, 1}, {1, 1}}, vec({1, 2})));
  CHECK(lattice_basis<Integer>({vec({2, 0}), vec({4, 0}), vec({0, -3})}, 2)
        == std::vector<IntVector>{vec({2, 0}), vec({0, 3})});
}

TEST_CASE("feasible parameter set examples", "[intlinalg]") {
  auto all = feasible_parameter_set(system(IntMatrix{{1}}, vec({0}), vec({1}), {0}));
  CHECK(all.all());
  CHECK(all.modulus == 1);

  auto two = feasible_parameter_set(system(IntMatrix{{2}}, vec({0}), vec({1}), {0}));
  CHECK(two.modulus == 2);
  CHECK(two.offset == 0);
  CHECK(two.contains(-4));
  CHECK_FALSE(two.contains(3));

  auto three = feasible_parameter_set(
      system(IntMatrix{{1, 0}, {0, 3}}, vec({0, 0}), vec({1, 1}), {2, 0}));
  CHECK(three.modulus == 3);

  // n = 5 only
  auto fixed = feasible_parameter_set(system(IntMatrix{{0}}, vec({5}), vec({-1}), {0}));
  CHECK(fixed.modulus == 0);
  CHECK(fixed.offset == 5);
  CHECK(fixed.contains(5));
  CHECK_FALSE(fixed.contains(0));

  auto none = feasible_parameter_set(system(IntMatrix{{0}}, vec({1}), vec({0}), {0}));
  CHECK(none.is_empty());
  CHECK_FALSE(none.contains(0));

  CHECK_THROWS_AS(feasible_parameter_set(system(IntMatrix{{1}}, vec({0}), vec({1}), {3})),
                  linalg_error);
  CHECK_THROWS_AS(feasible_parameter_set(system(IntMatrix{{1}}, vec({0, 0}), vec({1}), {0})),
                  linalg_error);
}

TEST_CASE("solve_witness examples", "[intlinalg]") {
  auto S = system(IntMatrix{{2}}, vec({0}), vec({1}), {0});
  auto w = solve_witness(S, 4);
  REQUIRE(w);
  CHECK(*w == vec({2}));
  CHECK_FALSE(solve_witness(S, 3));

  auto T = system(IntMatrix{{1, 1}, {1, -1}}, vec({0, 0}), vec({1, 1}), {0, 0});
  auto t = solve_witness(T, 2);
  REQUIRE(t);
  CHECK(*t == vec({2, 0}));
}

TEST_CASE("solution_space examples", "[intlinalg]") {
  auto a = solution_space(system(IntMatrix{{1, 1}}, vec({0}), vec({0}), {0}), 0);
  CHECK(a.particular == vec({0, 0}));
  CHECK(a.lattice_basis == std::vector<IntVector>{vec({1, -1})});

  auto b = solution_space(system(IntMatrix{{2}}, vec({0}), vec({1}), {0}), 2);
  CHECK(b.particular == vec({1}));
  CHECK(b.lattice_basis.empty());

  auto c = solution_space(system(IntMatrix{{1}}, vec({0}), vec({0}), {2}), 0);
  CHECK(c.particular == vec({0}));
  CHECK(c.lattice_basis == std::vector<IntVector>{vec({2})});

  CHECK_THROWS_AS(solution_space(system(IntMatrix{{2}}, vec({0}), vec({1}), {0}), 3),
                  linalg_error);
}

TEST_CASE("feasibility agrees with brute force on random systems", "[intlinalg][property]") {
  std::mt19937_64                    rng(2718);
  std::uniform_int_distribution<int> rows(1, 2), cols(1, 2), coef(-3, 3), rhs(-2, 2), mod(0, 2);
  int const                          B = 30;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t const r = rows(rng), c = cols(rng);
    IntMatrix         A(r, c);
    IntVector         b0(r), b1(r);
    std::vector<int>  m(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        A(i, j) = coef(rng);
      }
      b1[i] = rhs(rng);
      m[i]  = mod(rng) == 0 ? 2 : 0;
    }
    auto const S   = system(A, b0, b1, m);
    auto const ans = feasible_parameter_set(S);
    REQUIRE(ans.contains(0));
    for (int n = 0; n <= 24; ++n) {
      bool found = false;
      for (int u = -B; u <= B && !found; ++u) {
        for (int v = (c == 2 ? -B : 0); v <= (c == 2 ? B : 0) && !found; ++v) {
          IntVector x = c == 2 ? vec({u, v}) : vec({u});
          found       = S.satisfied_by(x, n);
        }
      }
      INFO("trial " << trial << " n " << n);
      if (found) {
        REQUIRE(ans.contains(n));
      }
      auto w = solve_witness(S, n);
      REQUIRE(w.has_value() == ans.contains(n));
      if (w) {
        REQUIRE(S.satisfied_by(*w, n));
      }
    }
  }
}

TEST_CASE("json dumps", "[intlinalg]") {
  CHECK(to_json(IntMatrix{{1, -2}, {0, 3}}).dump() == "[[1,-2],[0,3]]");
  Integer big = Integer(1) << 80;
  CHECK(integer_to_json(big) == big.str());
}
