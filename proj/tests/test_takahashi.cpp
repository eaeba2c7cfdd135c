#include "support.hpp"
#include "virasoro/takahashi.hpp"

#include <numeric>

using namespace vir;

namespace {
Run R(std::vector<int> tau, std::vector<int> sigma, std::vector<int> delta) { return {tau, sigma, delta, Flavor::takahashi}; }
}

TEST_CASE("tree for 66 in the 69/223 model") {
  auto M = build_model(69, 223);
  auto T = takahashi_tree(M, 66);
  CHECK(T.at("0") == 55);
  CHECK(T.at("1") == 84);
  CHECK(T.at("00") == 65);
  CHECK(T.at("01") == 68);
  CHECK(T.at("10") == 55);
  CHECK(T.at("11") == 68);
  CHECK(T.at("100") == 65);
  CHECK(T.at("101") == 68);
  CHECK(T.leaves == std::vector<std::string>{"000", "010", "1000", "1010", "110"});

  auto run = run_of_leaf(M, T, "1010");
  CHECK(run == R({14, 8, 6, 2}, {10, 7, 5, 1}, {-1, 1, -1, 1}));
  CHECK(components(u_of_run(M, run)) == std::vector<int>{1, -1, 0, 0, 1, -1, 1, -1, 0, 1, 0, 0, 0});
  CHECK(components(delta_of_run(M, run)) == std::vector<int>{1, -1, 0, 0, -1, 1, 1, -1, 0, -1, 0, 0, 0});
  auto run2 = run_of_leaf(M, T, "000");
  // the last sign follows the address rule (a_00 = 65 lies below 66)
  CHECK(run2 == R({14, 8, 2}, {12, 6, 0}, {1, -1, -1}));
  CHECK(components(u_of_run(M, run2)) == std::vector<int>{0, -1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 1, 1});

  std::vector<std::vector<int>> want = {
      {1, -1, 0, 0, 1, -1, 1, -1, 0, 1, 0, 0, 0}, {0, -1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 1, 1},
      {1, -1, 0, 0, 1, -1, 0, -1, 0, 0, 0, 1, 1}, {0, -1, 0, 0, 0, 0, 1, -1, 0, 1, 0, 0, 0},
      {1, -1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0, 0}};
  std::vector<std::vector<int>> got;
  for (const auto& u : u_set(M, 66)) got.push_back(components(u.u));
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  CHECK(got == want);
}

TEST_CASE("truncated tree for 37") {
  auto M = build_model(69, 223);
  auto T = truncated_tree(M, 37);
  CHECK(T.leaves.size() == 3);
  CHECK(T.at("0") == 30);
  CHECK(T.at("1") == 39);
  auto run = run_of_leaf(M, T, "000");
  CHECK(run.tau == std::vector<int>{14, 8, 6});
  CHECK(run.sigma == std::vector<int>{11, 8, 4});
  CHECK(run.delta == std::vector<int>{1, -1, -1});
  std::vector<std::vector<int>> want = {{0, 0, 0, 1, 0, -1, 0, 0, 0, 0, 1, 0, 1},
                                        {0, 0, 0, 1, 0, -1, 1, -1, 0, 0, 1, 0, 1},
                                        {0, 0, 0, 1, 0, -1, 0, -1, 0, 0, 1, 0, 0}};
  std::vector<std::vector<int>> got;
  for (const auto& u : u_tilde_set(M, 37)) got.push_back(components(u.u));
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  CHECK(got == want);
}

TEST_CASE("single-leaf trees and leaf counts") {
  auto M = build_model(69, 223);
  for (long k : M.kappa) {
    if (k >= 223 || k == M.kappa.back()) continue;
    auto T = takahashi_tree(M, k);
    CHECK(T.leaves.size() == 1);
    auto U = u_set(M, k);
    CHECK(U[0].run.d() == 1);
    CHECK(U[0].run.delta[0] == -1);
    CHECK(U[0].u == u_ij(M, U[0].run.sigma[0], M.t + 1));
  }
  auto E = build_model(26, 109);
  CHECK(takahashi_tree(E, 51).leaves.size() == 3);
  CHECK(truncated_tree(E, 9).leaves.size() == 2);
}

TEST_CASE("run helpers") {
  auto M = build_model(53, 75);
  auto X = R({10, 5, 2}, {7, 5, 1}, {-1, 1, 1});
  CHECK(reduce_run(X) == R({10, 2}, {7, 1}, {-1, 1}));
  CHECK(u_of_run(M, X) == u_of_run(M, reduce_run(X)));
  CHECK(delta_of_run(M, X) == delta_of_run(M, reduce_run(X)));
  auto Y = R({10}, {0}, {-1});
  CHECK(tau_of(M, Y) == (0 < M.t_(M.n) ? M.t_(M.n) : M.t));
  auto pp = run_plusplus(M, X);
  CHECK(pp.sigma == run_plus(M, run_plus(M, X)).sigma);
  auto top = R({M.t + 1}, {M.t - 1}, {-1});
  CHECK_THROWS_AS(run_plusplus(M, top), IndexOverflow);
}

TEST_CASE("flat and sharp split") {
  auto M = build_model(26, 109);
  for (int j = 1; j < M.t; ++j) {
    auto fs = flat_sharp(M, e_vec(M, j));
    auto J = static_cast<std::size_t>(j);
    if (zeta(M, j) % 2 == 0) CHECK((fs.sharp[J] == 1 && fs.flat[J] == 0));
    else CHECK((fs.flat[J] == 1 && fs.sharp[J] == 0));
  }
}

TEST_CASE("leaf runs are naive, rebuild their nodes and recover their vectors") {
  for (int pp = 3; pp <= 24; ++pp)
    for (int p = 1; p < pp; ++p) {
      if (std::gcd(p, pp) != 1) continue;
      auto M = build_model(p, pp);
      for (long a = 1; a < pp; ++a) {
        auto T = takahashi_tree(M, a);
        CHECK(T.leaves.size() <= (std::size_t(1) << M.n));
        for (const auto& leaf : T.leaves) {
          CHECK(leaf.size() <= std::size_t(M.n + 1));
          auto run = run_of_leaf(M, T, leaf);
          CHECK(is_naive(M, run));
          CHECK(is_reduced(M, reduce_run(run)));
          CHECK(run_endpoint(M, run) == a);
          CHECK(u_of_run(M, run) == u_of_run(M, reduce_run(run)));
          // node values along the leaf's address from its run
          for (int j = 1; j <= run.d(); ++j) {
            auto pre = leaf.substr(0, static_cast<std::size_t>(j - 1));
            auto J = static_cast<std::size_t>(j - 1);
            long gap = M.kappa[static_cast<std::size_t>(run.sigma[J])];
            if (j == 1) CHECK(T.at(pre + (leaf[0] == '0' ? "1" : "0")) == (run.delta[0] == -1 ? gap : pp - gap));
            else CHECK(std::labs(T.at(pre) - T.at(pre + (leaf[J] == '0' ? "1" : "0"))) == gap);
          }
        }
        // distinct leaves give distinct vectors, so a vector recovers its run
        auto U = u_set(M, a);
        for (std::size_t i = 0; i < U.size(); ++i)
          for (std::size_t j = i + 1; j < U.size(); ++j) CHECK(U[i].u != U[j].u);
      }
      for (long r = 1; r < p; ++r)
        for (const auto& u : u_tilde_set(M, r)) {
          CHECK(u.sigma_last() >= M.t1() + 1);
          CHECK(run_endpoint(M, u.run) == r);
        }
    }
}
