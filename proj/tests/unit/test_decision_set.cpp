#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "tocq/decision_set.hpp"
#include "tocq/errors.hpp"

using namespace tocq;

namespace {

std::vector<double> first_band(const DecisionSet& ds) {
  std::vector<double> out;
  for (const auto& d : ds.decisions()) out.push_back(d[0]);
  return out;
}

}  // namespace

TEST_CASE("single_channel_grid") {
  CHECK(first_band(single_channel_grid(1, 5)) == std::vector<double>{5});
  CHECK(first_band(single_channel_grid(4, 5)) == std::vector<double>{1.25, 2.5, 3.75, 5});
  CHECK(first_band(single_channel_grid(3, 4, Spacing::Geometric)) == std::vector<double>{1, 2, 4});
  CHECK_THROWS_AS(single_channel_grid(0, 5), DomainError);
  CHECK_THROWS_AS(single_channel_grid(3, -1), DomainError);
  for (int m = 1; m <= 40; ++m) {
    for (auto spacing : {Spacing::Uniform, Spacing::Geometric}) {
      const auto p = first_band(single_channel_grid(m, 5, spacing));
      for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] > p[i - 1]);
      CHECK(p.back() == 5.0);
      CHECK(p.front() > 0.0);
    }
  }
}

TEST_CASE("ee_pair_grid") {
  using V = std::vector<PowerVector>;
  CHECK(ee_pair_grid(2, 5).decisions() == V{{5, 0}, {0, 5}});
  CHECK(ee_pair_grid(4, 5).decisions() == V{{2.5, 0}, {5, 0}, {0, 2.5}, {0, 5}});
  CHECK(ee_pair_grid(2, 1).decisions() == V{{1, 0}, {0, 1}});
  CHECK_THROWS_AS(ee_pair_grid(3, 5), DomainError);
  CHECK_THROWS_AS(ee_pair_grid(0, 5), DomainError);

  SUBCASE("doubling nests") {
    for (int m = 2; m <= 128; m *= 2) {
      const auto small = ee_pair_grid(m, 5);
      const auto big = ee_pair_grid(2 * m, 5);
      for (const auto& d : small.decisions()) {
        CHECK(std::find(big.decisions().begin(), big.decisions().end(), d) != big.decisions().end());
      }
    }
  }
  SUBCASE("bounded and distinct") {
    for (int m = 2; m <= 64; m += 2) {
      auto ds = ee_pair_grid(m, 5).decisions();
      for (const auto& d : ds) {
        CHECK(d[0] + d[1] <= 5.0);
        CHECK(std::min(d[0], d[1]) >= 0.0);
      }
      std::sort(ds.begin(), ds.end());
      CHECK(std::adjacent_find(ds.begin(), ds.end()) == ds.end());
    }
  }
  CHECK(ee_pair_grid(8, 5) == ee_pair_grid(8, 5));
}

TEST_CASE("sr_simplex_grid") {
  using V = std::vector<PowerVector>;
  CHECK(sr_simplex_grid(2, 5).decisions() == V{{0, 5}, {5, 0}});
  CHECK(sr_simplex_grid(3, 5).decisions() == V{{0, 5}, {2.5, 2.5}, {5, 0}});
  CHECK_THROWS_AS(sr_simplex_grid(1, 5), DomainError);
  for (int m = 2; m <= 64; ++m) {
    for (const auto& d : sr_simplex_grid(m, 5).decisions()) {
      CHECK(d[0] + d[1] == doctest::Approx(5.0).epsilon(1e-15));
      CHECK(d[0] >= 0.0);
      CHECK(d[1] >= 0.0);
    }
  }
}

TEST_CASE("experiment grid and csv") {
  Scenario scn;
  CHECK(experiment_grid(scn, 4) == ee_pair_grid(4, 5));
  scn.utility = Utility::SumRate;
  CHECK(experiment_grid(scn, 4) == sr_simplex_grid(4, 5));
  scn.n_bands = 1;
  CHECK(experiment_grid(scn, 3) == single_channel_grid(3, 5));
  scn.n_bands = 3;
  CHECK_THROWS_AS(experiment_grid(scn, 4), UnsupportedCase);

  std::ostringstream os;
  write_decisions_csv(os, ee_pair_grid(2, 5));
  CHECK(os.str() == "label,p_1,p_2\n1,5,0\n2,0,5\n");

  CHECK_THROWS_AS(DecisionSet(std::vector<PowerVector>{}), DomainError);
  CHECK_THROWS_AS(DecisionSet(std::vector<PowerVector>{{1.0}, {1.0, 2.0}}), DomainError);
  CHECK_THROWS_AS(DecisionSet(std::vector<PowerVector>{{-1.0}}), DomainError);
  CHECK_THROWS_AS(ee_pair_grid(2, 5).at_label(3), DomainError);
  CHECK_THROWS_AS(ee_pair_grid(2, 5).at_label(0), DomainError);
}
