#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "support/reference.hpp"
#include "tocq/dataset.hpp"
#include "tocq/errors.hpp"
#include "tocq/numfmt.hpp"
#include "tocq/rng.hpp"

using namespace tocq;

TEST_CASE("xoshiro256** reference output") {
  auto core = Xoshiro256ss::from_state({1, 2, 3, 4});
  // Reference outputs of xoshiro256** for state {1, 2, 3, 4}.
  CHECK(core() == 0x2d00ULL);
  CHECK(core() == 0x0ULL);
  CHECK(core() == 0x5a007080ULL);
  CHECK(core() == 0x10e0000000009d80ULL);
  Xoshiro256ss a(42);
  Xoshiro256ss b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a() == b());
  Xoshiro256ss c(43);
  CHECK(Xoshiro256ss(42)() != c());
  std::uint64_t x = 0;
  CHECK(Xoshiro256ss::splitmix64(x) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("sample_gains") {
  SUBCASE("Exp(1) mean") {
    const auto g = sample_gains(100000, 2, 7);
    double m0 = 0.0;
    double m1 = 0.0;
    for (const auto& v : g) {
      m0 += v[0];
      m1 += v[1];
    }
    CHECK(m0 / 1e5 == doctest::Approx(1.0).epsilon(0.02));
    CHECK(m1 / 1e5 == doctest::Approx(1.0).epsilon(0.02));
  }
  CHECK(sample_gains(1000, 2, 3) == sample_gains(1000, 2, 3));
  CHECK(sample_gains(10, 2, 3) != sample_gains(10, 2, 4));
  for (const auto& v : sample_gains(50000, 1, 1)) CHECK(v[0] > 0.0);
}

TEST_CASE("build_dataset") {
  Scenario scn;
  SUBCASE("single decision labels everything 1") {
    const DecisionSet one({{5.0, 0.0}});
    const auto d = build_dataset(sample_gains(200, 2, 1), one, scn);
    CHECK(std::all_of(d.samples.begin(), d.samples.end(), [](const Sample& s) { return s.label == 1; }));
    CHECK(d.label_count == 1);
  }
  SUBCASE("oracle example") {
    const std::vector<GainVector> g{{2.0, 1.0}};
    CHECK(build_dataset(g, ee_pair_grid(2, 5), scn).samples[0].label == 1);
  }
  SUBCASE("elementwise map commutes with permutation") {
    auto gains = sample_gains(300, 2, 2);
    const auto ds = ee_pair_grid(8, 5);
    const auto a = build_dataset(gains, ds, scn);
    std::reverse(gains.begin(), gains.end());
    auto b = build_dataset(gains, ds, scn);
    std::reverse(b.samples.begin(), b.samples.end());
    CHECK(a == b);
  }
  CHECK_THROWS_AS(build_dataset({}, ee_pair_grid(2, 5), scn), DomainError);
  CHECK_THROWS_AS(build_dataset(sample_gains(3, 2, 1), single_channel_grid(2, 5), scn), DomainError);
}

TEST_CASE("split") {
  Scenario scn;
  const auto full = build_dataset(sample_gains(10000, 2, 1), ee_pair_grid(4, 5), scn);
  const auto [train, test] = split(full, 0.9, 2);
  CHECK(train.size() == 9000);
  CHECK(test.size() == 1000);
  CHECK(train.fingerprint == full.fingerprint);

  auto joined = train.samples;
  joined.insert(joined.end(), test.samples.begin(), test.samples.end());
  auto original = full.samples;
  const auto less = [](const Sample& a, const Sample& b) { return std::tie(a.g, a.label) < std::tie(b.g, b.label); };
  std::sort(joined.begin(), joined.end(), less);
  std::sort(original.begin(), original.end(), less);
  CHECK(joined == original);

  CHECK(split(full, 0.9, 2).first == train);
  CHECK_FALSE(split(full, 0.9, 3).first == train);

  const auto small = build_dataset(sample_gains(10, 2, 1), ee_pair_grid(4, 5), scn);
  CHECK(split(small, 0.9, 1).first.size() == 9);
  CHECK_THROWS_AS(split(small, 0.99, 1), DomainError);
  CHECK_THROWS_AS(split(small, 0.0, 1), DomainError);
  CHECK_THROWS_AS(split(small, 1.0, 1), DomainError);
}

TEST_CASE("dataset csv") {
  Scenario scn;
  const auto ds = ee_pair_grid(8, 5);
  const auto data = build_dataset(sample_gains(500, 2, 11), ds, scn);

  SUBCASE("round trip is bit-exact") {
    std::stringstream ss;
    write_dataset_csv(ss, data);
    CHECK(read_dataset_csv(ss) == data);
  }
  SUBCASE("format") {
    std::ostringstream os;
    write_dataset_csv(os, data);
    const auto text = os.str();
    CHECK(text.starts_with("# fingerprint=" + numfmt::hex64(fingerprint(scn, ds)) + "\n"));
    CHECK(text.find("\ng_1,g_2,label\n") != std::string::npos);
  }
  SUBCASE("fingerprint is checked on load") {
    const auto dir = std::filesystem::temp_directory_path() / "tocq_dataset_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "d.csv";
    save_dataset(path, data);
    CHECK(load_dataset(path, fingerprint(scn, ds)) == data);
    Scenario other = scn;
    other.c = 2.0;
    CHECK_THROWS_AS(load_dataset(path, fingerprint(other, ds)), FingerprintMismatch);
    CHECK_THROWS_AS(load_dataset(path, fingerprint(scn, ee_pair_grid(4, 5))), FingerprintMismatch);
    std::filesystem::remove_all(dir);
  }
  SUBCASE("malformed input") {
    std::istringstream no_fp("g_1,g_2,label\n1,1,1\n");
    CHECK_THROWS_AS(read_dataset_csv(no_fp), ParseError);
    std::istringstream bad_label("# fingerprint=00\n# label_count=2\ng_1,label\n1,3\n");
    CHECK_THROWS_AS(read_dataset_csv(bad_label), ParseError);
    std::istringstream bad_gain("# fingerprint=00\n# label_count=2\ng_1,label\n-1,1\n");
    CHECK_THROWS_AS(read_dataset_csv(bad_gain), ParseError);
  }
}

TEST_CASE("fingerprint depends on scenario and decision order") {
  Scenario scn;
  const auto ds = ee_pair_grid(4, 5);
  CHECK(fingerprint(scn, ds) == fingerprint(scn, ee_pair_grid(4, 5)));
  std::vector<PowerVector> reversed = ds.decisions();
  std::reverse(reversed.begin(), reversed.end());
  CHECK(fingerprint(scn, ds) != fingerprint(scn, DecisionSet(reversed)));
  Scenario sr = scn;
  sr.utility = Utility::SumRate;
  CHECK(fingerprint(scn, ds) != fingerprint(sr, ds));
}

TEST_CASE("numfmt round-trips doubles") {
  ref::TestRng rng(12);
  for (int i = 0; i < 10000; ++i) {
    const double x = std::ldexp(rng.uniform(-1, 1), rng.integer(-300, 300));
    CHECK(numfmt::parse_double(numfmt::shortest(x)) == x);
    CHECK(numfmt::parse_double(numfmt::sig17(x)) == x);
  }
  CHECK(numfmt::parse_hex64(numfmt::hex64(0xfedcba9876543210ULL)) == 0xfedcba9876543210ULL);
  CHECK_THROWS_AS(numfmt::parse_double("1.5x"), ParseError);
}
