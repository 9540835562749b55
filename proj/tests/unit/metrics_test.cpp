#include <cmath>
#include <random>

#include "arxivroll/metrics/correlation.hpp"
#include "arxivroll/metrics/rugged.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace arxivroll;
using namespace arxivroll::metrics;

namespace {

// One pair plus one unmatched benchmark on each side.
PerfTable small_table() {
  return PerfTable({"m"}, {{"pub", Visibility::kPublic, "p1"},
                           {"priv", Visibility::kPrivate, "p1"},
                           {"upub", Visibility::kPublic, ""},
                           {"upriv", Visibility::kPrivate, ""}});
}

PerfTable random_table(std::mt19937_64& gen, std::size_t models) {
  std::uniform_int_distribution<int> count(1, 4);
  std::vector<BenchmarkRef> refs;
  int pairs = count(gen);
  for (int i = 0; i < pairs; ++i) {
    refs.push_back({"pub" + std::to_string(i), Visibility::kPublic,
                    "p" + std::to_string(i)});
    refs.push_back({"priv" + std::to_string(i), Visibility::kPrivate,
                    "p" + std::to_string(i)});
  }
  int up = count(gen), uc = count(gen);
  for (int i = 0; i < up; ++i) {
    refs.push_back({"up" + std::to_string(i), Visibility::kPublic, ""});
  }
  for (int i = 0; i < uc; ++i) {
    refs.push_back({"uc" + std::to_string(i), Visibility::kPrivate, ""});
  }
  std::vector<std::string> names;
  for (std::size_t m = 0; m < models; ++m) names.push_back("m" + std::to_string(m));
  PerfTable t(names, refs);
  std::uniform_real_distribution<double> score(0.01, 1.0);
  for (const auto& m : names) {
    for (const auto& r : refs) t.set(m, r.id, score(gen));
  }
  return t;
}

}  // namespace

TEST_CASE("rs1_absolute is zero when every score is equal") {
  auto t = small_table();
  for (const auto& b : t.benchmarks()) t.set("m", b.id, 0.37);
  auto r = rs1_absolute(t, "m");
  CHECK(r.value == 0.0);
  CHECK(r.warnings.empty());
}

TEST_CASE("rs1_absolute hand-evaluated case") {
  auto t = small_table();
  t.set("m", "pub", 0.6);
  t.set("m", "priv", 0.2);
  t.set("m", "upub", 0.5);
  t.set("m", "upriv", 0.5);
  CHECK(rs1_absolute(t, "m").value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rs1_absolute reaches 4 with all-zero private scores") {
  auto t = small_table();
  t.set("m", "pub", 0.7);
  t.set("m", "upub", 0.4);
  t.set("m", "priv", 0.0);
  t.set("m", "upriv", 0.0);
  CHECK(rs1_absolute(t, "m").value == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("rs1_absolute flags zero denominators and absent groups") {
  auto t = small_table();
  for (const auto& b : t.benchmarks()) t.set("m", b.id, 0.0);
  auto r = rs1_absolute(t, "m");
  CHECK(r.value == 0.0);
  CHECK(r.warnings.size() == 2);

  PerfTable pairs_only({"m"}, {{"a", Visibility::kPublic, "x"},
                               {"b", Visibility::kPrivate, "x"},
                               {"c", Visibility::kPublic, ""}});
  pairs_only.set("m", "a", 0.5);
  pairs_only.set("m", "b", 0.5);
  pairs_only.set("m", "c", 0.9);
  auto r2 = rs1_absolute(pairs_only, "m");
  CHECK(r2.value == 0.0);
  CHECK(r2.warnings.size() == 1);

  PerfTable unpaired({"m"}, {{"a", Visibility::kPublic, ""}});
  unpaired.set("m", "a", 0.5);
  CHECK_THROWS_AS(rs1_absolute(unpaired, "m"), PreconditionError);
}

TEST_CASE("rs1_absolute rejects unknown models and missing cells") {
  auto t = small_table();
  CHECK_THROWS_AS(rs1_absolute(t, "nobody"), DomainError);
  CHECK_THROWS_AS(rs1_absolute(t, "m"), DomainError);
}

TEST_CASE("rs1_absolute stays in [-4, 4] and negates under a tag swap") {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 200; ++i) {
    auto t = random_table(gen, 1);
    double v = rs1_absolute(t, "m0").value;
    CHECK(v >= -4.0);
    CHECK(v <= 4.0);
    CHECK(rs1_absolute(t.swapped(), "m0").value ==
          doctest::Approx(-v).epsilon(1e-12));
  }
}

TEST_CASE("pair ids must link exactly one public and one private benchmark") {
  CHECK_THROWS_AS(PerfTable({"m"}, {{"a", Visibility::kPublic, "x"},
                                    {"b", Visibility::kPublic, "x"}}),
                  DomainError);
  CHECK_THROWS_AS(PerfTable({"m"}, {{"a", Visibility::kPublic, "x"}}),
                  DomainError);
  CHECK_THROWS_AS(PerfTable({"m", "m"}, {}), DomainError);
}

TEST_CASE("rs1_relative rank shifts") {
  PerfTable t({"X", "Y", "Z"}, {{"pub", Visibility::kPublic, "p"},
                                {"priv", Visibility::kPrivate, "p"}});
  SUBCASE("identical rankings give zero") {
    for (auto [m, s] : {std::pair{"X", 0.9}, {"Y", 0.5}, {"Z", 0.1}}) {
      t.set(m, "pub", s);
      t.set(m, "priv", s / 2);
    }
    for (auto [m, d] : rs1_relative(t, t.models())) CHECK(d == 0.0);
  }
  SUBCASE("(1,2,3) publicly and (3,1,2) privately") {
    t.set("X", "pub", 0.9);
    t.set("Y", "pub", 0.6);
    t.set("Z", "pub", 0.3);
    t.set("X", "priv", 0.1);
    t.set("Y", "priv", 0.8);
    t.set("Z", "priv", 0.5);
    auto d = rs1_relative(t, t.models());
    CHECK(d["X"] == 2.0);
    CHECK(d["Y"] == -1.0);
    CHECK(d["Z"] == -1.0);
  }
  SUBCASE("needs two models") {
    CHECK_THROWS_AS(rs1_relative(t, {"X"}), PreconditionError);
  }
}

TEST_CASE("rs1_relative is invariant under monotone maps of one benchmark") {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 50; ++i) {
    auto t = random_table(gen, 5);
    auto before = rs1_relative(t, t.models());
    const std::string target = t.benchmarks()[gen() % t.benchmarks().size()].id;
    for (const auto& m : t.models()) {
      double s = *t.get(m, target);
      t.set(m, target, std::exp(3 * s) + 7);
    }
    auto after = rs1_relative(t, t.models());
    for (const auto& m : t.models()) CHECK(after[m] == before[m]);
  }
}

TEST_CASE("rs2 examples") {
  PerfTable t({"m"}, {{"a", Visibility::kPrivate, ""},
                      {"b", Visibility::kPrivate, ""},
                      {"c", Visibility::kPrivate, ""}});
  t.set("m", "a", 0.1);
  t.set("m", "b", 0.2);
  t.set("m", "c", 0.3);
  auto r = rs2(t, "m");
  CHECK(r.rs2 == doctest::Approx(0.08165).epsilon(1e-4));
  CHECK(*r.rs2_normalized == doctest::Approx(0.40825).epsilon(1e-4));

  PerfTable two({"m"}, {{"a", Visibility::kPrivate, ""},
                        {"b", Visibility::kPrivate, ""}});
  two.set("m", "a", 0.2);
  two.set("m", "b", 0.4);
  auto r2 = rs2(two, "m");
  CHECK(std::abs(r2.rs2 - 0.1) <= 1e-12);
  CHECK(std::abs(*r2.rs2_normalized - 1.0 / 3.0) <= 1e-12);

  two.set("m", "a", 0.3);
  two.set("m", "b", 0.3);
  CHECK(rs2(two, "m").rs2 == 0.0);
  CHECK(*rs2(two, "m").rs2_normalized == 0.0);

  two.set("m", "a", 0.0);
  two.set("m", "b", 0.0);
  CHECK_FALSE(rs2(two, "m").rs2_normalized.has_value());
}

TEST_CASE("rs2 needs two private benchmarks, paired or not") {
  PerfTable t({"m"}, {{"a", Visibility::kPrivate, ""},
                      {"b", Visibility::kPublic, ""}});
  t.set("m", "a", 0.2);
  t.set("m", "b", 0.2);
  CHECK_THROWS_AS(rs2(t, "m"), PreconditionError);

  PerfTable mixed({"m"}, {{"a", Visibility::kPrivate, ""},
                          {"p", Visibility::kPublic, "x"},
                          {"q", Visibility::kPrivate, "x"}});
  mixed.set("m", "a", 0.2);
  mixed.set("m", "p", 0.9);
  mixed.set("m", "q", 0.4);
  CHECK(std::abs(rs2(mixed, "m").rs2 - 0.1) <= 1e-12);
}

TEST_CASE("rs2 scales with the scores and rs2_normalized does not") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::size_t k = 2 + gen() % 6;
    std::vector<BenchmarkRef> refs;
    for (std::size_t j = 0; j < k; ++j) {
      refs.push_back({"b" + std::to_string(j), Visibility::kPrivate, ""});
    }
    PerfTable t({"m"}, refs), scaled({"m"}, refs);
    double c = 0.1 + u(gen);
    for (const auto& r : refs) {
      double s = u(gen);
      t.set("m", r.id, s);
      scaled.set("m", r.id, c * s);
    }
    auto a = rs2(t, "m"), b = rs2(scaled, "m");
    CHECK(b.rs2 == doctest::Approx(c * a.rs2).epsilon(1e-12));
    CHECK(*b.rs2_normalized ==
          doctest::Approx(*a.rs2_normalized).epsilon(1e-12));
  }
}

TEST_CASE("correlation fixed cases") {
  std::vector<double> x = {1, 2, 3}, y = {1, 2, 4};
  CHECK(pearson(x, y) == doctest::Approx(0.98198).epsilon(1e-5));
  CHECK(pearson(x, x) == doctest::Approx(1.0));
  std::vector<double> neg = {-1, -2, -3};
  CHECK(pearson(x, neg) == doctest::Approx(-1.0));

  CHECK(spearman(std::vector<double>{1, 2, 3, 4},
                 std::vector<double>{1, 3, 2, 4}) == 0.8);
  CHECK(spearman(x, neg) == doctest::Approx(-1.0));
  CHECK(kendall(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}) ==
        1.0 / 3.0);
  CHECK(kendall(x, x) == 1.0);
}

TEST_CASE("correlation errors") {
  std::vector<double> c = {2, 2, 2}, x = {1, 2, 3};
  CHECK_THROWS_AS(pearson(c, x), UndefinedCorrelation);
  CHECK_THROWS_AS(spearman(x, c), UndefinedCorrelation);
  CHECK_THROWS_AS(kendall(c, x), UndefinedCorrelation);
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}),
                  PreconditionError);
  CHECK_THROWS_AS(kendall(x, std::vector<double>{1, 2}), PreconditionError);
}

TEST_CASE("correlations match brute-force definitions with ties") {
  std::mt19937_64 gen(2024);
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 2 + gen() % 30;
    int levels = 2 + static_cast<int>(gen() % 6);
    std::vector<double> x(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = static_cast<double>(gen() % levels);
      y[j] = static_cast<double>(gen() % levels) + (gen() % 2 ? 0.5 : 0.0);
    }
    bool cx = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
    bool cy = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
    if (cx || cy) continue;
    CHECK(std::abs(pearson(x, y) - oracle::pearson(x, y)) <= 1e-9);
    CHECK(std::abs(spearman(x, y) - oracle::spearman(x, y)) <= 1e-9);
    CHECK(std::abs(kendall(x, y) - oracle::kendall(x, y)) <= 1e-9);
    CHECK(std::abs(kendall(x, y) - kendall(y, x)) <= 1e-12);
    CHECK(std::abs(spearman(x, y) - spearman(y, x)) <= 1e-12);
  }
}

TEST_CASE("rank correlations ignore strictly increasing transforms") {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> z;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> x(12), y(12), tx(12);
    for (int j = 0; j < 12; ++j) {
      x[j] = z(gen);
      y[j] = z(gen);
      tx[j] = std::exp(x[j]) * 3 + 1;
    }
    CHECK(spearman(tx, y) == doctest::Approx(spearman(x, y)).epsilon(1e-12));
    CHECK(kendall(tx, y) == doctest::Approx(kendall(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("average ranks") {
  auto r = average_ranks(std::vector<double>{10, 20, 20, 5});
  CHECK(r == std::vector<double>{2, 3.5, 3.5, 1});
  auto d = average_ranks(std::vector<double>{0.6, 0.4, 0.6}, true);
  CHECK(d == std::vector<double>{1.5, 3, 1.5});
}

TEST_CASE("stability statistics") {
  std::vector<double> same(32, 22.9);
  auto s = stability(same);
  CHECK(s.std == doctest::Approx(0.0));
  CHECK(s.mean == doctest::Approx(22.9));

  auto two = stability(std::vector<double>{24.0, 26.0});
  CHECK(two.mean == 25.0);
  CHECK(two.std == 1.0);
  CHECK(two.min == 24.0);
  CHECK(two.max == 26.0);
  CHECK_THROWS_AS(stability(std::vector<double>{1.0}), PreconditionError);
}

TEST_CASE("pair configuration JSON round trip") {
  PairConfig c;
  c.pairs["cs-s"] = {"pub1", "priv1"};
  c.unmatched_public = {"p2"};
  c.unmatched_private = {"c2", "c3"};
  nlohmann::json j = c;
  CHECK(j.get<PairConfig>() == c);
  auto refs = c.benchmarks();
  CHECK(refs.size() == 5);
  PerfTable t({"m"}, refs);
  CHECK(t.pairs().size() == 1);
  CHECK(t.all_private().size() == 3);
}

TEST_CASE("rugged reports cover every model") {
  std::mt19937_64 gen(1);
  auto t = random_table(gen, 3);
  auto reports = rugged_reports(t);
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) {
    CHECK(r.rs1_relative.has_value());
    nlohmann::json j = r;
    CHECK(j.get<RSReport>() == r);
  }
}
