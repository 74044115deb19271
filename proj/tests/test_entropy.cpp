#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "tiedpe/entropy.hpp"
#include "tiedpe/maps.hpp"
#include "tiedpe/ordinal.hpp"
#include "tiedpe/rng.hpp"
#include "tiedpe/strategies.hpp"

using namespace tiedpe;
using testutil::perm;

namespace {

SymbolDistribution dist_of(std::vector<std::pair<const char*, double>> items,
                           int m = 3) {
  std::vector<std::pair<Symbol, double>> counts;
  for (const auto& [code, weight] : items)
    counts.emplace_back(perm(code), weight);
  const std::size_t n = counts.size();
  return SymbolDistribution(SymbolKind::Permutation, m, std::move(counts), n,
                            n);
}

}  // namespace

TEST_CASE("entropy of a single symbol is zero") {
  const auto result = shannon_entropy(dist_of({{"123", 17.0}}));
  CHECK(result.h == 0.0);
  CHECK(result.h_normalized == 0.0);
  CHECK(result.missing_patterns == 5);
}

TEST_CASE("uniform distribution over the full alphabet is maximal") {
  std::vector<std::pair<Symbol, double>> counts;
  for (const Symbol& s : enumerate_alphabet(SymbolKind::Permutation, 4))
    counts.emplace_back(s, 2.5);
  const SymbolDistribution dist(SymbolKind::Permutation, 4, std::move(counts),
                                60, 60);
  const auto result = shannon_entropy(dist);
  CHECK(result.h == doctest::Approx(std::log(24.0)).epsilon(1e-12));
  CHECK(result.h_normalized == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(result.missing_patterns == 0);
}

TEST_CASE("two equally likely symbols carry one bit") {
  const auto d = dist_of({{"123", 5.0}, {"321", 5.0}});
  CHECK(shannon_entropy(d).h == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(shannon_entropy(d, LogBase::Two).h ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(shannon_entropy(d, LogBase::Ten).h ==
        doctest::Approx(std::log10(2.0)).epsilon(1e-12));
  // the normalized value must not depend on the base
  CHECK(shannon_entropy(d).h_normalized ==
        doctest::Approx(shannon_entropy(d, LogBase::Two).h_normalized)
            .epsilon(1e-12));
}

TEST_CASE("entropy ignores the overall scale of the weights") {
  const auto a = dist_of({{"123", 3.0}, {"231", 1.0}, {"321", 6.0}});
  const auto b = dist_of({{"123", 0.3}, {"231", 0.1}, {"321", 0.6}});
  CHECK(shannon_entropy(a).h == doctest::Approx(shannon_entropy(b).h));
}

TEST_CASE("alphabet sizes agree with enumeration for every kind") {
  for (SymbolKind kind : {SymbolKind::Permutation, SymbolKind::RankExtended,
                          SymbolKind::ChronologicalExtended}) {
    for (int m = 2; m <= 7; ++m) {
      CAPTURE(static_cast<int>(kind));
      CAPTURE(m);
      CHECK(alphabet_size(kind, m) ==
            doctest::Approx(
                static_cast<double>(enumerate_alphabet(kind, m).size())));
    }
  }
  // closed forms stay exact in doubles well past the enumerable range
  CHECK(alphabet_size(SymbolKind::Permutation, 10) == 3628800.0);
}

TEST_CASE("missing patterns count the unobserved alphabet") {
  const auto partial = dist_of({{"123", 1.0}, {"132", 2.0}});
  CHECK(missing_patterns(partial) == 4);

  // the logistic map never produces a descending triple
  MapSpec spec;
  spec.name = "logistic";
  spec.family = "logistic";
  spec.params = {{"r", 4.0}};
  spec.initial_state = {0.1};
  const TimeSeries orbit = generate(spec, 10000);
  const auto dist = time_ordered(embed(orbit, 3));
  CHECK(dist.count_of(perm("321")) == 0.0);
  CHECK(missing_patterns(dist) >= 1);
  const auto result = shannon_entropy(dist);
  CHECK(result.h_normalized < 1.0);
  CHECK(result.h_normalized > 0.5);
}

TEST_CASE("log base parsing") {
  CHECK(parse_log_base("e") == LogBase::Natural);
  CHECK(parse_log_base("2") == LogBase::Two);
  CHECK(parse_log_base("10") == LogBase::Ten);
  CHECK_THROWS_AS(parse_log_base("7"), std::invalid_argument);
}

TEST_CASE("distributions validate their construction") {
  // mismatched kind
  std::vector<std::pair<Symbol, double>> wrong_kind = {
      {testutil::sym(SymbolKind::RankExtended, "122"), 1.0}};
  CHECK_THROWS_AS(SymbolDistribution(SymbolKind::Permutation, 3,
                                     std::move(wrong_kind), 1, 1),
                  std::invalid_argument);
  // mismatched embedding
  std::vector<std::pair<Symbol, double>> wrong_m = {{perm("12"), 1.0}};
  CHECK_THROWS_AS(
      SymbolDistribution(SymbolKind::Permutation, 3, std::move(wrong_m), 1, 1),
      std::invalid_argument);
  // non-positive weights
  std::vector<std::pair<Symbol, double>> zero = {{perm("123"), 0.0}};
  CHECK_THROWS_AS(
      SymbolDistribution(SymbolKind::Permutation, 3, std::move(zero), 1, 1),
      std::invalid_argument);
  // retained cannot exceed seen
  std::vector<std::pair<Symbol, double>> fine = {{perm("123"), 1.0}};
  CHECK_THROWS_AS(
      SymbolDistribution(SymbolKind::Permutation, 3, std::move(fine), 1, 2),
      std::invalid_argument);
}

TEST_CASE("duplicate symbols merge and merge() pools distributions") {
  std::vector<std::pair<Symbol, double>> dup = {
      {perm("123"), 1.0}, {perm("321"), 2.0}, {perm("123"), 3.5}};
  const SymbolDistribution d(SymbolKind::Permutation, 3, std::move(dup), 3, 3);
  CHECK(d.support_size() == 2);
  CHECK(d.count_of(perm("123")) == doctest::Approx(4.5));
  CHECK(d.total() == doctest::Approx(6.5));
  CHECK(d.probability(perm("321")) == doctest::Approx(2.0 / 6.5));
  CHECK(d.probability(perm("213")) == 0.0);

  const auto a = dist_of({{"123", 1.0}, {"132", 2.0}});
  const auto b = dist_of({{"123", 4.0}, {"213", 1.0}});
  const auto pooled = merge(a, b);
  CHECK(pooled.count_of(perm("123")) == doctest::Approx(5.0));
  CHECK(pooled.windows_seen() == a.windows_seen() + b.windows_seen());
  CHECK(pooled.total() == doctest::Approx(8.0));

  std::vector<std::pair<Symbol, double>> other_m = {{perm("1234"), 1.0}};
  const SymbolDistribution d4(SymbolKind::Permutation, 4, std::move(other_m),
                              1, 1);
  CHECK_THROWS_AS(merge(a, d4), std::invalid_argument);
}
