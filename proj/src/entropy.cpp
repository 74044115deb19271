#include "tiedpe/entropy.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tiedpe {

namespace {

void check_m(int m) {
  if (m < 2 || m > kMaxEmbedding)
    throw std::invalid_argument("alphabet size: m must be in [2, 16], got " +
                                std::to_string(m));
}

std::uint64_t factorial(int m) {
  std::uint64_t f = 1;
  for (int k = 2; k <= m; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

/// Number of weak orders of m items (ordered set partitions):
/// a(n) = sum_{k=1..n} C(n,k) a(n-k), a(0) = 1. Every value up to m = 16
/// stays below 2^53 and is therefore exact in a double.
std::uint64_t weak_order_count(int m) {
  std::array<std::uint64_t, kMaxEmbedding + 1> a{};
  a[0] = 1;
  for (int n = 1; n <= m; ++n) {
    std::uint64_t total = 0;
    std::uint64_t binom = 1;  // C(n, k) built incrementally
    for (int k = 1; k <= n; ++k) {
      binom = binom * static_cast<std::uint64_t>(n - k + 1) /
              static_cast<std::uint64_t>(k);
      total += binom * a[n - k];
    }
    a[n] = total;
  }
  return a[m];
}

/// Number of distinct chronological-extended codes of m slots: sets of
/// lists, a(n) = (2n-1) a(n-1) - (n-1)(n-2) a(n-2), a(0) = a(1) = 1.
/// Smaller than the weak-order count because codes only remember each tie
/// group's first index. Also below 2^53 for every m <= 16.
std::uint64_t chrono_code_count(int m) {
  std::uint64_t prev2 = 1, prev1 = 1;  // a(0), a(1)
  if (m == 0 || m == 1) return 1;
  for (int n = 2; n <= m; ++n) {
    const std::uint64_t cur =
        static_cast<std::uint64_t>(2 * n - 1) * prev1 -
        static_cast<std::uint64_t>(n - 1) * static_cast<std::uint64_t>(n - 2) *
            prev2;
    prev2 = prev1;
    prev1 = cur;
  }
  return prev1;
}

}  // namespace

std::string_view log_base_name(LogBase base) {
  switch (base) {
    case LogBase::Natural:
      return "e";
    case LogBase::Two:
      return "2";
    case LogBase::Ten:
      return "10";
  }
  return "?";
}

LogBase parse_log_base(std::string_view name) {
  if (name == "e") return LogBase::Natural;
  if (name == "2") return LogBase::Two;
  if (name == "10") return LogBase::Ten;
  throw std::invalid_argument("unknown log base '" + std::string(name) +
                              "' (expected e, 2, or 10)");
}

double alphabet_size(SymbolKind kind, int m) {
  check_m(m);
  switch (kind) {
    case SymbolKind::Permutation:
      return static_cast<double>(factorial(m));
    case SymbolKind::RankExtended:
      return static_cast<double>(weak_order_count(m));
    case SymbolKind::ChronologicalExtended:
      return static_cast<double>(chrono_code_count(m));
  }
  throw std::invalid_argument("unknown symbol kind");
}

EntropyResult shannon_entropy(const SymbolDistribution& dist, LogBase base) {
  if (dist.total() <= 0.0)
    throw std::invalid_argument("empty distribution: entropy undefined");
  double h_nat = 0.0;
  const double total = dist.total();
  for (const auto& [sym, c] : dist.counts()) {
    const double p = c / total;
    h_nat -= p * std::log(p);  // counts are > 0, so p > 0 and 0*log 0 never
  }
  if (h_nat < 0.0) h_nat = 0.0;  // guard the single-symbol rounding case

  const double size = alphabet_size(dist.kind(), dist.embedding());
  EntropyResult r;
  r.m = dist.embedding();
  r.kind = dist.kind();
  r.h_normalized = h_nat / std::log(size);
  r.missing_patterns =
      static_cast<std::size_t>(size) - dist.support_size();
  switch (base) {
    case LogBase::Natural:
      r.h = h_nat;
      break;
    case LogBase::Two:
      r.h = h_nat / std::log(2.0);
      break;
    case LogBase::Ten:
      r.h = h_nat / std::log(10.0);
      break;
  }
  return r;
}

std::size_t missing_patterns(const SymbolDistribution& dist) {
  const double size = alphabet_size(dist.kind(), dist.embedding());
  return static_cast<std::size_t>(size) - dist.support_size();
}

}  // namespace tiedpe
