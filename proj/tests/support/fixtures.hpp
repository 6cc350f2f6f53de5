#pragma once

// Shared fixtures, random generators and independent oracles for the test
// suites. The oracles work on raw edge lists and plain containers only; none
// of them calls into the transformation or layout code they are used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xmap/crossmap.hpp"
#include "xmap/error.hpp"
#include "xmap/transform.hpp"
#include "xmap/viz.hpp"

namespace xmap::test {

inline const std::vector<LinkSpec>& country_links() {
  static const std::vector<LinkSpec> links{
      {"BLX", "BEL", 0.5}, {"BLX", "LUX", 0.5}, {"E.GER", "DEU", 1.0},
      {"W.GER", "DEU", 1.0}, {"AUS", "AUS", 1.0},
  };
  return links;
}

inline Crossmap country_map() { return build_crossmap("CTRY_OLD", "CTRY_NEW", country_links()); }

inline IndexedSeries country_values() {
  return IndexedSeries("CTRY_OLD", {{"BLX", 10}, {"E.GER", 5}, {"W.GER", 7}, {"AUS", 3}});
}

inline constexpr const char* kCountryCsv =
    "from,to,weight\nBLX,BEL,0.5\nBLX,LUX,0.5\nE.GER,DEU,1.0\nW.GER,DEU,1.0\nAUS,AUS,1.0\n";

inline constexpr const char* kIsoCodesCsv =
    "country,ISO2,ISO3,ISONumeric\n"
    "Afghanistan,AF,AFG,004\n"
    "Albania,AL,ALB,008\n"
    "Algeria,DZ,DZA,012\n"
    "American Samoa,AS,ASM,016\n"
    "Andorra,AD,AND,020\n";

inline std::vector<std::string> labels(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

struct GenOptions {
  bool unit_only = false;      // crosswalk: every source has exactly one link
  double split_share = 0.4;    // probability a source splits (if allowed)
  std::size_t max_split = 4;   // max out-degree of a split source
  double min_raw_weight = 0.1; // keeps normalised weights well away from zero
};

/// Random valid edge list over the given sources, drawing targets from
/// `target_pool`. Weights of a split are normalised positive draws; link
/// order is shuffled.
inline std::vector<LinkSpec> random_links(std::mt19937_64& rng, const std::vector<std::string>& sources,
                                          const std::vector<std::string>& target_pool,
                                          const GenOptions& opt = {}) {
  std::vector<LinkSpec> links;
  std::bernoulli_distribution split(opt.split_share);
  std::uniform_real_distribution<double> raw(opt.min_raw_weight, 1.0);
  for (const auto& s : sources) {
    std::size_t degree = 1;
    if (!opt.unit_only && target_pool.size() >= 2 && split(rng)) {
      std::uniform_int_distribution<std::size_t> d(2, std::min(opt.max_split, target_pool.size()));
      degree = d(rng);
    }
    std::vector<std::string> picked;
    std::sample(target_pool.begin(), target_pool.end(), std::back_inserter(picked), degree, rng);
    std::vector<double> w(degree);
    for (auto& x : w) x = raw(rng);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < degree; ++i) {
      links.push_back({s, picked[i], degree == 1 ? 1.0 : w[i] / total});
    }
  }
  std::shuffle(links.begin(), links.end(), rng);
  return links;
}

inline std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random crossmap with up to `max_sources` sources and `max_targets` targets.
inline Crossmap random_crossmap(std::mt19937_64& rng, std::size_t max_sources = 50,
                                std::size_t max_targets = 50, const GenOptions& opt = {}) {
  const auto sources = labels("s", uniform_size(rng, 1, max_sources));
  const auto targets = labels("t", uniform_size(rng, 1, max_targets));
  return build_crossmap("SRC", "TGT", random_links(rng, sources, targets, opt));
}

/// Random composable pair: every target of `first` is a source of `second`.
inline std::pair<Crossmap, Crossmap> random_composable(std::mt19937_64& rng, std::size_t max_n = 30) {
  const auto sources = labels("s", uniform_size(rng, 1, max_n));
  const auto middle_pool = labels("m", uniform_size(rng, 1, max_n));
  const auto first_links = random_links(rng, sources, middle_pool);
  auto first = build_crossmap("A", "B", first_links);

  std::vector<std::string> middle;
  for (const auto& m : first.targets()) middle.push_back(m.str());
  // the second map may cover extra intermediate categories
  for (const auto& m : middle_pool) {
    if (!first.has_target(CategoryLabel(m)) && std::bernoulli_distribution(0.3)(rng)) middle.push_back(m);
  }
  const auto targets = labels("u", uniform_size(rng, 1, max_n));
  auto second = build_crossmap("B", "C", random_links(rng, middle, targets));
  return {std::move(first), std::move(second)};
}

enum class Values { NonNegative, Signed, Integers };

/// Random series over every source of `c`.
inline IndexedSeries random_series(std::mt19937_64& rng, const Crossmap& c,
                                   Values kind = Values::NonNegative) {
  IndexedSeries s(c.source_taxonomy());
  std::uniform_real_distribution<double> real(kind == Values::Signed ? -1000.0 : 0.0, 1000.0);
  std::uniform_int_distribution<int> whole(0, 100000);
  for (const auto& src : c.sources()) {
    s.insert(src, kind == Values::Integers ? static_cast<double>(whole(rng)) : real(rng));
  }
  return s;
}

/// The Error thrown by `fn`, or nullopt if it returned normally.
template <class F>
std::optional<Error> error_from(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  return std::nullopt;
}

template <class F>
std::optional<ErrorKind> kind_from(F&& fn) {
  const auto e = error_from(std::forward<F>(fn));
  return e ? std::optional(e->kind()) : std::nullopt;
}

// ---------------------------------------------------------------------------
// Oracles

/// Rename, multiply by weight, group-sum by target, written directly over the
/// raw edge list. Every target appears in the result.
inline std::map<std::string, double> expand_and_group_sum(const std::vector<LinkSpec>& links,
                                                          const std::map<std::string, double>& data) {
  std::vector<std::pair<std::string, double>> expanded;
  for (const auto& link : links) {
    const auto it = data.find(link.from);
    expanded.emplace_back(link.to, it == data.end() ? 0.0 : link.weight * it->second);
  }
  std::map<std::string, double> grouped;
  for (const auto& [to, v] : expanded) grouped[to] += v;
  return grouped;
}

inline std::vector<LinkSpec> specs_of(const Crossmap& c) {
  std::vector<LinkSpec> out;
  for (const auto& l : c.links()) out.push_back({l.from.str(), l.to.str(), l.weight});
  return out;
}

inline std::map<std::string, double> plain(const IndexedSeries& s) {
  std::map<std::string, double> out;
  for (const auto& [k, v] : s.entries()) out.emplace(k.str(), v);
  return out;
}

/// Crosswalk oracle: look up each data key's single target and add its value.
inline std::map<std::string, double> relabel_group_sum(const std::vector<LinkSpec>& links,
                                                       const std::map<std::string, double>& data) {
  std::map<std::string, std::string> lookup;
  std::map<std::string, double> out;
  for (const auto& link : links) {
    lookup.emplace(link.from, link.to);
    out.emplace(link.to, 0.0);
  }
  for (const auto& [key, value] : data) out[lookup.at(key)] += value;
  return out;
}

/// Dense weight matrix over sorted label index sets.
struct DenseMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<std::vector<double>> w;
};

inline DenseMatrix dense_of(const std::vector<LinkSpec>& links) {
  std::set<std::string> r;
  std::set<std::string> c;
  for (const auto& l : links) {
    r.insert(l.from);
    c.insert(l.to);
  }
  DenseMatrix m{{r.begin(), r.end()}, {c.begin(), c.end()}, {}};
  m.w.assign(m.rows.size(), std::vector<double>(m.cols.size(), 0.0));
  for (const auto& l : links) {
    const auto i = std::lower_bound(m.rows.begin(), m.rows.end(), l.from) - m.rows.begin();
    const auto j = std::lower_bound(m.cols.begin(), m.cols.end(), l.to) - m.cols.begin();
    m.w[i][j] = l.weight;
  }
  return m;
}

/// Product A*B where A's column labels are looked up among B's row labels.
inline std::map<std::pair<std::string, std::string>, double> dense_product(const DenseMatrix& a,
                                                                         const DenseMatrix& b) {
  std::map<std::pair<std::string, std::string>, double> out;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    for (std::size_t j = 0; j < b.cols.size(); ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < a.cols.size(); ++k) {
        const auto it = std::lower_bound(b.rows.begin(), b.rows.end(), a.cols[k]);
        if (it == b.rows.end() || *it != a.cols[k]) continue;
        sum += a.w[i][k] * b.w[it - b.rows.begin()][j];
      }
      if (sum != 0.0) out[{a.rows[i], b.cols[j]}] = sum;
    }
  }
  return out;
}

/// Out-degree per source by scanning the edge list.
inline std::map<std::string, std::size_t> out_degrees(const std::vector<LinkSpec>& links) {
  std::map<std::string, std::size_t> d;
  for (const auto& l : links) ++d[l.from];
  return d;
}

inline std::map<std::string, std::size_t> in_degrees(const std::vector<LinkSpec>& links) {
  std::map<std::string, std::size_t> d;
  for (const auto& l : links) ++d[l.to];
  return d;
}

/// Pairwise crossing count: two edges between the same layers cross iff
/// their endpoints are in opposite vertical order.
inline std::size_t brute_force_crossings(const viz::LayoutPlan& plan) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < plan.edges.size(); ++i) {
    for (std::size_t j = i + 1; j < plan.edges.size(); ++j) {
      const auto& a = plan.edges[i];
      const auto& b = plan.edges[j];
      if (a.from_layer != b.from_layer) continue;
      const long df = static_cast<long>(a.from_row) - static_cast<long>(b.from_row);
      const long dt = static_cast<long>(a.to_row) - static_cast<long>(b.to_row);
      if ((df < 0 && dt > 0) || (df > 0 && dt < 0)) ++n;
    }
  }
  return n;
}

/// Minimum crossings of a two-layer drawing over all permutations of both
/// columns. Only for tiny instances.
inline std::size_t min_crossings_exhaustive(const Crossmap& c) {
  std::vector<std::string> s;
  std::vector<std::string> t;
  for (const auto& x : c.sources()) s.push_back(x.str());
  for (const auto& x : c.targets()) t.push_back(x.str());
  std::sort(s.begin(), s.end());
  std::size_t best = static_cast<std::size_t>(-1);
  do {
    std::sort(t.begin(), t.end());
    do {
      std::map<std::string, long> sr;
      std::map<std::string, long> tr;
      for (std::size_t i = 0; i < s.size(); ++i) sr[s[i]] = static_cast<long>(i);
      for (std::size_t i = 0; i < t.size(); ++i) tr[t[i]] = static_cast<long>(i);
      std::size_t n = 0;
      const auto links = c.links();
      for (std::size_t i = 0; i < links.size(); ++i) {
        for (std::size_t j = i + 1; j < links.size(); ++j) {
          const long df = sr[links[i].from.str()] - sr[links[j].from.str()];
          const long dt = tr[links[i].to.str()] - tr[links[j].to.str()];
          if ((df < 0 && dt > 0) || (df > 0 && dt < 0)) ++n;
        }
      }
      best = std::min(best, n);
    } while (std::next_permutation(t.begin(), t.end()));
  } while (std::next_permutation(s.begin(), s.end()));
  return best;
}

inline bool close_rel(double a, double b, double rel, double scale = 1.0) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), scale});
}

}  // namespace xmap::test
