// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include "sea/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "sea/error.hpp"

namespace sea {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
  tp += o.tp;
  fp += o.fp;
  tn += o.tn;
  fn += o.fn;
  return *this;
}

namespace {

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

VqaMetrics metrics_from_counts(const ConfusionCounts& c) {
  VqaMetrics m;
  m.counts = c;
  m.precision = ratio(c.tp, c.tp + c.fp);
  m.recall = ratio(c.tp, c.tp + c.fn);
  m.accuracy = ratio(c.tp + c.tn, c.total());
  m.specificity = ratio(c.tn, c.tn + c.fp);
  if (m.precision && m.recall && *m.precision + *m.recall > 0.0) {
    m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
  } else if (m.precision && m.recall) {
    m.f1 = 0.0;
  }
  return m;
}

VqaReport score_vqa(const std::vector<VqaResult>& predictions,
                    const std::vector<SketchRecord>& truth, const CommonsenseDB* db) {
  std::map<std::string, const VqaResult*> by_id;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.sketch_id, &p).second) {
      throw Error(ErrorCode::Alignment, "duplicate prediction for sketch '" + p.sketch_id + "'");
    }
  }
  if (by_id.size() != truth.size()) {
    throw Error(ErrorCode::Alignment,
                fmt::format("{} predictions for {} ground-truth sketches", by_id.size(),
                            truth.size()));
  }

  ConfusionCounts total;
  std::map<std::string, ConfusionCounts> grouped;
  for (const auto& t : truth) {
    const auto it = by_id.find(t.sketch_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::Alignment, "no prediction for sketch '" + t.sketch_id + "'");
    }
    const auto& pred = it->second->presence;
    if (pred.size() != t.presence.size()) {
      throw Error(ErrorCode::Alignment,
                  fmt::format("sketch '{}': {} predicted elements vs {} annotated", t.sketch_id,
                              pred.size(), t.presence.size()));
    }
    ConfusionCounts c;
    for (const auto& [id, actual] : t.presence) {
      const auto p = pred.find(id);
      if (p == pred.end()) {
        throw Error(ErrorCode::Alignment,
                    fmt::format("sketch '{}': element '{}' was not predicted", t.sketch_id, id));
      }
      if (p->second) {
        ++(actual ? c.tp : c.fp);
      } else {
        ++(actual ? c.fn : c.tn);
      }
    }
    total += c;
    if (db) {
      const auto cat = db->category_of(t.class_name);
      grouped[cat.value_or("uncategorized")] += c;
    }
  }

  VqaReport report;
  report.overall = metrics_from_counts(total);
  for (const auto& [cat, c] : grouped) report.per_category[cat] = metrics_from_counts(c);
  return report;
}

namespace {

void check_pair(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("length mismatch: {} vs {}", x.size(), y.size()));
  }
  if (x.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two pairs");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("non-finite value at index {}", i));
    }
  }
}

double mean_of(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

struct Moments {
  double mx, my, vx, vy, cov;  // population
};

Moments moments(const std::vector<double>& x, const std::vector<double>& y) {
  Moments m{mean_of(x), mean_of(y), 0, 0, 0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - m.mx;
    const double dy = y[i] - m.my;
    m.vx += dx * dx;
    m.vy += dy * dy;
    m.cov += dx * dy;
  }
  const auto n = static_cast<double>(x.size());
  m.vx /= n;
  m.vy /= n;
  m.cov /= n;
  return m;
}

double clamp_unit(double r) { return std::clamp(r, -1.0, 1.0); }

}  // namespace

std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  check_pair(x, y);
  const Moments m = moments(x, y);
  if (m.vx == 0.0 || m.vy == 0.0) return std::nullopt;
  return clamp_unit(m.cov / std::sqrt(m.vx * m.vy));
}

std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y) {
  check_pair(x, y);
  return pearson(average_ranks(x), average_ranks(y));
}

std::optional<double> kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  check_pair(x, y);
  // Pairwise count; n is at most a few tens of thousands here.
  std::int64_t concordant = 0, discordant = 0, tie_x = 0, tie_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        ++tie_x;
      } else if (dy == 0.0) {
        ++tie_y;
      } else if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double n1 = static_cast<double>(concordant + discordant + tie_x);
  const double n2 = static_cast<double>(concordant + discordant + tie_y);
  if (n1 == 0.0 || n2 == 0.0) return std::nullopt;
  return clamp_unit(static_cast<double>(concordant - discordant) / std::sqrt(n1 * n2));
}

std::optional<double> concordance(const std::vector<double>& x, const std::vector<double>& y) {
  check_pair(x, y);
  const Moments m = moments(x, y);
  const double den = m.vx + m.vy + (m.mx - m.my) * (m.mx - m.my);
  if (den == 0.0) return std::nullopt;
  return clamp_unit(2.0 * m.cov / den);
}

AgreementReport agreement(const std::vector<double>& x, const std::vector<double>& y) {
  check_pair(x, y);
  AgreementReport r;
  r.n = x.size();
  r.spearman = spearman(x, y);
  r.pearson = pearson(x, y);
  r.kendall = kendall_tau_b(x, y);
  r.ccc = concordance(x, y);
  return r;
}

DistributionSummary summarize_distribution(const std::vector<double>& scores, double lo,
                                           double hi, StdKind kind) {
  if (scores.empty()) throw Error(ErrorCode::InvalidArgument, "no scores to summarize");
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "range must satisfy lo < hi");
  if (kind == StdKind::Sample && scores.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "sample std needs at least two scores");
  }
  for (double s : scores) {
    if (!(s >= lo && s <= hi)) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("score {} outside [{}, {}]", s, lo, hi));
    }
  }

  DistributionSummary out;
  out.n = scores.size();
  out.lo = lo;
  out.hi = hi;
  out.mean = mean_of(scores);
  double ss = 0.0;
  for (double s : scores) ss += (s - out.mean) * (s - out.mean);
  const double dof = kind == StdKind::Population ? static_cast<double>(scores.size())
                                                  : static_cast<double>(scores.size() - 1);
  out.std = std::sqrt(ss / dof);

  auto bin_of = [&](double s, int bins) {
    const int b = static_cast<int>(std::floor((s - lo) / (hi - lo) * bins));
    return std::clamp(b, 0, bins - 1);
  };
  std::array<std::int64_t, kModeBins> hist{};
  std::array<std::int64_t, 4> quart{};
  for (double s : scores) {
    ++hist[static_cast<std::size_t>(bin_of(s, kModeBins))];
    ++quart[static_cast<std::size_t>(bin_of(s, 4))];
  }
  const auto fullest = std::max_element(hist.begin(), hist.end()) - hist.begin();
  const double width = (hi - lo) / kModeBins;
  out.mode = lo + (static_cast<double>(fullest) + 0.5) * width;
  for (std::size_t i = 0; i < 4; ++i) {
    out.quartile_bins[i] = static_cast<double>(quart[i]) / static_cast<double>(scores.size());
  }
  return out;
}

std::vector<double> kde_silverman(const std::vector<double>& scores, double lo, double hi,
                                  int points) {
  if (scores.size() < 2) throw Error(ErrorCode::InvalidArgument, "KDE needs two or more scores");
  if (points < 2 || !(lo < hi)) throw Error(ErrorCode::InvalidArgument, "bad KDE grid");
  const double mean = mean_of(scores);
  double ss = 0.0;
  for (double s : scores) ss += (s - mean) * (s - mean);
  const auto n = static_cast<double>(scores.size());
  const double sd = std::sqrt(ss / (n - 1.0));
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double q) {
    const double pos = q * (n - 1.0);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i);
    return i + 1 < sorted.size() ? sorted[i] * (1 - frac) + sorted[i + 1] * frac : sorted[i];
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  if (spread <= 0.0) spread = (hi - lo) / 100.0;  // degenerate sample
  const double h = 0.9 * spread * std::pow(n, -0.2);

  const double norm = 1.0 / (n * h * std::sqrt(2.0 * M_PI));
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    double acc = 0.0;
    for (double s : scores) {
      const double z = (x - s) / h;
      acc += std::exp(-0.5 * z * z);
    }
    out[static_cast<std::size_t>(i)] = acc * norm;
  }
  return out;
}

namespace {

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd m;
  m.mean = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.std = std::sqrt(ss / static_cast<double>(xs.size()));
  return m;
}

}  // namespace

std::vector<LevelRow> level_table(const std::vector<LevelScore>& scored,
                                       const std::vector<int>& levels) {
  const std::set<int> allowed(levels.begin(), levels.end());
  struct Columns {
    std::vector<double> sea, reward, penalty, v, p;
  };
  std::map<int, Columns> by_level;
  for (const auto& s : scored) {
    if (!allowed.count(s.level)) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("unknown level label {}", s.level));
    }
    auto& c = by_level[s.level];
    c.sea.push_back(s.breakdown.sea);
    c.reward.push_back(s.breakdown.reward);
    c.penalty.push_back(s.breakdown.penalty);
    c.v.push_back(s.breakdown.v);
    c.p.push_back(s.probability);
  }
  std::vector<LevelRow> rows;
  for (const auto& [level, c] : by_level) {
    rows.push_back({level, c.sea.size(), mean_std(c.sea), mean_std(c.reward),
                    mean_std(c.penalty), mean_std(c.v), mean_std(c.p)});
  }
  return rows;
}

double normalized_levenshtein(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return 1.0 - static_cast<double>(prev[b.size()]) /
                   static_cast<double>(std::max(a.size(), b.size()));
}

SoftF1 soft_f1(const std::vector<std::string>& predicted,
               const std::vector<std::string>& reference) {
  if (predicted.empty() && reference.empty()) return {1.0, 1.0, 1.0};
  if (predicted.empty() || reference.empty()) return {0.0, 0.0, 0.0};

  struct Pair {
    double sim;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    for (std::size_t j = 0; j < reference.size(); ++j) {
      pairs.push_back({normalized_levenshtein(predicted[i], reference[j]), i, j});
    }
  }
  // Highest similarity first; index order breaks ties deterministically.
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.sim > b.sim; });
  std::vector<bool> used_p(predicted.size()), used_r(reference.size());
  double matched = 0.0;
  for (const auto& pr : pairs) {
    if (used_p[pr.i] || used_r[pr.j]) continue;
    used_p[pr.i] = used_r[pr.j] = true;
    matched += pr.sim;
  }
  SoftF1 out;
  out.precision = matched / static_cast<double>(predicted.size());
  out.recall = matched / static_cast<double>(reference.size());
  out.f1 = out.precision + out.recall > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

namespace {

nlohmann::json opt(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void to_json(nlohmann::json& j, const ConfusionCounts& c) {
  j = {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}, {"total", c.total()}};
}

void to_json(nlohmann::json& j, const VqaMetrics& m) {
  j = {{"counts", m.counts},
       {"precision", opt(m.precision)},
       {"recall", opt(m.recall)},
       {"f1", opt(m.f1)},
       {"accuracy", opt(m.accuracy)},
       {"specificity", opt(m.specificity)}};
}

void to_json(nlohmann::json& j, const VqaReport& r) {
  j = {{"overall", r.overall}, {"per_category", nlohmann::json::object()}};
  for (const auto& [cat, m] : r.per_category) j["per_category"][cat] = m;
}

void to_json(nlohmann::json& j, const AgreementReport& r) {
  j = {{"n", r.n},
       {"spearman", opt(r.spearman)},
       {"pearson", opt(r.pearson)},
       {"kendall", opt(r.kendall)},
       {"ccc", opt(r.ccc)},
       {"defined",
        {{"spearman", r.spearman.has_value()},
         {"pearson", r.pearson.has_value()},
         {"kendall", r.kendall.has_value()},
         {"ccc", r.ccc.has_value()}}}};
}

void to_json(nlohmann::json& j, const DistributionSummary& s) {
  j = {{"n", s.n},       {"range", {s.lo, s.hi}}, {"mean", s.mean},
       {"std", s.std},   {"mode", s.mode},        {"quartile_bins", s.quartile_bins}};
}

void to_json(nlohmann::json& j, const LevelRow& r) {
  auto ms = [](const MeanStd& m) { return nlohmann::json{{"mean", m.mean}, {"std", m.std}}; };
  j = {{"level", r.level}, {"n", r.n},         {"sea", ms(r.sea)}, {"reward", ms(r.reward)},
       {"penalty", ms(r.penalty)}, {"v", ms(r.v)}, {"P", ms(r.p)}};
}

}  // namespace sea
