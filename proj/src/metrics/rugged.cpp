#include "arxivroll/metrics/rugged.hpp"

#include <set>

#include "arxivroll/metrics/correlation.hpp"

namespace arxivroll::metrics {

PerfTable::PerfTable(std::vector<std::string> models,
                     std::vector<BenchmarkRef> benchmarks)
    : models_(std::move(models)), benchmarks_(std::move(benchmarks)) {
  std::set<std::string> seen;
  for (const auto& m : models_) {
    if (!seen.insert(m).second) throw DomainError("duplicate model " + m);
  }
  seen.clear();
  std::map<std::string, std::pair<int, int>> sides;
  for (const auto& b : benchmarks_) {
    if (!seen.insert(b.id).second) {
      throw DomainError("duplicate benchmark " + b.id);
    }
    if (b.pair_id.empty()) continue;
    auto& s = sides[b.pair_id];
    (b.visibility == Visibility::kPublic ? s.first : s.second)++;
  }
  for (const auto& [id, s] : sides) {
    if (s.first != 1 || s.second != 1) {
      throw DomainError("pair " + id +
                        " must link exactly one public and one private "
                        "benchmark");
    }
  }
}

void PerfTable::set(const std::string& model, const std::string& benchmark,
                    double score) {
  scores_[{model, benchmark}] = score;
}

std::optional<double> PerfTable::get(const std::string& model,
                                     const std::string& benchmark) const {
  auto it = scores_.find({model, benchmark});
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

double PerfTable::at(const std::string& model,
                     const std::string& benchmark) const {
  auto v = get(model, benchmark);
  if (!v) {
    throw DomainError("no score for model " + model + " on benchmark " +
                      benchmark);
  }
  return *v;
}

bool PerfTable::has_model(const std::string& model) const {
  return std::find(models_.begin(), models_.end(), model) != models_.end();
}

std::vector<PerfTable::Pair> PerfTable::pairs() const {
  std::map<std::string, Pair> by_id;
  for (const auto& b : benchmarks_) {
    if (b.pair_id.empty()) continue;
    Pair& p = by_id[b.pair_id];
    p.pair_id = b.pair_id;
    (b.visibility == Visibility::kPublic ? p.public_id : p.private_id) = b.id;
  }
  std::vector<Pair> out;
  for (auto& [id, p] : by_id) out.push_back(std::move(p));
  return out;
}

std::vector<std::string> PerfTable::unmatched(Visibility v) const {
  std::vector<std::string> out;
  for (const auto& b : benchmarks_) {
    if (b.pair_id.empty() && b.visibility == v) out.push_back(b.id);
  }
  return out;
}

std::vector<std::string> PerfTable::all_private() const {
  std::vector<std::string> out;
  for (const auto& b : benchmarks_) {
    if (b.visibility == Visibility::kPrivate) out.push_back(b.id);
  }
  return out;
}

PerfTable PerfTable::swapped() const {
  PerfTable t = *this;
  for (auto& b : t.benchmarks_) {
    b.visibility = b.visibility == Visibility::kPublic ? Visibility::kPrivate
                                                       : Visibility::kPublic;
  }
  return t;
}

namespace {

void require_model(const PerfTable& table, const std::string& model) {
  if (!table.has_model(model)) {
    throw DomainError("model " + model + " is not in the score table");
  }
}

double average(const PerfTable& table, const std::string& model,
               const std::vector<std::string>& ids) {
  double sum = 0.0;
  for (const auto& id : ids) sum += table.at(model, id);
  return sum / static_cast<double>(ids.size());
}

}  // namespace

Rs1Result rs1_absolute(const PerfTable& table, const std::string& model) {
  require_model(table, model);
  auto pairs = table.pairs();
  auto pub = table.unmatched(Visibility::kPublic);
  auto priv = table.unmatched(Visibility::kPrivate);
  bool have_unmatched = !pub.empty() && !priv.empty();
  if (pairs.empty() && !have_unmatched) {
    throw PreconditionError(
        "RS_I needs a public-private pair or unmatched benchmarks on both "
        "sides");
  }

  Rs1Result r;
  if (pairs.empty()) {
    r.warnings.push_back("no public-private pairs; pair term is 0");
  } else {
    double sum = 0.0;
    for (const auto& p : pairs) {
      double mp = table.at(model, p.public_id);
      double mc = table.at(model, p.private_id);
      if (mp + mc == 0.0) {
        r.warnings.push_back("pair " + p.pair_id +
                             " has zero scores on both sides; term is 0");
        continue;
      }
      sum += (mp - mc) / (mp + mc);
    }
    r.value += 2.0 * sum / static_cast<double>(pairs.size());
  }

  if (!have_unmatched) {
    if (!pub.empty() || !priv.empty()) {
      r.warnings.push_back(
          "unmatched benchmarks on one side only; unmatched term is 0");
    }
    return r;
  }
  double ap = average(table, model, pub);
  double ac = average(table, model, priv);
  if (ap + ac == 0.0) {
    r.warnings.push_back("unmatched averages are both zero; term is 0");
  } else {
    r.value += 2.0 * (ap - ac) / (ap + ac);
  }
  return r;
}

std::map<std::string, double> rs1_relative(
    const PerfTable& table, const std::vector<std::string>& models) {
  if (models.size() < 2) {
    throw PreconditionError("relative RS_I needs at least 2 models");
  }
  for (const auto& m : models) require_model(table, m);
  auto pairs = table.pairs();
  if (pairs.empty()) {
    throw PreconditionError("relative RS_I needs at least one pair");
  }
  auto ranks_on = [&](const std::string& bench) {
    std::vector<double> scores;
    for (const auto& m : models) scores.push_back(table.at(m, bench));
    return average_ranks(scores, /*descending=*/true);
  };
  std::vector<double> shift(models.size(), 0.0);
  for (const auto& p : pairs) {
    auto rp = ranks_on(p.public_id);
    auto rc = ranks_on(p.private_id);
    for (std::size_t i = 0; i < models.size(); ++i) shift[i] += rc[i] - rp[i];
  }
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < models.size(); ++i) {
    out[models[i]] = shift[i] / static_cast<double>(pairs.size());
  }
  return out;
}

Rs2Result rs2(const PerfTable& table, const std::string& model) {
  require_model(table, model);
  auto ids = table.all_private();
  if (ids.size() < 2) {
    throw PreconditionError("RS_II needs at least 2 private benchmarks, got " +
                            std::to_string(ids.size()));
  }
  std::vector<double> scores;
  for (const auto& id : ids) scores.push_back(table.at(model, id));
  Rs2Result r;
  r.rs2 = population_std(scores);
  double m = mean(scores);
  if (m > 0.0) r.rs2_normalized = r.rs2 / m;
  return r;
}

std::vector<BenchmarkRef> PairConfig::benchmarks() const {
  std::vector<BenchmarkRef> out;
  for (const auto& [id, p] : pairs) {
    out.push_back({p.first, Visibility::kPublic, id});
    out.push_back({p.second, Visibility::kPrivate, id});
  }
  for (const auto& b : unmatched_public) {
    out.push_back({b, Visibility::kPublic, ""});
  }
  for (const auto& b : unmatched_private) {
    out.push_back({b, Visibility::kPrivate, ""});
  }
  return out;
}

void to_json(nlohmann::json& j, const PairConfig& c) {
  nlohmann::json pairs = nlohmann::json::object();
  for (const auto& [id, p] : c.pairs) {
    pairs[id] = {{"public", p.first}, {"private", p.second}};
  }
  j = {{"pairs", pairs},
       {"unmatched_public", c.unmatched_public},
       {"unmatched_private", c.unmatched_private}};
}

void from_json(const nlohmann::json& j, PairConfig& c) {
  c = {};
  const nlohmann::json pairs = j.value("pairs", nlohmann::json::object());
  for (const auto& [id, p] : pairs.items()) {
    c.pairs[id] = {p.at("public").get<std::string>(),
                   p.at("private").get<std::string>()};
  }
  c.unmatched_public =
      j.value("unmatched_public", std::vector<std::string>{});
  c.unmatched_private =
      j.value("unmatched_private", std::vector<std::string>{});
}

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> read_optional(const nlohmann::json& j, const char* k) {
  if (!j.contains(k) || j.at(k).is_null()) return std::nullopt;
  return j.at(k).get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const RSReport& r) {
  j = {{"model_id", r.model_id},
       {"rs1_absolute", r.rs1_absolute},
       {"rs1_relative", optional_number(r.rs1_relative)},
       {"rs2", optional_number(r.rs2)},
       {"rs2_normalized", optional_number(r.rs2_normalized)},
       {"warnings", r.warnings}};
}

void from_json(const nlohmann::json& j, RSReport& r) {
  j.at("model_id").get_to(r.model_id);
  j.at("rs1_absolute").get_to(r.rs1_absolute);
  r.rs1_relative = read_optional(j, "rs1_relative");
  r.rs2 = read_optional(j, "rs2");
  r.rs2_normalized = read_optional(j, "rs2_normalized");
  r.warnings = j.value("warnings", std::vector<std::string>{});
}

std::vector<RSReport> rugged_reports(const PerfTable& table) {
  std::optional<std::map<std::string, double>> relative;
  if (table.models().size() >= 2 && !table.pairs().empty()) {
    relative = rs1_relative(table, table.models());
  }
  bool have_rs2 = table.all_private().size() >= 2;
  std::vector<RSReport> out;
  for (const auto& m : table.models()) {
    RSReport r;
    r.model_id = m;
    auto a = rs1_absolute(table, m);
    r.rs1_absolute = a.value;
    r.warnings = a.warnings;
    if (relative) r.rs1_relative = relative->at(m);
    if (have_rs2) {
      auto s = rs2(table, m);
      r.rs2 = s.rs2;
      r.rs2_normalized = s.rs2_normalized;
      if (!s.rs2_normalized) {
        r.warnings.push_back("mean private score is 0; RS_II^N undefined");
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace arxivroll::metrics
