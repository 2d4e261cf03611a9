#include "banditlab/gts.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "banditlab/ids.hpp"

namespace banditlab {

double loss(LossKind kind, double predicted, int reward) {
  if (reward != 0 && reward != 1) {
    throw std::invalid_argument("loss: reward must be 0/1");
  }
  if (!(predicted >= 0.0) || !(predicted <= 1.0)) {
    throw std::invalid_argument("loss: prediction must be in [0,1]");
  }
  if (kind == LossKind::square) {
    double d = predicted - reward;
    return d * d;
  }
  double p = std::clamp(predicted, kPredictionClamp, 1.0 - kPredictionClamp);
  return reward == 1 ? -std::log(p) : -std::log(1.0 - p);
}

Expert::Expert(int num_contexts, int num_arms, std::vector<double> table)
    : num_contexts_(num_contexts), num_arms_(num_arms), table_(std::move(table)) {
  if (num_contexts_ < 1 || num_arms_ < 1) {
    throw std::invalid_argument("Expert: need >= 1 context and arm");
  }
  if (table_.size() != static_cast<std::size_t>(num_contexts_) *
                           static_cast<std::size_t>(num_arms_)) {
    throw std::invalid_argument("Expert: table size mismatch");
  }
  for (double v : table_) {
    if (!(v >= 0.0) || !(v <= 1.0)) {
      throw std::invalid_argument("Expert: predicted means must be in [0,1]");
    }
  }
}

double Expert::predict(int context, int arm) const {
  if (context < 0 || context >= num_contexts_ || arm < 0 || arm >= num_arms_) {
    throw std::out_of_range("Expert::predict: index out of range");
  }
  return table_[static_cast<std::size_t>(context) *
                    static_cast<std::size_t>(num_arms_) +
                static_cast<std::size_t>(arm)];
}

int Expert::policy_arm(int context) const {
  int best = 0;
  for (int a = 1; a < num_arms_; ++a) {
    if (predict(context, a) > predict(context, best)) best = a;
  }
  return best;
}

ExpertPool::ExpertPool(std::vector<Expert> experts, double eta, double gamma,
                       LossKind loss_kind, std::vector<double> prior)
    : experts_(std::move(experts)),
      eta_(eta),
      gamma_(gamma),
      loss_kind_(loss_kind) {
  if (experts_.empty()) throw std::invalid_argument("ExpertPool: no experts");
  for (const Expert& e : experts_) {
    if (e.num_arms() != experts_.front().num_arms() ||
        e.num_contexts() != experts_.front().num_contexts()) {
      throw std::invalid_argument("ExpertPool: experts disagree on shape");
    }
  }
  if (!(eta_ > 0.0)) throw std::invalid_argument("ExpertPool: eta must be > 0");
  if (!(gamma_ >= 0.0) || !(gamma_ <= 1.0)) {
    throw std::invalid_argument("ExpertPool: gamma must be in [0,1]");
  }
  if (prior.empty()) {
    weights_.assign(experts_.size(), 1.0 / static_cast<double>(experts_.size()));
  } else {
    if (prior.size() != experts_.size()) {
      throw std::invalid_argument("ExpertPool: prior size mismatch");
    }
    for (double w : prior) {
      if (!(w > 0.0)) {
        throw std::invalid_argument("ExpertPool: prior weights must be > 0");
      }
    }
    weights_ = std::move(prior);
  }
}

double ExpertPool::total_weight() const {
  double w = 0.0;
  for (double v : weights_) w += v;
  return w;
}

ActionDistribution ExpertPool::action_distribution(int context) const {
  const int k = num_arms();
  ActionDistribution dist;
  dist.probs.assign(static_cast<std::size_t>(k), gamma_ / k);
  double w_total = total_weight();
  for (std::size_t i = 0; i < experts_.size(); ++i) {
    int a = experts_[i].policy_arm(context);
    dist.probs[static_cast<std::size_t>(a)] +=
        (1.0 - gamma_) * weights_[i] / w_total;
  }
  return dist;
}

ExpertPool ExpertPool::updated(int context, int arm, int reward) const {
  ExpertPool next = *this;
  for (std::size_t i = 0; i < experts_.size(); ++i) {
    double l = loss(loss_kind_, experts_[i].predict(context, arm), reward);
    next.weights_[i] *= std::exp(-eta_ * l);
  }
  // Exact power-of-two rescale keeps long runs away from underflow without
  // perturbing weight ratios.
  double wmax = *std::max_element(next.weights_.begin(), next.weights_.end());
  while (wmax > 0.0 && wmax < 0x1.0p-512) {
    for (double& w : next.weights_) w = std::ldexp(w, 512);
    wmax = std::ldexp(wmax, 512);
  }
  return next;
}

std::vector<double> ExpertPool::posterior() const {
  double w_total = total_weight();
  std::vector<double> p(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) p[i] = weights_[i] / w_total;
  return p;
}

double default_gamma(LossKind kind, int num_arms, int horizon) {
  if (num_arms < 1 || horizon < 1) {
    throw std::invalid_argument("default_gamma: bad arguments");
  }
  double k = static_cast<double>(num_arms);
  double t = static_cast<double>(horizon);
  double g = kind == LossKind::logarithmic
                 ? std::pow(k, 2.0 / 3.0) / std::cbrt(t)
                 : std::cbrt(k / t);
  return std::min(1.0, g);
}

std::vector<Expert> load_experts_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_experts_csv: cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("load_experts_csv: empty file " + path.string());
  }
  // Tolerate surrounding whitespace and a UTF-8 BOM in the header.
  auto strip = [](std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    std::size_t start = 0;
    if (s.size() >= 3 && s.compare(0, 3, "\xef\xbb\xbf") == 0) start = 3;
    while (start < s.size() && s[start] == ' ') ++start;
    return s.substr(start);
  };
  if (strip(line) != "expert_id,context_id,arm_id,predicted_mean") {
    throw std::runtime_error("load_experts_csv: bad header in " + path.string());
  }

  struct Row {
    int expert, context, arm;
    double mean;
  };
  std::vector<Row> rows;
  int max_expert = -1, max_context = -1, max_arm = -1;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = strip(line);
    if (s.empty()) continue;
    std::istringstream ss(s);
    Row r{};
    char c1, c2, c3;
    if (!(ss >> r.expert >> c1 >> r.context >> c2 >> r.arm >> c3 >> r.mean) ||
        c1 != ',' || c2 != ',' || c3 != ',') {
      throw std::runtime_error("load_experts_csv: malformed row at line " +
                               std::to_string(line_no));
    }
    if (r.expert < 0 || r.context < 0 || r.arm < 0) {
      throw std::runtime_error("load_experts_csv: negative id at line " +
                               std::to_string(line_no));
    }
    if (!(r.mean >= 0.0) || !(r.mean <= 1.0)) {
      throw std::runtime_error(
          "load_experts_csv: predicted_mean outside [0,1] at line " +
          std::to_string(line_no));
    }
    max_expert = std::max(max_expert, r.expert);
    max_context = std::max(max_context, r.context);
    max_arm = std::max(max_arm, r.arm);
    rows.push_back(r);
  }
  if (rows.empty()) {
    throw std::runtime_error("load_experts_csv: no data rows in " +
                             path.string());
  }
  const int ne = max_expert + 1, nc = max_context + 1, na = max_arm + 1;
  std::vector<std::vector<double>> tables(
      static_cast<std::size_t>(ne),
      std::vector<double>(static_cast<std::size_t>(nc) *
                              static_cast<std::size_t>(na)));
  std::vector<std::vector<bool>> seen(
      static_cast<std::size_t>(ne),
      std::vector<bool>(static_cast<std::size_t>(nc) *
                            static_cast<std::size_t>(na),
                        false));
  for (const Row& r : rows) {
    std::size_t cell = static_cast<std::size_t>(r.context) *
                           static_cast<std::size_t>(na) +
                       static_cast<std::size_t>(r.arm);
    if (seen[static_cast<std::size_t>(r.expert)][cell]) {
      throw std::runtime_error("load_experts_csv: duplicate entry for expert " +
                               std::to_string(r.expert));
    }
    seen[static_cast<std::size_t>(r.expert)][cell] = true;
    tables[static_cast<std::size_t>(r.expert)][cell] = r.mean;
  }
  for (int e = 0; e < ne; ++e) {
    for (std::size_t cell = 0; cell < seen[static_cast<std::size_t>(e)].size();
         ++cell) {
      if (!seen[static_cast<std::size_t>(e)][cell]) {
        throw std::runtime_error(
            "load_experts_csv: incomplete table for expert " +
            std::to_string(e));
      }
    }
  }
  std::vector<Expert> experts;
  experts.reserve(static_cast<std::size_t>(ne));
  for (int e = 0; e < ne; ++e) {
    experts.emplace_back(nc, na, std::move(tables[static_cast<std::size_t>(e)]));
  }
  return experts;
}

}  // namespace banditlab
