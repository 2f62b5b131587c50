#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "essmart/common/error.h"
#include "models.h"

namespace essmart::learners {
namespace {

bool is_constant_column(const Dataset& d, std::size_t col) {
  for (std::size_t r = 1; r < d.rows.size(); ++r) {
    if (d.rows[r][col] != d.rows[0][col]) return false;
  }
  return true;
}

}  // namespace

NaiveBayesState NaiveBayesState::fit(const Dataset& d, const Parameters& p) {
  check_known(p, {"alpha", "var_smoothing"});
  const double alpha = param_number(p, "alpha", 1.0);
  const double var_smoothing = param_number(p, "var_smoothing", 1e-9);
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidParameter, "alpha must be > 0");
  if (!(var_smoothing > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "var_smoothing must be > 0");
  }
  const std::size_t k = d.label_domain.size();
  NaiveBayesState s;
  for (std::size_t c = 0; c < d.width(); ++c) {
    if (is_constant_column(d, c)) continue;
    switch (d.feature_kinds[c]) {
      case FeatureKind::kCount: s.count_cols.push_back(c); break;
      case FeatureKind::kContinuous: s.gaussian_cols.push_back(c); break;
      case FeatureKind::kIndicator: s.indicator_cols.push_back(c); break;
    }
  }
  for (std::size_t c : s.count_cols) {
    for (const auto& row : d.rows) {
      if (row[c] < 0.0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "count feature '" + d.feature_names[c] + "' has a negative value");
      }
    }
  }

  std::vector<std::size_t> label_of(d.size());
  std::vector<double> class_n(k, 0.0);
  for (std::size_t r = 0; r < d.size(); ++r) {
    label_of[r] = d.label_index(d.labels[r]);
    class_n[label_of[r]] += 1.0;
  }
  s.log_prior.resize(k);
  for (std::size_t y = 0; y < k; ++y) {
    s.log_prior[y] = std::log(class_n[y] / static_cast<double>(d.size()));
  }

  // Multinomial.
  s.log_theta.assign(k, std::vector<double>(s.count_cols.size(), 0.0));
  {
    std::vector<std::vector<double>> sums(k, std::vector<double>(s.count_cols.size(), 0.0));
    std::vector<double> totals(k, 0.0);
    for (std::size_t r = 0; r < d.size(); ++r) {
      for (std::size_t j = 0; j < s.count_cols.size(); ++j) {
        double v = d.rows[r][s.count_cols[j]];
        sums[label_of[r]][j] += v;
        totals[label_of[r]] += v;
      }
    }
    const double smoothing = alpha * static_cast<double>(s.count_cols.size());
    for (std::size_t y = 0; y < k; ++y) {
      for (std::size_t j = 0; j < s.count_cols.size(); ++j) {
        s.log_theta[y][j] = std::log((sums[y][j] + alpha) / (totals[y] + smoothing));
      }
    }
  }

  // Gaussian; epsilon is var_smoothing times the largest overall variance.
  s.mean.assign(k, std::vector<double>(s.gaussian_cols.size(), 0.0));
  s.var.assign(k, std::vector<double>(s.gaussian_cols.size(), 0.0));
  if (!s.gaussian_cols.empty()) {
    double max_var = 0.0;
    for (std::size_t c : s.gaussian_cols) {
      double m = 0.0;
      for (const auto& row : d.rows) m += row[c];
      m /= static_cast<double>(d.size());
      double v = 0.0;
      for (const auto& row : d.rows) v += (row[c] - m) * (row[c] - m);
      max_var = std::max(max_var, v / static_cast<double>(d.size()));
    }
    const double epsilon = var_smoothing * (max_var > 0.0 ? max_var : 1.0);
    for (std::size_t r = 0; r < d.size(); ++r) {
      for (std::size_t j = 0; j < s.gaussian_cols.size(); ++j) {
        s.mean[label_of[r]][j] += d.rows[r][s.gaussian_cols[j]];
      }
    }
    for (std::size_t y = 0; y < k; ++y) {
      for (auto& m : s.mean[y]) m /= class_n[y];
    }
    for (std::size_t r = 0; r < d.size(); ++r) {
      for (std::size_t j = 0; j < s.gaussian_cols.size(); ++j) {
        double diff = d.rows[r][s.gaussian_cols[j]] - s.mean[label_of[r]][j];
        s.var[label_of[r]][j] += diff * diff;
      }
    }
    for (std::size_t y = 0; y < k; ++y) {
      for (auto& v : s.var[y]) v = v / class_n[y] + epsilon;
    }
  }

  // Bernoulli with Laplace smoothing.
  s.log_p1.assign(k, std::vector<double>(s.indicator_cols.size(), 0.0));
  s.log_p0.assign(k, std::vector<double>(s.indicator_cols.size(), 0.0));
  {
    std::vector<std::vector<double>> ones(k, std::vector<double>(s.indicator_cols.size(), 0.0));
    for (std::size_t r = 0; r < d.size(); ++r) {
      for (std::size_t j = 0; j < s.indicator_cols.size(); ++j) {
        if (d.rows[r][s.indicator_cols[j]] > 0.5) ones[label_of[r]][j] += 1.0;
      }
    }
    for (std::size_t y = 0; y < k; ++y) {
      for (std::size_t j = 0; j < s.indicator_cols.size(); ++j) {
        double p1 = (ones[y][j] + alpha) / (class_n[y] + 2.0 * alpha);
        s.log_p1[y][j] = std::log(p1);
        s.log_p0[y][j] = std::log1p(-p1);
      }
    }
  }
  return s;
}

std::vector<double> NaiveBayesState::posterior(std::span<const double> x) const {
  const std::size_t k = log_prior.size();
  std::vector<double> joint(log_prior);
  for (std::size_t y = 0; y < k; ++y) {
    for (std::size_t j = 0; j < count_cols.size(); ++j) {
      double v = x[count_cols[j]];
      if (v != 0.0) joint[y] += v * log_theta[y][j];
    }
    for (std::size_t j = 0; j < gaussian_cols.size(); ++j) {
      double diff = x[gaussian_cols[j]] - mean[y][j];
      joint[y] += -0.5 * std::log(2.0 * std::numbers::pi * var[y][j]) -
                  diff * diff / (2.0 * var[y][j]);
    }
    for (std::size_t j = 0; j < indicator_cols.size(); ++j) {
      joint[y] += x[indicator_cols[j]] > 0.5 ? log_p1[y][j] : log_p0[y][j];
    }
  }
  double top = *std::max_element(joint.begin(), joint.end());
  double z = 0.0;
  for (double& v : joint) {
    v = std::exp(v - top);
    z += v;
  }
  for (double& v : joint) v /= z;
  return joint;
}

nlohmann::json NaiveBayesState::to_json() const {
  return {{"log_prior", log_prior},         {"count_cols", count_cols},
          {"log_theta", log_theta},         {"gaussian_cols", gaussian_cols},
          {"mean", mean},                   {"var", var},
          {"indicator_cols", indicator_cols}, {"log_p1", log_p1},
          {"log_p0", log_p0}};
}

NaiveBayesState NaiveBayesState::from_json(const nlohmann::json& j) {
  NaiveBayesState s;
  j.at("log_prior").get_to(s.log_prior);
  j.at("count_cols").get_to(s.count_cols);
  j.at("log_theta").get_to(s.log_theta);
  j.at("gaussian_cols").get_to(s.gaussian_cols);
  j.at("mean").get_to(s.mean);
  j.at("var").get_to(s.var);
  j.at("indicator_cols").get_to(s.indicator_cols);
  j.at("log_p1").get_to(s.log_p1);
  j.at("log_p0").get_to(s.log_p0);
  return s;
}

}  // namespace essmart::learners
