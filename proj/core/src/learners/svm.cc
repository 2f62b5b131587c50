#include <algorithm>
#include <cmath>

#include "essmart/common/error.h"
#include "models.h"

namespace essmart::learners {
namespace {

constexpr std::size_t kMaxKernelRows = 2000;

struct SparseRow {
  std::vector<std::size_t> index;
  std::vector<double> value;
};

// Rows with a trailing constant 1 so the bias is learned as a weight.
std::vector<SparseRow> augmented_rows(const Dataset& d) {
  std::vector<SparseRow> out(d.size());
  for (std::size_t r = 0; r < d.size(); ++r) {
    for (std::size_t c = 0; c < d.width(); ++c) {
      if (d.rows[r][c] != 0.0) {
        out[r].index.push_back(c);
        out[r].value.push_back(d.rows[r][c]);
      }
    }
    out[r].index.push_back(d.width());
    out[r].value.push_back(1.0);
  }
  return out;
}

std::vector<double> pegasos_linear(const std::vector<SparseRow>& rows,
                                   const std::vector<double>& y, std::size_t dim,
                                   double lambda, std::size_t epochs, Rng& rng) {
  const std::size_t n = rows.size();
  std::vector<double> v(dim, 0.0);
  double scale = 1.0;
  double vnorm2 = 0.0;
  const double radius = 1.0 / std::sqrt(lambda);
  std::vector<double> average(dim, 0.0);
  std::size_t averaged = 0;
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    for (std::size_t step = 0; step < n; ++step) {
      ++t;
      const std::size_t i = rng.uniform_index(n);
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      double dot = 0.0;
      for (std::size_t k = 0; k < rows[i].index.size(); ++k) {
        dot += v[rows[i].index[k]] * rows[i].value[k];
      }
      const double margin = y[i] * scale * dot;
      if (t == 1) {
        std::fill(v.begin(), v.end(), 0.0);
        scale = 1.0;
        vnorm2 = 0.0;
      } else {
        scale *= 1.0 - 1.0 / static_cast<double>(t);
      }
      if (margin < 1.0) {
        const double delta = eta * y[i] / scale;
        for (std::size_t k = 0; k < rows[i].index.size(); ++k) {
          double& slot = v[rows[i].index[k]];
          const double updated = slot + delta * rows[i].value[k];
          vnorm2 += updated * updated - slot * slot;
          slot = updated;
        }
      }
      const double norm = scale * std::sqrt(std::max(vnorm2, 0.0));
      if (norm > radius) scale *= radius / norm;
      if (scale < 1e-9) {
        for (double& x : v) x *= scale;
        vnorm2 *= scale * scale;
        scale = 1.0;
      }
    }
    if (epoch >= epochs / 2) {
      for (std::size_t c = 0; c < dim; ++c) average[c] += scale * v[c];
      ++averaged;
    }
  }
  for (double& x : average) x /= static_cast<double>(averaged);
  return average;
}

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double diff = a[i] - b[i];
    d2 += diff * diff;
  }
  // The +1 acts as an implicit bias term.
  return std::exp(-gamma * d2) + 1.0;
}

}  // namespace

SvmState SvmState::fit(const Dataset& d, const Parameters& p, Rng& rng) {
  check_known(p, {"C", "kernel", "gamma", "epochs"});
  const double c = param_number(p, "C", 1.0);
  const std::string kernel = param_string(p, "kernel", "linear");
  const auto epochs = static_cast<std::size_t>(param_number(p, "epochs", 50));
  if (!(c > 0.0)) throw Error(ErrorCode::kInvalidParameter, "C must be > 0");
  if (epochs == 0) throw Error(ErrorCode::kInvalidParameter, "epochs must be >= 1");
  if (kernel != "linear" && kernel != "rbf") {
    throw Error(ErrorCode::kInvalidParameter, "kernel must be linear or rbf");
  }
  SvmState s;
  s.rbf = kernel == "rbf";
  const std::size_t n = d.size();
  const double lambda = 1.0 / (c * static_cast<double>(n));
  const std::size_t k = d.label_domain.size();
  const std::size_t machines = k == 2 ? 1 : k;
  auto targets = [&](std::size_t m) {
    const std::size_t positive = k == 2 ? 1 : m;
    std::vector<double> y(n);
    for (std::size_t r = 0; r < n; ++r) {
      y[r] = d.label_index(d.labels[r]) == positive ? 1.0 : -1.0;
    }
    return y;
  };

  if (!s.rbf) {
    auto rows = augmented_rows(d);
    for (std::size_t m = 0; m < machines; ++m) {
      s.weights.push_back(pegasos_linear(rows, targets(m), d.width() + 1, lambda,
                                         epochs, rng));
    }
    return s;
  }

  if (n > kMaxKernelRows) {
    throw Error(ErrorCode::kInvalidParameter,
                "rbf kernel supports at most 2000 training rows");
  }
  // gamma "scale" = 1 / (width * variance of all entries).
  const auto gamma_param = p.find("gamma");
  if (gamma_param == p.end() || std::holds_alternative<std::string>(gamma_param->second)) {
    const std::string g = param_string(p, "gamma", "scale");
    if (g != "scale") throw Error(ErrorCode::kInvalidParameter, "gamma must be 'scale' or a number");
    double mean = 0.0, sq = 0.0;
    const double count = static_cast<double>(n * std::max<std::size_t>(d.width(), 1));
    for (const auto& row : d.rows) {
      for (double x : row) {
        mean += x;
        sq += x * x;
      }
    }
    mean /= count;
    const double var = sq / count - mean * mean;
    s.gamma = var > 0.0 ? 1.0 / (static_cast<double>(d.width()) * var) : 1.0;
  } else {
    s.gamma = std::get<double>(gamma_param->second);
    if (!(s.gamma > 0.0)) throw Error(ErrorCode::kInvalidParameter, "gamma must be > 0");
  }

  std::vector<std::vector<double>> gram(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      gram[i][j] = gram[j][i] = rbf_kernel(d.rows[i], d.rows[j], s.gamma);
    }
  }
  std::vector<std::vector<double>> alphas;
  const std::size_t steps = epochs * n;
  for (std::size_t m = 0; m < machines; ++m) {
    auto y = targets(m);
    std::vector<double> alpha(n, 0.0);
    std::vector<double> g(n, 0.0);  // sum_j alpha_j y_j K(i, j)
    for (std::size_t t = 1; t <= steps; ++t) {
      const std::size_t i = rng.uniform_index(n);
      const double margin = y[i] * g[i] / (lambda * static_cast<double>(t));
      if (margin < 1.0) {
        alpha[i] += 1.0;
        for (std::size_t j = 0; j < n; ++j) g[j] += y[i] * gram[i][j];
      }
    }
    for (std::size_t i = 0; i < n; ++i) alpha[i] *= y[i];
    alphas.push_back(std::move(alpha));
  }
  // Keep rows that are support vectors of at least one machine.
  const double norm = 1.0 / (lambda * static_cast<double>(steps));
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t m = 0; m < machines; ++m) {
      if (alphas[m][i] != 0.0) {
        keep.push_back(i);
        break;
      }
    }
  }
  for (std::size_t i : keep) s.support.push_back(d.rows[i]);
  s.coef.assign(machines, {});
  for (std::size_t m = 0; m < machines; ++m) {
    for (std::size_t i : keep) s.coef[m].push_back(alphas[m][i] * norm);
  }
  s.bias.assign(machines, 0.0);
  return s;
}

std::vector<double> SvmState::decision(std::span<const double> x) const {
  std::vector<double> out;
  if (!rbf) {
    for (const auto& w : weights) {
      double f = w.back();
      for (std::size_t c = 0; c < x.size(); ++c) f += w[c] * x[c];
      out.push_back(f);
    }
    return out;
  }
  std::vector<double> k(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) k[i] = rbf_kernel(support[i], x, gamma);
  for (std::size_t m = 0; m < coef.size(); ++m) {
    double f = bias[m];
    for (std::size_t i = 0; i < support.size(); ++i) f += coef[m][i] * k[i];
    out.push_back(f);
  }
  return out;
}

nlohmann::json SvmState::to_json() const {
  return {{"rbf", rbf},         {"gamma", gamma}, {"weights", weights},
          {"support", support}, {"coef", coef},   {"bias", bias}};
}

SvmState SvmState::from_json(const nlohmann::json& j) {
  SvmState s;
  j.at("rbf").get_to(s.rbf);
  j.at("gamma").get_to(s.gamma);
  j.at("weights").get_to(s.weights);
  j.at("support").get_to(s.support);
  j.at("coef").get_to(s.coef);
  j.at("bias").get_to(s.bias);
  return s;
}

}  // namespace essmart::learners
