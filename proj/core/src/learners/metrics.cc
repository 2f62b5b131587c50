#include "essmart/learners/metrics.h"

#include <algorithm>

#include "essmart/common/error.h"

namespace essmart::learners {

EvalReport make_report(const std::vector<std::string>& labels,
                       const std::vector<std::string>& actual,
                       const std::vector<std::string>& predicted) {
  if (actual.size() != predicted.size()) {
    throw Error(ErrorCode::kInvalidArgument, "actual and predicted differ in length");
  }
  EvalReport report;
  report.labels = labels;
  std::vector<std::string> extra;
  for (const auto* list : {&actual, &predicted}) {
    for (const auto& l : *list) {
      if (std::find(report.labels.begin(), report.labels.end(), l) == report.labels.end() &&
          std::find(extra.begin(), extra.end(), l) == extra.end()) {
        extra.push_back(l);
      }
    }
  }
  std::sort(extra.begin(), extra.end());
  report.labels.insert(report.labels.end(), extra.begin(), extra.end());

  const std::size_t k = report.labels.size();
  auto index = [&](const std::string& l) {
    return static_cast<std::size_t>(
        std::find(report.labels.begin(), report.labels.end(), l) - report.labels.begin());
  };
  report.confusion.assign(k, std::vector<std::size_t>(k, 0));
  std::size_t correct = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    std::size_t a = index(actual[i]);
    std::size_t p = index(predicted[i]);
    ++report.confusion[a][p];
    if (a == p) ++correct;
  }

  report.per_class.resize(k);
  const double total = static_cast<double>(actual.size());
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t tp = report.confusion[c][c];
    std::size_t row = 0, col = 0;
    for (std::size_t o = 0; o < k; ++o) {
      row += report.confusion[c][o];
      col += report.confusion[o][c];
    }
    ClassMetrics& m = report.per_class[c];
    m.support = row;
    m.precision = col > 0 ? static_cast<double>(tp) / static_cast<double>(col) : 0.0;
    m.recall = row > 0 ? static_cast<double>(tp) / static_cast<double>(row) : 0.0;
    m.f1 = m.precision + m.recall > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    if (total > 0.0) {
      const double w = static_cast<double>(row) / total;
      report.precision += w * m.precision;
      report.recall += w * m.recall;
      report.f1 += w * m.f1;
    }
  }
  report.accuracy = total > 0.0 ? static_cast<double>(correct) / total : 0.0;
  return report;
}

EvalReport evaluate(const ClassifierModel& model, const Dataset& dataset) {
  std::vector<std::string> predicted;
  predicted.reserve(dataset.size());
  for (const auto& row : dataset.rows) predicted.push_back(model.predict(row).label);
  std::vector<std::string> labels = model.label_domain();
  return make_report(labels, dataset.labels, predicted);
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json classes = nlohmann::json::array();
  for (std::size_t c = 0; c < labels.size(); ++c) {
    classes.push_back({{"label", labels[c]},
                       {"precision", per_class[c].precision},
                       {"recall", per_class[c].recall},
                       {"f1", per_class[c].f1},
                       {"support", per_class[c].support}});
  }
  nlohmann::json out = {{"labels", labels},     {"per_class", classes},
                        {"confusion", confusion}, {"precision", precision},
                        {"recall", recall},     {"f1", f1},
                        {"accuracy", accuracy}};
  if (!fold_f1.empty()) {
    out["fold_f1"] = fold_f1;
    out["mean_fold_f1"] = mean_fold_f1;
  }
  return out;
}

EvalReport EvalReport::from_json(const nlohmann::json& j) {
  EvalReport r;
  j.at("labels").get_to(r.labels);
  for (const auto& c : j.at("per_class")) {
    r.per_class.push_back({c.at("precision").get<double>(), c.at("recall").get<double>(),
                           c.at("f1").get<double>(), c.at("support").get<std::size_t>()});
  }
  j.at("confusion").get_to(r.confusion);
  j.at("precision").get_to(r.precision);
  j.at("recall").get_to(r.recall);
  j.at("f1").get_to(r.f1);
  j.at("accuracy").get_to(r.accuracy);
  r.fold_f1 = j.value("fold_f1", std::vector<double>{});
  r.mean_fold_f1 = j.value("mean_fold_f1", 0.0);
  return r;
}

}  // namespace essmart::learners
