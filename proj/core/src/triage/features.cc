#include <algorithm>

#include "essmart/common/error.h"
#include "essmart/textproc/tokenizer.h"
#include "essmart/ticketgen/title.h"
#include "essmart/triage/triage.h"

namespace essmart::triage {
namespace {

const std::string& attribute_value(const corpus::UserRequest& r, CategoricalAttr attr) {
  return attr == CategoricalAttr::kOrganization ? r.organization : r.brand_name;
}

std::vector<std::string> source_tokens(const corpus::UserRequest& request,
                                       const SourceTexts& sources, TextSource source) {
  switch (source) {
    case TextSource::kConversation:
      return text::word_tokens(corpus::conversation_text(request));
    case TextSource::kExtractiveSummary:
      if (!sources.extractive) {
        throw Error(ErrorCode::kMissingSource,
                    "request " + request.id + " has no extractive summary");
      }
      return *sources.extractive;
    case TextSource::kAbstractiveSummary:
      if (!sources.abstractive) {
        throw Error(ErrorCode::kMissingSource,
                    "request " + request.id + " has no abstractive summary");
      }
      return *sources.abstractive;
  }
  return {};
}

}  // namespace

SourceTexts compute_sources(const corpus::UserRequest& request, bool extractive,
                            bool abstractive, const SourceOptions& options) {
  SourceTexts out;
  if (!extractive && !abstractive) return out;
  if (corpus::conversation_sentences(request).empty()) {
    if (extractive) out.extractive.emplace();
    if (abstractive) out.abstractive.emplace();
    return out;
  }
  const auto summary = extractive::summarize(request, options.summarizer);
  if (extractive) out.extractive = text::word_tokens(summary.text());
  if (abstractive) {
    out.abstractive = text::word_tokens(ticketgen::generate_title(summary.selected, options.title).title);
  }
  return out;
}

std::size_t Featurizer::width() const {
  return blocks_.empty() ? 0 : blocks_.back().offset + blocks_.back().width;
}

void Featurizer::layout() {
  blocks_.clear();
  std::size_t offset = 0;
  for (TextSource s : recipe_.text_sources) {
    blocks_.push_back({std::string(to_string(s)), offset, vectorizer_->width(), false});
    offset += vectorizer_->width();
  }
  for (CategoricalAttr a : recipe_.categorical) {
    const std::size_t w = categories_.at(a).size();
    blocks_.push_back({std::string(to_string(a)), offset, w, true});
    offset += w;
  }
}

std::vector<std::string> Featurizer::feature_names() const {
  std::vector<std::string> terms;
  if (vectorizer_) {
    terms.resize(vectorizer_->width());
    for (const auto& [term, col] : vectorizer_->vocabulary()) terms[col] = term;
  }
  std::vector<std::string> out;
  for (TextSource s : recipe_.text_sources) {
    for (const auto& t : terms) out.push_back(std::string(to_string(s)) + ':' + t);
  }
  for (CategoricalAttr a : recipe_.categorical) {
    for (const auto& v : categories_.at(a)) out.push_back(std::string(to_string(a)) + '=' + v);
  }
  return out;
}

std::vector<learners::FeatureKind> Featurizer::feature_kinds() const {
  std::vector<learners::FeatureKind> out;
  for (const auto& b : blocks_) {
    out.insert(out.end(), b.width,
               b.categorical ? learners::FeatureKind::kIndicator : learners::FeatureKind::kCount);
  }
  return out;
}

std::vector<double> Featurizer::build(const corpus::UserRequest& request,
                                      const SourceTexts& sources) const {
  std::vector<double> out;
  out.reserve(width());
  for (TextSource s : recipe_.text_sources) {
    const auto dense = vectorizer_->transform_dense(source_tokens(request, sources, s));
    out.insert(out.end(), dense.begin(), dense.end());
  }
  for (CategoricalAttr a : recipe_.categorical) {
    const auto& values = categories_.at(a);
    std::vector<double> block(values.size(), 0.0);
    auto it = std::lower_bound(values.begin(), values.end(), attribute_value(request, a));
    if (it != values.end() && *it == attribute_value(request, a)) {
      block[static_cast<std::size_t>(it - values.begin())] = 1.0;
    }
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

nlohmann::json Featurizer::to_json() const {
  nlohmann::json categories = nlohmann::json::object();
  for (const auto& [a, values] : categories_) categories[std::string(to_string(a))] = values;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : blocks_) {
    blocks.push_back({{"name", b.name}, {"offset", b.offset}, {"width", b.width}});
  }
  return {{"recipe", recipe_.to_json()},
          {"vectorizer", vectorizer_ ? vectorizer_->to_json() : nlohmann::json(nullptr)},
          {"categories", categories},
          {"blocks", blocks}};
}

Featurizer Featurizer::from_json(const nlohmann::json& j) {
  Featurizer f;
  try {
    f.recipe_ = FeatureRecipe::from_json(j.at("recipe"));
    if (!j.at("vectorizer").is_null()) {
      f.vectorizer_ = text::VectorizerModel::from_json(j.at("vectorizer"));
    }
    for (const auto& [name, values] : j.at("categories").items()) {
      f.categories_[categorical_attr_from_string(name)] = values.get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptArtifact, std::string("featurizer: ") + e.what());
  }
  if (!f.recipe_.text_sources.empty() && !f.vectorizer_) {
    throw Error(ErrorCode::kCorruptArtifact, "featurizer lacks its vectorizer");
  }
  for (CategoricalAttr a : f.recipe_.categorical) {
    if (!f.categories_.contains(a)) {
      throw Error(ErrorCode::kCorruptArtifact, "featurizer lacks categories for an attribute");
    }
  }
  f.layout();
  const auto& stored = j.at("blocks");
  if (stored.size() != f.blocks_.size()) {
    throw Error(ErrorCode::kCorruptArtifact, "featurizer block layout mismatch");
  }
  for (std::size_t i = 0; i < stored.size(); ++i) {
    if (stored[i].value("name", "") != f.blocks_[i].name ||
        stored[i].value("offset", std::size_t{0}) != f.blocks_[i].offset ||
        stored[i].value("width", std::size_t{0}) != f.blocks_[i].width) {
      throw Error(ErrorCode::kCorruptArtifact, "featurizer block layout mismatch");
    }
  }
  return f;
}

Featurizer fit_featurizer(const FeatureRecipe& recipe,
                          std::span<const corpus::UserRequest> requests,
                          std::span<const SourceTexts> sources) {
  recipe.validate();
  if (requests.size() != sources.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one SourceTexts entry is needed per request");
  }
  Featurizer f;
  f.recipe_ = recipe;
  if (!recipe.text_sources.empty()) {
    std::vector<std::vector<std::string>> documents;
    for (std::size_t i = 0; i < requests.size(); ++i) {
      for (TextSource s : recipe.text_sources) {
        documents.push_back(source_tokens(requests[i], sources[i], s));
      }
    }
    f.vectorizer_ = text::fit_vectorizer(documents, recipe.vector_mode, recipe.normalization,
                                         text::stopword_profile(recipe.stopword_profile));
  }
  for (CategoricalAttr a : recipe.categorical) {
    std::set<std::string> values;
    for (const auto& r : requests) {
      if (!attribute_value(r, a).empty()) values.insert(attribute_value(r, a));
    }
    f.categories_[a] = {values.begin(), values.end()};
  }
  f.layout();
  return f;
}

std::vector<double> build_features(const corpus::UserRequest& request,
                                   const Featurizer& featurizer, const SourceTexts& sources) {
  return featurizer.build(request, sources);
}

}  // namespace essmart::triage
