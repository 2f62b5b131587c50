#include "essmart/ticketgen/title.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "common/embedded_data.h"
#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "essmart/textproc/tokenizer.h"
#include "essmart/textproc/vectorizer.h"
#include "essmart/textproc/word_lists.h"

namespace essmart::ticketgen {
namespace {

const std::map<std::string, Pos, std::less<>>& pos_lexicon() {
  static const auto lexicon = [] {
    const std::map<std::string_view, Pos> tags{
        {"det", Pos::kDeterminer}, {"prep", Pos::kPreposition}, {"pron", Pos::kPronoun},
        {"conj", Pos::kConjunction}, {"aux", Pos::kAuxiliary},  {"verb", Pos::kVerb},
        {"adv", Pos::kAdverb},       {"adj", Pos::kAdjective},  {"num", Pos::kNumber}};
    std::map<std::string, Pos, std::less<>> out;
    for (const auto& line : parse_list(data::kPosLexicon)) {
      const auto space = line.find(' ');
      if (space == std::string::npos) continue;
      auto tag = tags.find(trim(std::string_view(line).substr(space + 1)));
      if (tag != tags.end()) out.emplace(line.substr(0, space), tag->second);
    }
    return out;
  }();
  return lexicon;
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() > suffix.size() + 1 && w.ends_with(suffix);
}

bool verb_like(Pos p) { return p == Pos::kVerb || p == Pos::kAuxiliary; }
bool noun_like(Pos p) { return p == Pos::kNoun; }

bool path_less(const std::vector<std::size_t>& a, double a_score,
               const std::vector<std::size_t>& b, double b_score) {
  if (a_score != b_score) return a_score < b_score;
  return a < b;
}

}  // namespace

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "noun";
    case Pos::kVerb: return "verb";
    case Pos::kAdjective: return "adj";
    case Pos::kAdverb: return "adv";
    case Pos::kDeterminer: return "det";
    case Pos::kPreposition: return "prep";
    case Pos::kPronoun: return "pron";
    case Pos::kConjunction: return "conj";
    case Pos::kAuxiliary: return "aux";
    case Pos::kNumber: return "num";
  }
  return "noun";
}

Pos coarse_pos(std::string_view word) {
  const std::string w = to_lower(word);
  const auto& lexicon = pos_lexicon();
  if (auto it = lexicon.find(w); it != lexicon.end()) return it->second;
  if (!w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == ',';
      })) {
    return Pos::kNumber;
  }
  if (ends_with(w, "ing") || ends_with(w, "ed")) return Pos::kVerb;
  if (ends_with(w, "ly")) return Pos::kAdverb;
  for (std::string_view s : {"ful", "ous", "ive", "able", "ible", "less", "ical"}) {
    if (ends_with(w, s)) return Pos::kAdjective;
  }
  return Pos::kNoun;
}

TitleGraph::TitleGraph(std::span<const text::SentenceRecord> sentences)
    : sentences_(sentences.size()) {
  nodes_.resize(2);
  std::vector<std::vector<std::size_t>> paths;
  // Nodes whose spelling was taken from a sentence-initial token; a later
  // mid-sentence spelling replaces it so titles do not show "The" inside.
  std::vector<bool> initial_spelling(2, false);
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    nodes_[kStart].mapped.push_back({s, 0});
    std::vector<std::size_t> path;
    const auto words = text::word_tokens(sentences[s].text);
    for (std::size_t p = 0; p < words.size(); ++p) {
      const std::string lower = to_lower(words[p]);
      const Pos pos = coarse_pos(lower);
      // Reuse a node with the same word and tag unless this sentence already
      // passes through it; prefer the most shared node, then the oldest.
      std::size_t chosen = 0;
      for (std::size_t id = 2; id < nodes_.size(); ++id) {
        const Node& node = nodes_[id];
        if (node.word != lower || node.pos != pos) continue;
        const bool used = std::any_of(node.mapped.begin(), node.mapped.end(),
                                      [&](const auto& m) { return m.first == s; });
        if (used) continue;
        if (chosen == 0 || node.mapped.size() > nodes_[chosen].mapped.size()) chosen = id;
      }
      if (chosen == 0) {
        chosen = nodes_.size();
        nodes_.push_back({lower, words[p], pos, {}});
        initial_spelling.push_back(p == 0);
      } else if (p > 0 && initial_spelling[chosen]) {
        nodes_[chosen].surface = words[p];
        initial_spelling[chosen] = false;
      }
      // Positions are shifted by one so the start sentinel sits at 0.
      nodes_[chosen].mapped.push_back({s, p + 1});
      path.push_back(chosen);
    }
    nodes_[kEnd].mapped.push_back({s, words.size() + 1});
    paths.push_back(std::move(path));
  }
  edges_.resize(nodes_.size());
  for (const auto& path : paths) {
    std::size_t prev = kStart;
    for (std::size_t id : path) {
      add_edge(prev, id);
      prev = id;
    }
    add_edge(prev, kEnd);
  }
  for (auto& list : edges_) std::sort(list.begin(), list.end());
}

void TitleGraph::add_edge(std::size_t from, std::size_t to) {
  auto& list = edges_[from];
  for (const auto& [id, cost] : list) {
    if (id == to) return;
  }
  list.push_back({to, edge_cost(from, to)});
}

// Filippova's weight: (f_i + f_j) / sum_s 1/diff_s(i, j), divided by
// f_i * f_j, where diff_s is how far j follows i in sentence s.
double TitleGraph::edge_cost(std::size_t from, std::size_t to) const {
  const auto& a = nodes_[from].mapped;
  const auto& b = nodes_[to].mapped;
  double inverse_gaps = 0.0;
  for (const auto& [sa, pa] : a) {
    for (const auto& [sb, pb] : b) {
      if (sa == sb && pb > pa) inverse_gaps += 1.0 / static_cast<double>(pb - pa);
    }
  }
  const double fa = static_cast<double>(a.size());
  const double fb = static_cast<double>(b.size());
  return (fa + fb) / inverse_gaps / (fa * fb);
}

double TitlePath::score() const {
  return nodes.empty() ? std::numeric_limits<double>::infinity()
                       : cost / static_cast<double>(nodes.size());
}

bool better_path(const TitlePath& a, const TitlePath& b) {
  return path_less(a.nodes, a.score(), b.nodes, b.score());
}

bool valid_title_path(const TitleGraph& graph, const TitlePath& path) {
  bool verb = false, noun = false;
  for (std::size_t id : path.nodes) {
    verb = verb || verb_like(graph.nodes()[id].pos);
    noun = noun || noun_like(graph.nodes()[id].pos);
  }
  return verb && noun;
}

std::vector<TitlePath> enumerate_title_paths(const TitleGraph& graph, std::size_t max_words) {
  std::vector<TitlePath> out;
  std::vector<char> visited(graph.nodes().size(), 0);
  TitlePath current;
  auto dfs = [&](auto&& self, std::size_t node) -> void {
    for (const auto& [next, cost] : graph.edges(node)) {
      if (next == TitleGraph::kEnd) {
        if (!current.nodes.empty()) {
          TitlePath done = current;
          done.cost += cost;
          out.push_back(std::move(done));
        }
        continue;
      }
      if (visited[next] || current.nodes.size() == max_words) continue;
      visited[next] = 1;
      current.nodes.push_back(next);
      const double saved = current.cost;
      current.cost += cost;
      self(self, next);
      current.cost = saved;
      current.nodes.pop_back();
      visited[next] = 0;
    }
  };
  dfs(dfs, TitleGraph::kStart);
  return out;
}

TitlePath beam_search_title(const TitleGraph& graph, std::size_t max_words,
                            std::size_t beam_width) {
  const std::size_t n = graph.nodes().size();
  // Edges needed to reach the end from each node, ignoring revisits; used to
  // drop partial paths that cannot finish within the word cap.
  std::vector<std::vector<std::size_t>> reverse(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& [v, cost] : graph.edges(u)) reverse[v].push_back(u);
  }
  const std::size_t kFar = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> to_end(n, kFar);
  std::deque<std::size_t> queue{TitleGraph::kEnd};
  to_end[TitleGraph::kEnd] = 0;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u : reverse[v]) {
      if (to_end[u] == kFar) {
        to_end[u] = to_end[v] + 1;
        queue.push_back(u);
      }
    }
  }

  TitlePath best;
  bool found = false;
  std::vector<TitlePath> beam{TitlePath{}};
  std::vector<std::size_t> last{TitleGraph::kStart};
  while (!beam.empty() && beam_width > 0) {
    std::vector<std::pair<TitlePath, std::size_t>> next;
    for (std::size_t b = 0; b < beam.size(); ++b) {
      const TitlePath& path = beam[b];
      for (const auto& [to, cost] : graph.edges(last[b])) {
        if (to == TitleGraph::kEnd) {
          if (path.nodes.empty()) continue;
          TitlePath done = path;
          done.cost += cost;
          if (valid_title_path(graph, done) && (!found || better_path(done, best))) {
            best = std::move(done);
            found = true;
          }
          continue;
        }
        if (path.nodes.size() == max_words || to_end[to] == kFar ||
            path.nodes.size() + to_end[to] > max_words) {
          continue;
        }
        if (std::find(path.nodes.begin(), path.nodes.end(), to) != path.nodes.end()) continue;
        TitlePath extended = path;
        extended.nodes.push_back(to);
        extended.cost += cost;
        next.push_back({std::move(extended), to});
      }
    }
    std::sort(next.begin(), next.end(),
              [](const auto& a, const auto& b) { return better_path(a.first, b.first); });
    if (next.size() > beam_width) next.resize(beam_width);
    beam.clear();
    last.clear();
    for (auto& [path, node] : next) {
      beam.push_back(std::move(path));
      last.push_back(node);
    }
  }
  return found ? best : TitlePath{};
}

TitleResult generate_title(std::span<const text::SentenceRecord> sentences,
                           const TitleParams& params) {
  if (sentences.empty()) throw Error(ErrorCode::kEmptyInput, "no sentences for a title");
  auto render = [](const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
      if (!out.empty() && w != "'s") out.push_back(' ');
      out += w;
    }
    if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
    return out;
  };

  TitleGraph graph(sentences);
  TitlePath path = beam_search_title(graph, params.max_words, params.beam_width);
  if (!path.nodes.empty()) {
    std::vector<std::string> words;
    for (std::size_t id : path.nodes) words.push_back(graph.nodes()[id].surface);
    return {render(words), false};
  }

  // Fallback: the leading words of the sentence with the highest mean tf-idf.
  std::size_t top = 0;
  std::vector<std::vector<std::string>> docs;
  for (const auto& s : sentences) docs.push_back(s.normalized_tokens);
  try {
    auto vectorizer = text::fit_vectorizer(docs, text::VectorMode::kTfidf,
                                           text::Normalization::kNone, text::default_stopwords());
    double best_score = -1.0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto v = vectorizer.transform(docs[i]);
      double sum = 0.0;
      for (const auto& [col, value] : v) sum += value;
      const double score = v.empty() ? 0.0 : sum / static_cast<double>(v.size());
      if (score > best_score + 1e-12) {
        best_score = score;
        top = i;
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyCorpus) throw;
  }
  auto words = text::word_tokens(sentences[top].text);
  if (words.size() > params.max_words) words.resize(params.max_words);
  return {render(words), true};
}

}  // namespace essmart::ticketgen
