#ifndef ESSMART_TICKETGEN_TITLE_H_
#define ESSMART_TICKETGEN_TITLE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "essmart/corpus/types.h"
#include "essmart/textproc/sentence.h"

namespace essmart::ticketgen {

enum class Pos { kNoun, kVerb, kAdjective, kAdverb, kDeterminer, kPreposition, kPronoun,
                 kConjunction, kAuxiliary, kNumber };

std::string_view to_string(Pos pos);

// Bundled closed-class lexicon first, then suffix rules; nouns by default.
Pos coarse_pos(std::string_view word);

// Word graph in the style of Filippova's multi-sentence compression. Node 0
// is the start sentinel and node 1 the end sentinel.
class TitleGraph {
 public:
  struct Node {
    std::string word;     // lowercased; empty for sentinels
    std::string surface;  // first mid-sentence spelling, else the first seen
    Pos pos = Pos::kNoun;
    std::vector<std::pair<std::size_t, std::size_t>> mapped;  // (sentence, position)
  };

  static constexpr std::size_t kStart = 0;
  static constexpr std::size_t kEnd = 1;

  explicit TitleGraph(std::span<const text::SentenceRecord> sentences);

  const std::vector<Node>& nodes() const { return nodes_; }
  // Successors with edge costs, ordered by node id.
  const std::vector<std::pair<std::size_t, double>>& edges(std::size_t node) const {
    return edges_[node];
  }
  std::size_t sentence_count() const { return sentences_; }

 private:
  void add_edge(std::size_t from, std::size_t to);
  double edge_cost(std::size_t from, std::size_t to) const;

  std::vector<Node> nodes_;
  std::vector<std::vector<std::pair<std::size_t, double>>> edges_;
  std::size_t sentences_ = 0;
};

struct TitlePath {
  std::vector<std::size_t> nodes;  // word nodes only, sentinels excluded
  double cost = 0.0;               // summed edge cost including sentinel edges
  double score() const;            // cost per word; lower is better
};

// Strict ordering used by both searches: lower score, then lexicographically
// smaller node sequence.
bool better_path(const TitlePath& a, const TitlePath& b);

// Whether a path has at least one verb-like and one noun-like word.
bool valid_title_path(const TitleGraph& graph, const TitlePath& path);

// Every simple start-to-end path with at most max_words words; the oracle for
// the beam search on small graphs.
std::vector<TitlePath> enumerate_title_paths(const TitleGraph& graph, std::size_t max_words);

// Best valid path by beam search, or an empty path when none is found.
TitlePath beam_search_title(const TitleGraph& graph, std::size_t max_words,
                            std::size_t beam_width);

struct TitleParams {
  std::size_t max_words = corpus::kMaxTitleWords;
  std::size_t beam_width = 64;
  std::uint64_t seed = 42;  // the search is deterministic; kept for reproducible configs
};

struct TitleResult {
  std::string title;
  bool fallback = false;  // no valid graph path; prefix of the top sentence used
};

// Throws EmptyInput without sentences.
TitleResult generate_title(std::span<const text::SentenceRecord> sentences,
                           const TitleParams& params = {});

}  // namespace essmart::ticketgen

#endif  // ESSMART_TICKETGEN_TITLE_H_
