#include "repair/engine.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "repair/hf_queue.hpp"
#include "repair/lf_queue.hpp"
#include "repair/oracle.hpp"
#include "repair/pair_sorter.hpp"

namespace repair {

std::string to_string(Variant variant) { return variant == Variant::fast ? "fast" : "light"; }

std::optional<Variant> parse_variant(const std::string& name) {
  if (name == "fast") return Variant::fast;
  if (name == "light") return Variant::light;
  return std::nullopt;
}

std::size_t space_bound_words(std::size_t n, Variant variant, double epsilon) {
  std::size_t bound = n + ceil_sqrt(n);
  if (variant == Variant::fast) {
    bound += static_cast<std::size_t>(epsilon * static_cast<double>(n));
  }
  return bound;
}

Context get_context(const TextBuffer& text, std::size_t i) {
  Context c;
  c.a = *text.read(i);
  const std::size_t pos_b = text.next_nonblank(i);
  if (pos_b == TextBuffer::npos) throw std::logic_error("no pair starts at this position");
  c.b = *text.read(pos_b);
  const std::size_t pos_x = text.prev_nonblank(i);
  if (pos_x != TextBuffer::npos) c.x = *text.read(pos_x);
  const std::size_t pos_y = text.next_nonblank(pos_b);
  if (pos_y != TextBuffer::npos) c.y = *text.read(pos_y);
  return c;
}

Context get_left_context(const TextBuffer& text, std::size_t i, const Rule& rule) {
  Context c;
  c.a = rule.rhs_left;
  c.b = rule.rhs_right;
  const std::size_t prev = text.prev_nonblank(i);
  if (prev != TextBuffer::npos) {
    const Word s = *text.read(prev);
    c.x = s == rule.lhs ? rule.rhs_right : s;
  }
  return c;
}

Context get_right_context(const TextBuffer& text, std::size_t i, const Rule& rule) {
  Context c;
  c.a = rule.rhs_left;
  c.b = rule.rhs_right;
  const std::size_t next = text.next_nonblank(i);
  if (next != TextBuffer::npos) {
    const Word s = *text.read(next);
    c.y = s == rule.lhs ? rule.rhs_left : s;
  }
  return c;
}

namespace {

struct Census {
  std::size_t highest = 0;
  std::size_t repeated_pairs = 0;  // distinct pairs occurring at least twice
};

class Engine {
 public:
  Engine(std::vector<Word> symbols, Word sigma, const CompressOptions& options,
         CompressStats& stats)
      : n_(symbols.size()),
        text_(std::move(symbols)),
        next_(sigma),
        options_(options),
        stats_(stats),
        accountant_(options.budget_words) {}

  std::pair<std::vector<Rule>, std::vector<Word>> run() {
    const HfQueue::Params hf_params = HfQueue::params_for(n_, options_.seed);
    const Word threshold = hf_params.threshold;
    const bool light = options_.variant == Variant::light;
    const std::size_t lf_capacity = light ? 0 : LfQueue::fast_capacity(n_, options_.epsilon);

    const std::size_t tp_words = light ? n_ + LfQueue::words_required(1) : n_;
    const std::size_t sqrt_words = std::max(HfQueue::words_required(hf_params.capacity),
                                            LfQueue::frequency_words(threshold));
    const std::size_t lf_words = light ? 0 : LfQueue::words_required(lf_capacity);
    ArenaBlock arena(accountant_, tp_words + sqrt_words + lf_words);
    const std::span<Word> tp_region = arena.words().first(tp_words);
    const std::span<Word> sqrt_region = arena.words().subspan(tp_words, sqrt_words);
    const std::span<Word> lf_region = arena.words().subspan(tp_words + sqrt_words, lf_words);

    bool code_space_left = true;
    Census census;
    PositionArray tp;

    // High-frequency phase.
    while (true) {
      tp = sort_with_census(tp_region, census);
      if (census.highest < threshold) break;
      ++stats_.hf_rounds;
      HfQueue q = HfQueue::build(text_, tp, sqrt_region, hf_params);
      code_space_left = drain(q, tp.words(), threshold);
      collect(q.counters());
      finish_round();
      if (!code_space_left) break;
      tp = PositionArray();
    }

    // Low-frequency phase.
    LightCapacityPolicy policy;
    std::size_t reclaimed_mark = accountant_.reclaimed_words();
    bool fresh = true;
    while (code_space_left) {
      if (tp.words().empty()) tp = sort_with_census(tp_region, census);
      if (census.highest < LfQueue::kFloor) break;
      ++stats_.lf_rounds;

      std::size_t capacity = lf_capacity;
      std::span<Word> storage = lf_region;
      std::span<Word> tp_span = tp_region;
      if (light) {
        if (fresh) {
          capacity = std::min(policy.capacity, census.repeated_pairs);
        } else {
          const std::size_t reclaimed = accountant_.reclaimed_words() - reclaimed_mark;
          capacity = light_next_capacity(policy, reclaimed, census.repeated_pairs);
        }
        reclaimed_mark = accountant_.reclaimed_words();
        capacity = std::max<std::size_t>(capacity, 1);
        const std::size_t words = LfQueue::words_required(capacity);
        storage = tp_region.last(words);
        tp_span = tp_region.first(tp_region.size() - words);
      }
      fresh = false;
      stats_.lf_capacities.push_back(capacity);

      PositionArray view(tp_span, tp.size());
      LfQueue q = LfQueue::build(text_, view, storage, sqrt_region,
                                 LfQueue::Params{capacity, threshold, options_.seed});
      code_space_left = drain(q, view.words(), LfQueue::kFloor);
      collect(q.counters());
      finish_round();
      tp = PositionArray();
    }

    std::vector<Word> final_sequence;
    if (!code_space_left) {
      final_sequence = plain_tail(tp_region);
    } else {
      final_sequence = text_.take_cells();
    }
    stats_.peak_words = accountant_.peak_words();
    return {std::move(rules_), std::move(final_sequence)};
  }

 private:
  PositionArray sort_with_census(std::span<Word> words, Census& census) {
    PositionArray tp = sort_pairs(text_, words);
    census = Census{};
    for_each_cluster(text_, tp.positions(), [&](const PairCluster& c) {
      census.highest = std::max(census.highest, c.count);
      if (c.count >= 2) ++census.repeated_pairs;
    });
    stats_.tp_positions_built += tp.size();
    return tp;
  }

  void finish_round() {
    text_.compact(&accountant_);
    if (options_.check_invariants && !text_.well_formed()) ++stats_.consistency_failures;
  }

  void collect(const QueueCounters& c) {
    stats_.sync_calls += c.sync_calls;
    stats_.sync_positions += c.sync_positions;
    stats_.insertions += c.insertions;
    stats_.evictions += c.evictions;
    stats_.rejections += c.rejections;
  }

  void emit(const Rule& rule) {
    rules_.push_back(rule);
    if (options_.rule_sink) options_.rule_sink(rule);
  }

  // Runs substitution rounds until the queue empties or its maximum can no
  // longer be trusted. Returns false when no fresh code is left.
  template <typename Queue>
  bool drain(Queue& q, std::span<Word> tp, Word floor) {
    while (!q.empty()) {
      if (options_.check_invariants) {
        ++stats_.invariant_checks;
        stats_.invariant_violations += q.count_invariant_violations();
        if (!q.consistent()) ++stats_.consistency_failures;
      }
      const Pair ab = q.max();
      if (q.get(ab)->freq < q.untracked_bound()) {
        ++stats_.rounds_cut_short;
        return true;
      }
      if (next_ > text_.max_symbol()) return false;
      substitution_round(q, ab, tp, floor);
    }
    return true;
  }

  template <typename Queue>
  void substitution_round(Queue& q, Pair ab, std::span<Word> tp, Word floor) {
    const PairRange range = *q.get(ab);
    q.begin_round(ab);
    const Rule rule{next_++, ab.left, ab.right};
    emit(rule);
    const std::size_t end = range.start + range.length;

    for (std::size_t j = range.start; j < end; ++j) {
      const std::size_t i = tp[j];
      const auto pair = text_.pair_at(i);
      if (!pair || *pair != ab) continue;
      const Context c = get_context(text_, i);
      text_.replace_pair(i, rule.lhs);
      ++stats_.replacements;
      if (c.x) decrease(q, Pair{*c.x, ab.left}, ab);
      if (c.y) decrease(q, Pair{ab.right, *c.y}, ab);
    }

    for (std::size_t j = range.start; j < end; ++j) {
      const std::size_t i = tp[j];
      if (text_.read(i) != rule.lhs) continue;
      const Context left = get_left_context(text_, i, rule);
      if (left.x) resync(q, Pair{*left.x, ab.left}, ab, tp, floor);
      const Context right = get_right_context(text_, i, rule);
      if (right.y) resync(q, Pair{ab.right, *right.y}, ab, tp, floor);
    }

    q.synchronize(ab, text_, tp);
    q.remove(ab);
    q.end_round();
  }

  template <typename Queue>
  static void decrease(Queue& q, Pair pair, Pair ab) {
    // The pair being replaced is dropped at the end of its round anyway.
    if (pair != ab) q.decrement(pair);
  }

  template <typename Queue>
  void resync(Queue& q, Pair pair, Pair ab, std::span<Word> tp, Word floor) {
    if (pair == ab) return;
    const auto range = q.get(pair);
    if (!range) return;
    if (2 * range->freq > range->length && range->freq >= floor) return;
    q.synchronize(pair, text_, tp);
    const Word freq = q.get(pair)->freq;
    if (freq < floor) {
      q.note_untracked(freq);
      q.remove(pair);
    }
  }

  // Finishes on a plain array once the next code would collide with the
  // blank markers. The text is short by then.
  std::vector<Word> plain_tail(std::span<Word> scratch) {
    std::vector<Word> s = text_.take_cells();
    while (s.size() >= 2) {
      const std::size_t pairs = s.size() - 1;
      std::span<Word> pos = scratch.first(pairs);
      std::iota(pos.begin(), pos.end(), Word{0});
      auto key = [&](Word p) { return std::tuple(s[p], s[p + 1], p); };
      std::sort(pos.begin(), pos.end(), [&](Word a, Word b) { return key(a) < key(b); });
      Pair best = kNoPair;
      std::size_t best_count = 1;
      std::size_t i = 0;
      while (i < pairs) {
        const Pair p{s[pos[i]], s[pos[i] + 1]};
        std::size_t j = i + 1;
        while (j < pairs && s[pos[j]] == p.left && s[pos[j] + 1] == p.right) ++j;
        if (j - i > best_count) {
          best_count = j - i;
          best = p;
        }
        i = j;
      }
      if (best_count < 2) break;
      if (next_ >= n_) throw std::logic_error("code space exhausted");
      const Rule rule{next_++, best.left, best.right};
      emit(rule);
      ++stats_.tail_rules;
      const std::size_t before = s.size();
      replace_all(s, best, rule.lhs);
      stats_.replacements += before - s.size();
      accountant_.add_reclaimed(before - s.size());
    }
    return s;
  }

  std::size_t n_;
  TextBuffer text_;
  Word next_;
  const CompressOptions& options_;
  CompressStats& stats_;
  ArenaAccountant accountant_;
  std::vector<Rule> rules_;
};

}  // namespace

CompressResult compress_symbols(std::vector<Word> symbols, Word sigma,
                                const CompressOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  if (options.variant == Variant::fast && !(options.epsilon > 0.0 && options.epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  CompressResult result;
  CompressStats& stats = result.stats;
  const std::size_t n = symbols.size();
  stats.n = n;
  stats.sigma = sigma;
  stats.bound_words = space_bound_words(n, options.variant, options.epsilon);

  if (n < 2 || sigma + 2 > n) {
    stats.fallback = true;
    SymbolGrammar g = naive_repair_symbols(std::move(symbols), sigma);
    if (options.rule_sink) {
      for (const Rule& r : g.rules) options.rule_sink(r);
    }
    result.grammar.rules = std::move(g.rules);
    result.grammar.final_sequence = std::move(g.final_sequence);
  } else {
    Engine engine(std::move(symbols), sigma, options, stats);
    auto [rules, final_sequence] = engine.run();
    result.grammar.rules = std::move(rules);
    result.grammar.final_sequence = std::move(final_sequence);
  }
  result.grammar.original_length = n;
  stats.rules = result.grammar.rules.size();
  stats.final_len = result.grammar.final_sequence.size();
  stats.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  return result;
}

CompressResult compress(std::span<const std::uint8_t> input, const CompressOptions& options) {
  RemappedInput remapped = remap_input(input);
  const Word sigma = remapped.alphabet.sigma();
  CompressResult result = compress_symbols(std::move(remapped.symbols), sigma, options);
  result.grammar.alphabet = std::move(remapped.alphabet);
  return result;
}

}  // namespace repair
