#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "repair/core.hpp"

namespace repair {

// Straightforward Re-Pair over an explicit symbol array: count every
// positional pair, replace the most frequent one (ties go to the smallest
// pair) greedily left to right, stop once no pair occurs twice.
Grammar naive_repair(std::span<const std::uint8_t> input);

struct SymbolGrammar {
  std::vector<Rule> rules;
  std::vector<Word> final_sequence;
};

// Same on dense codes; new symbols are numbered from `sigma`.
SymbolGrammar naive_repair_symbols(std::vector<Word> symbols, Word sigma);

struct RuleCheck {
  std::size_t index = 0;
  Word frequency = 0;      // occurrences of the rule's pair before replacing it
  Word max_frequency = 0;  // highest pair frequency at that point
  bool ok = false;
};

struct ReplayReport {
  std::vector<RuleCheck> rules;
  std::vector<Word> residual;
  Word residual_max = 0;
  std::size_t failures = 0;
  // Structural problems: wrong lhs numbering, or a final sequence that
  // differs from the replayed text.
  std::vector<std::string> errors;

  bool ok() const noexcept { return failures == 0 && errors.empty() && residual_max < 2; }
};

// Replays a rule stream on the input and checks that each rule replaced a
// pair occurring at least twice with the highest frequency of the text at
// that moment. Pass `final_sequence` to also compare the residual text.
ReplayReport replay_validate(std::span<const std::uint8_t> input, std::span<const Rule> rules,
                             const std::vector<Word>* final_sequence = nullptr);
ReplayReport replay_validate_symbols(std::vector<Word> symbols, Word sigma,
                                     std::span<const Rule> rules,
                                     const std::vector<Word>* final_sequence = nullptr);

// Positional frequencies of all pairs (overlaps included).
Word max_pair_frequency(std::span<const Word> symbols);
Word pair_frequency(std::span<const Word> symbols, Pair pair);

// Greedy left-to-right replacement of every non-overlapping occurrence.
void replace_all(std::vector<Word>& symbols, Pair pair, Word symbol);

}  // namespace repair
