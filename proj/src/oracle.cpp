#include "repair/oracle.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace repair {

namespace {

std::map<Pair, Word> count_pairs(std::span<const Word> symbols) {
  std::map<Pair, Word> counts;
  for (std::size_t i = 0; i + 1 < symbols.size(); ++i) ++counts[Pair{symbols[i], symbols[i + 1]}];
  return counts;
}

}  // namespace

Word max_pair_frequency(std::span<const Word> symbols) {
  Word best = 0;
  for (const auto& [pair, count] : count_pairs(symbols)) best = std::max(best, count);
  return best;
}

Word pair_frequency(std::span<const Word> symbols, Pair pair) {
  Word count = 0;
  for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
    if (symbols[i] == pair.left && symbols[i + 1] == pair.right) ++count;
  }
  return count;
}

void replace_all(std::vector<Word>& symbols, Pair pair, Word symbol) {
  std::size_t w = 0;
  std::size_t r = 0;
  while (r < symbols.size()) {
    if (r + 1 < symbols.size() && symbols[r] == pair.left && symbols[r + 1] == pair.right) {
      symbols[w++] = symbol;
      r += 2;
    } else {
      symbols[w++] = symbols[r++];
    }
  }
  symbols.resize(w);
}

SymbolGrammar naive_repair_symbols(std::vector<Word> symbols, Word sigma) {
  SymbolGrammar g;
  Word next = sigma;
  while (true) {
    const auto counts = count_pairs(symbols);
    Pair best = kNoPair;
    Word best_count = 1;
    // std::map iterates in pair order, so the first maximum is the smallest.
    for (const auto& [pair, count] : counts) {
      if (count > best_count) {
        best = pair;
        best_count = count;
      }
    }
    if (best_count < 2) break;
    g.rules.push_back(Rule{next, best.left, best.right});
    replace_all(symbols, best, next);
    ++next;
  }
  g.final_sequence = std::move(symbols);
  return g;
}

Grammar naive_repair(std::span<const std::uint8_t> input) {
  RemappedInput remapped = remap_input(input);
  Grammar g;
  g.alphabet = remapped.alphabet;
  g.original_length = input.size();
  SymbolGrammar sg = naive_repair_symbols(std::move(remapped.symbols), g.sigma());
  g.rules = std::move(sg.rules);
  g.final_sequence = std::move(sg.final_sequence);
  return g;
}

ReplayReport replay_validate_symbols(std::vector<Word> symbols, Word sigma,
                                     std::span<const Rule> rules,
                                     const std::vector<Word>* final_sequence) {
  ReplayReport report;
  for (std::size_t k = 0; k < rules.size(); ++k) {
    const Rule& rule = rules[k];
    if (rule.lhs != sigma + k) {
      report.errors.push_back("rule " + std::to_string(k) + " has lhs " +
                              std::to_string(rule.lhs) + ", expected " +
                              std::to_string(sigma + k));
    }
    RuleCheck check;
    check.index = k;
    const Pair pair{rule.rhs_left, rule.rhs_right};
    check.frequency = pair_frequency(symbols, pair);
    check.max_frequency = max_pair_frequency(symbols);
    check.ok = check.frequency >= 2 && check.frequency == check.max_frequency;
    if (!check.ok) ++report.failures;
    report.rules.push_back(check);
    replace_all(symbols, pair, rule.lhs);
  }
  report.residual_max = max_pair_frequency(symbols);
  if (final_sequence && *final_sequence != symbols) {
    report.errors.push_back("final sequence differs from the replayed text");
  }
  report.residual = std::move(symbols);
  return report;
}

ReplayReport replay_validate(std::span<const std::uint8_t> input, std::span<const Rule> rules,
                             const std::vector<Word>* final_sequence) {
  RemappedInput remapped = remap_input(input);
  const Word sigma = remapped.alphabet.sigma();
  return replay_validate_symbols(std::move(remapped.symbols), sigma, rules, final_sequence);
}

}  // namespace repair
