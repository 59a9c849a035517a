#include "repair/core.hpp"

#include <cmath>
#include <utility>

namespace repair {

RemappedInput remap_input(std::span<const std::uint8_t> bytes) {
  RemappedInput out;
  out.symbols.reserve(bytes.size());
  auto& map = out.alphabet;
  for (std::uint8_t byte : bytes) {
    auto& code = map.original_to_dense[byte];
    if (code < 0) {
      code = static_cast<std::int16_t>(map.dense_to_original.size());
      map.dense_to_original.push_back(byte);
    }
    out.symbols.push_back(static_cast<Word>(code));
  }
  const std::size_t n = bytes.size();
  out.needs_fallback = n < 2 || map.sigma() + 2 > n;
  return out;
}

void validate_grammar(const Grammar& grammar) {
  const Word sigma = grammar.sigma();
  for (std::size_t i = 0; i < grammar.rules.size(); ++i) {
    const Rule& rule = grammar.rules[i];
    const Word lhs = sigma + i;
    if (rule.lhs != lhs) {
      throw GrammarError("rule " + std::to_string(i) + " has lhs " +
                         std::to_string(rule.lhs) + ", expected " +
                         std::to_string(lhs));
    }
    if (rule.rhs_left >= lhs || rule.rhs_right >= lhs) {
      throw GrammarError("rule " + std::to_string(i) +
                         " references an undefined or later symbol");
    }
  }
  const Word limit = sigma + grammar.rules.size();
  for (Word code : grammar.final_sequence) {
    if (code >= limit) {
      throw GrammarError("final sequence references undefined symbol " +
                         std::to_string(code));
    }
  }
}

namespace {

template <typename Emit>
void expand_code(std::span<const Rule> rules, Word sigma, Word code,
                 std::vector<Word>& stack, Emit&& emit) {
  stack.clear();
  stack.push_back(code);
  while (!stack.empty()) {
    const Word top = stack.back();
    stack.pop_back();
    if (top < sigma) {
      emit(top);
      continue;
    }
    const Rule& rule = rules[top - sigma];
    stack.push_back(rule.rhs_right);
    stack.push_back(rule.rhs_left);
  }
}

}  // namespace

std::vector<Word> expand_symbols(std::span<const Rule> rules, Word sigma,
                                 std::span<const Word> sequence) {
  std::vector<Word> out;
  std::vector<Word> stack;
  for (Word code : sequence) {
    if (code >= sigma + rules.size()) {
      throw GrammarError("undefined symbol " + std::to_string(code));
    }
    expand_code(rules, sigma, code, stack, [&](Word c) { out.push_back(c); });
  }
  return out;
}

std::vector<std::uint8_t> expand(const Grammar& grammar) {
  validate_grammar(grammar);
  std::vector<std::uint8_t> out;
  out.reserve(grammar.original_length);
  std::vector<Word> stack;
  const auto& table = grammar.alphabet.dense_to_original;
  for (Word code : grammar.final_sequence) {
    expand_code(grammar.rules, grammar.sigma(), code, stack,
                [&](Word c) { out.push_back(table[c]); });
  }
  if (out.size() != grammar.original_length) {
    throw GrammarError("expansion has length " + std::to_string(out.size()) +
                       ", expected " +
                       std::to_string(grammar.original_length));
  }
  return out;
}

void ArenaAccountant::reserve(std::size_t words) {
  if (budget_ && current_ + words > *budget_) {
    throw SpaceBoundViolation("working space of " +
                              std::to_string(current_ + words) +
                              " words exceeds budget of " +
                              std::to_string(*budget_));
  }
  current_ += words;
  if (current_ > peak_) peak_ = current_;
}

void ArenaAccountant::release(std::size_t words) noexcept {
  current_ = words > current_ ? 0 : current_ - words;
}

ArenaBlock::ArenaBlock(ArenaAccountant& accountant, std::size_t words)
    : accountant_(&accountant) {
  accountant.reserve(words);
  data_ = std::make_unique_for_overwrite<Word[]>(words);
  size_ = words;
}

ArenaBlock::~ArenaBlock() { reset(); }

ArenaBlock::ArenaBlock(ArenaBlock&& other) noexcept
    : accountant_(std::exchange(other.accountant_, nullptr)),
      data_(std::move(other.data_)),
      size_(std::exchange(other.size_, 0)) {}

ArenaBlock& ArenaBlock::operator=(ArenaBlock&& other) noexcept {
  if (this != &other) {
    reset();
    accountant_ = std::exchange(other.accountant_, nullptr);
    data_ = std::move(other.data_);
    size_ = std::exchange(other.size_, 0);
  }
  return *this;
}

void ArenaBlock::reset() noexcept {
  if (accountant_ != nullptr) accountant_->release(size_);
  accountant_ = nullptr;
  data_.reset();
  size_ = 0;
}

std::size_t ceil_sqrt(std::size_t n) noexcept { return ceil_sqrt_div(n, 1); }

std::size_t ceil_sqrt_div(std::size_t n, std::size_t d) noexcept {
  // Smallest c with (c * d)^2 >= n.
  if (n == 0) return 0;
  auto c = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)) /
                                    static_cast<double>(d));
  while (c > 0 && (c - 1) * d * (c - 1) * d >= n) --c;
  while (c * d * c * d < n) ++c;
  return c;
}

}  // namespace repair
