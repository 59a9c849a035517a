#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repair/core.hpp"
#include "repair/text_buffer.hpp"

namespace repair {

enum class Variant { fast, light };

std::string to_string(Variant variant);
std::optional<Variant> parse_variant(const std::string& name);

struct CompressOptions {
  Variant variant = Variant::fast;
  double epsilon = 1.0;  // fast variant only, in (0, 1]
  Word seed = 0x5EED;
  // Scan every queue entry for F > L/2 before each max() call and check the
  // queue's internal consistency. Quadratic-ish; meant for tests.
  bool check_invariants = false;
  // Working-space cap in words; exceeding it throws SpaceBoundViolation.
  std::optional<std::size_t> budget_words;
  // Receives every rule as soon as it is emitted.
  RuleSink rule_sink;
};

struct CompressStats {
  std::size_t n = 0;
  std::size_t sigma = 0;
  std::size_t rules = 0;
  std::size_t final_len = 0;
  std::size_t hf_rounds = 0;
  std::size_t lf_rounds = 0;
  std::size_t replacements = 0;
  std::size_t peak_words = 0;
  std::size_t bound_words = 0;
  double elapsed_ms = 0.0;

  bool fallback = false;          // tiny input compressed by the naive algorithm
  std::size_t tail_rules = 0;     // rules emitted after the code space ran out
  std::size_t rounds_cut_short = 0;
  std::size_t invariant_checks = 0;
  std::size_t invariant_violations = 0;
  std::size_t consistency_failures = 0;
  std::size_t tp_positions_built = 0;
  std::size_t sync_calls = 0;
  std::size_t sync_positions = 0;
  std::size_t insertions = 0;
  std::size_t evictions = 0;
  std::size_t rejections = 0;
  std::vector<std::size_t> lf_capacities;  // per LF round
};

struct CompressResult {
  Grammar grammar;
  CompressStats stats;
};

// Working-space bound in words: (1 + epsilon) n + ceil(sqrt n) for the fast
// variant, n + ceil(sqrt n) for the light one.
std::size_t space_bound_words(std::size_t n, Variant variant, double epsilon);

CompressResult compress(std::span<const std::uint8_t> input, const CompressOptions& options = {});

// Compresses dense codes in [0, sigma). Requires sigma + 2 <= symbols.size().
CompressResult compress_symbols(std::vector<Word> symbols, Word sigma,
                                const CompressOptions& options = {});

struct Context {
  std::optional<Word> x;
  Word a = 0;
  Word b = 0;
  std::optional<Word> y;
};

// The pair at i together with the symbols around it.
Context get_context(const TextBuffer& text, std::size_t i);

// For a position i holding X (X -> AB just replaced), the pair xA that
// preceded the occurrence: a preceding X expands to AB, so x is B then.
Context get_left_context(const TextBuffer& text, std::size_t i, const Rule& rule);

// Mirror of get_left_context: the pair By that followed the occurrence.
Context get_right_context(const TextBuffer& text, std::size_t i, const Rule& rule);

}  // namespace repair
