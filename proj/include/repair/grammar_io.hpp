#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>

#include "repair/core.hpp"

namespace repair {

// Layout, all integers little-endian:
//   "RPSE" | u8 version | u8 flags | u64 n | u32 sigma | sigma bytes alphabet
//   | u32 d | d x (u32 left, u32 right) | u64 seq_len | seq_len x u32 codes
// The lhs of rule k is sigma + k. Flag bit 0 marks the light variant.
inline constexpr std::uint8_t kGrammarVersion = 1;
inline constexpr std::uint8_t kFlagLight = 0x01;

struct GrammarHeader {
  std::uint8_t version = kGrammarVersion;
  std::uint8_t flags = 0;
  std::uint64_t n = 0;
  std::uint32_t sigma = 0;
  std::uint32_t rules = 0;
  std::uint64_t seq_len = 0;

  bool light() const noexcept { return (flags & kFlagLight) != 0; }
  std::size_t file_size() const noexcept;
};

// Exact size of the serialized grammar in bytes.
std::size_t grammar_file_size(const Grammar& grammar) noexcept;

// Throws GrammarError if the grammar is malformed or does not fit 32-bit
// codes; std::ios_base::failure if the stream fails.
void write_grammar(const Grammar& grammar, std::ostream& out, std::uint8_t flags = 0);

// Throws GrammarError on bad magic or version, truncation or invalid codes.
Grammar read_grammar(std::istream& in, GrammarHeader* header = nullptr);

// Reads the header fields and skips the rules, without building the grammar.
GrammarHeader read_header(std::istream& in);

// Streams the original bytes. Returns the number of bytes written.
std::uint64_t decompress(std::istream& in, std::ostream& out);

}  // namespace repair
