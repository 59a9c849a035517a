#include "repair/grammar_io.hpp"

#include <array>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace repair {

namespace {

constexpr std::array<char, 4> kMagic{'R', 'P', 'S', 'E'};
constexpr std::size_t kFixedBytes = 30;

template <typename T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>(static_cast<std::uint8_t>(value >> (8 * i)));
  }
  out.write(bytes.data(), bytes.size());
}

void read_exact(std::istream& in, char* dst, std::size_t count, const char* what) {
  in.read(dst, static_cast<std::streamsize>(count));
  if (static_cast<std::size_t>(in.gcount()) != count) {
    throw GrammarError(std::string("truncated grammar file: ") + what);
  }
}

template <typename T>
T get(std::istream& in, const char* what) {
  std::array<char, sizeof(T)> bytes{};
  read_exact(in, bytes.data(), bytes.size(), what);
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(static_cast<std::uint8_t>(bytes[i])) << (8 * i);
  }
  return value;
}

// Reads through the alphabet table; returns the table.
std::vector<std::uint8_t> read_prefix(std::istream& in, GrammarHeader& h) {
  std::array<char, 4> magic{};
  read_exact(in, magic.data(), magic.size(), "magic");
  if (magic != kMagic) throw GrammarError("not a grammar file (bad magic)");
  h.version = get<std::uint8_t>(in, "version");
  if (h.version != kGrammarVersion) {
    throw GrammarError("unsupported grammar version " + std::to_string(h.version));
  }
  h.flags = get<std::uint8_t>(in, "flags");
  h.n = get<std::uint64_t>(in, "length");
  h.sigma = get<std::uint32_t>(in, "alphabet size");
  if (h.sigma > 256) throw GrammarError("alphabet larger than 256 symbols");
  std::vector<std::uint8_t> table(h.sigma);
  read_exact(in, reinterpret_cast<char*>(table.data()), table.size(), "alphabet");
  h.rules = get<std::uint32_t>(in, "rule count");
  return table;
}

}  // namespace

std::size_t GrammarHeader::file_size() const noexcept {
  return kFixedBytes + sigma + 8 * static_cast<std::size_t>(rules) + 4 * seq_len;
}

std::size_t grammar_file_size(const Grammar& g) noexcept {
  return kFixedBytes + g.sigma() + 8 * g.rules.size() + 4 * g.final_sequence.size();
}

void write_grammar(const Grammar& g, std::ostream& out, std::uint8_t flags) {
  validate_grammar(g);
  constexpr Word kCodeLimit = std::numeric_limits<std::uint32_t>::max();
  if (g.original_length >= (std::uint64_t{1} << 32)) {
    throw GrammarError("inputs of 2^32 symbols or more are not supported");
  }
  if (g.sigma() + g.rules.size() > kCodeLimit) {
    throw GrammarError("too many symbols for 32-bit codes");
  }
  out.write(kMagic.data(), kMagic.size());
  put<std::uint8_t>(out, kGrammarVersion);
  put<std::uint8_t>(out, flags);
  put<std::uint64_t>(out, g.original_length);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.sigma()));
  out.write(reinterpret_cast<const char*>(g.alphabet.dense_to_original.data()),
            static_cast<std::streamsize>(g.sigma()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.rules.size()));
  for (const Rule& r : g.rules) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(r.rhs_left));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(r.rhs_right));
  }
  put<std::uint64_t>(out, g.final_sequence.size());
  for (Word code : g.final_sequence) put<std::uint32_t>(out, static_cast<std::uint32_t>(code));
  if (!out) throw std::ios_base::failure("failed to write grammar");
}

Grammar read_grammar(std::istream& in, GrammarHeader* header) {
  GrammarHeader h;
  Grammar g;
  const std::vector<std::uint8_t> table = read_prefix(in, h);
  for (std::size_t code = 0; code < table.size(); ++code) {
    const std::uint8_t byte = table[code];
    if (g.alphabet.original_to_dense[byte] != -1) {
      throw GrammarError("alphabet table repeats a byte value");
    }
    g.alphabet.original_to_dense[byte] = static_cast<std::int16_t>(code);
  }
  g.alphabet.dense_to_original = table;
  g.original_length = h.n;
  g.rules.reserve(h.rules);
  for (std::uint32_t k = 0; k < h.rules; ++k) {
    const Word left = get<std::uint32_t>(in, "rules");
    const Word right = get<std::uint32_t>(in, "rules");
    g.rules.push_back(Rule{h.sigma + Word{k}, left, right});
  }
  h.seq_len = get<std::uint64_t>(in, "sequence length");
  if (h.seq_len > h.n) throw GrammarError("final sequence longer than the text");
  g.final_sequence.reserve(h.seq_len);
  for (std::uint64_t i = 0; i < h.seq_len; ++i) {
    g.final_sequence.push_back(get<std::uint32_t>(in, "final sequence"));
  }
  validate_grammar(g);
  if (header != nullptr) *header = h;
  return g;
}

GrammarHeader read_header(std::istream& in) {
  GrammarHeader h;
  read_prefix(in, h);
  const std::uint64_t skip = 8 * std::uint64_t{h.rules};
  in.ignore(static_cast<std::streamsize>(skip));
  if (static_cast<std::uint64_t>(in.gcount()) != skip) {
    throw GrammarError("truncated grammar file: rules");
  }
  h.seq_len = get<std::uint64_t>(in, "sequence length");
  return h;
}

std::uint64_t decompress(std::istream& in, std::ostream& out) {
  const Grammar g = read_grammar(in);
  const Word sigma = g.sigma();
  const auto& table = g.alphabet.dense_to_original;
  std::vector<char> buffer;
  buffer.reserve(1 << 16);
  std::vector<Word> stack;
  std::uint64_t written = 0;
  auto flush = [&] {
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    buffer.clear();
  };
  for (Word code : g.final_sequence) {
    stack.push_back(code);
    while (!stack.empty()) {
      const Word top = stack.back();
      stack.pop_back();
      if (top >= sigma) {
        const Rule& r = g.rules[top - sigma];
        stack.push_back(r.rhs_right);
        stack.push_back(r.rhs_left);
        continue;
      }
      if (++written > g.original_length) {
        throw GrammarError("expansion is longer than the recorded length");
      }
      buffer.push_back(static_cast<char>(table[top]));
      if (buffer.size() == buffer.capacity()) flush();
    }
  }
  flush();
  if (written != g.original_length) {
    throw GrammarError("expansion is shorter than the recorded length");
  }
  if (!out) throw std::ios_base::failure("failed to write output");
  return written;
}

}  // namespace repair
