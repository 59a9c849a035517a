#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "repair/engine.hpp"
#include "repair/grammar_io.hpp"
#include "repair/oracle.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kIo = 2, kVerifyFailed = 3, kSpaceBound = 4 };

constexpr std::size_t kBudgetSlack = 4096;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path);
  return data;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  return out;
}

repair::CompressOptions make_options(const std::string& variant, double epsilon,
                                     std::uint64_t seed, std::size_t n) {
  repair::CompressOptions options;
  options.variant = *repair::parse_variant(variant);
  options.epsilon = epsilon;
  options.seed = seed;
  options.budget_words = repair::space_bound_words(n, options.variant, epsilon) + kBudgetSlack;
  return options;
}

nlohmann::json stats_json(const repair::CompressStats& s) {
  return nlohmann::json{{"n", s.n},
                        {"sigma", s.sigma},
                        {"rules", s.rules},
                        {"final_len", s.final_len},
                        {"hf_rounds", s.hf_rounds},
                        {"lf_rounds", s.lf_rounds},
                        {"peak_words", s.peak_words},
                        {"bound_words", s.bound_words},
                        {"elapsed_ms", s.elapsed_ms}};
}

void print_stats(const repair::CompressStats& s, const std::string& format) {
  if (format == "json") {
    std::cout << stats_json(s).dump() << '\n';
    return;
  }
  std::cout << "n            " << s.n << '\n'
            << "sigma        " << s.sigma << '\n'
            << "rules        " << s.rules << '\n'
            << "final length " << s.final_len << '\n'
            << "HF rounds    " << s.hf_rounds << '\n'
            << "LF rounds    " << s.lf_rounds << '\n'
            << "peak words   " << s.peak_words << '\n'
            << "bound words  " << s.bound_words << " (+" << kBudgetSlack << " slack)\n"
            << "time         " << s.elapsed_ms << " ms\n";
}

int run_compress(const std::string& in_path, const std::string& out_path,
                 const std::string& variant, double epsilon, std::uint64_t seed,
                 const std::string& stats_format) {
  const auto input = read_file(in_path);
  const auto options = make_options(variant, epsilon, seed, input.size());
  const repair::CompressResult result = repair::compress(input, options);
  auto out = open_output(out_path);
  const std::uint8_t flags = options.variant == repair::Variant::light ? repair::kFlagLight : 0;
  repair::write_grammar(result.grammar, out, flags);
  out.close();
  if (!out) throw IoError("cannot write " + out_path);
  if (!stats_format.empty()) print_stats(result.stats, stats_format);
  return kOk;
}

int run_decompress(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + in_path);
  auto out = open_output(out_path);
  repair::decompress(in, out);
  out.close();
  if (!out) throw IoError("cannot write " + out_path);
  return kOk;
}

int run_verify(const std::string& in_path, std::size_t max_n, const std::string& variant,
               double epsilon, std::uint64_t seed) {
  const auto input = read_file(in_path);
  bool ok = true;

  const auto options = make_options(variant, epsilon, seed, input.size());
  const repair::CompressResult result = repair::compress(input, options);
  std::stringstream file;
  repair::write_grammar(result.grammar, file);
  std::stringstream restored;
  repair::decompress(file, restored);
  const std::string back = restored.str();
  const bool round_trip = back.size() == input.size() &&
                          std::memcmp(back.data(), input.data(), input.size()) == 0;
  std::cout << "round trip   " << (round_trip ? "ok" : "FAILED") << '\n';
  ok = ok && round_trip;

  // The replay is quadratic, so only a prefix of large inputs is replayed.
  const std::size_t m = std::min(max_n, input.size());
  const std::span<const std::uint8_t> prefix(input.data(), m);
  const auto prefix_options = make_options(variant, epsilon, seed, m);
  const repair::CompressResult small =
      m == input.size() ? result : repair::compress(prefix, prefix_options);
  const repair::ReplayReport report =
      repair::replay_validate(prefix, small.grammar.rules, &small.grammar.final_sequence);
  std::cout << "replay       " << (report.ok() ? "ok" : "FAILED") << " (" << m << " bytes, "
            << report.rules.size() << " rules, " << report.failures << " failures)\n";
  for (const auto& e : report.errors) std::cout << "  " << e << '\n';
  ok = ok && report.ok();
  return ok ? kOk : kVerifyFailed;
}

int run_stats(const std::string& in_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + in_path);
  const repair::GrammarHeader h = repair::read_header(in);
  std::cout << "version      " << int{h.version} << '\n'
            << "variant      " << (h.light() ? "light" : "fast") << '\n'
            << "n            " << h.n << '\n'
            << "sigma        " << h.sigma << '\n'
            << "rules        " << h.rules << '\n'
            << "final length " << h.seq_len << '\n'
            << "file bytes   " << h.file_size() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Re-Pair grammar compressor"};
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;
  std::string variant = "fast";
  double epsilon = 1.0;
  std::uint64_t seed = 0x5EED;
  std::string stats_format;
  std::size_t max_n = 4096;

  auto add_tuning = [&](CLI::App* cmd) {
    cmd->add_option("--variant", variant, "Queue variant")
        ->check(CLI::IsMember({"fast", "light"}));
    cmd->add_option("--epsilon", epsilon, "Low-frequency queue size for the fast variant")
        ->check(CLI::Range(0.0, 1.0))
        ->check(CLI::Validator(
            [](std::string& s) {
              double value = 0.0;
              if (!CLI::detail::lexical_cast(s, value) || !(value > 0.0)) {
                return std::string("epsilon must lie in (0, 1]");
              }
              return std::string();
            },
            "(0, 1]"));
    cmd->add_option("--seed", seed, "Hash seed");
  };

  CLI::App* compress_cmd = app.add_subcommand("compress", "Compress a file");
  compress_cmd->add_option("input", in_path, "Input file")->required();
  compress_cmd->add_option("-o,--output", out_path, "Grammar file")->required();
  add_tuning(compress_cmd);
  compress_cmd->add_option("--stats", stats_format, "Print statistics")
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* decompress_cmd = app.add_subcommand("decompress", "Restore the original file");
  decompress_cmd->add_option("input", in_path, "Grammar file")->required();
  decompress_cmd->add_option("-o,--output", out_path, "Output file")->required();

  CLI::App* verify_cmd = app.add_subcommand("verify", "Check round trip and pair choices");
  verify_cmd->add_option("input", in_path, "Input file")->required();
  verify_cmd->add_option("--max-n", max_n, "Longest prefix replayed against the oracle");
  add_tuning(verify_cmd);

  CLI::App* stats_cmd = app.add_subcommand("stats", "Summarize a grammar file");
  stats_cmd->add_option("input", in_path, "Grammar file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compress_cmd) {
      return run_compress(in_path, out_path, variant, epsilon, seed, stats_format);
    }
    if (*decompress_cmd) return run_decompress(in_path, out_path);
    if (*verify_cmd) return run_verify(in_path, max_n, variant, epsilon, seed);
    if (*stats_cmd) return run_stats(in_path);
  } catch (const repair::SpaceBoundViolation& e) {
    std::cerr << "space bound exceeded: " << e.what() << '\n';
    return kSpaceBound;
  } catch (const IoError& e) {
    std::cerr << e.what() << '\n';
    return kIo;
  } catch (const repair::GrammarError& e) {
    std::cerr << "invalid grammar file: " << e.what() << '\n';
    return kIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
