#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "repair/engine.hpp"
#include "repair/grammar_io.hpp"
#include "repair/oracle.hpp"

namespace py = pybind11;
using namespace py::literals;

namespace {

std::span<const std::uint8_t> view(const std::string& data) {
  return {reinterpret_cast<const std::uint8_t*>(data.data()), data.size()};
}

repair::CompressOptions options(const std::string& variant, double epsilon, repair::Word seed,
                                bool check_invariants) {
  const auto v = repair::parse_variant(variant);
  if (!v) throw py::value_error("variant must be 'fast' or 'light'");
  repair::CompressOptions o;
  o.variant = *v;
  o.epsilon = epsilon;
  o.seed = seed;
  o.check_invariants = check_invariants;
  return o;
}

py::dict stats_dict(const repair::CompressStats& s) {
  return py::dict("n"_a = s.n, "sigma"_a = s.sigma, "rules"_a = s.rules,
                  "final_len"_a = s.final_len, "hf_rounds"_a = s.hf_rounds,
                  "lf_rounds"_a = s.lf_rounds, "peak_words"_a = s.peak_words,
                  "bound_words"_a = s.bound_words, "elapsed_ms"_a = s.elapsed_ms,
                  "fallback"_a = s.fallback, "invariant_violations"_a = s.invariant_violations);
}

py::dict grammar_dict(const repair::Grammar& g) {
  py::list rules;
  for (const auto& r : g.rules) rules.append(py::make_tuple(r.rhs_left, r.rhs_right));
  const auto& a = g.alphabet.dense_to_original;
  return py::dict("alphabet"_a = py::bytes(std::string(a.begin(), a.end())), "rules"_a = rules,
                  "final"_a = g.final_sequence, "length"_a = g.original_length);
}

py::bytes serialize(const repair::Grammar& g, std::uint8_t flags) {
  std::ostringstream out;
  repair::write_grammar(g, out, flags);
  return py::bytes(out.str());
}

}  // namespace

PYBIND11_MODULE(_repair, m) {
  m.doc() = "Re-Pair grammar compression";

  py::register_exception<repair::GrammarError>(m, "GrammarError", PyExc_ValueError);
  py::register_exception<repair::SpaceBoundViolation>(m, "SpaceBoundViolation", PyExc_MemoryError);

  m.def(
      "compress",
      [](const py::bytes& data, const std::string& variant, double epsilon, repair::Word seed) {
        const std::string input = data;
        const auto o = options(variant, epsilon, seed, false);
        repair::Grammar g;
        {
          py::gil_scoped_release release;
          g = repair::compress(view(input), o).grammar;
        }
        return serialize(g, o.variant == repair::Variant::light ? repair::kFlagLight : 0);
      },
      "data"_a, "variant"_a = "fast", "epsilon"_a = 1.0, "seed"_a = repair::Word{0x5EED},
      "Compress bytes into a grammar file image.");

  m.def(
      "decompress",
      [](const py::bytes& blob) {
        std::istringstream in{std::string(blob)};
        std::ostringstream out;
        repair::decompress(in, out);
        return py::bytes(out.str());
      },
      "blob"_a, "Restore the bytes encoded by a grammar file image.");

  m.def(
      "grammar",
      [](const py::bytes& data, const std::string& variant, double epsilon, repair::Word seed) {
        const std::string input = data;
        return grammar_dict(repair::compress(view(input), options(variant, epsilon, seed, false)).grammar);
      },
      "data"_a, "variant"_a = "fast", "epsilon"_a = 1.0, "seed"_a = repair::Word{0x5EED},
      "Rules and final sequence; rule k defines code sigma + k.");

  m.def(
      "stats",
      [](const py::bytes& data, const std::string& variant, double epsilon, repair::Word seed,
         bool check_invariants) {
        const std::string input = data;
        return stats_dict(repair::compress(view(input), options(variant, epsilon, seed, check_invariants)).stats);
      },
      "data"_a, "variant"_a = "fast", "epsilon"_a = 1.0, "seed"_a = repair::Word{0x5EED},
      "check_invariants"_a = false, "Compression statistics.");

  m.def(
      "naive_grammar",
      [](const py::bytes& data) {
        const std::string input = data;
        return grammar_dict(repair::naive_repair(view(input)));
      },
      "data"_a, "Grammar of the quadratic reference implementation.");

  m.def(
      "replay_ok",
      [](const py::bytes& data, const std::string& variant, double epsilon) {
        const std::string input = data;
        const auto g = repair::compress(view(input), options(variant, epsilon, 0x5EED, false)).grammar;
        return repair::replay_validate(view(input), g.rules, &g.final_sequence).ok();
      },
      "data"_a, "variant"_a = "fast", "epsilon"_a = 1.0,
      "Whether every rule replaced a most frequent pair.");

  m.def("space_bound_words", [](std::size_t n, const std::string& variant, double epsilon) {
    return repair::space_bound_words(n, *repair::parse_variant(variant), epsilon);
  }, "n"_a, "variant"_a = "fast", "epsilon"_a = 1.0);
}
