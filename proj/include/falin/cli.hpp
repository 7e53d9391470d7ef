#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "falin/corpus.hpp"
#include "falin/errors.hpp"
#include "falin/linearize.hpp"
#include "falin/textio.hpp"

namespace falin::cli {

/// Process exit codes.
enum ExitStatus : int {
  success = 0,
  usage_or_io = 1,
  math_failure = 2,
  internal_error = 3,
};

namespace detail {

struct IoError : Error {
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content))
    throw IoError("cannot write '" + path + "'");
}

inline ActionDocument load(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw IoError(path + ": " + e.what());
  }
}

inline TorusAction load_action(const std::string& path) {
  auto doc = load(path);
  if (doc.kind != DocumentKind::action)
    throw IoError(path + ": expected an action document");
  return to_action(doc);
}

} // namespace detail

/// Runs one subcommand. Data goes to out, diagnostics to err.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linearization of torus actions on free associative algebras", "falin"};
  app.require_subcommand(1);

  std::string file, file2, out_path, prefix;
  std::optional<int> max_degree;
  std::uint64_t seed = 0;

  auto* check = app.add_subcommand("check", "Verify the action axioms");
  check->add_option("FILE", file, "action document")->required();

  auto* lin = app.add_subcommand("linearize", "Compute the linearizing automorphism");
  lin->add_option("FILE", file, "action document")->required();
  lin->add_option("--out", out_path, "write the JSON report here");
  lin->add_option("--max-degree", max_degree, "degree bound for the inverse");
  lin->add_option("--seed", seed, "seed of the fixed point search");

  auto* inv = app.add_subcommand("invert", "Invert a polynomial automorphism");
  inv->add_option("FILE", file, "map document")->required();
  inv->add_option("--max-degree", max_degree, "degree bound for the inverse");

  auto* comp = app.add_subcommand("compose", "Compose two maps: the left one applied after the right one");
  comp->add_option("LEFT", file, "outer map or action")->required();
  comp->add_option("RIGHT", file2, "inner map or action")->required();

  auto* abel = app.add_subcommand("abelianize", "Project onto the commutative polynomial ring");
  abel->add_option("FILE", file, "map or action document")->required();

  CorpusSpec spec;
  bool allow_singular = false;
  auto* gen = app.add_subcommand("generate", "Generate an action with known linearization");
  gen->add_option("--rank", spec.rank, "number of generators")->required()->check(CLI::Range(1, 127));
  gen->add_option("--seed", spec.seed, "random seed")->required();
  gen->add_option("--elementary", spec.n_elementary, "number of elementary factors")
      ->required()
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--degree", spec.max_poly_degree, "degree bound of elementary factors")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--weight-bound", spec.weight_bound, "bound on |weight entries|")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_flag("--allow-singular", allow_singular, "permit a singular power matrix");
  gen->add_option("--out", prefix, "write PREFIX.act and PREFIX.truth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return success;
  } catch (const CLI::ParseError& e) {
    err << "falin: " << e.what() << "\n" << app.help();
    return usage_or_io;
  }

  try {
    if (*check) {
      const auto sigma = detail::load_action(file);
      const auto verdict = check_axioms(sigma);
      if (verdict) {
        out << "ok\n";
        return success;
      }
      out << "fail: " << describe(*verdict.witness, sigma.rank()) << "\n";
      return math_failure;
    }

    if (*lin) {
      const auto sigma = detail::load_action(file);
      auto emit = [&](const LinearizationReport& r) {
        const std::string text = emit_report(r) + "\n";
        if (out_path.empty())
          out << text;
        else
          detail::write_file(out_path, text);
      };
      try {
        const auto report = linearize(sigma, {.max_degree = max_degree, .seed = seed});
        emit(report);
        if (!report.verified) {
          err << "falin: conjugation could not be verified\n";
          return math_failure;
        }
        return success;
      } catch (const NotEffective& e) {
        emit(e.report());
        err << "falin: " << e.what() << "\n";
        return math_failure;
      } catch (const AxiomsFail& e) {
        err << "falin: " << describe(e.witness(), sigma.rank()) << "\n";
        return math_failure;
      }
    }

    if (*inv) {
      const auto doc = detail::load(file);
      if (doc.kind != DocumentKind::map)
        throw detail::IoError(file + ": expected a map document");
      const auto f = to_map(doc);
      out << print(max_degree ? invert(f, *max_degree) : invert(f));
      return success;
    }

    if (*comp) {
      const auto left = detail::load(file);
      const auto right = detail::load(file2);
      if (left.rank != right.rank)
        throw detail::IoError("maps have different rank");
      if (left.kind == DocumentKind::map && right.kind == DocumentKind::map) {
        out << print(compose(to_map(left), to_map(right)));
      } else {
        auto as_action = [](const ActionDocument& d) {
          return d.kind == DocumentKind::action ? to_action(d).map()
                                                : promote(to_map(d), LaurentRing{d.rank});
        };
        out << print_document(compose(as_action(left), as_action(right)), "action");
      }
      return success;
    }

    if (*abel) {
      const auto doc = detail::load(file);
      if (doc.kind == DocumentKind::map) {
        const auto f = to_map(doc);
        for (std::size_t i = 0; i < f.rank(); ++i)
          out << "x" << i + 1 << " -> " << format_commutative(abelianize(f.image(i)), 0) << "\n";
      } else {
        const auto sigma = to_action(doc);
        for (std::size_t i = 0; i < sigma.rank(); ++i)
          out << "x" << i + 1 << " -> "
              << format_commutative(abelianize(sigma.map().image(i)), sigma.rank()) << "\n";
      }
      return success;
    }

    if (*gen) {
      spec.force_effective = !allow_singular;
      const auto g = gen_action(spec);
      const std::string action = print(g.sigma);
      if (prefix.empty()) {
        out << action;
      } else {
        detail::write_file(prefix + ".act", action);
        detail::write_file(prefix + ".truth", "# weights " + weights_json(g.weights) + "\n" +
                                                  print(g.alpha));
      }
      return success;
    }
  } catch (const detail::IoError& e) {
    err << "falin: " << e.what() << "\n";
    return usage_or_io;
  } catch (const ParseError& e) {
    err << "falin: " << e.what() << "\n";
    return usage_or_io;
  } catch (const MathError& e) {
    err << "falin: " << e.what() << "\n";
    return math_failure;
  } catch (const InvariantViolation& e) {
    err << "falin: internal error: " << e.what() << "\n";
    return internal_error;
  } catch (const Error& e) {
    err << "falin: " << e.what() << "\n";
    return usage_or_io;
  }
  err << app.help();
  return usage_or_io;
}

} // namespace falin::cli
