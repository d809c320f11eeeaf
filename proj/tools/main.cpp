#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specamb/diagram.hpp"
#include "specamb/distribution.hpp"
#include "specamb/error.hpp"
#include "specamb/io.hpp"
#include "specamb/measures.hpp"
#include "specamb/sampling.hpp"
#include "specamb/verify.hpp"

namespace {

using namespace specamb;

// Exit codes are a stable contract:
//   0 success, 1 verification failure, 2 file/parameter problem,
//   3 unknown label, 4 undefined quantity.
int exit_code_for(Errc code) {
  switch (code) {
    case Errc::UnknownLabel:
      return 3;
    case Errc::ZeroMarginal:
    case Errc::ZeroConditioningEvent:
    case Errc::DegenerateTotalExclusion:
    case Errc::MisinformativeExceedsEvent:
      return 4;
    default:
      return 2;
  }
}

LogBase parse_base(const std::string& text) {
  if (text == "e") return LogBase::nats();
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return LogBase::of(value);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::InvalidArgument, "cannot parse log base '" + text + "'");
  }
}

Backend parse_backend(const std::string& text) {
  if (text == "float") return Backend::Float;
  if (text == "rational") return Backend::Rational;
  fail(Errc::InvalidArgument, "backend must be 'float' or 'rational'");
}

std::vector<std::size_t> parse_shape(const std::string& text) {
  std::vector<std::size_t> dims;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string part =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      if (part.empty()) throw std::invalid_argument(part);
      const long v = std::stol(part);
      if (v < 1) throw std::invalid_argument(part);
      dims.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      fail(Errc::InvalidArgument, "bad shape component '" + part + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (dims.size() != 2 && dims.size() != 3) {
    fail(Errc::InvalidArgument, "shape must have 2 or 3 components");
  }
  return dims;
}

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

struct DecomposeArgs {
  std::string input, x, y, z;
  std::string mode = "plain";
  std::string base = "2";
  std::string backend = "float";
  std::string format = "text";
};

template <class T>
int run_decompose_typed(const DecomposeArgs& args, const Json& doc, FileArity arity) {
  const LogBase base = parse_base(args.base);
  Decomposition<T> d = [&] {
    if (args.mode == "plain") {
      if (arity != FileArity::Two) {
        fail(Errc::ArityMismatch, "mode 'plain' needs a two-variable file");
      }
      return decompose(parse_joint2<T>(doc), args.x, args.y, base);
    }
    if (arity != FileArity::Three) {
      fail(Errc::ArityMismatch, "mode '" + args.mode + "' needs a three-variable file");
    }
    const Joint3<T> j = parse_joint3<T>(doc);
    if (args.z.empty()) {
      fail(Errc::InvalidArgument, "mode '" + args.mode + "' needs --z");
    }
    if (args.mode == "conditional") return decompose_conditional(j, args.y, args.x, args.z, base);
    if (args.mode == "joint_source") return decompose_joint_source(j, args.y, args.z, args.x, base);
    if (args.mode == "joint_target") return decompose_joint_target(j, args.y, args.x, args.z, base);
    fail(Errc::InvalidArgument, "unknown mode '" + args.mode + "'");
  }();

  if (args.format == "json") {
    std::cout << dump_json(decomposition_to_json(d));
    return 0;
  }
  std::cout << "target   " << d.target_event << "\n";
  std::cout << "source   " << d.source_event << "\n";
  if (!d.given_event.empty()) std::cout << "given    " << d.given_event << "\n";
  std::cout << "base     " << d.base.base() << "\n";
  std::cout << "pmi      " << format_value(d.pmi) << "\n";
  std::cout << "i_plus   " << format_value(d.i_plus) << "\n";
  std::cout << "i_minus  " << format_value(d.i_minus) << "\n";
  std::cout << "split    informative=" << format_value(to_double(d.split.informative))
            << " misinformative=" << format_value(to_double(d.split.misinformative))
            << " kind=" << to_string(d.split.kind) << "\n";
  return 0;
}

int run_decompose(const DecomposeArgs& args) {
  const Json doc = load_json_file(args.input);
  const FileArity arity = distribution_arity(doc);
  if (parse_backend(args.backend) == Backend::Rational) {
    return run_decompose_typed<Rational>(args, doc, arity);
  }
  return run_decompose_typed<double>(args, doc, arity);
}

struct ClassifyArgs {
  std::string input, x, y;
  std::string backend = "float";
  std::string format = "text";
};

template <class T>
int run_classify_typed(const ClassifyArgs& args, const Json& doc) {
  const Joint2<T> j = parse_joint2<T>(doc);
  const ExclusionSplit<T> split = exclusion_split(j, args.x, args.y);
  const T p_y = j.y_mass(j.y_index(args.y));
  if (args.format == "json") {
    Json out;
    out["target"] = args.x;
    out["source"] = args.y;
    out["split"] = split_to_json(split);
    out["p_source"] = mass_to_json(p_y);
    std::cout << dump_json(out);
    return 0;
  }
  std::cout << "target         " << args.x << "\n";
  std::cout << "source         " << args.y << "\n";
  std::cout << "informative    " << format_value(to_double(split.informative)) << "\n";
  std::cout << "misinformative " << format_value(to_double(split.misinformative)) << "\n";
  std::cout << "kind           " << to_string(split.kind) << "\n";
  std::cout << "p_source       " << format_value(to_double(p_y)) << "\n";
  return 0;
}

int run_classify(const ClassifyArgs& args) {
  const Json doc = load_json_file(args.input);
  if (distribution_arity(doc) != FileArity::Two) {
    fail(Errc::ArityMismatch, "classify needs a two-variable file");
  }
  if (parse_backend(args.backend) == Backend::Rational) {
    return run_classify_typed<Rational>(args, doc);
  }
  return run_classify_typed<double>(args, doc);
}

struct VerifyArgs {
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  std::string shape = "2,2,2";
  std::string backend = "float";
  std::string base = "2";
  std::string format = "text";
  bool sabotage_ambiguity = false;
};

int run_verify(const VerifyArgs& args) {
  SuiteConfig config;
  config.seed = args.seed;
  config.trials = args.trials;
  config.shape = parse_shape(args.shape);
  config.backend = parse_backend(args.backend);
  config.options.base = parse_base(args.base);
  config.options.sabotage_ambiguity = args.sabotage_ambiguity;
  const VerificationReport report = run_suite(config);

  if (args.format == "json") {
    std::cout << dump_json(report_to_json(report));
  } else {
    std::cout << "seed " << report.seed << " trials " << report.trials << " shape ";
    for (std::size_t i = 0; i < report.shape.size(); ++i) {
      std::cout << (i ? "," : "") << report.shape[i];
    }
    std::cout << " backend " << to_string(report.backend) << "\n";
    for (const auto& c : report.checks) {
      char residual[64];
      std::snprintf(residual, sizeof(residual), "%.3e", c.max_residual);
      std::cout << (c.passed() ? "PASS " : "FAIL ") << c.name
                << " max_residual=" << residual << " evaluations=" << c.evaluations
                << " skipped=" << c.skipped;
      if (!c.skip_reasons.empty()) {
        std::cout << " reasons=";
        for (std::size_t i = 0; i < c.skip_reasons.size(); ++i) {
          std::cout << (i ? "," : "") << c.skip_reasons[i];
        }
      }
      std::cout << "\n";
    }
    std::cout << "counterexamples iplus_target_chain="
              << report.stats.iplus_target_chain_counterexamples
              << " iminus_target_chain="
              << report.stats.iminus_target_chain_counterexamples << "\n";
    std::cout << "RESULT " << (report.all_passed() ? "PASS" : "FAIL") << "\n";
  }
  return report.all_passed() ? 0 : 1;
}

struct DiagramArgs {
  std::string input, x, y;
  std::string panels = "prior,exclusion,posterior";
  std::string format = "ascii";
  std::string out;
};

int run_diagram(const DiagramArgs& args) {
  const Json doc = load_json_file(args.input);
  if (distribution_arity(doc) != FileArity::Two) {
    fail(Errc::ArityMismatch, "diagram needs a two-variable file");
  }
  DiagramSpec spec{parse_joint2<double>(doc), args.x, args.y, {}, 420, 280, 2};
  spec.panels.clear();
  std::size_t start = 0;
  while (start <= args.panels.size()) {
    const std::size_t comma = args.panels.find(',', start);
    const std::string part = args.panels.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (part == "prior") {
      spec.panels.push_back(Panel::Prior);
    } else if (part == "exclusion") {
      spec.panels.push_back(Panel::Exclusion);
    } else if (part == "posterior") {
      spec.panels.push_back(Panel::Posterior);
    } else {
      fail(Errc::InvalidArgument, "unknown panel '" + part + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }

  if (args.format == "ascii") {
    emit(render_ascii(spec), args.out);
  } else if (args.format == "svg") {
    emit(render_svg(spec), args.out);
  } else {
    fail(Errc::InvalidArgument, "diagram format must be 'ascii' or 'svg'");
  }
  return 0;
}

struct GenArgs {
  std::uint64_t seed = 0;
  std::string shape = "2,2";
  std::string backend = "float";
  std::string out;
};

template <class T>
std::string generate_file(const std::vector<std::size_t>& dims, std::uint64_t seed) {
  // Same sampling rule as the verification suite's first trial.
  const std::uint64_t sub_seed = trial_seed(seed, 0);
  constexpr unsigned kGenDenomBits = 16;
  if (dims.size() == 2) {
    return dump_json(joint2_to_json(random_joint2<T>(dims[0], dims[1], sub_seed, kGenDenomBits)));
  }
  return dump_json(
      joint3_to_json(random_joint3<T>(dims[0], dims[1], dims[2], sub_seed, kGenDenomBits)));
}

int run_gen(const GenArgs& args) {
  const std::vector<std::size_t> dims = parse_shape(args.shape);
  const std::string text = parse_backend(args.backend) == Backend::Rational
                               ? generate_file<Rational>(dims, args.seed)
                               : generate_file<double>(dims, args.seed);
  emit(text, args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specamb: specificity/ambiguity decomposition of pointwise mutual "
               "information over finite discrete distributions"};
  app.require_subcommand(1);

  DecomposeArgs dec;
  auto* cmd_dec = app.add_subcommand(
      "decompose", "Decompose the information one event provides about another");
  cmd_dec->add_option("-i,--input", dec.input, "distribution JSON file")->required();
  cmd_dec->add_option("-x,--x", dec.x, "target event label")->required();
  cmd_dec->add_option("-y,--y", dec.y, "source event label")->required();
  cmd_dec->add_option("-z,--z", dec.z,
                      "second event label: given (conditional), second source "
                      "(joint_source), or second target (joint_target)");
  cmd_dec->add_option("--mode", dec.mode,
                      "plain | conditional | joint_source | joint_target");
  cmd_dec->add_option("--base", dec.base, "log base (> 1, or 'e')");
  cmd_dec->add_option("--backend", dec.backend, "float | rational");
  cmd_dec->add_option("--format", dec.format, "text | json");

  ClassifyArgs cls;
  auto* cmd_cls = app.add_subcommand(
      "classify", "Classify the probability mass exclusions for an event pair");
  cmd_cls->add_option("-i,--input", cls.input, "distribution JSON file")->required();
  cmd_cls->add_option("-x,--x", cls.x, "target event label")->required();
  cmd_cls->add_option("-y,--y", cls.y, "source event label")->required();
  cmd_cls->add_option("--backend", cls.backend, "float | rational");
  cmd_cls->add_option("--format", cls.format, "text | json");

  VerifyArgs ver;
  auto* cmd_ver = app.add_subcommand(
      "verify", "Run the identity checks over a seeded random ensemble");
  cmd_ver->add_option("--seed", ver.seed, "ensemble seed");
  cmd_ver->add_option("--trials", ver.trials, "number of random distributions");
  cmd_ver->add_option("--shape", ver.shape, "alphabet sizes, e.g. 2,2 or 2,2,2");
  cmd_ver->add_option("--backend", ver.backend, "float | rational");
  cmd_ver->add_option("--base", ver.base, "log base (> 1, or 'e')");
  cmd_ver->add_option("--format", ver.format, "text | json");
  cmd_ver->add_flag("--sabotage-ambiguity", ver.sabotage_ambiguity)->group("");

  DiagramArgs dia;
  auto* cmd_dia = app.add_subcommand("diagram", "Render a probability mass diagram");
  cmd_dia->add_option("-i,--input", dia.input, "two-variable distribution file")->required();
  cmd_dia->add_option("-x,--x", dia.x, "target event label")->required();
  cmd_dia->add_option("-y,--y", dia.y, "source event label")->required();
  cmd_dia->add_option("--panels", dia.panels, "comma list of prior,exclusion,posterior");
  cmd_dia->add_option("--format", dia.format, "ascii | svg");
  cmd_dia->add_option("-o,--out", dia.out, "output path (stdout when omitted)");

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "Generate a seeded random distribution file");
  cmd_gen->add_option("--seed", gen.seed, "generation seed");
  cmd_gen->add_option("--shape", gen.shape, "alphabet sizes, e.g. 2,2 or 2,2,2");
  cmd_gen->add_option("--backend", gen.backend, "float | rational");
  cmd_gen->add_option("-o,--out", gen.out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_dec->parsed()) return run_decompose(dec);
    if (cmd_cls->parsed()) return run_classify(cls);
    if (cmd_ver->parsed()) return run_verify(ver);
    if (cmd_dia->parsed()) return run_diagram(dia);
    if (cmd_gen->parsed()) return run_gen(gen);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
