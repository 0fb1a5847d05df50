#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tfg/constructions.hpp"
#include "tfg/finite.hpp"
#include "tfg/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;

tfg::SpecPtr parse_spec(const std::string& text) {
  return tfg::spec_from_json(tfg::parse_json(text));
}

tfg::GroupElement parse_element(const std::string& text, const tfg::SpecPtr& spec) {
  return tfg::element_from_json(tfg::parse_json(text), spec);
}

tfg::ClopenSet parse_set(const std::string& text, const tfg::SpecPtr& spec) {
  return tfg::clopen_from_json(tfg::parse_json(text), spec);
}

void emit(const tfg::Certificate& cert, const std::string& out_path) {
  const std::string text = tfg::dump_canonical(tfg::certificate_to_json(cert));
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw tfg::precondition_error("cannot open output file " + out_path);
    out << text;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tfg::parse_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct DecomposeArgs {
  std::string kind;
  std::string spec_text = R"({"head":[],"tail":[2]})";
  std::string element_text;
  std::string b_text;
  std::string a_text;
  std::string set_text;
  std::string x_text;
  std::string delta_text = "1/4";
  long n = 2;
  long steps = 1;
  long level = 6;
  std::string out_path;
};

tfg::Certificate run_decompose(const DecomposeArgs& args) {
  const tfg::SpecPtr spec = parse_spec(args.spec_text);
  const auto element = [&]() {
    if (args.element_text.empty())
      throw tfg::parse_error("--element is required for this kind");
    return parse_element(args.element_text, spec);
  };
  const auto delta = [&]() {
    return tfg::rat_from_json(tfg::Json(args.delta_text));
  };
  if (args.kind == "glasner-weiss") {
    if (args.b_text.empty() || args.a_text.empty())
      throw tfg::parse_error("--b and --a are required for glasner-weiss");
    const tfg::ClopenSet b = parse_set(args.b_text, spec);
    const tfg::ClopenSet a = parse_set(args.a_text, spec);
    return b.measure() == a.measure() ? tfg::glasner_weiss_eq(b, a)
                                      : tfg::glasner_weiss_sub(b, a);
  }
  if (args.kind == "small-generators") return tfg::small_generators(element(), delta());
  if (args.kind == "periodic-commutator") return tfg::periodic_commutator(element());
  if (args.kind == "two-involutions") return tfg::periodic_two_involutions(element());
  if (args.kind == "many-involutions") {
    if (args.set_text.empty() || args.x_text.empty())
      throw tfg::parse_error("--set and --x are required for many-involutions");
    return tfg::many_involutions(parse_set(args.set_text, spec),
                                 tfg::prefix_from_json(tfg::parse_json(args.x_text)),
                                 tfg::Int(args.n));
  }
  if (args.kind == "minimal-first-step") {
    const tfg::GroupElement f = args.element_text.empty()
                                    ? tfg::GroupElement::shift(spec)
                                    : parse_element(args.element_text, spec);
    return tfg::minimal_first_step(f, delta());
  }
  if (args.kind == "commutator-expansion") {
    const tfg::GroupElement f = args.element_text.empty()
                                    ? tfg::GroupElement::shift(spec)
                                    : parse_element(args.element_text, spec);
    return tfg::commutator_expansion(f, tfg::Int(args.steps));
  }
  if (args.kind == "tower") return tfg::tower_lemma(spec, tfg::Int(args.n));
  if (args.kind == "eighteen-cycle") return tfg::eighteen_cycle(spec);
  if (args.kind == "induced-times-involutions") {
    if (args.set_text.empty())
      throw tfg::parse_error("--set is required for induced-times-involutions");
    return tfg::induced_times_involutions(parse_set(args.set_text, spec));
  }
  if (args.kind == "finite-three-involutions") {
    if (args.level < 0) throw tfg::parse_error("--level must be nonnegative");
    return tfg::finite_three_involutions(spec, static_cast<std::size_t>(args.level));
  }
  throw tfg::parse_error("unknown decomposition kind: " + args.kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact factorizations in the topological full group of a q-adic odometer"};
  app.require_subcommand(1);

  DecomposeArgs dargs;
  std::uint64_t seed = 0;
  CLI::App* decompose = app.add_subcommand("decompose", "run a construction and emit a certificate");
  decompose->add_option("kind", dargs.kind,
                        "one of: glasner-weiss, small-generators, periodic-commutator, "
                        "two-involutions, many-involutions, minimal-first-step, "
                        "commutator-expansion, tower, eighteen-cycle, "
                        "induced-times-involutions, finite-three-involutions")
      ->required();
  decompose->add_option("--spec", dargs.spec_text, "odometer base sequence JSON");
  decompose->add_option("--element", dargs.element_text, "group element JSON");
  decompose->add_option("--b", dargs.b_text, "clopen set JSON (source)");
  decompose->add_option("--a", dargs.a_text, "clopen set JSON (target)");
  decompose->add_option("--set", dargs.set_text, "clopen set JSON");
  decompose->add_option("--x", dargs.x_text, "point prefix JSON");
  decompose->add_option("--delta", dargs.delta_text, "measure bound as p/q");
  decompose->add_option("--n", dargs.n, "cycle length / tower parameter");
  decompose->add_option("--steps", dargs.steps, "expansion step count");
  decompose->add_option("--level", dargs.level, "truncation level");
  decompose->add_option("--seed", seed, "random seed (accepted for reproducible scripts)");
  decompose->add_option("--out", dargs.out_path, "output file (stdout when omitted)");

  std::string verify_path;
  CLI::App* verify_cmd = app.add_subcommand("verify", "re-check a certificate file");
  verify_cmd->add_option("path", verify_path, "certificate JSON file")->required();

  tfg::SelftestOptions st;
  std::string st_spec_text = R"({"head":[],"tail":[2]})";
  CLI::App* selftest = app.add_subcommand("selftest", "run the invariant suites");
  selftest->add_option("--spec", st_spec_text, "odometer base sequence JSON");
  selftest->add_option("--seed", st.seed, "random seed");
  selftest->add_option("--cases", st.cases, "cases per suite");
  selftest->add_option("--max-level", st.max_level, "deepest level for random inputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (decompose->parsed()) {
      const tfg::Certificate cert = run_decompose(dargs);
      const tfg::VerifyResult result = tfg::verify(cert);
      emit(cert, dargs.out_path);
      if (!result.ok) {
        std::cerr << "verification failed: " << result.message << "\n";
        return kExitVerifyFailed;
      }
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      const tfg::Certificate cert =
          tfg::certificate_from_json(tfg::parse_json(read_file(verify_path)));
      const tfg::VerifyResult result = tfg::verify(cert);
      if (!result.ok) {
        std::cerr << "verification failed: " << result.message << "\n";
        return kExitVerifyFailed;
      }
      std::cout << "ok\n";
      return kExitOk;
    }
    st.spec = parse_spec(st_spec_text);
    return tfg::run_selftest(st, std::cout) ? kExitOk : kExitVerifyFailed;
  } catch (const tfg::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tfg::precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}
