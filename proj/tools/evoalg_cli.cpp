// evoalg: classify 2-dimensional evolution algebras, check chains of
// evolution algebras, and verify or search Rota-Baxter operators.
//
// Exit codes: 0 ok, 1 input error, 2 unclassifiable, 3 verification failure.

#include <CLI11.hpp>

#include <evoalg/cea.hpp>
#include <evoalg/cea_config.hpp>
#include <evoalg/classify2d.hpp>
#include <evoalg/matrix_io.hpp>
#include <evoalg/poly.hpp>
#include <evoalg/rotabaxter.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace evoalg;

namespace {

enum Exit { ok = 0, input_error = 1, unclassifiable = 2, verification_failure = 3 };

struct Common {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<std::size_t> samples;
  std::size_t starts = 200;
  unsigned jobs = 1;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "random seed (default 0)");
  cmd->add_option("--tol", c.tol, "acceptance tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--samples", c.samples, "sample count")->check(CLI::PositiveNumber);
  cmd->add_option("--starts", c.starts, "search starts")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  cmd->add_option("--out", c.out, "output file (stdout if omitted)");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("write failed for '" + path + "'");
}

Field parse_field(const std::string& s) { return s == "real" ? Field::real : Field::complex; }

Weight parse_weight(int w) { return w == 0 ? Weight::zero : Weight::one; }

Scalar parse_scalar(const std::string& s, const char* what) {
  auto z = parse_complex(s);
  if (!z) throw ConfigError(std::string(what) + ": malformed number '" + s + "'");
  return *z;
}

ClassTag parse_algebra(const std::string& s) {
  auto t = parse_class_tag(s);
  if (!t) throw ConfigError("unknown algebra '" + s + "' (expected E0..E6)");
  return *t;
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string file;
  std::string field = "complex";
  std::optional<double> tol;
};

int run_classify(const ClassifyArgs& a) {
  const StructureMatrix A = read_matrix_file(a.file);
  ClassifyOptions opt;
  if (a.tol) opt.tol = *a.tol;
  try {
    const Classification c = classify_with_witness(A, parse_field(a.field), opt);
    std::cout << c.cls.to_string() << "\n";
    if (c.numeric) {
      const Matrix& t = c.witness.matrix();
      std::cout << "witness: [[" << format_complex(t(0, 0), 12) << ", " << format_complex(t(0, 1), 12)
                << "], [" << format_complex(t(1, 0), 12) << ", " << format_complex(t(1, 1), 12)
                << "]]\n"
                << "residual: " << format_double(c.residual, 3) << "\n";
    }
    return ok;
  } catch (const UnclassifiableError& e) {
    std::cerr << "evoalg: unclassifiable: " << e.what() << "\n";
    return unclassifiable;
  }
}

// ---------------------------------------------------------------------------

struct CeaArgs {
  std::string config;
  Common common;
};

CeaConfig load_cea(const CeaArgs& a, bool seed_given) {
  CeaConfig cfg = read_cea_config(a.config);
  if (seed_given) cfg.seed = a.common.seed;
  if (a.common.samples) cfg.samples = *a.common.samples;
  if (a.common.tol) cfg.tolerance = *a.common.tol;
  return cfg;
}

int run_cea_verify(const CeaArgs& a, bool seed_given) {
  const CeaConfig cfg = load_cea(a, seed_given);
  const CkReport r = verify_ck(cfg.spec, cfg.samples, cfg.seed, cfg.tolerance, cfg.sampling);
  std::string text;
  text += "family: " + to_string(cfg.spec.id()) + "\n";
  text += "samples: " + std::to_string(r.samples) + "\n";
  text += "seed: " + std::to_string(cfg.seed) + "\n";
  text += "tolerance: " + format_double(r.tol) + "\n";
  text += "max_violation: " + format_double(r.max_violation) + "\n";
  text += "max_abs_violation: " + format_double(r.max_abs_violation) + "\n";
  if (r.worst) text += "worst: " + to_string(*r.worst) + "\n";
  text += "failures: " + std::to_string(r.failures) + "\n";
  text += std::string("result: ") + (r.passed ? "pass" : "fail") + "\n";
  write_text(a.common.out, text);
  return r.passed ? ok : verification_failure;
}

int run_cea_diagram(const CeaArgs& a, bool seed_given) {
  const CeaConfig cfg = load_cea(a, seed_given);
  const PropertyDiagram d =
      property_diagram(cfg.spec, cfg.property, cfg.window, cfg.resolution, cfg.field, a.common.jobs);
  if (a.common.out.empty()) {
    std::cout << diagram_csv(d);
  } else {
    write_text(a.common.out + ".csv", diagram_csv(d));
    write_text(a.common.out + ".svg", diagram_svg(d));
    std::cout << "wrote " << a.common.out << ".csv and " << a.common.out << ".svg\n"
              << "in_property: " << d.count(CellKind::in_property) << "\n"
              << "not_in_property: " << d.count(CellKind::not_in_property) << "\n"
              << "out_of_domain: " << d.count(CellKind::out_of_domain) << "\n"
              << "error: " << d.count(CellKind::error) << "\n";
  }
  for (const auto& c : d.cells)
    if (c.kind == CellKind::error) {
      std::cerr << "evoalg: evaluation error at (s,t)=(" << format_double(c.s) << "," << format_double(c.t)
                << "): " << c.message << "\n";
      return input_error;
    }
  return ok;
}

// ---------------------------------------------------------------------------

struct RboArgs {
  std::optional<std::string> algebra;
  int weight = 0;
  std::optional<std::string> x, y;
  std::string matrix;
  bool log = false;
  Common common;
};

StructureMatrix rbo_algebra(const RboArgs& a) {
  if (!a.matrix.empty()) return read_matrix_file(a.matrix);
  if (!a.algebra) throw ConfigError("one of --algebra or --matrix is required");
  const ClassTag tag = parse_algebra(*a.algebra);
  if (tag == ClassTag::E0) return StructureMatrix::zero(2);
  if (tag == ClassTag::E7) throw ConfigError("E7 is not a complex algebra");
  AlgebraClass cls{Field::complex, tag, {}};
  const Scalar x = parse_scalar(a.x.value_or("0"), "--x");
  const Scalar y = parse_scalar(a.y.value_or("0"), "--y");
  if (tag == ClassTag::E5) cls.params = {x, y};
  if (tag == ClassTag::E6) cls.params = {x};
  try {
    return canonical_matrix(cls);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

int run_rbo_verify(const RboArgs& a) {
  VerifyOptions opt;
  opt.seed = a.common.seed;
  opt.jobs = a.common.jobs;
  if (a.common.samples) opt.samples = *a.common.samples;
  if (a.common.tol) opt.tol = *a.common.tol;
  const Weight w = parse_weight(a.weight);
  const std::vector<RboFamily> fams = a.algebra ? catalog(parse_algebra(*a.algebra), w) : catalog(w);
  const auto reps = verify_families(fams, opt);
  std::size_t failed = 0;
  for (const auto& r : reps) failed += !r.passed;
  std::cout << report_text(reps, fams) << fams.size() << " families, " << (fams.size() - failed)
            << " pass, " << failed << " fail\n";
  if (!a.common.out.empty()) write_text(a.common.out, report_csv(reps));
  return failed ? verification_failure : ok;
}

int run_rbo_search(const RboArgs& a) {
  RboSearchOptions opt;
  opt.seed = a.common.seed;
  opt.starts = a.common.starts;
  opt.jobs = a.common.jobs;
  if (a.common.tol) opt.tol = *a.common.tol;
  const StructureMatrix A = rbo_algebra(a);
  const auto sols = search(A, parse_weight(a.weight), opt);
  write_text(a.common.out, solutions_csv(sols));
  if (!a.common.out.empty()) std::cout << sols.size() << " distinct solutions\n";
  return ok;
}

// Symbolic in the algebra parameters unless --x/--y or --matrix pin them.
int run_rbo_systems(const RboArgs& a) {
  const Weight w = parse_weight(a.weight);
  PolySystem sys;
  std::optional<ClassTag> tag;
  if (a.matrix.empty() && a.algebra) tag = parse_algebra(*a.algebra);
  const bool symbolic = tag && *tag != ClassTag::E0 && !a.x && !a.y;
  if (symbolic) {
    require_catalog_tag(*tag);
    sys = derive_system(symbolic_algebra(*tag), w);
  } else {
    sys = derive_system(rbo_algebra(a), w);
  }
  std::string text;
  for (const auto& line : sys.lines()) text += line + "\n";
  write_text(a.common.out, text);
  if (a.log)
    for (const auto& line : sys.log()) std::cerr << "dropped " << line << "\n";
  return ok;
}

int run_rbo_catalog(const RboArgs& a) {
  const Weight w = parse_weight(a.weight);
  write_text(a.common.out, catalog_text(a.algebra ? catalog(parse_algebra(*a.algebra), w) : catalog(w)));
  return ok;
}

int run_rbo_exclusions(const RboArgs& a) {
  const auto reps = verify_exclusions(a.common.samples.value_or(10), a.common.seed);
  write_text(a.common.out, exclusions_text(reps));
  for (const auto& r : reps)
    if (!r.confirmed) return verification_failure;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolution algebras: classification, chains and Rota-Baxter operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "evoalg 1.0");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "classify a 2-dimensional evolution algebra");
  classify->add_option("file", ca.file, "matrix file")->required();
  classify->add_option("--field", ca.field, "real or complex")->check(CLI::IsMember({"real", "complex"}));
  classify->add_option("--tol", ca.tol, "tolerance")->check(CLI::PositiveNumber);

  CeaArgs cea_args;
  auto* cea = app.add_subcommand("cea", "chains of evolution algebras");
  cea->require_subcommand(1);
  auto* cea_verify = cea->add_subcommand("verify", "sample the Chapman-Kolmogorov equation");
  auto* cea_diagram = cea->add_subcommand("diagram", "property diagram (CSV + SVG)");
  for (auto* cmd : {cea_verify, cea_diagram}) {
    cmd->add_option("config", cea_args.config, "JSON config file")->required();
    add_common(cmd, cea_args.common);
  }

  RboArgs rbo_args;
  auto* rbo = app.add_subcommand("rbo", "Rota-Baxter operators on 2-dimensional algebras");
  rbo->require_subcommand(1);
  auto* rbo_verify = rbo->add_subcommand("verify", "verify catalog families by sampling");
  auto* rbo_search = rbo->add_subcommand("search", "numerically search for operators");
  auto* rbo_systems = rbo->add_subcommand("systems", "print the polynomial system");
  auto* rbo_catalog = rbo->add_subcommand("catalog", "list catalog families");
  auto* rbo_excl = rbo->add_subcommand("exclusions", "check rejected candidates against 1 - xy != 0");
  for (auto* cmd : {rbo_verify, rbo_search, rbo_systems, rbo_catalog, rbo_excl}) {
    add_common(cmd, rbo_args.common);
    if (cmd == rbo_excl) continue;
    cmd->add_option("--algebra", rbo_args.algebra, "E1..E6 (E0 allowed for search and systems)");
    cmd->add_option("--weight", rbo_args.weight, "0 or 1")->check(CLI::IsMember({0, 1}));
  }
  for (auto* cmd : {rbo_search, rbo_systems}) {
    cmd->add_option("--x", rbo_args.x, "first algebra parameter (E5, E6)");
    cmd->add_option("--y", rbo_args.y, "second algebra parameter (E5)");
    cmd->add_option("--matrix", rbo_args.matrix, "structure matrix file instead of --algebra");
  }
  rbo_systems->add_flag("--log", rbo_args.log, "report dropped equations on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  try {
    if (classify->parsed()) return run_classify(ca);
    const bool seed_given = cea_verify->count("--seed") + cea_diagram->count("--seed") > 0;
    if (cea_verify->parsed()) return run_cea_verify(cea_args, seed_given);
    if (cea_diagram->parsed()) return run_cea_diagram(cea_args, seed_given);
    if (rbo_verify->parsed()) return run_rbo_verify(rbo_args);
    if (rbo_search->parsed()) return run_rbo_search(rbo_args);
    if (rbo_systems->parsed()) return run_rbo_systems(rbo_args);
    if (rbo_catalog->parsed()) return run_rbo_catalog(rbo_args);
    if (rbo_excl->parsed()) return run_rbo_exclusions(rbo_args);
  } catch (const UnclassifiableError& e) {
    std::cerr << "evoalg: " << e.what() << "\n";
    return unclassifiable;
  } catch (const Error& e) {
    std::cerr << "evoalg: " << e.what() << "\n";
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "evoalg: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}
