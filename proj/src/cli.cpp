#include "roth/cli.hpp"

#include "roth/document.hpp"
#include "roth/instance_gen.hpp"
#include "roth/selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace roth {
namespace {

struct Options {
  double tol = kDefaultTol;
  std::string backend = "float";
  bool strict = true;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out_path;

  std::string system_path = "-";
  std::string cert_path;
  int theorem = 0;  // 0 = pick by form

  std::string kind = "R";
  std::size_t t = 1;
  std::size_t s = 1;
  std::size_t dim_lo = 1;
  std::size_t dim_hi = 3;
  std::vector<std::string> sigmas{"id"};
  long entry_range = 3;
  bool general = false;
  bool unsolvable = false;
  bool float_entries = false;
  std::string solution_out;

  double scale = 1.0;
  bool skip_exact = false;
};

class Session {
public:
  Session(const Options &o, CLI::Option *tol_flag, std::istream &in, std::ostream &out, std::ostream &err)
      : o_(o), tol_flag_(tol_flag), in_(in), out_(out), err_(err) {}

  std::string read(const std::string &path) {
    last_path_ = path;
    if (path == "-") {
      if (stdin_used_) throw Error("standard input can only be read once");
      stdin_used_ = true;
      std::ostringstream ss;
      ss << in_.rdbuf();
      return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  void emit(const std::string &text) {
    if (o_.out_path.empty() || o_.out_path == "-") {
      out_ << text;
      return;
    }
    write_file(o_.out_path, text);
  }

  static void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
  }

  std::ostream &err() { return err_; }
  const std::string &last_path() const { return last_path_; }
  const Options &opts() const { return o_; }

  /// Loads the system; a tolerance in the document applies unless --tol was given.
  template <class T> EquationSystem<T> load_system() {
    auto doc = parse_document(read(o_.system_path));
    if (doc.tol && tol_flag_->count() == 0) tol_ = *doc.tol;
    return to_system<T>(doc, o_.strict);
  }

  double tol() const { return tol_ ? *tol_ : o_.tol; }

  std::string print_system(const SystemDocument &doc) const {
    return o_.format == "dsl" ? print_dsl(doc) : print_json_document(doc);
  }

private:
  const Options &o_;
  CLI::Option *tol_flag_;
  std::istream &in_;
  std::ostream &out_;
  std::ostream &err_;
  std::optional<double> tol_;
  bool stdin_used_ = false;
  std::string last_path_ = "-";
};

template <class T> int cmd_solve(Session &s) {
  auto sys = s.load_system<T>();
  auto rep = solve_system(sys, s.tol());
  s.emit(print_solve_report(sys, rep));
  if (rep.status == SolveStatus::Inconsistent) {
    s.err() << "inconsistent: rank M = " << rep.rank_m << ", rank [M|b] = " << rep.rank_aug << "\n";
    return kExitInconsistent;
  }
  return kExitOk;
}

template <class T> int cmd_certify(Session &s) {
  auto sys = s.load_system<T>();
  int theorem = s.opts().theorem;
  if (theorem == 0) theorem = sys.sylvester_form() ? 1 : 2;
  if (theorem == 1 && !sys.sylvester_form())
    throw Error("theorem 1 certificates need every equation in the form A*X - X*B = C; use --theorem 2");
  auto rep = solve_system(sys, s.tol());
  if (rep.status == SolveStatus::Inconsistent) {
    s.emit(print_solve_report(sys, rep));
    s.err() << "inconsistent: no certificate exists (rank M = " << rep.rank_m << ", rank [M|b] = " << rep.rank_aug
            << ")\n";
    return kExitInconsistent;
  }
  if (theorem == 1)
    s.emit(print_certificate(sys.kind, certificate_from_solution(sys, *rep.solution, s.tol())));
  else
    s.emit(print_certificate(sys.kind, certificate_thm2_from_solution(sys, *rep.solution, s.tol())));
  return kExitOk;
}

const char *form_name(RemarkForm f) {
  switch (f) {
  case RemarkForm::Plain: return "plain";
  case RemarkForm::RightTwisted: return "right-twisted";
  case RemarkForm::LeftTwisted: return "left-twisted";
  case RemarkForm::BothTwisted: return "both-twisted";
  }
  return "?";
}

template <class T> AnyCertificate<T> load_certificate(Session &s, ScalarKind kind) {
  if (s.opts().cert_path.empty()) throw Error("a certificate file is required");
  auto cert = parse_certificate<T>(s.read(s.opts().cert_path));
  if (cert.kind != kind)
    throw Error("certificate is over " + std::string(kind_name(cert.kind)) + " but the system is over " +
                std::string(kind_name(kind)));
  return cert;
}

template <class T> int cmd_verify(Session &s) {
  auto sys = s.load_system<T>();
  auto cert = load_certificate<T>(s, sys.kind);
  nlohmann::ordered_json j;
  j["theorem"] = cert.theorem;
  VerifyReport rep;
  if (cert.theorem == 1) {
    rep = verify_thm1(sys, cert.thm1, s.tol());
    auto forms = verify_remark_forms(sys, cert.thm1, s.tol());
    j["ok"] = rep.ok;
    j["nonsingular"] = rep.nonsingular;
    j["max_residual"] = rep.max_residual;
    j["residuals"] = rep.residuals;
    j["remark_forms_ok"] = forms.ok;
    std::vector<std::string> names;
    for (auto f : forms.forms) names.push_back(form_name(f));
    j["remark_forms"] = names;
  } else {
    rep = verify_thm2(sys, cert.thm2, s.tol());
    j["ok"] = rep.ok;
    j["nonsingular"] = rep.nonsingular;
    j["max_residual"] = rep.max_residual;
    j["residuals"] = rep.residuals;
  }
  s.emit(j.dump(2) + "\n");
  if (!rep.ok) {
    s.err() << "certificate rejected: max residual " << rep.max_residual
            << (rep.nonsingular ? "" : ", singular block matrix") << "\n";
    return kExitError;
  }
  return kExitOk;
}

template <class T> int cmd_reduce(Session &s) {
  auto sys = s.load_system<T>();
  auto red = reduce_to_triple(sys);
  s.emit(s.print_system(from_system(red.system)));
  return kExitOk;
}

template <class T> int cmd_extract(Session &s) {
  auto sys = s.load_system<T>();
  auto cert = load_certificate<T>(s, sys.kind);
  std::vector<Matrix<T>> x;
  if (cert.theorem == 1) {
    x = extract_solution(sys, cert.thm1, s.tol());
  } else {
    if (!verify_thm2(sys, cert.thm2, s.tol()).ok) throw InvalidCertificate("certificate does not verify");
    auto red = reduce_to_triple(sys);
    auto y = extract_solution(red.system, flatten(red, cert.thm2), s.tol());
    for (auto j : red.x_index) x.push_back(y[j]);
  }
  s.emit(print_solution(sys, x, max_relative_residual(sys, x)));
  return kExitOk;
}

template <class T> int cmd_gen(Session &s) {
  const auto &o = s.opts();
  GenConfig cfg;
  cfg.seed = o.seed;
  cfg.kind = kind_from_name(o.kind);
  cfg.t = o.t;
  cfg.s = o.s;
  cfg.dim_lo = o.dim_lo;
  cfg.dim_hi = o.dim_hi;
  cfg.sigma_pool.clear();
  for (const auto &n : o.sigmas) cfg.sigma_pool.push_back(sigma_from_name(n));
  cfg.entry_range = o.entry_range;
  cfg.float_entries = o.float_entries;
  cfg.form = o.general ? GenForm::General : GenForm::Sylvester;
  cfg.strict_corollary = o.strict;
  if (cfg.t == 0 || cfg.s == 0) throw Error("--unknowns and --equations must be positive");
  if (cfg.dim_lo == 0 || cfg.dim_lo > cfg.dim_hi) throw Error("need 1 <= --dim-lo <= --dim-hi");
  if (o.unsolvable) {
    if (!o.solution_out.empty()) throw Error("--solution-out needs a solvable instance");
    s.emit(s.print_system(from_system(gen_unsolvable<T>(cfg, s.tol()))));
    return kExitOk;
  }
  auto inst = gen_solvable<T>(cfg);
  auto doc = from_system(inst.system);
  s.emit(s.print_system(doc));
  if (!o.solution_out.empty())
    Session::write_file(o.solution_out,
                        print_solution(inst.system, inst.solution, max_relative_residual(inst.system, inst.solution)));
  return kExitOk;
}

int cmd_selftest(Session &s) {
  AcceptanceOptions ao;
  ao.scale = s.opts().scale;
  ao.seed = s.opts().seed;
  ao.exact = !s.opts().skip_exact;
  std::ostringstream report;
  bool all = true;
  run_acceptance(ao, [&](const CriterionResult &r) {
    all = all && r.pass;
    s.err() << format_result(r) << "\n" << std::flush;
    report << format_result(r) << "\n";
  });
  s.emit(report.str());
  return all ? kExitOk : kExitError;
}

template <class T> int dispatch(const std::string &cmd, Session &s) {
  if (cmd == "solve") return cmd_solve<T>(s);
  if (cmd == "certify") return cmd_certify<T>(s);
  if (cmd == "verify") return cmd_verify<T>(s);
  if (cmd == "reduce") return cmd_reduce<T>(s);
  if (cmd == "extract") return cmd_extract<T>(s);
  if (cmd == "gen") return cmd_gen<T>(s);
  throw Error("unknown command '" + cmd + "'");
}

} // namespace

int run_command(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Solve and certify systems of Sylvester-type matrix equations over R, C and H.", "roth"};
  app.fallthrough();
  app.require_subcommand(1);

  auto *tol = app.add_option("--tol", o.tol, "Relative tolerance for ranks and residuals")
                  ->check(CLI::PositiveNumber)
                  ->capture_default_str();
  app.add_option("--backend", o.backend, "Arithmetic backend")
      ->check(CLI::IsMember({"float", "exact"}))
      ->capture_default_str();
  app.add_option("--strict-corollary", o.strict, "Restrict quaternion involutions to id and star")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for gen and selftest")->capture_default_str();
  app.add_option("--format", o.format, "Output format for systems")
      ->check(CLI::IsMember({"json", "dsl"}))
      ->capture_default_str();
  app.add_option("--out", o.out_path, "Write the result here instead of standard output");

  auto *solve = app.add_subcommand("solve", "Decide solvability and print a solution or the rank evidence");
  solve->add_option("system", o.system_path, "System file (DSL or JSON); - for standard input");

  auto *certify = app.add_subcommand("certify", "Solve, then print a block-matrix certificate");
  certify->add_option("system", o.system_path, "System file");
  certify->add_option("--theorem", o.theorem, "1 for Sylvester form, 2 for the general form")
      ->check(CLI::IsMember({1, 2}));

  auto *verify = app.add_subcommand("verify", "Check a certificate against a system");
  verify->add_option("system", o.system_path, "System file")->required();
  verify->add_option("certificate", o.cert_path, "Certificate file")->required();

  auto *reduce = app.add_subcommand("reduce", "Rewrite a general system as an equivalent Sylvester-form system");
  reduce->add_option("system", o.system_path, "System file");

  auto *extract = app.add_subcommand("extract", "Recover a solution from a certificate");
  extract->add_option("system", o.system_path, "System file")->required();
  extract->add_option("certificate", o.cert_path, "Certificate file")->required();

  auto *gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--kind", o.kind, "R, C or H")->check(CLI::IsMember({"R", "C", "H"}))->capture_default_str();
  gen->add_option("--unknowns", o.t, "Number of unknowns")->capture_default_str();
  gen->add_option("--equations", o.s, "Number of equations")->capture_default_str();
  gen->add_option("--dim-lo", o.dim_lo, "Smallest dimension")->capture_default_str();
  gen->add_option("--dim-hi", o.dim_hi, "Largest dimension")->capture_default_str();
  gen->add_option("--sigmas", o.sigmas, "Involution pool: id, conj, dagger, star")->delimiter(',');
  gen->add_option("--entry-range", o.entry_range, "Integer entries lie in [-r, r]")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gen->add_flag("--general", o.general, "Include M and N factors");
  gen->add_flag("--unsolvable", o.unsolvable, "Perturb the right-hand sides off the solvable set");
  gen->add_flag("--float-entries", o.float_entries, "Uniform real entries instead of integers");
  gen->add_option("--solution-out", o.solution_out, "Also write the planted solution here");

  auto *selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--scale", o.scale, "Multiply instance counts")->check(CLI::PositiveNumber)->capture_default_str();
  selftest->add_flag("--skip-exact", o.skip_exact, "Skip the exact-rational passes");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  const auto *sub = app.get_subcommands().front();
  Session session(o, tol, in, out, err);
  try {
    if (sub->get_name() == "selftest") return cmd_selftest(session);
    return o.backend == "exact" ? dispatch<Rational>(sub->get_name(), session)
                                : dispatch<double>(sub->get_name(), session);
  } catch (const ParseError &e) {
    const auto &path = session.last_path();
    err << (path == "-" ? "<stdin>" : path) << ":" << e.what() << "\n";
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
  }
  return kExitError;
}

} // namespace roth
